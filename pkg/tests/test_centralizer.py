"""Pseudo-Levi subsystems, component groups and rationality of torsion points."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from depthzero.affine import AffineRootSystem, Facet, frobenius_form
from depthzero.centralizer import (
    KacPoint,
    alcove_points,
    alcove_reduce,
    canonical_form,
    component_group,
    frobenius_rational,
    group_side_roots,
    index_identity_check,
    kac_point,
    orthogonal_datum,
    parse_kac_points,
    pseudo_levi,
    reduce_point,
    standard_rep_eigenvalues,
)
from depthzero.rootcore import CartanType, build_root_datum, normalize_shape

import oracles

RANK_LE_3 = [(f, n) for f, n in oracles.types_up_to(3)]


def datum(f, n, iso="adjoint"):
    return build_root_datum(CartanType(f, n), iso)


# -- pseudo-Levi subsystems ----------------------------------------------------


@pytest.mark.parametrize("f,n", oracles.types_up_to(8))
def test_identity_point_gives_everything(f, n):
    d = datum(f, n)
    H = pseudo_levi(KacPoint(tuple([0] * n), 1), d)
    assert set(H.roots_H) == set(d.roots)
    assert component_group(KacPoint(tuple([0] * n), 1), d).order == 1


def test_e8_order_two_points():
    d = datum("E", 8)
    C = oracles.cartan("E", 8)
    found = {}
    for s in alcove_points(d, 2, exact_order=True):
        H = pseudo_levi(s, d)
        o_roots, _ = oracles.pseudo_levi_roots_oracle("E", 8, s.numerator, s.order)
        assert set(H.roots_H) == set(o_roots)
        found[H.shape] = s
    assert set(found) == {("D8",), ("A1", "E7")}
    # D8 from the node of mark 2 at the end of the long arm, E7 + A1 from the other end
    assert found[("D8",)].numerator == (1, 0, 0, 0, 0, 0, 0, 0)
    assert found[("A1", "E7")].numerator == (0, 0, 0, 0, 0, 0, 0, 1)
    assert len(oracles.roots(C)) == 240


def test_so5_example_pseudo_levi():
    d = datum("C", 2, "simply-connected")
    H = pseudo_levi(KacPoint((1, 0), 3), d)
    assert H.shape == ("A1",)
    # the long root pair of C2: one SL2 factor of Sp4
    assert set(H.roots_H) == {(0, 1), (0, -1)}
    assert all(d.is_long(g) for g in H.roots_H)


def test_zero_order_rejected():
    with pytest.raises(ValueError):
        KacPoint((0, 0), 0)


@pytest.mark.parametrize("f,n", RANK_LE_3)
@pytest.mark.parametrize("iso", ["adjoint", "simply-connected"])
def test_pseudo_levi_matches_oracle(f, n, iso):
    d = datum(f, n, iso)
    for m in (1, 2, 3, 4):
        for s in alcove_points(d, m):
            H = pseudo_levi(s, d)
            o = oracles.centralizer_oracle(f, n, iso, s.numerator, s.order)
            assert set(H.roots_H) == set(o["roots"])
            assert normalize_shape(H.components) == normalize_shape(o["shape"])
            cg = component_group(s, d)
            assert (cg.order, cg.stabilizer_order, cg.weyl_H_order) == (o["component_order"], o["W_s"], o["W_H"])


@given(st.sampled_from([("B", 3), ("C", 3), ("G", 2), ("A", 3), ("D", 4)]), st.integers(1, 6), st.integers(0, 10**6))
def test_alcove_reduction_is_weyl_conjugate(t, m, k):
    d = datum(*t)
    pts = list(alcove_points(d, m))
    s = pts[k % len(pts)]
    # move s by a Weyl element and a lattice translate, then reduce back
    w = d.weyl_from_word([(k >> i) % d.rank for i in range(0, 12, 2)])
    lam = d.act_coweight(w, s.numerator)
    shift = d.cocharacter_basis[k % d.rank]
    moved = KacPoint(tuple(v + m * c for v, c in zip(lam, shift)), m)
    assert canonical_form(moved, d).kac == canonical_form(s, d).kac
    assert set(pseudo_levi(moved, d).roots_H) == set(d.act(w, g) for g in pseudo_levi(s, d).roots_H)


def test_kac_point_marks():
    d = datum("E", 6)
    s = kac_point([0, 0, 0, 0, 1, 0, 0], d)
    assert s.order == 3
    assert pseudo_levi(s, d).shape == ("A2", "A2", "A2")
    with pytest.raises(ValueError):
        kac_point([0] * 7, d)
    with pytest.raises(ValueError):
        kac_point([1, 0], d)


def test_reduce_point_exact_order():
    d = datum("A", 1)
    assert reduce_point(KacPoint((2,), 4), d).order == 2
    assert reduce_point(KacPoint((0,), 5), d).order == 1


# -- component groups ----------------------------------------------------------


@pytest.mark.parametrize("f,n", oracles.types_up_to(6))
def test_simply_connected_centralizers_connected(f, n):
    d = datum(f, n, "simply-connected")
    for m in (2, 3):
        for s in alcove_points(d, m):
            assert component_group(s, d, max_weyl=0).order == 1


def test_adjoint_a1_order_two():
    d = datum("A", 1)
    cg = component_group(KacPoint((1,), 2), d)
    assert cg.order == 2
    assert oracles.centralizer_oracle("A", 1, "adjoint", (1,), 2)["component_order"] == 2


def test_component_group_guard():
    d = datum("E", 8)
    s = KacPoint((1, 0, 0, 0, 0, 0, 0, 0), 2)
    cg = component_group(s, d, max_weyl=1000, require_exhaustive=True)
    assert cg.status == "not-computed" and cg.order is None
    assert component_group(s, d, max_weyl=1000).confidence == "generated"


def test_e6_component_groups():
    d = datum("E", 6)
    s = kac_point([0, 0, 0, 0, 1, 0, 0], d)
    cg = component_group(s, d)
    assert cg.order == 3 and cg.confidence == "exhaustive"
    assert len(cg.table) == 3


# -- rationality ---------------------------------------------------------------


@given(st.sampled_from([("B", 3), ("E", 6), ("G", 2), ("C", 4)]), st.integers(1, 6), st.integers(0, 10**6), st.integers(1, 3))
def test_split_rational_when_m_divides_q_minus_1(t, m, k, j):
    d = datum(*t)
    pts = list(alcove_points(d, m))
    s = pts[k % len(pts)]
    q = next(q for q in [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 25, 27, 31, 37, 43, 49, 61, 64, 73]
             if (q - 1) % s.order == 0 and q > j)
    assert frobenius_rational(s, d, q)


def test_identity_always_rational():
    d = datum("E", 7)
    for q in (2, 3, 5, 7, 9):
        assert frobenius_rational(KacPoint(tuple([0] * 7), 1), d, q)


def test_e6_order_three_not_rational_for_q_2_mod_3():
    d = datum("E", 6)
    s = KacPoint((0, 0, 1, 0, 0, 1), 3)
    for q in (2, 5, 8, 11):
        assert not frobenius_rational(s, d, q)
    for q in (4, 7, 13):
        assert frobenius_rational(s, d, q)


def test_rationality_rejects_bad_q():
    d = datum("A", 2)
    with pytest.raises(ValueError):
        frobenius_rational(KacPoint((1, 1), 3), d, 3)
    with pytest.raises(ValueError):
        frobenius_rational(KacPoint((1, 1), 3), d, 6)


# -- eigenvalues on the standard representation --------------------------------


def test_identity_eigenvalues():
    d = orthogonal_datum("B", 3)
    assert set(standard_rep_eigenvalues(KacPoint((0, 0, 0), 1), d).phases) == {Fraction(0)}


def test_central_minus_one():
    d = orthogonal_datum("D", 4)
    # -1 = exp(2 pi i (e_1 + e_2 + e_3 + e_4) / 2) and e_1 + ... + e_4 = 2 varpi_4^vee
    rep = standard_rep_eigenvalues(KacPoint((0, 0, 0, 2), 2), d)
    assert set(rep.phases) == {Fraction(1, 2)} and len(rep.phases) == 8


def test_order_four_end_node():
    d = orthogonal_datum("D", 4)
    s = KacPoint((0, 0, 0, 2), 4)
    assert alcove_reduce(s, d).kac == (2, 0, 0, 0, 2)
    rep = standard_rep_eigenvalues(s, d)
    assert sorted(rep.phases) == [Fraction(1, 4)] * 4 + [Fraction(3, 4)] * 4
    assert not rep.has_one and not rep.has_minus_one


def test_eigenvalues_reject_non_orthogonal():
    with pytest.raises(ValueError):
        standard_rep_eigenvalues(KacPoint((0, 0), 1), datum("C", 2))


# -- the index identity --------------------------------------------------------


def test_index_identity_full_subsystem():
    d = datum("C", 2)
    a = AffineRootSystem(d)
    F = Facet(frozenset({0, 2}), frobenius_form(a))
    rep = index_identity_check(d.roots, F)
    assert rep.agrees and set(rep.image_in_G) == set(rep.omega_G_x)


def test_index_identity_so5():
    H = pseudo_levi(KacPoint((1, 0), 3), datum("C", 2, "simply-connected"))
    G, roots = group_side_roots(H)
    assert G.cartan_type.family == "B" and G.isogeny == "adjoint"
    F = Facet(frozenset({0, 1}), frobenius_form(AffineRootSystem(G)))
    rep = index_identity_check(roots, F)
    assert rep.agrees and rep.order == 2


# -- input parsing -------------------------------------------------------------


def test_parse_kac_points():
    d = datum("E", 8)
    pts = parse_kac_points('{"points": [{"kac": [0, 1, 0, 0, 0, 0, 0, 0, 0]}, {"coweight": [0, 0, 0, 0, 0, 0, 0, 1], "order": 2}]}', d)
    assert pts[0] == KacPoint((1, 0, 0, 0, 0, 0, 0, 0), 2)
    assert pts[1].order == 2


def test_index_identity_e7_order_two():
    d = datum("E", 7)
    F = Facet(frozenset(set(range(8)) - {4}), frobenius_form(AffineRootSystem(d)))
    s = next(s for s in alcove_points(d, 2, exact_order=True) if pseudo_levi(s, d).shape == ("A7",))
    rep = index_identity_check(pseudo_levi(s, d).roots_H, F)
    assert rep.agrees and rep.image_in_G == (0,) and rep.omega_G_x == (0, 7)
