"""Extended diagrams, Omega actions, facets, reductive quotients and the Kottwitz square."""

import pytest
from hypothesis import given, strategies as st

from depthzero.affine import (
    AffineRootSystem,
    Facet,
    FrobeniusForm,
    apartment_embedding,
    diagram_automorphism,
    extended_weyl_inclusion,
    facet_stabilizer,
    frobenius_form,
    h1_coinvariants,
    maximal_facets,
    omega_action_on_diagram,
    parse_form_spec,
    reductive_quotient,
    vertex_test,
)
from depthzero.centralizer import alcove_points, kac_point, pseudo_levi
from depthzero.rootcore import CartanType, all_types, build_root_datum, fundamental_group

UP_TO_8 = [(t.family, t.rank) for t in all_types(8)]


def affine(f, n, iso="adjoint"):
    return AffineRootSystem(build_root_datum(CartanType(f, n), iso))


def facet(a, removed, form=None):
    form = form or frobenius_form(a)
    return Facet(frozenset(set(range(a.rank + 1)) - set(removed)), form)


# -- the affine root system ----------------------------------------------------


@pytest.mark.parametrize("f,n", UP_TO_8)
def test_affine_basis_and_marks(f, n):
    a = affine(f, n)
    assert len(a.affine_basis) == n + 1
    assert a.affine_basis[0] == (tuple(-c for c in a.theta), 1)
    # sum of marks times gradients vanishes: the null root
    tot = [sum(a.marks[i] * a.gradient(i)[k] for i in range(n + 1)) for k in range(n)]
    assert tot == [0] * n


@pytest.mark.parametrize("f,n", [t for t in UP_TO_8 if t[1] <= 5])
def test_affine_roots_are_signed_combinations(f, n):
    a = affine(f, n)
    for psi in a.affine_roots(window=2):
        c = a.decompose(psi)
        assert all(x >= 0 for x in c) or all(x <= 0 for x in c)


# -- Omega acting on the diagram -----------------------------------------------


@pytest.mark.parametrize("n", range(2, 9))
def test_c_n_omega_reverses_diagram(n):
    act = omega_action_on_diagram(affine("C", n))
    nontrivial = [p for lab, p in act.items() if lab != 0]
    assert nontrivial == [tuple(n - i for i in range(n + 1))]


def test_e6_omega_rotates_about_branch_node():
    act = omega_action_on_diagram(affine("E", 6))
    assert len(act) == 3
    for lab, p in act.items():
        assert p[4] == 4  # Bourbaki alpha_4, the node of mark 3
        if lab:
            assert p != tuple(range(7))
            q = tuple(p[p[i]] for i in range(7))
            assert tuple(p[q[i]] for i in range(7)) == tuple(range(7))


@pytest.mark.parametrize("f,n", UP_TO_8)
def test_omega_acts_faithfully_by_automorphisms(f, n):
    a = affine(f, n)
    act = omega_action_on_diagram(a)
    assert len(act) == fundamental_group(a.base).order
    assert len(set(act.values())) == len(act)
    C = a.extended_cartan
    for p in act.values():
        assert all(C[p[i]][p[j]] == C[i][j] for i in range(n + 1) for j in range(n + 1))


def test_omega_action_requires_adjoint():
    with pytest.raises(ValueError):
        omega_action_on_diagram(affine("A", 3, "simply-connected"))


# -- facets and stabilizers ----------------------------------------------------


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_c_2m_middle_node_stabilizer(m):
    a = affine("C", 2 * m)
    st_ = facet_stabilizer(facet(a, [m]))
    assert st_.order == 2 and st_.structure() == (2,)


@pytest.mark.parametrize("n", range(2, 9))
def test_c_n_other_vertices_trivial(n):
    a = affine("C", n)
    for i in range(n + 1):
        if 2 * i == n:
            continue
        assert facet_stabilizer(facet(a, [i])).order == 1


def test_a1_standard_vertex_stabilizer_trivial():
    a = affine("A", 1)
    assert facet_stabilizer(facet(a, [0])).order == 1


def test_facet_must_be_proper_and_stable():
    a = affine("C", 2)
    with pytest.raises(ValueError):
        Facet(frozenset({0, 1, 2}), frobenius_form(a))
    inner = FrobeniusForm(a, (0, 1), 2)
    with pytest.raises(ValueError):
        Facet(frozenset({0, 1}), inner)


def test_form_validation():
    a = affine("B", 3)
    with pytest.raises(ValueError):
        FrobeniusForm(a, (1, 0, 2), 0)
    with pytest.raises(ValueError):
        FrobeniusForm(a, (0, 1, 2), 2)


# -- coinvariants --------------------------------------------------------------


def test_split_pgl2_coinvariants():
    assert h1_coinvariants(frobenius_form(affine("A", 1))).invariant_factors == (2,)


@pytest.mark.parametrize("f,n", [("E", 8), ("F", 4), ("G", 2)])
def test_trivial_omega_coinvariants(f, n):
    assert h1_coinvariants(frobenius_form(affine(f, n))).order == 1


def test_outer_twist_kills_coinvariants():
    # sigma acts by -1 on Z/4 for D5; coinvariants are Z/2
    a = affine("D", 5)
    rep = h1_coinvariants(frobenius_form(a, twist=2))
    assert rep.order == 2
    # the unitary group of odd rank: sigma inverts Z/(n+1), coinvariants of Z/4 are Z/2
    assert h1_coinvariants(frobenius_form(affine("A", 3), twist=2)).order == 2
    assert h1_coinvariants(frobenius_form(affine("A", 4), twist=2)).order == 1


# -- reductive quotients -------------------------------------------------------


@pytest.mark.parametrize("n", range(3, 9))
def test_b_n_orthogonal_pair_facets(n):
    a = affine("B", n)
    for k in range(2, n + 1):
        rq = reductive_quotient(facet(a, [k]))
        names = set(rq.shape)
        # SO_{2k} x SO_{2(n-k)+1}: D_k with D_2 = A1 A1, D_3 = A3
        d_part = {2: ("A1", "A1"), 3: ("A3",)}.get(k, (f"D{k}",))
        b_part = () if k == n else (("A1",) if n - k == 1 else (f"B{n - k}",))
        assert sorted(rq.shape) == sorted(d_part + b_part)
        assert rq.center_torsion == (2,)
        assert not rq.connected_center
        assert {0, 1} <= set(rq.nodes)


@pytest.mark.parametrize("n", range(1, 8))
def test_type_a_quotients_torsion_free(n):
    a = affine("A", n)
    form = frobenius_form(a)
    for size in range(0, n + 1):
        for start in range(n + 1):
            nodes = frozenset((start + k) % (n + 1) for k in range(size))
            rq = reductive_quotient(Facet(nodes, form))
            assert rq.connected_center


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_c_2m_middle_quotient(m):
    rq = reductive_quotient(facet(affine("C", 2 * m), [m]))
    assert rq.center_torsion == (2,)
    assert len(rq.components) == 2 and rq.semisimple_rank == 2 * m


def test_so5_vertex_lattices():
    rq = reductive_quotient(facet(affine("B", 2), [2]))
    assert rq.shape == ("A1", "A1")
    assert rq.center_torsion == (2,)
    assert set(rq.coroots) == {(1, 0), (-1, -1)}


# -- apartment embedding -------------------------------------------------------


def test_apartment_identity():
    a = affine("G", 2)
    e = apartment_embedding(a.base.roots, a)
    assert e.verified and not e.dashed


def test_so5_apartment_partition():
    a = affine("B", 2)
    # the short root pair orthogonal to alpha_2: the root of the PGL_2 factor
    H = [(1, 1), (-1, -1)]
    e = apartment_embedding(H, a)
    assert e.verified
    assert {g for g, _ in e.solid} == set(H)
    assert {g for g, _ in e.dashed} == set(a.base.roots) - set(H)
    assert len(e.solid) == 2 * (2 * e.window + 1)


def test_b4_order_two_level_sets():
    d = build_root_datum("B4")
    a = AffineRootSystem(d)
    for s in alcove_points(d, 2, exact_order=True):
        H = pseudo_levi(s, d)
        e = apartment_embedding(H.roots_H, a)
        assert e.level_sets_are_Z and e.verified


def test_apartment_rejects_non_closed():
    a = affine("B", 2)
    # long roots of B2 are closed; short roots e1, e2 are not (e1 + e2 is a root)
    short = [g for g in a.base.roots if not a.base.is_long(g)]
    with pytest.raises(ValueError):
        apartment_embedding(short, a)


# -- the Kottwitz square -------------------------------------------------------


@pytest.mark.parametrize("f,n", [("A", 3), ("C", 3), ("E", 6)])
def test_kottwitz_identity(f, n):
    a = affine(f, n)
    rep = extended_weyl_inclusion(a.base.roots, a)
    assert rep.omega_H == rep.omega_G
    assert rep.commutes and rep.surjective


def test_kottwitz_so5():
    a = affine("B", 2)
    rep = extended_weyl_inclusion([(1, 1), (-1, -1)], a)
    assert rep.omega_G == (2,)
    assert 0 in rep.omega_H  # a central torus survives
    assert rep.commutes and rep.surjective


def test_kottwitz_e6_three_a2():
    d = build_root_datum("E6")
    H = pseudo_levi(kac_point([0, 0, 0, 0, 1, 0, 0], d), d)
    assert H.shape == ("A2", "A2", "A2")
    rep = extended_weyl_inclusion(H.roots_H, AffineRootSystem(d))
    assert rep.omega_H == (3, 3) and rep.omega_G == (3,)
    assert rep.commutes and rep.surjective


@given(st.sampled_from([("B", 3), ("C", 3), ("G", 2), ("D", 4)]), st.integers(1, 4), st.integers(0, 10**6))
def test_kottwitz_random_pseudo_levi(t, m, k):
    d = build_root_datum(CartanType(*t))
    pts = list(alcove_points(d, m, exact_order=True))
    s = pts[k % len(pts)]
    rep = extended_weyl_inclusion(pseudo_levi(s, d).roots_H, AffineRootSystem(d), seed=k)
    assert rep.commutes and rep.surjective


# -- vertices ------------------------------------------------------------------


@pytest.mark.parametrize("f,n", UP_TO_8)
def test_maximal_split_facets_are_vertices(f, n):
    a = affine(f, n)
    for F in maximal_facets(frobenius_form(a)):
        assert vertex_test(F)


def test_empty_facet_is_not_vertex():
    a = affine("B", 3)
    assert not vertex_test(Facet(frozenset(), frobenius_form(a)))


def test_h_vertex_image_is_vertex():
    # the SO5 example: the vertex of the H-apartment is the vertex with
    # reductive quotient (SL2 x SL2)/Z
    a = affine("B", 2)
    F = facet(a, [2])
    assert vertex_test(F)


@pytest.mark.parametrize("f,n,t", [("A", 3, 2), ("D", 4, 3), ("D", 5, 2), ("E", 6, 2)])
def test_twisted_maximal_facets_are_vertices(f, n, t):
    a = affine(f, n)
    for F in maximal_facets(frobenius_form(a, twist=t)):
        assert vertex_test(F)


def test_diagram_automorphism_orders():
    tri = diagram_automorphism(CartanType("D", 4, 3))
    assert tri[1] == 1 and tri != (0, 1, 2, 3)
    assert tuple(tri[tri[tri[i]]] for i in range(4)) == (0, 1, 2, 3)
    assert diagram_automorphism(CartanType("D", 5, 2)) == (0, 1, 2, 4, 3)
    s = diagram_automorphism(CartanType("E", 6, 2))
    assert s[1] == 1 and s[3] == 3 and s[0] == 5


def test_parse_form_spec():
    a, form, F = parse_form_spec('{"family": "c", "rank": 4, "removed_nodes": [2]}')
    assert form.is_split and F.removed == (2,)
    with pytest.raises(ValueError):
        parse_form_spec('{"family": "C", "rank": 4, "twist": 2}')
