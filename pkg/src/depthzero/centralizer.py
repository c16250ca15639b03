"""Torsion points of the dual torus, their centralizers and component groups.

A torsion point s = exp(2 pi i lambda/m) of the maximal torus of the dual
group is stored as a numerator lambda (a cocharacter, written in
fundamental-coweight coordinates of the dual root datum ``d``) and an order m.
The value alpha(s) is encoded by <alpha, lambda> mod m; nothing here uses
complex numbers.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterator, Sequence

from .affine import AffineRootSystem, AffineMap, Facet, FrobeniusForm, SubSystem, _SubAlcove, subsystem
from .rootcore import (
    FundamentalGroup,
    ResourceGuardExceeded,
    Root,
    RootDatum,
    WeylElement,
    components,
    fundamental_group,
    highest_root,
    identify_component,
    normalize_shape,
    root_order_key,
)

DEFAULT_GUARD = 60_000


@dataclass(frozen=True)
class KacPoint:
    numerator: tuple[int, ...]
    order: int

    def __post_init__(self):
        if self.order <= 0:
            raise ValueError("the order m must be a positive integer")

    def pair(self, g: Sequence[int]) -> int:
        """<g, lambda> (not reduced mod m)."""
        return sum(int(a) * int(b) for a, b in zip(g, self.numerator))

    def value(self, g: Sequence[int]) -> Fraction:
        """alpha(s) as a phase in [0, 1)."""
        return Fraction(self.pair(g) % self.order, self.order)

    def point(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(v, self.order) for v in self.numerator)


def reduce_point(s: KacPoint, d: RootDatum) -> KacPoint:
    """Rewrite s with its exact order: the least k | m with (k/m) lambda in X_*(d)."""
    if not d.in_cocharacter_lattice(s.numerator):
        raise ValueError("numerator is not a cocharacter of the dual torus")
    m = s.order
    for k in range(1, m + 1):
        if m % k or any((v * k) % m for v in s.numerator):
            continue
        lam = tuple(v * k // m for v in s.numerator)
        if d.in_cocharacter_lattice(lam):
            return KacPoint(lam, k)
    raise AssertionError("unreachable")


def is_reduced(s: KacPoint, d: RootDatum) -> bool:
    return reduce_point(s, d).order == s.order


# --------------------------------------------------------------------------
# alcove representatives


@dataclass(frozen=True)
class AlcovePoint:
    """Dominant alcove representative: numerator, order and Kac coordinates s_0..s_r."""

    numerator: tuple[int, ...]
    order: int
    kac: tuple[int, ...]
    moved_by: tuple[int, ...]  # word of W_aff letters (0 = affine node) used to reach the alcove

    def as_point(self) -> KacPoint:
        return KacPoint(self.numerator, self.order)


def _theta_coroot_coweight(d: RootDatum) -> tuple[int, ...]:
    theta, _ = highest_root(d)
    return d.coroot_coweight(d.coroot(theta))


def alcove_reduce(s: KacPoint, d: RootDatum) -> AlcovePoint:
    """Move lambda/m into the closed fundamental alcove by affine reflections."""
    theta, marks = highest_root(d)
    tc = _theta_coroot_coweight(d)
    C = d.cartan
    r = d.rank
    lam = list(s.numerator)
    m = s.order
    word = []
    while True:
        i = next((i for i in range(r) if lam[i] < 0), None)
        if i is not None:
            c = lam[i]
            lam = [lam[k] - c * C[k][i] for k in range(r)]
            word.append(i + 1)
            continue
        t = sum(theta[k] * lam[k] for k in range(r))
        if t > m:
            lam = [lam[k] - (t - m) * tc[k] for k in range(r)]
            word.append(0)
            continue
        break
    kac = (m - sum(theta[k] * lam[k] for k in range(r)),) + tuple(lam)
    return AlcovePoint(tuple(lam), m, kac, tuple(word))


def _from_kac(kac: Sequence[int], m: int) -> AlcovePoint:
    return AlcovePoint(tuple(kac[1:]), m, tuple(kac), ())


def canonical_form(s: KacPoint, d: RootDatum) -> AlcovePoint:
    """Canonical representative of the W x| X_* orbit of lambda/m.

    The alcove point is moved by the alcove stabilizers Omega of d (those
    realized by translations in X_*(d)); the lexicographically largest Kac
    tuple is kept.
    """
    s = reduce_point(s, d)
    p = alcove_reduce(s, d)
    best = p.kac
    for e in _affine(d).omega:
        img = [0] * len(p.kac)
        for i, v in enumerate(p.kac):
            img[e.perm[i]] = v
        if tuple(img) > best:
            best = tuple(img)
    return _from_kac(best, p.order)


@lru_cache(maxsize=64)
def _affine_cached(cartan, isogeny, basis, ctype) -> AffineRootSystem:
    return AffineRootSystem(RootDatum(ctype, cartan, isogeny, basis))


def _affine(d: RootDatum) -> AffineRootSystem:
    return _affine_cached(d.cartan, d.isogeny, d.cocharacter_basis, d.cartan_type)


def kac_point(kac: Sequence[int], d: RootDatum) -> KacPoint:
    """The point with Kac coordinates s_0..s_r; m = sum of marks times s_i."""
    a = _affine(d)
    if len(kac) != a.rank + 1 or any(v < 0 for v in kac):
        raise ValueError("Kac coordinates must be r+1 non-negative integers")
    m = sum(a.marks[i] * kac[i] for i in range(len(kac)))
    if m == 0:
        raise ValueError("Kac coordinates must not all vanish")
    return KacPoint(tuple(kac[1:]), m)


def alcove_points(d: RootDatum, m: int, exact_order: bool = False) -> Iterator[KacPoint]:
    """All points lambda/m of the closed fundamental alcove with lambda in X_*(d)."""
    a = _affine(d)
    marks = a.marks
    r = a.rank

    def rec(i, left, acc):
        if i == r + 1:
            if left == 0:
                yield tuple(acc)
            return
        for v in range(left // marks[i] + 1):
            yield from rec(i + 1, left - v * marks[i], acc + [v])

    for kac in rec(0, m, []):
        p = KacPoint(kac[1:], m)
        if not d.in_cocharacter_lattice(p.numerator):
            continue
        if exact_order and not is_reduced(p, d):
            continue
        yield p


# --------------------------------------------------------------------------
# pseudo-Levi subsystems


@dataclass
class PseudoLevi:
    ambient: RootDatum
    roots_H: tuple[Root, ...]
    omega_H: FundamentalGroup
    witness: KacPoint
    alcove: AlcovePoint
    basis_nodes: tuple[int, ...]  # affine nodes with vanishing Kac coordinate
    components: tuple[str, ...] = ()

    @property
    def shape(self) -> tuple[str, ...]:
        return normalize_shape(self.components)

    @property
    def rank(self) -> int:
        return len(self.basis_nodes)

    def basis_roots(self) -> list[Root]:
        a = _affine(self.ambient)
        return [a.gradient(i) for i in self.basis_nodes]

    def subsystem(self) -> SubSystem:
        return subsystem(self.ambient, self.roots_H)


def pseudo_levi(s: KacPoint, d: RootDatum) -> PseudoLevi:
    """Roots with alpha(s) = 1 and the Borel-de Siebenthal basis after alcove reduction."""
    if s.order == 0:
        raise ValueError("the order m must be positive")
    d.require_irreducible()
    s = reduce_point(s, d)
    roots = tuple(g for g in d.roots if s.pair(g) % s.order == 0)
    p = alcove_reduce(s, d)
    nodes = tuple(i for i, v in enumerate(p.kac) if v == 0)
    a = _affine(d)
    sub = tuple(tuple(a.extended_cartan[i][j] for j in nodes) for i in nodes)
    names = tuple(identify_component(sub, c) for c in components(sub)) if nodes else ()
    omega_H = fundamental_group(d, [d.coroot(g) for g in roots] if roots else [])
    return PseudoLevi(d, roots, omega_H, s, p, nodes, names)


def group_side_roots(H: PseudoLevi) -> tuple[RootDatum, tuple[Root, ...]]:
    """The dual datum G of H.ambient and the roots of G whose coroots are the roots of H.

    Roots of the ambient (dual) group are written in simple-coroot coordinates
    of G, with the same node numbering.
    """
    G = H.ambient.dual()
    by_coroot = {G.coroot(g): g for g in G.roots}
    return G, tuple(sorted((by_coroot[g] for g in H.roots_H), key=root_order_key))


# --------------------------------------------------------------------------
# component groups


@dataclass
class ComponentGroup:
    status: str  # "computed" or "not-computed"
    confidence: str  # "exhaustive", "generated" or "none"
    labels: tuple[int, ...] = ()
    coset_reps: tuple[WeylElement, ...] = ()
    table: tuple[tuple[int, ...], ...] = ()
    frobenius_action: tuple[int, ...] = ()
    stabilizer_order: int | None = None  # |W_s|
    weyl_H_order: int | None = None
    alcove: AlcovePoint | None = None
    note: str = ""

    @property
    def order(self) -> int | None:
        return len(self.labels) if self.status == "computed" else None


def _weyl_order_of(d: RootDatum, roots: Sequence[Root]) -> int:
    if not roots:
        return 1
    sub = subsystem(d, roots)
    rd = RootDatum(None, sub.cartan, "adjoint")
    return rd.weyl_order()


def stabilizer_by_orbit(s: KacPoint, d: RootDatum, limit: int = DEFAULT_GUARD) -> int:
    """|W_s| = |W| / |W . s|, the orbit taken on X_*(d)/m X_*(d)."""
    m = s.order

    def key(lam):
        return tuple(v % m for v in d.cocharacter_coordinates(lam))

    start = tuple(s.numerator)
    seen = {key(start)}
    stack = [start]
    while stack:
        v = stack.pop()
        for i in range(d.rank):
            u = d.reflect_coweight(i, v)
            k = key(u)
            if k not in seen:
                seen.add(k)
                if len(seen) > limit:
                    raise ResourceGuardExceeded("Weyl orbit exceeds the enumeration limit")
                stack.append(u)
    return d.weyl_order() // len(seen)


def component_group(
    s: KacPoint,
    d: RootDatum,
    sigma: Sequence[int] | None = None,
    max_weyl: int = DEFAULT_GUARD,
    require_exhaustive: bool = False,
) -> ComponentGroup:
    """pi_0 of the centralizer of s, as W_s / W(Phi_H).

    W_s modulo W(Phi_H) is identified with the alcove stabilizers Omega_x
    fixing the Kac coordinates of the alcove representative; the coset
    representatives are their linear parts.  When |W| is within ``max_weyl``
    the count is confirmed by an orbit computation of |W_s|; otherwise the
    answer comes from the alcove stabilizers alone (confidence "generated").
    """
    d.require_irreducible()
    a = _affine(d)
    s = reduce_point(s, d)
    p = alcove_reduce(s, d)
    stab = [e for e in a.omega if all(p.kac[e.perm[i]] == p.kac[i] for i in range(len(p.kac)))]
    over = d.weyl_order() > max_weyl
    if over and require_exhaustive:
        return ComponentGroup("not-computed", "none", alcove=p, note=f"|W| = {d.weyl_order()} exceeds the guard {max_weyl}")
    labels = tuple(e.label for e in stab)
    index = {lab: k for k, lab in enumerate(labels)}
    table = tuple(tuple(index[a.compose(x, y).label] for y in stab) for x in stab)
    frob = ()
    if sigma is not None:
        form = FrobeniusForm(a, tuple(sigma), 0)
        frob = tuple(index[form.sigma_on_omega(e).label] for e in stab)
    roots = [g for g in d.roots if s.pair(g) % s.order == 0]
    wh = _weyl_order_of(d, roots)
    ws = None
    confidence = "generated"
    if not over:
        ws = stabilizer_by_orbit(s, d, limit=max_weyl)
        if ws != wh * len(stab):
            raise AssertionError("stabilizer count disagrees with the alcove computation")
        confidence = "exhaustive"
    return ComponentGroup(
        "computed",
        confidence,
        labels,
        tuple(e.linear for e in stab),
        table,
        frob,
        ws,
        wh,
        p,
    )


# --------------------------------------------------------------------------
# Frobenius rationality


def _is_prime_power(q: int) -> bool:
    if q < 2:
        return False
    p = next(k for k in range(2, q + 1) if q % k == 0)
    while q % p == 0:
        q //= p
    return q == 1


def _sigma_coweight(sigma: Sequence[int], lam: Sequence[int]) -> tuple[int, ...]:
    out = [0] * len(lam)
    for i, v in enumerate(lam):
        out[sigma[i]] = v
    return tuple(out)


def frobenius_rational(s: KacPoint, d: RootDatum, q: int, sigma: Sequence[int] | None = None) -> bool:
    """Whether the conjugacy class of s is stable under s -> sigma(s)^q.

    Both q sigma(lambda)/m and lambda/m are brought to canonical alcove form
    and compared.
    """
    if not _is_prime_power(q):
        raise ValueError(f"q = {q} is not a prime power")
    if math.gcd(q, s.order) != 1:
        raise ValueError("q must be coprime to the order of s")
    sigma = tuple(range(d.rank)) if sigma is None else tuple(sigma)
    twisted = KacPoint(tuple(q * v for v in _sigma_coweight(sigma, s.numerator)), s.order)
    return canonical_form(twisted, d).kac == canonical_form(s, d).kac


def fixed_on_the_nose(s: KacPoint, d: RootDatum, q: int, sigma: Sequence[int] | None = None) -> bool:
    """q sigma(lambda) = lambda modulo m X_*(d), without Weyl conjugation."""
    sigma = tuple(range(d.rank)) if sigma is None else tuple(sigma)
    diff = [q * a - b for a, b in zip(_sigma_coweight(sigma, s.numerator), s.numerator)]
    coords = d.cocharacter_coordinates(diff)
    return all(c % s.order == 0 for c in coords)


# --------------------------------------------------------------------------
# the standard representation of an orthogonal dual group


def standard_weights(family: str, n: int) -> list[tuple[Fraction, ...]]:
    """e_1..e_n in simple-root coordinates (Bourbaki numbering)."""
    out = []
    if family == "B":
        for i in range(n):
            out.append(tuple(Fraction(int(j >= i)) for j in range(n)))
    elif family == "D":
        half = Fraction(1, 2)
        for i in range(n):
            if i == n - 1:
                v = [Fraction(0)] * n
                v[n - 2], v[n - 1] = -half, half
            else:
                v = [Fraction(int(i <= j <= n - 3)) for j in range(n)]
                v[n - 2] += half
                v[n - 1] += half
            out.append(tuple(v))
    else:
        raise ValueError("standard representation weights need an orthogonal type (B or D)")
    return out


def standard_cocharacters(family: str, n: int) -> list[tuple[int, ...]]:
    """The cocharacters e_k^* of SO_{2n+1} or SO_{2n} in fundamental-coweight coordinates."""
    if family == "B":
        roots = [[int(k == i) - int(k == i + 1) for k in range(n)] for i in range(n - 1)] + [[int(k == n - 1) for k in range(n)]]
    elif family == "D":
        roots = [[int(k == i) - int(k == i + 1) for k in range(n)] for i in range(n - 1)]
        roots.append([int(k >= n - 2) for k in range(n)])
    else:
        raise ValueError("orthogonal types only")
    return [tuple(roots[i][k] for i in range(n)) for k in range(n)]


def orthogonal_datum(family: str, n: int) -> RootDatum:
    """Root datum of SO_{2n+1} (family B) or SO_{2n} (family D)."""
    from .rootcore import build_root_datum

    if family == "B":
        return build_root_datum(f"B{n}", "adjoint")
    return build_root_datum(f"D{n}", "intermediate", standard_cocharacters("D", n))


@dataclass(frozen=True)
class EigenvalueReport:
    phases: tuple[Fraction, ...]

    @property
    def has_one(self) -> bool:
        return Fraction(0) in self.phases

    @property
    def has_minus_one(self) -> bool:
        return Fraction(1, 2) in self.phases


def standard_rep_eigenvalues(s: KacPoint, d: RootDatum) -> EigenvalueReport:
    """Phases of s on the standard representation: weights +-e_i (and 0 for B_n)."""
    ct = d.cartan_type
    if ct is None or ct.family not in "BD":
        raise ValueError("standard representation eigenvalues need a dual group of type B or D")
    ws = standard_weights(ct.family, ct.rank)
    phases = []
    for w in ws:
        val = sum(c * v for c, v in zip(w, s.numerator))
        if val.denominator != 1:
            raise ValueError("weights of the standard representation do not pair integrally with lambda")
        for sign in (1, -1):
            phases.append(Fraction((sign * int(val)) % s.order, s.order))
    if ct.family == "B":
        phases.append(Fraction(0))
    return EigenvalueReport(tuple(sorted(phases)))


# --------------------------------------------------------------------------
# the index identity


@dataclass
class IndexReport:
    status: str
    image_from_H: tuple[int, ...]  # Omega_G labels reached from Omega_{H,x}^Frob
    image_in_G: tuple[int, ...]  # Omega_{G,x}^Frob elements meeting W~_H
    omega_G_x: tuple[int, ...]
    note: str = ""

    @property
    def agrees(self) -> bool:
        return self.status == "computed" and set(self.image_from_H) == set(self.image_in_G)

    @property
    def order(self) -> int:
        return len(self.image_in_G)


def index_identity_check(
    roots_H: Sequence[Root],
    F: Facet,
    limit: int = DEFAULT_GUARD,
) -> IndexReport:
    """Image of Omega_{H,x}^Frob in Omega_{G,x}^Frob, computed two ways.

    ``F`` lives on the affine diagram of G (the group whose roots contain
    ``roots_H``); x is the barycenter of its removed vertices.

    Route one walks Omega_{H,x}: the elements t_mu w (w in W(Phi_H), mu in X_*)
    that preserve the H-alcove containing the fundamental alcove and fix x.
    Such an element has finite order, so its class in X_*/<Phi_H^vee> is
    torsion; each torsion class is realized by walking a translation back to
    the H-alcove.  The survivors are sent to Omega_G by an alcove walk.  Route
    two keeps those omega in Omega_{G,x}^Frob for which some u in the finite
    Weyl group of the facet makes the linear part of u omega lie in W(Phi_H).
    """
    a = F.form.affine
    b = a.base
    if not F.form.is_split:
        return IndexReport("not-computed", (), (), (), "only split forms are handled")
    sub = subsystem(b, roots_H)
    x = F.barycenter()
    r = b.rank
    omega_x = tuple(e.label for e in a.omega if a.apply_map(AffineMap(e.translation, e.linear.word), x) == x)
    # route one
    qH = fundamental_group(b, [b.coroot(g) for g in sub.roots] if sub.roots else [])
    walker = _SubAlcove(a, sub)
    torsion = [(k, d) for k, d in enumerate(qH.invariant_factors) if d]
    from_H = set()
    for coeffs in product(*(range(d) for _, d in torsion)):
        lam = [0] * r
        for (k, _), c in zip(torsion, coeffs):
            lam = [u + c * v for u, v in zip(lam, qH.generator_reps[k])]
        n = walker.walk(AffineMap(tuple(lam), ()))
        if a.apply_map(n, x) == x:
            from_H.add(a.omega_of_map(n).label)
    # route two
    p = a.interior_point
    walls = [a.reflection_map(a.gradient(i), a.affine_basis[i][1]) for i in sorted(F.delta_F)]
    ident = AffineMap(tuple([0] * r), ())
    seen = {a.apply_map(ident, p): ident}
    stack = [ident]
    while stack:
        u = stack.pop()
        for s_ in walls:
            v = a.compose_maps(s_, u)
            key = a.apply_map(v, p)
            if key not in seen:
                seen[key] = v
                if len(seen) > limit:
                    raise ResourceGuardExceeded("facet Weyl group exceeds the enumeration limit")
                stack.append(v)
    in_G = []
    for lab in omega_x:
        e = a.omega_by_label(lab)
        om = AffineMap(e.translation, e.linear.word)
        if any(sub.weyl_contains(a.compose_maps(u, om).word) for u in seen.values()):
            in_G.append(lab)
    return IndexReport("computed", tuple(sorted(from_H)), tuple(in_G), omega_x)


def parse_kac_points(text: str, d: RootDatum) -> list[KacPoint]:
    """Read {"points": [{"order": m, "coweight": [...]}, {"kac": [...]}]}."""
    data = json.loads(text)
    out = []
    for item in data["points"]:
        if "kac" in item:
            out.append(kac_point(item["kac"], d))
        else:
            out.append(KacPoint(tuple(int(v) for v in item["coweight"]), int(item["order"])))
    return out
