"""Certificates for the pinning lemmas, the pinning-preservation theorem and the facet atlas.

Every check returns a :class:`Certificate` whose verdict is one of
``verified``, ``failed``, ``not-computed`` or ``not-applicable``.  Failed
certificates carry the offending data in ``witness``.
"""

from __future__ import annotations

import json
import random
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any, Sequence

import numpy as np

from .affine import (
    AffineRootSystem,
    Facet,
    FrobeniusForm,
    OmegaElement,
    diagram_automorphism,
    facet_stabilizer,
    maximal_facets,
    reductive_quotient,
    vertex_test,
)
from .chevalley import ChevalleyAlgebra, TorusSign, sign_action, tits_lift
from .lattice import solve_integer, solve_mod2
from .rootcore import (
    CartanType,
    ResourceGuardExceeded,
    Root,
    RootDatum,
    WeylElement,
    build_root_datum,
    coxeter_number,
    highest_root,
)

VERDICTS = ("verified", "failed", "not-computed", "not-applicable")
DEFAULT_GUARD = 60_000


@dataclass
class Certificate:
    claim: str
    scope: dict
    verdict: str
    witness: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"unknown verdict {self.verdict!r}")

    @property
    def ok(self) -> bool:
        return self.verdict == "verified"

    def to_dict(self) -> dict:
        return _jsonable(asdict(self))


def _jsonable(x: Any):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        return [_jsonable(v) for v in x]
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, np.integer):
        return int(x)
    return x


@lru_cache(maxsize=32)
def _setup(name: str) -> tuple[RootDatum, ChevalleyAlgebra, AffineRootSystem]:
    d = build_root_datum(name, "adjoint")
    return d, ChevalleyAlgebra(d), AffineRootSystem(d)


def _type_name(ctype: CartanType | str) -> str:
    ct = CartanType.parse(ctype) if isinstance(ctype, str) else ctype
    return f"{ct.family}{ct.rank}"


def _excluded(ctype: CartanType | str) -> bool:
    """Types outside the standing assumption of the lemmas (projective linear groups)."""
    ct = CartanType.parse(ctype) if isinstance(ctype, str) else ctype
    return ct.family == "A"


# --------------------------------------------------------------------------
# the elements y_alpha and y'_alpha


def long_simple(d: RootDatum) -> list[int]:
    return [i for i, s in enumerate(d.simple_roots) if d.is_long(s)]


def theta_stabilizer_nodes(d: RootDatum) -> list[int]:
    theta, _ = highest_root(d)
    return [i for i, s in enumerate(d.simple_roots) if d.pair_roots(s, theta) == 0]


def y_element(d: RootDatum, i: int) -> WeylElement:
    """The minimal y with y(alpha_i) = theta."""
    theta, _ = highest_root(d)
    g = d.simple_roots[i]
    applied = []
    while g != theta:
        j = next(j for j in range(d.rank) if d.pair_roots(g, d.simple_roots[j]) < 0)
        g = d.reflect(j, g)
        applied.append(j)
    v = d.weyl_from_word(tuple(reversed(applied)))
    J = theta_stabilizer_nodes(d)
    while True:
        img = d.rho_image(v)
        # s_j v is shorter iff v^{-1} alpha_j < 0 iff <alpha_j, v rho^vee> < 0
        j = next((j for j in J if img[j] < 0), None)
        if j is None:
            return v
        v = d.weyl_from_word((j,) + v.word)


def y_prime_element(d: RootDatum, i: int) -> WeylElement:
    return d.multiply(d.longest_element, y_element(d, i))


def stabilizer_elements(d: RootDatum, J: Sequence[int], limit: int) -> list[WeylElement]:
    """All elements of the parabolic subgroup W_J (guarded)."""
    start = d.identity()
    seen = {d.rho_image(start): start}
    stack = [start]
    while stack:
        w = stack.pop()
        for j in J:
            u = d.weyl_from_word((j,) + w.word)
            key = d.rho_image(u)
            if key not in seen:
                seen[key] = u
                if len(seen) > limit:
                    raise ResourceGuardExceeded(f"parabolic subgroup exceeds {limit} elements")
                stack.append(u)
    return list(seen.values())


# --------------------------------------------------------------------------
# lemma certificates


def verify_highest_root_indep(ctype, limit: int = 5_000, samples: int = 300, seed: int = 0) -> Certificate:
    """n(w) X_alpha is the same for every w with w(alpha) = -theta (alpha long simple)."""
    name = _type_name(ctype)
    scope = {"type": name}
    if _excluded(ctype):
        return Certificate("highest_root_indep", scope, "not-applicable", {"reason": "projective linear type"})
    d, A, _ = _setup(name)
    theta, _ = highest_root(d)
    mtheta = tuple(-c for c in theta)
    J = theta_stabilizer_nodes(d)
    # rank-two reduction: every generator of Stab(theta) fixes X_theta
    gens = {j: sign_action((j,), theta, A) for j in J}
    bad_gens = {j: s for j, s in gens.items() if s != (theta, 1)}
    method = "exhaustive"
    results = {}
    for i in long_simple(d):
        alpha = d.simple_roots[i]
        values = set()
        count = 0
        if d.rank <= 4:
            for v in d.enumerate_weyl(DEFAULT_GUARD):
                w = d.weyl_from_rho(v)
                if d.act(w, alpha) == mtheta:
                    values.add(sign_action(w, alpha, A))
                    count += 1
        else:
            yp = y_prime_element(d, i)
            try:
                stab = stabilizer_elements(d, J, limit)
                method = "stabilizer-enumeration"
            except ResourceGuardExceeded:
                rng = random.Random(seed)
                stab = [d.weyl_from_word([rng.choice(J) for _ in range(rng.randint(0, 3 * len(J)))]) for _ in range(samples)]
                method = "stabilizer-sampled"
            for v in stab:
                w = d.multiply(d.inverse(v), yp)
                assert d.act(w, alpha) == mtheta
                values.add(sign_action(w, alpha, A))
                count += 1
        results[i + 1] = {"lifts": count, "distinct_images": len(values)}
        if len(values) != 1:
            return Certificate("highest_root_indep", scope, "failed", {"alpha": i + 1, "images": sorted(values)})
    if bad_gens:
        return Certificate("highest_root_indep", scope, "failed", {"stabilizer_generators": bad_gens})
    return Certificate("highest_root_indep", scope, "verified", {"method": method, "per_alpha": results})


def _inverse_on_root(M: np.ndarray, A: ChevalleyAlgebra, g: Root) -> tuple[Root, int]:
    """n^{-1} X_g for a matrix acting by signed permutation on root spaces."""
    row = M[A.index[g], :]
    nz = [k for k in np.nonzero(row)[0] if k >= A.rank]
    assert len(nz) == 1 and abs(row[nz[0]]) == 1
    k = nz[0]
    return A.roots[k - A.rank], int(row[k])


def verify_y_vs_y_prime(ctype) -> Certificate:
    """n(y'_alpha) X_alpha = n(w0)^{-1} n(y_alpha) X_alpha for every long simple alpha."""
    name = _type_name(ctype)
    scope = {"type": name}
    d, A, _ = _setup(name)
    h = coxeter_number(d)
    if h % 2:
        raise ValueError(f"{name} has odd Coxeter number {h}; the identity is only claimed for even Coxeter number")
    if _excluded(ctype):
        return Certificate("y_vs_y_prime", scope, "not-applicable", {"reason": "projective linear type", "coxeter_number": h})
    n0 = tits_lift(d.longest_element, A).matrix
    rows = {}
    for i in long_simple(d):
        alpha = d.simple_roots[i]
        lhs = sign_action(y_prime_element(d, i), alpha, A)
        g, s = sign_action(y_element(d, i), alpha, A)
        g2, s2 = _inverse_on_root(n0, A, g)
        rhs = (g2, s * s2)
        rows[i + 1] = {"lhs": lhs, "rhs": rhs}
        if lhs != rhs:
            return Certificate("y_vs_y_prime", scope, "failed", {"alpha": i + 1, "lhs": lhs, "rhs": rhs})
    return Certificate("y_vs_y_prime", scope, "verified", {"coxeter_number": h, "rows": rows})


def theta_signs(d: RootDatum, A: ChevalleyAlgebra) -> dict[int, int]:
    """Sign of n(y_alpha) X_alpha against X_theta, for each long simple alpha (zero based)."""
    theta, _ = highest_root(d)
    out = {}
    for i in long_simple(d):
        g, s = sign_action(y_element(d, i), d.simple_roots[i], A)
        assert g == theta
        out[i] = s
    return out


def verify_dist_of_root(ctype) -> Certificate:
    """n(y_beta) X_beta = -n(y_alpha) X_alpha for adjacent long simple roots."""
    name = _type_name(ctype)
    scope = {"type": name}
    if _excluded(ctype):
        return Certificate("dist_of_root", scope, "not-applicable", {"reason": "projective linear type"})
    d, A, _ = _setup(name)
    longs = long_simple(d)
    pairs = [(i, j) for i in longs for j in longs if i < j and d.cartan[i][j] == -1 and d.cartan[j][i] == -1]
    if not pairs:
        return Certificate("dist_of_root", scope, "not-applicable", {"reason": "no adjacent long simple roots"})
    signs = theta_signs(d, A)
    for i, j in pairs:
        if signs[i] != -signs[j]:
            return Certificate("dist_of_root", scope, "failed", {"pair": (i + 1, j + 1), "signs": (signs[i], signs[j])})
    # even paths in the long subgraph compose to +1
    parity = _long_parity(d, longs, pairs)
    for i in longs:
        for j in longs:
            if parity.get((i, j)) == 0 and signs[i] != signs[j]:
                return Certificate("dist_of_root", scope, "failed", {"even_path": (i + 1, j + 1)})
    return Certificate(
        "dist_of_root",
        scope,
        "verified",
        {"pairs": [(i + 1, j + 1) for i, j in pairs], "signs": {i + 1: s for i, s in signs.items()}},
    )


def _long_parity(d, longs, pairs) -> dict[tuple[int, int], int]:
    adj = {i: [] for i in longs}
    for i, j in pairs:
        adj[i].append(j)
        adj[j].append(i)
    out = {}
    for s in longs:
        dist = {s: 0}
        queue = [s]
        while queue:
            u = queue.pop(0)
            for v in adj[u]:
                if v not in dist:
                    dist[v] = dist[u] + 1
                    queue.append(v)
        for t, k in dist.items():
            out[(s, t)] = k % 2
    return out


def cp_prop71_check(ctype, alpha: int | None = None) -> Certificate:
    """Combinatorics of the minimal y_alpha with y_alpha(alpha) = theta (alpha one based, long).

    Certifies, for each long simple alpha:

    * the inversion set {gamma > 0 : y_alpha gamma < 0} equals
      {gamma > 0 : <gamma, alpha^vee> = -1};
    * the reduced word of y_alpha uses s_beta m_beta^vee times for beta != alpha
      and 1 + m_alpha^vee times for alpha, where m_beta^vee = m_beta (beta,beta)/(theta,theta);
    * the inversion set has 1 + sum_long m_beta^vee long and sum_short m_beta^vee short roots;
    * sum over N(y_alpha) of <theta, gamma^vee> equals 1 + sum m_beta (the Coxeter number).

    The recomputed values are always reported next to the claimed ones, as is
    the parity of the Coxeter sum (the only consequence the pinning argument
    uses).
    """
    name = _type_name(ctype)
    d, A, _ = _setup(name)
    theta, marks = highest_root(d)
    longs = long_simple(d)
    targets = [alpha - 1] if alpha is not None else longs
    rows = {}
    tt = d.norm2(theta)
    h = coxeter_number(d)
    verdict = "verified"
    for i in targets:
        if i not in longs:
            raise ValueError("alpha must be a long simple root")
        a = d.simple_roots[i]
        y = y_element(d, i)
        inv = set(d.inversion_set(y))
        pairing = {g for g in d.positive_roots if d.pair_roots(g, a) == -1}
        mvee = {}
        for b in range(d.rank):
            mc = Fraction(marks[b] * d.norm2(d.simple_roots[b]), tt)
            assert mc.denominator == 1
            mvee[b] = int(mc)
        claimed_letters = {b + 1: mvee[b] + (1 if b == i else 0) for b in range(d.rank)}
        letters = {b + 1: y.word.count(b) for b in range(d.rank)}
        n_long = sum(1 for g in inv if d.is_long(g))
        n_short = len(inv) - n_long
        claimed_counts = (
            1 + sum(mvee[b] for b in range(d.rank) if d.is_long(d.simple_roots[b])),
            sum(mvee[b] for b in range(d.rank) if not d.is_long(d.simple_roots[b])),
        )
        ny = [tuple(-c for c in d.act(y, g)) for g in inv]
        total = sum(d.pair_roots(theta, g) for g in ny)
        total_pairing = -sum(d.pair_roots(a, g) for g in pairing)
        claimed_total = 1 + sum(marks.values())
        checks = {
            "inversion_set": inv == pairing,
            "letter_counts": letters == claimed_letters,
            "long_short_counts": (n_long, n_short) == claimed_counts,
            "coxeter_sum": total == total_pairing == claimed_total == h,
        }
        rows[i + 1] = {
            "length": y.length,
            "letters": letters,
            "claimed_letters": claimed_letters,
            "counts": (n_long, n_short),
            "claimed_counts": claimed_counts,
            "coxeter_sum": total,
            "claimed_coxeter_sum": claimed_total,
            "coxeter_number": h,
            "sum_parity_matches_coxeter_parity": (total - h) % 2 == 0 and total == total_pairing,
            "checks": checks,
        }
        if not all(checks.values()):
            verdict = "failed"
    return Certificate("cp_prop71", {"type": name, "alpha": alpha}, verdict, {"rows": rows})


def lemma_suite(ctype) -> list[Certificate]:
    out = [verify_highest_root_indep(ctype)]
    try:
        out.append(verify_y_vs_y_prime(ctype))
    except ValueError as e:
        out.append(Certificate("y_vs_y_prime", {"type": _type_name(ctype)}, "not-applicable", {"reason": str(e)}))
    out.append(verify_dist_of_root(ctype))
    out.append(cp_prop71_check(ctype))
    return out


# --------------------------------------------------------------------------
# the pinning-preservation theorem


@dataclass(frozen=True)
class GradedPinnedVector:
    """sign * varpi^grade * X_root."""

    root: Root
    sign: int
    grade: int


@dataclass
class PinnedLift:
    """Action of a candidate lift t' n(w) on the pinning of Delta_F, node by node."""

    omega: int
    images: dict[int, tuple[int, int, int]]  # node -> (image node, sign, grade residual)
    nu: tuple[int, ...]
    torus_correction: tuple[int, ...] | None = None

    @property
    def preserves(self) -> bool:
        return all(s == 1 and g == 0 for _, s, g in self.images.values())

    def compose(self, other: "PinnedLift") -> "PinnedLift":
        out = {}
        for i, (j, s, g) in other.images.items():
            k, s2, g2 = self.images[j]
            out[i] = (k, s * s2, g + g2)
        nu = tuple(a + b for a, b in zip(self.nu, other.nu))
        return PinnedLift(-1, out, nu)


def _form_scope(form: FrobeniusForm, F: Facet) -> dict:
    return {
        "type": str(form.affine.base.cartan_type),
        "sigma": list(form.sigma),
        "inner_twist": form.inner,
        "facet": sorted(F.delta_F),
    }


def pinning_base_root(a: AffineRootSystem, stab: Sequence[OmegaElement]) -> int:
    """The simple root (one based node) used to normalize X_{-theta}."""
    ct = a.base.cartan_type
    if ct.family == "D" and ct.rank % 2 == 1 and len(stab) == 4:
        gen = next(e for e in stab if a.compose(e, e).label != 0)
        return next(i for i in range(1, a.rank + 1) if gen.perm[i] == 0)
    return next(i for i in range(1, a.rank + 1) if a.marks[i] == 1)


def _pinning_signs(a: AffineRootSystem, A: ChevalleyAlgebra, base: int) -> dict[int, int]:
    """Pinning vectors P_i = p_i X_{grad i}; p_0 normalizes X_{-theta} := n(y'_alpha) X_alpha."""
    d = a.base
    g, s = sign_action(y_prime_element(d, base - 1), d.simple_roots[base - 1], A)
    assert g == a.gradient(0)
    p = {i: 1 for i in range(a.rank + 1)}
    p[0] = s
    return p


def pinned_lift(a: AffineRootSystem, A: ChevalleyAlgebra, F: Facet, e: OmegaElement, p: dict[int, int], correct: bool = True) -> PinnedLift:
    """t' n(w) for omega = t_lambda w acting on the graded pinning of Delta_F."""
    d = a.base
    nodes = sorted(F.delta_F)
    level = {i: a.affine_basis[i][1] for i in range(a.rank + 1)}
    signs = {}
    for i in nodes:
        g, c = sign_action(e.linear, a.gradient(i), A)
        j = e.perm[i]
        assert g == a.gradient(j)
        signs[i] = p[i] * c * p[j]
    # grade shift nu with N_i + <grad_j, nu> = N_j
    rows = [list(a.gradient(e.perm[i])) for i in nodes]
    rhs = [level[e.perm[i]] - level[i] for i in nodes]
    nu = solve_integer(rows, rhs) if rows else [0] * d.rank
    if nu is None:
        nu = [0] * d.rank
    images = {}
    for i in nodes:
        j = e.perm[i]
        resid = level[i] + sum(x * y for x, y in zip(a.gradient(j), nu)) - level[j]
        images[i] = (j, signs[i], resid)
    lift = PinnedLift(e.label, images, tuple(nu))
    if correct and not lift.preserves and all(r == 0 for _, _, r in images.values()):
        # torus 2-elements t with (-1)^{<grad_j, t>} = sign_i
        sol = solve_mod2([list(a.gradient(images[i][0])) for i in nodes], [0 if images[i][1] == 1 else 1 for i in nodes])
        if sol is not None:
            t = TorusSign(tuple(sol))
            fixed = {i: (j, s * t(a.gradient(j)), r) for i, (j, s, r) in images.items()}
            lift = PinnedLift(e.label, fixed, tuple(nu), tuple(sol))
    return lift


def _form_class(form: FrobeniusForm) -> str:
    ct = form.affine.base.cartan_type
    if form.inner == 0:
        return "quasi-split"
    if form.sigma != tuple(range(len(form.sigma))):
        return "outer-inner"
    if ct.family == "D" and ct.rank % 2 == 0:
        return "inner-D-even"
    return "inner"


def verify_pinning_theorem(form: FrobeniusForm, F: Facet) -> Certificate:
    """A lift of every omega in Omega_{G,F}^Frob stabilizes a Frob-stable pinning of Delta_F."""
    a = form.affine
    d = a.base
    scope = _form_scope(form, F)
    kind = _form_class(form)
    if kind == "inner-D-even":
        return Certificate("pinning_theorem", scope, "not-computed", {"reason": "inner form of type D_2n: outside the twisted-form hypotheses"})
    if kind == "outer-inner":
        return Certificate("pinning_theorem", scope, "not-applicable", {"reason": "non-quasi-split outer form"})
    stab = facet_stabilizer(F)
    elements = stab.elements if kind == "inner" else stab.frobenius_fixed
    name = _type_name(d.cartan_type)
    _, A, _ = _setup(name)
    witness: dict = {"omega": [e.label for e in elements]}
    if d.cartan_type.family == "A" and form.is_split and 0 in F.delta_F:
        # every vertex is hyperspecial: transport the facet off the affine node first
        c = next(e for e in a.omega if 0 not in {e.perm[i] for i in F.delta_F})
        F2 = Facet(frozenset(c.perm[i] for i in F.delta_F), form)
        inner = verify_pinning_theorem(form, F2)
        inner.scope = scope
        inner.witness["transported_by"] = c.label
        return inner
    if len(elements) == 1:
        # only the identity has to be lifted (e.g. odd projective unitary groups)
        lift = PinnedLift(0, {i: (i, 1, 0) for i in F.delta_F}, tuple([0] * d.rank))
        witness["path"] = "trivial-stabilizer"
        witness["lifts"] = {0: {"nu": lift.nu, "torus_correction": None, "images": lift.images}}
        return Certificate("pinning_theorem", scope, "verified", witness)
    if 0 not in F.delta_F:
        p = {i: 1 for i in range(a.rank + 1)}
        witness["path"] = "standard"
    else:
        if len(a.all_omega) == 1:
            p = {i: 1 for i in range(a.rank + 1)}
            witness["path"] = "trivial-omega"
        else:
            base = pinning_base_root(a, elements)
            p = _pinning_signs(a, A, base)
            witness["path"] = "affine"
            witness["base_root"] = base
            witness["x_minus_theta_sign"] = p[0]
            if not form.is_split and kind == "quasi-split":
                sb = form.sigma[base - 1] + 1
                img = sign_action(y_prime_element(d, sb - 1), d.simple_roots[sb - 1], A)
                witness["frobenius_stable"] = img == (a.gradient(0), p[0])
                if not witness["frobenius_stable"]:
                    return Certificate("pinning_theorem", scope, "failed", witness)
    lifts = {}
    cyclic4 = d.cartan_type.family == "D" and d.cartan_type.rank % 2 == 1 and len(elements) == 4
    if cyclic4:
        gen = next(e for e in elements if a.compose(e, e).label != 0)
        L = pinned_lift(a, A, F, gen, p)
        cur = PinnedLift(0, {i: (i, 1, 0) for i in F.delta_F}, tuple([0] * d.rank))
        e = a.omega_by_label(0)
        for _ in range(4):
            lifts[e.label] = cur
            cur = L.compose(cur)
            e = a.compose(gen, e)
        witness["generator"] = gen.label
    else:
        for e in elements:
            lifts[e.label] = pinned_lift(a, A, F, e, p)
    witness["lifts"] = {
        lab: {"nu": L.nu, "torus_correction": L.torus_correction, "images": L.images} for lab, L in lifts.items()
    }
    bad = {lab: L.images for lab, L in lifts.items() if not L.preserves}
    if bad:
        witness["offending"] = bad
        return Certificate("pinning_theorem", scope, "failed", witness)
    return Certificate("pinning_theorem", scope, "verified", witness)


def unramified_forms(a: AffineRootSystem) -> list[FrobeniusForm]:
    """Split, quasi-split outer and inner forms (one Frobenius per diagram action)."""
    ct = a.base.cartan_type
    out = []
    seen = set()
    twists = [1]
    if ct.family == "A" and ct.rank >= 2 or ct.family == "D" or (ct.family == "E" and ct.rank == 6):
        twists.append(2)
    if ct.family == "D" and ct.rank == 4:
        twists.append(3)
    for t in twists:
        sigma = diagram_automorphism(CartanType(ct.family, ct.rank, t) if t > 1 else ct, t)
        for e in a.omega:
            f = FrobeniusForm(a, sigma, e.label)
            if f.perm in seen:
                continue
            seen.add(f.perm)
            out.append(f)
    return out


# --------------------------------------------------------------------------
# atlas


def special_configurations(family: str, rank: int, form_kind: str) -> set[frozenset[int]] | None:
    """Removed-node sets of maximal facets with disconnected center and nontrivial stabilizer.

    Known classification for the split forms (and the non-split inner form of
    E6); None where no classification is recorded.
    """
    n = rank
    if form_kind == "split":
        if family == "A":
            return set()
        if family == "C":
            return {frozenset({n // 2})} if n % 2 == 0 else set()
        if family == "B":
            return {frozenset({k}) for k in range(2, n + 1)}
        if family == "D":
            return {frozenset({k}) for k in range(2, n - 1)}
        if family == "E" and n == 6:
            return {frozenset({4})}
        if family == "E" and n == 7:
            return {frozenset({2}), frozenset({4})}
        if family in "EFG":
            return set()
    if form_kind == "inner" and family == "E" and n == 6:
        return {frozenset({4}), frozenset({2, 3, 5})}
    return None


@dataclass
class AtlasRow:
    removed: tuple[int, ...]
    delta_F: tuple[int, ...]
    shape: tuple[str, ...]
    center_torsion: tuple[int, ...]
    omega_order: int
    omega_frob_order: int
    flagged: bool
    vertex: bool


@dataclass
class AtlasReport:
    type: str
    form: dict
    rows: list[AtlasRow]
    flagged: list[tuple[int, ...]]
    expected: list[tuple[int, ...]] | None
    matches: bool | None
    alcove: str

    def to_dict(self) -> dict:
        return _jsonable(asdict(self))


def atlas_report(ctype, form: FrobeniusForm | None = None) -> AtlasReport:
    """Maximal Frobenius-stable facets with center torsion and stabilizers."""
    from .affine import ALCOVE_NOTE

    name = _type_name(ctype)
    d, _, a = _setup(name)
    if form is None:
        form = FrobeniusForm(a, tuple(range(d.rank)), 0)
    rows = []
    for F in maximal_facets(form):
        st = facet_stabilizer(F)
        rq = reductive_quotient(F)
        flagged = bool(rq.center_torsion) and st.order > 1
        rows.append(
            AtlasRow(F.removed, tuple(sorted(F.delta_F)), rq.shape, rq.center_torsion, st.order, st.fixed_order, flagged, vertex_test(F))
        )
    flagged = sorted(r.removed for r in rows if r.flagged)
    kind = "split" if form.is_split else ("inner" if form.sigma == tuple(range(d.rank)) else "outer")
    exp = special_configurations(d.cartan_type.family, d.rank, kind)
    expected = sorted(tuple(sorted(s)) for s in exp) if exp is not None else None
    matches = None if expected is None else expected == flagged
    return AtlasReport(name, form.describe(), rows, flagged, expected, matches, ALCOVE_NOTE)


def certificates_to_json(certs: Sequence[Certificate]) -> str:
    return json.dumps([c.to_dict() for c in certs], indent=2, sort_keys=True)
