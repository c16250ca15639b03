"""Order polynomials of finite reductive groups and the exponent bookkeeping of formal degrees.

A finite reductive group of rank r over F_q has order

    q^N * prod_i (q^{d_i} - eps_i)

with N the number of positive roots, d_i the degrees of the Weyl group and
eps_i roots of unity (all 1 for split groups).  Roots of unity are stored as
phases k/n, eps = exp(2 pi i k/n); conjugate phases are evaluated together
through cyclotomic polynomials so that all arithmetic stays in the integers.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, prod
from typing import Sequence

import sympy

from .affine import FrobeniusForm, SubSystem
from .centralizer import PseudoLevi
from .rootcore import CartanType, RootDatum, build_root_datum, exponents_from_heights

Q = sympy.Symbol("q")


class NotComputed(Exception):
    """Raised for Frobenius twists that the tables do not cover."""


# --------------------------------------------------------------------------
# exponent tables


@dataclass(frozen=True)
class ExponentTable:
    type: str
    twist: int
    exponents: tuple[int, ...]
    phases: tuple[Fraction, ...]  # eps_i = exp(2 pi i phase_i), aligned with exponents

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(e + 1 for e in self.exponents)

    @property
    def rank(self) -> int:
        return len(self.exponents)

    @property
    def n_positive(self) -> int:
        return sum(self.exponents)

    @property
    def dimension(self) -> int:
        return sum(2 * e + 1 for e in self.exponents)


@lru_cache(maxsize=None)
def _untwisted_exponents(name: str) -> tuple[int, ...]:
    d = build_root_datum(CartanType.parse(name))
    return tuple(exponents_from_heights(d))


def _twisted_phases(family: str, rank: int, twist: int, degrees: Sequence[int]) -> tuple[Fraction, ...]:
    half, third = Fraction(1, 2), Fraction(1, 3)
    if twist == 2 and family == "A" and rank >= 2:
        # unitary groups: q^d - (-1)^d
        return tuple(half if deg % 2 else Fraction(0) for deg in degrees)
    if twist == 2 and family == "D" and rank >= 3:
        # non-split orthogonal groups: only the Pfaffian degree n changes sign
        out, used = [], False
        for deg in degrees:
            if deg == rank and not used:
                out.append(half)
                used = True
            else:
                out.append(Fraction(0))
        return tuple(out)
    if twist == 3 and family == "D" and rank == 4:
        # triality: the two degree-4 invariants pick up the primitive cube roots
        out, fours = [], [third, 2 * third]
        for deg in degrees:
            out.append(fours.pop(0) if deg == 4 else Fraction(0))
        return tuple(out)
    if twist == 2 and family == "E" and rank == 6:
        # the odd degrees 5 and 9 are negated by -w_0
        return tuple(half if deg % 2 else Fraction(0) for deg in degrees)
    raise NotComputed(f"no sign data for twist {twist} of {family}{rank}")


def exponent_table(ctype: CartanType | str, twist: int = 1) -> ExponentTable:
    ct = CartanType.parse(ctype) if isinstance(ctype, str) else ctype
    twist = max(twist, ct.twist)
    name = f"{ct.family}{ct.rank}"
    ex = _untwisted_exponents(name)
    if twist == 1:
        phases = tuple(Fraction(0) for _ in ex)
    else:
        phases = _twisted_phases(ct.family, ct.rank, twist, [e + 1 for e in ex])
    return ExponentTable(name, twist, ex, phases)


# --------------------------------------------------------------------------
# order polynomials


def _cyclotomic_value(n: int, x: int) -> int:
    return int(sympy.cyclotomic_poly(n, x))


def _orbits(factors: Sequence[tuple[int, Fraction]]) -> list[tuple[int, int, int]]:
    """Group factors into Galois orbits: (degree, n, multiplicity) for Phi_n(q^degree)."""
    c = Counter(factors)
    out = []
    for deg in sorted({dg for dg, _ in c}):
        by_n: dict[int, Counter] = {}
        for (dg, ph), k in c.items():
            if dg == deg:
                by_n.setdefault(ph.denominator, Counter())[ph] = k
        for n, phs in sorted(by_n.items()):
            prim = [Fraction(j, n) for j in range(n) if gcd(j, n) == 1]
            mult = {phs.get(p, 0) for p in prim}
            if len(mult) != 1:
                raise ValueError(f"phases of degree {deg} are not closed under conjugation")
            out.append((deg, n, mult.pop()))
    return out


@dataclass(frozen=True)
class OrderPolynomial:
    """q^N * prod (q^{d_i} - exp(2 pi i phase_i))."""

    N: int
    factors: tuple[tuple[int, Fraction], ...] = ()
    label: str = ""

    def __post_init__(self):
        _orbits(self.factors)

    @property
    def rank(self) -> int:
        return len(self.factors)

    @property
    def degree(self) -> int:
        return self.N + sum(dg for dg, _ in self.factors)

    def __mul__(self, other: "OrderPolynomial") -> "OrderPolynomial":
        lab = "*".join(x for x in (self.label, other.label) if x)
        return OrderPolynomial(self.N + other.N, tuple(sorted(self.factors + other.factors)), lab)

    def pprime_value(self, q: int) -> int:
        return prod(_cyclotomic_value(n, q**deg) ** k for deg, n, k in _orbits(self.factors))

    def __call__(self, q: int) -> int:
        return q**self.N * self.pprime_value(q)

    def pprime_expr(self) -> sympy.Expr:
        return sympy.Mul(*[sympy.cyclotomic_poly(n, Q**deg) ** k for deg, n, k in _orbits(self.factors)])

    def expr(self) -> sympy.Expr:
        return Q**self.N * self.pprime_expr()

    def __str__(self) -> str:
        return str(sympy.factor(self.expr()))


def torus_polynomial(rank: int) -> OrderPolynomial:
    """Split torus of the given rank: (q - 1)^rank."""
    return OrderPolynomial(0, tuple((1, Fraction(0)) for _ in range(rank)), f"T{rank}" if rank else "")


def table_polynomial(t: ExponentTable) -> OrderPolynomial:
    lab = t.type if t.twist == 1 else f"{t.twist}{t.type}"
    return OrderPolynomial(t.n_positive, tuple(sorted(zip(t.degrees, t.phases))), lab)


def split_order_polynomial(shape: Sequence[str], rank: int) -> OrderPolynomial:
    """Split connected reductive group of the given rank with semisimple shape (e.g. ("A1", "D4"))."""
    out = OrderPolynomial(0)
    ss = 0
    for name in shape:
        t = exponent_table(name)
        out = out * table_polynomial(t)
        ss += t.rank
    if ss > rank:
        raise ValueError("semisimple rank exceeds the rank")
    return out * torus_polynomial(rank - ss)


def _sigma_order(sigma: Sequence[int]) -> int:
    k, cur = 1, list(sigma)
    while cur != list(range(len(sigma))):
        cur = [sigma[i] for i in cur]
        k += 1
    return k


def order_polynomial(d: RootDatum, form: FrobeniusForm | None = None) -> OrderPolynomial:
    """Order polynomial of the finite group of Lie type attached to d and the Frobenius of form.

    Inner twisting does not change the finite group (Lang), only the diagram
    automorphism does.
    """
    ct = d.cartan_type
    twist = ct.twist if form is None else _sigma_order(form.sigma)
    if twist == 1:
        ex = exponents_from_heights(d)
        return OrderPolynomial(sum(ex), tuple((e + 1, Fraction(0)) for e in sorted(ex)), f"{ct.family}{ct.rank}")
    return table_polynomial(exponent_table(CartanType(ct.family, ct.rank), twist))


def order_polynomial_of(H: PseudoLevi | SubSystem) -> OrderPolynomial:
    """Split order polynomial of a pseudo-Levi (connected part of the centralizer)."""
    amb = H.ambient
    sub = H.subsystem() if isinstance(H, PseudoLevi) else H
    return split_order_polynomial(sub.names, amb.rank)


# --------------------------------------------------------------------------
# exponents


def _dimension(d: RootDatum) -> int:
    return len(d.roots) + d.rank


def iwahori_volume_exponent(d: RootDatum | None) -> int:
    """Exponent of q in the volume of the pro-p Iwahori subgroup: N - dim G."""
    if d is None or d.rank == 0:
        return 0
    return len(d.positive_roots) - _dimension(d)


@dataclass(frozen=True)
class FdegRatio:
    exponent: int
    dim_G: int
    dim_H: int
    N_G: int
    N_H: int

    @property
    def routes_agree(self) -> bool:
        return 2 * (self.N_G - self.N_H) == self.dim_G - self.dim_H

    def __int__(self) -> int:
        return self.exponent


def _sub_roots(G: RootDatum, H) -> tuple[int, int, tuple[str, ...]]:
    """(rank, number of roots, component names) of H."""
    if isinstance(H, PseudoLevi):
        sub = H.subsystem() if H.roots_H else None
        return G.rank, len(H.roots_H), sub.names if sub else ()
    if isinstance(H, SubSystem):
        return G.rank, len(H.roots), H.names
    if isinstance(H, RootDatum):
        ex = exponents_from_heights(H)
        return H.rank, 2 * sum(ex), (f"{H.cartan_type.family}{H.cartan_type.rank}",)
    raise TypeError("H must be a PseudoLevi, SubSystem or RootDatum")


def fdeg_ratio_exponent(G: RootDatum, H) -> FdegRatio:
    """Exponent of q in fdeg(pi)/fdeg(pi_unip): (dim G - dim H)/2.

    The second route counts positive roots through the exponents of the
    components of H; the two must agree for equal-rank H.
    """
    rank_H, n_roots_H, names = _sub_roots(G, H)
    if rank_H != G.rank:
        raise ValueError(f"rank mismatch: {rank_H} != {G.rank}")
    dim_G = _dimension(G)
    dim_H = n_roots_H + rank_H
    diff = dim_G - dim_H
    if diff % 2:
        raise ValueError("odd dimension difference")
    N_G = sum(exponents_from_heights(G))
    N_H = sum(sum(_untwisted_exponents(n)) for n in names)
    r = FdegRatio(diff // 2, dim_G, dim_H, N_G, N_H)
    if not r.routes_agree:
        raise AssertionError(f"dimension and positive-root routes disagree: {r}")
    return r


@dataclass(frozen=True)
class TameConductor:
    conductor: int  # dim g - dim g^{I_F}
    gamma_exponent: int
    dim_g: int
    dim_h: int
    label: str = "tame-part"


def tame_adjoint_conductor(G: RootDatum, H) -> TameConductor:
    """Artin conductor of the adjoint representation of a tame parameter with g^{I_F} = h.

    The inertia-fixed part is unramified and contributes nothing; the rest is
    tamely ramified without invariants and contributes its dimension.
    """
    rank_H, n_roots_H, _ = _sub_roots(G, H)
    dim_g = _dimension(G)
    dim_h = n_roots_H + rank_H
    a = dim_g - dim_h
    return TameConductor(a, a // 2, dim_g, dim_h)


# --------------------------------------------------------------------------
# p'-parts


@dataclass(frozen=True)
class PPrimeRatio:
    """|G(k)|_{p'} / |H^1(k)|_{p'} with |H^1(k)| = c * |H(k)| for the connected part H."""

    numerator: OrderPolynomial
    denominator: OrderPolynomial
    component_order: int = 1
    q_exponent: int = 0
    q_power_certified: bool = True

    def __call__(self, q: int) -> Fraction:
        return Fraction(self.numerator.pprime_value(q), self.component_order * self.denominator.pprime_value(q))

    def reduced(self) -> sympy.Expr:
        return sympy.factor(sympy.cancel(self.numerator.pprime_expr() / (self.component_order * self.denominator.pprime_expr())))

    def __str__(self) -> str:
        return str(self.reduced())


def pprime_ratio(Gq: OrderPolynomial, Hq: OrderPolynomial, component_order: int = 1, expected_exponent: int | None = None) -> PPrimeRatio:
    """Ratio of prime-to-p parts; component_order is |pi_0(H^1)(k)| (a p'-number).

    Also certifies that the q-power parts leave q^{N_G - N_H}, half the
    dimension difference, and that this matches expected_exponent if given.
    """
    if component_order < 1:
        raise ValueError("component order must be positive")
    e = Gq.N - Hq.N
    ok = 2 * e == Gq.degree - Hq.degree and Gq.rank == Hq.rank
    if expected_exponent is not None:
        ok = ok and e == expected_exponent
    return PPrimeRatio(Gq, Hq, component_order, e, ok)


def p_part_split(n: int, p: int) -> tuple[int, int]:
    """(p-part, p'-part) of a positive integer."""
    a = 1
    while n % p == 0:
        n //= p
        a *= p
    return a, n
