"""Integer lattice utilities: quotients by sublattices and integer linear systems.

All routines take row-vector conventions: a lattice relation is a row of
integers, and a quotient Z^n / span(rows) is described through the Smith
normal form of the relation matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_decomp


def _echelon(rows: Sequence[Sequence[int]], n: int) -> list[list[int]]:
    """Integer row echelon form spanning the same lattice (at most n rows)."""
    work = [list(map(int, r)) for r in rows if any(r)]
    out: list[list[int]] = []
    for col in range(n):
        pivots = [r for r in work if r[col] != 0]
        rest = [r for r in work if r[col] == 0]
        # Euclid on the column until a single row carries it
        while len(pivots) > 1:
            pivots.sort(key=lambda r: abs(r[col]))
            p = pivots[0]
            nxt = [p]
            for r in pivots[1:]:
                k = r[col] // p[col]
                r = [a - k * b for a, b in zip(r, p)]
                if r[col] != 0:
                    nxt.append(r)
                elif any(r):
                    rest.append(r)
            pivots = nxt
        if pivots:
            out.append(pivots[0])
        work = rest
    return out


def _snf(rows: Sequence[Sequence[int]], n: int):
    rows = _echelon(rows, n)
    if len(rows) == 0:
        rows = [[0] * n]
    m = Matrix(rows)
    S, U, V = smith_normal_decomp(m, domain=ZZ)
    return S, U, V


@dataclass(frozen=True)
class LatticeQuotient:
    """The abelian group Z^n / L for a sublattice L given by spanning rows.

    ``invariant_factors`` lists the nontrivial cyclic factors; a factor of 0
    stands for a free summand Z.  Classes are represented by coordinate tuples
    with the i-th entry reduced modulo the i-th factor (unreduced when free).
    """

    ambient_rank: int
    invariant_factors: tuple[int, ...]
    _change: tuple[tuple[int, ...], ...]  # rows of V (x -> x V)
    _keep: tuple[int, ...]  # indices of the retained SNF coordinates
    generator_reps: tuple[tuple[int, ...], ...]

    @property
    def order(self) -> int | None:
        """Number of elements, or None when the quotient is infinite."""
        out = 1
        for d in self.invariant_factors:
            if d == 0:
                return None
            out *= d
        return out

    @property
    def is_trivial(self) -> bool:
        return len(self.invariant_factors) == 0

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(d for d in self.invariant_factors if d != 0)

    @property
    def free_rank(self) -> int:
        return sum(1 for d in self.invariant_factors if d == 0)

    def reduce(self, x: Sequence[int]) -> tuple[int, ...]:
        """Canonical coordinates of the class of the lattice vector ``x``."""
        n = self.ambient_rank
        y = [sum(int(x[k]) * self._change[k][i] for k in range(n)) for i in range(n)]
        out = []
        for d, i in zip(self.invariant_factors, self._keep):
            out.append(y[i] % d if d else y[i])
        return tuple(out)

    def contains(self, x: Sequence[int]) -> bool:
        return all(c == 0 for c in self.reduce(x))

    def add(self, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
        return tuple(
            (u + v) % d if d else u + v
            for u, v, d in zip(a, b, self.invariant_factors)
        )

    def elements(self) -> list[tuple[int, ...]]:
        """All classes, in lexicographic order (finite quotients only)."""
        if self.order is None:
            raise ValueError("quotient is infinite")
        out: list[tuple[int, ...]] = [()]
        for d in self.invariant_factors:
            out = [c + (k,) for c in out for k in range(d)]
        return out


def lattice_quotient(relations: Sequence[Sequence[int]], n: int) -> LatticeQuotient:
    """Z^n modulo the span of ``relations`` via Smith normal form."""
    S, U, V = _snf(relations, n)
    rank_rows = S.shape[0]
    diag = [int(S[i, i]) if i < rank_rows else 0 for i in range(n)]
    keep = tuple(i for i, d in enumerate(diag) if abs(d) != 1)
    factors = tuple(abs(diag[i]) for i in keep)
    Vinv = V.inv()
    gens = tuple(tuple(int(v) for v in Vinv.row(i)) for i in keep)
    change = tuple(tuple(int(V[k, i]) for i in range(n)) for k in range(n))
    return LatticeQuotient(n, factors, change, keep, gens)


def solve_integer(A: Sequence[Sequence[int]], b: Sequence[int]) -> list[int] | None:
    """One integer solution x of A x = b, or None if there is none."""
    rows, cols = len(A), len(A[0]) if A else 0
    if rows == 0:
        return [0] * cols
    S, U, V = smith_normal_decomp(Matrix([list(map(int, r)) for r in A]), domain=ZZ)
    ub = U * Matrix([int(v) for v in b])
    y = [0] * cols
    for i in range(rows):
        d = int(S[i, i]) if i < cols else 0
        if d == 0:
            if ub[i] != 0:
                return None
            continue
        if ub[i] % d:
            return None
        y[i] = int(ub[i]) // d
    x = V * Matrix(y)
    return [int(v) for v in x]


def integer_rank(rows: Sequence[Sequence[int]]) -> int:
    if not rows:
        return 0
    return Matrix([list(r) for r in rows]).rank()


def solve_mod2(A: Sequence[Sequence[int]], b: Sequence[int]) -> list[int] | None:
    """A solution of A x = b over GF(2) by Gaussian elimination."""
    rows = [([v & 1 for v in r], bi & 1) for r, bi in zip(A, b)]
    cols = len(A[0]) if A else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, len(rows)) if rows[i][0][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][0][c]:
                rows[i] = ([x ^ y for x, y in zip(rows[i][0], rows[r][0])], rows[i][1] ^ rows[r][1])
        pivots.append(c)
        r += 1
    for i in range(r, len(rows)):
        if rows[i][1]:
            return None
    x = [0] * cols
    for i, c in enumerate(pivots):
        x[c] = rows[i][1]
    return x
