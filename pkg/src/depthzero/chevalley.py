"""Chevalley basis of a simple Lie algebra and Tits lifts of Weyl elements.

Basis order: H_1..H_r (simple coroots) followed by X_gamma for the roots in
the order of ``RootDatum.roots`` (positive roots by height, then their
negatives).  Matrices act on column vectors in this basis.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import factorial
from typing import Sequence

import numpy as np

from .rootcore import Root, RootDatum, WeylElement, root_order_key


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _neg(a):
    return tuple(-x for x in a)


def _exact(a: int, b: int) -> int:
    if a % b:
        raise AssertionError("structure constant is not integral")
    return a // b


class ChevalleyAlgebra:
    """Integer structure constants N_{gamma,delta} from extraspecial pairs."""

    def __init__(self, datum: RootDatum):
        datum.require_irreducible()
        self.datum = datum
        self.rank = datum.rank
        self.roots = datum.roots
        self.dim = self.rank + len(self.roots)
        self.index = {g: self.rank + k for k, g in enumerate(self.roots)}
        self._pos: dict[tuple[Root, Root], int] = {}
        self.extraspecial: dict[Root, tuple[Root, Root]] = {}
        self._build()

    # -- structure constants ---------------------------------------------

    def ip(self, a, b) -> int:
        """(a, b) with (alpha_i, alpha_j) = C[i][j] d_j."""
        F = self.datum.form
        return int(np.array(a) @ F @ np.array(b))

    def _string_p(self, a: Root, b: Root) -> int:
        p = 0
        x = tuple(y - z for y, z in zip(b, a))
        while self.datum.is_root(x):
            p += 1
            x = tuple(y - z for y, z in zip(x, a))
        return p

    def _build(self):
        d = self.datum
        pos = sorted(d.positive_roots, key=root_order_key)
        rank_of = {g: k for k, g in enumerate(pos)}
        for xi in pos:
            if sum(xi) == 1:
                continue
            pairs = []
            for a in pos:
                b = tuple(x - y for x, y in zip(xi, a))
                if d.is_root(b) and d.is_positive(b) and rank_of[a] < rank_of[b]:
                    pairs.append((a, b))
            pairs.sort(key=lambda p: rank_of[p[0]])
            g, dl = pairs[0]
            self.extraspecial[xi] = (g, dl)
            self._pos[(g, dl)] = self._string_p(g, dl) + 1
            self._pos[(dl, g)] = -self._pos[(g, dl)]
            for a, b in pairs[1:]:
                t1 = self._term(b, _neg(g), a, _neg(dl))
                t2 = self._term(_neg(g), a, b, _neg(dl))
                val = Fraction(self.ip(xi, xi), self._pos[(g, dl)]) * (t1 + t2)
                assert val.denominator == 1
                self._pos[(a, b)] = int(val)
                self._pos[(b, a)] = -int(val)

    def _term(self, x, y, u, v) -> Fraction:
        s = _add(x, y)
        if not self.datum.is_root(s):
            return Fraction(0)
        return Fraction(self.N(x, y) * self.N(u, v), self.ip(s, s))

    def N(self, x: Sequence[int], y: Sequence[int]) -> int:
        """N_{x,y} with [X_x, X_y] = N_{x,y} X_{x+y}; 0 when x+y is not a root."""
        d = self.datum
        x, y = tuple(x), tuple(y)
        z = _add(x, y)
        if not d.is_root(z):
            return 0
        px, py = d.is_positive(x), d.is_positive(y)
        if px and py:
            return self._pos[(x, y)]
        if not px and not py:
            return -self._pos[(_neg(x), _neg(y))]
        if not px:
            return -self.N(y, x)
        # x > 0 > y
        if d.is_positive(z):
            return _exact(-self.ip(z, z) * self.N(_neg(y), z), self.ip(x, x))
        return _exact(self.ip(z, z) * self.N(_neg(z), x), self.ip(y, y))

    def max_abs_N(self) -> int:
        return max(abs(v) for v in self._pos.values()) if self._pos else 0

    # -- brackets in coordinates -----------------------------------------

    def bracket_basis(self, i: int, j: int) -> dict[int, int]:
        """[b_i, b_j] for basis indices, as a sparse coordinate dict."""
        r = self.rank
        d = self.datum
        if i < r and j < r:
            return {}
        if i < r:
            g = self.roots[j - r]
            c = d.pair(g, tuple(int(k == i) for k in range(r)))
            return {j: c} if c else {}
        if j < r:
            return {k: -v for k, v in self.bracket_basis(j, i).items()}
        a, b = self.roots[i - r], self.roots[j - r]
        s = _add(a, b)
        if all(v == 0 for v in s):
            cor = d.coroot(a)
            return {k: c for k, c in enumerate(cor) if c}
        n = self.N(a, b)
        return {self.index[s]: n} if n else {}

    def bracket(self, u: Sequence[int], v: Sequence[int]) -> np.ndarray:
        out = np.zeros(self.dim, dtype=np.int64)
        for i in np.nonzero(u)[0]:
            for j in np.nonzero(v)[0]:
                for k, c in self.bracket_basis(int(i), int(j)).items():
                    out[k] += int(u[i]) * int(v[j]) * c
        return out

    def jacobi(self, i: int, j: int, k: int) -> bool:
        e = np.eye(self.dim, dtype=np.int64)

        def br(a, b):
            return self.bracket(a, b)

        x, y, z = e[i], e[j], e[k]
        tot = br(x, br(y, z)) + br(y, br(z, x)) + br(z, br(x, y))
        return not tot.any()

    # -- adjoint matrices ------------------------------------------------

    def ad_root(self, g: Sequence[int]) -> np.ndarray:
        """Matrix of ad X_g."""
        g = tuple(g)
        M = np.zeros((self.dim, self.dim), dtype=np.int64)
        col = self.index[g]
        for j in range(self.dim):
            for k, c in self.bracket_basis(col, j).items():
                M[k, j] = c
        return M

    def exp_ad(self, g: Sequence[int], sign: int = 1) -> np.ndarray:
        """exp(sign * ad X_g), computed exactly."""
        A = sign * self.ad_root(g)
        out = np.eye(self.dim, dtype=np.int64)
        P = np.eye(self.dim, dtype=np.int64)
        k = 0
        while True:
            k += 1
            P = P @ A
            if not P.any():
                break
            f = factorial(k)
            if np.any(P % f):
                raise AssertionError("exp(ad X) is not integral")
            out = out + P // f
        return out

    def n_root(self, g: Sequence[int]) -> np.ndarray:
        """n_g = exp(ad X_g) exp(-ad X_{-g}) exp(ad X_g)."""
        E = self.exp_ad(g)
        return E @ self.exp_ad(_neg(g), -1) @ E

    @cached_property
    def simple_n(self) -> tuple[np.ndarray, ...]:
        return tuple(self.n_root(s) for s in self.datum.simple_roots)

    @cached_property
    def simple_signs(self) -> tuple[dict[Root, int], ...]:
        """c_i(gamma) with n_i X_gamma = c_i(gamma) X_{s_i gamma}, read off the matrices."""
        out = []
        for i, M in enumerate(self.simple_n):
            table = {}
            for g in self.roots:
                img = self.datum.reflect(i, g)
                c = int(M[self.index[img], self.index[g]])
                assert abs(c) == 1
                table[g] = c
            out.append(table)
        return tuple(out)


@dataclass
class TitsElement:
    matrix: np.ndarray
    underlying: WeylElement

    def torus_part(self, A: ChevalleyAlgebra) -> "TorusSign | None":
        """The sign character when the matrix is diagonal on root spaces, else None."""
        M = self.matrix
        if np.count_nonzero(M - np.diag(np.diag(M))):
            return None
        return TorusSign.from_diagonal(A, np.diag(M))


def tits_lift(w: WeylElement | Sequence[int], A: ChevalleyAlgebra, check_reduced: bool = True) -> TitsElement:
    """n(w) = n_{i1} ... n_{il} along a reduced word (the canonical one by default)."""
    d = A.datum
    if isinstance(w, WeylElement):
        word = w.word
    else:
        word = tuple(w)
        if check_reduced and not d.is_reduced(word):
            raise ValueError(f"word {word} is not reduced")
    M = np.eye(A.dim, dtype=np.int64)
    for i in word:
        M = M @ A.simple_n[i]
    return TitsElement(M, d.weyl_from_word(word))


def sign_action(w: WeylElement | Sequence[int], g: Sequence[int], A: ChevalleyAlgebra) -> tuple[Root, int]:
    """n(w) X_g = sign X_{w g}, through the simple sign tables."""
    word = w.word if isinstance(w, WeylElement) else tuple(w)
    g = tuple(g)
    sign = 1
    for i in reversed(word):
        sign *= A.simple_signs[i][g]
        g = A.datum.reflect(i, g)
    return g, sign


def read_sign(n: TitsElement, g: Sequence[int], A: ChevalleyAlgebra) -> tuple[Root, int]:
    """The unique nonzero entry of the column of n for X_g."""
    col = n.matrix[:, A.index[tuple(g)]]
    nz = np.nonzero(col)[0]
    if len(nz) != 1 or nz[0] < A.rank or abs(col[nz[0]]) != 1:
        raise ValueError("image of a root vector is not a signed root vector")
    k = int(nz[0])
    return A.roots[k - A.rank], int(col[k])


# --------------------------------------------------------------------------
# torus 2-torsion


@dataclass(frozen=True)
class TorusSign:
    """A torus element of order <= 2 seen through its action on root spaces.

    ``coweight`` is an element of X_* (x) Z/2 in fundamental-coweight
    coordinates; it acts on X_delta by (-1)^{<delta, coweight>}.
    """

    coweight: tuple[int, ...]

    def __call__(self, delta: Sequence[int]) -> int:
        return -1 if sum(a * b for a, b in zip(delta, self.coweight)) % 2 else 1

    def __mul__(self, other: "TorusSign") -> "TorusSign":
        return TorusSign(tuple((a + b) % 2 for a, b in zip(self.coweight, other.coweight)))

    @classmethod
    def identity(cls, rank: int) -> "TorusSign":
        return cls(tuple([0] * rank))

    @classmethod
    def of_coroot(cls, d: RootDatum, g: Sequence[int]) -> "TorusSign":
        """gamma^vee(-1) for the root gamma."""
        return cls(tuple(v % 2 for v in d.coroot_coweight(d.coroot(g))))

    @classmethod
    def from_diagonal(cls, A: ChevalleyAlgebra, diag) -> "TorusSign | None":
        if any(int(diag[i]) != 1 for i in range(A.rank)):
            return None
        x = []
        for s in A.datum.simple_roots:
            v = int(diag[A.index[s]])
            if abs(v) != 1:
                return None
            x.append(0 if v == 1 else 1)
        t = cls(tuple(x))
        if any(t(g) != int(diag[A.index[g]]) for g in A.roots):
            return None
        return t

    def matrix(self, A: ChevalleyAlgebra) -> np.ndarray:
        diag = [1] * A.rank + [self(g) for g in A.roots]
        return np.diag(np.array(diag, dtype=np.int64))


def torus_sign(gamma: Sequence[int], delta: Sequence[int], d: RootDatum) -> int:
    """gamma^vee(-1) acting on X_delta: (-1)^{<delta, gamma^vee>}."""
    return -1 if d.pair_roots(delta, gamma) % 2 else 1


def ls_cocycle(u: WeylElement, v: WeylElement, d: RootDatum) -> TorusSign:
    """prod gamma^vee(-1) over gamma > 0 with u^{-1} gamma < 0 and (uv)^{-1} gamma > 0."""
    ui = d.inverse(u)
    uvi = d.inverse(d.multiply(u, v))
    t = TorusSign.identity(d.rank)
    for g in d.positive_roots:
        if not d.is_positive(d.act(ui, g)) and d.is_positive(d.act(uvi, g)):
            t = t * TorusSign.of_coroot(d, g)
    return t


@dataclass
class W0Certificate:
    holds: bool
    dim: int
    w0_length: int


def w0_square_identity(A: ChevalleyAlgebra) -> W0Certificate:
    """n(w0)^2 equals the diagonal element acting on X_delta by (-1)^{<delta, 2 rho^vee>}."""
    d = A.datum
    n = tits_lift(d.longest_element, A)
    lhs = n.matrix @ n.matrix
    t = TorusSign.identity(d.rank)
    for g in d.positive_roots:
        t = t * TorusSign.of_coroot(d, g)
    diag = [1] * A.rank + [(-1) ** (2 * d.height(g) % 2) for g in A.roots]
    rhs = np.diag(np.array(diag, dtype=np.int64))
    same = bool(np.array_equal(lhs, rhs)) and bool(np.array_equal(rhs, t.matrix(A)))
    return W0Certificate(same, A.dim, d.longest_element.length)


def random_reduced_word(w: WeylElement, d: RootDatum, rng: random.Random) -> tuple[int, ...]:
    """A reduced word for w built by stripping uniformly chosen left descents."""
    v = d.rho_image(w)
    word = []
    while True:
        desc = [i for i in range(d.rank) if v[i] < 0]
        if not desc:
            break
        i = rng.choice(desc)
        word.append(i)
        v = d.reflect_coweight(i, v)
    return tuple(word)


def random_element(d: RootDatum, rng: random.Random, length: int | None = None) -> WeylElement:
    n = length if length is not None else rng.randint(0, d.longest_element.length)
    return d.weyl_from_word([rng.randrange(d.rank) for _ in range(n)])
