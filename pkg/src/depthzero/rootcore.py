"""Finite root systems, root data, Weyl group elements and fundamental groups.

Conventions
-----------
* Simple roots are numbered as in Bourbaki.  The E-series diagram is the chain
  1-3-4-5-6(-7-8) with node 2 attached to node 4.  In D_n the branch node is
  n-2 and the two spin nodes are n-1 and n.
* ``cartan[i][j] = <alpha_i, alpha_j^vee>`` (zero based indices).
* A root is an integer tuple of coordinates in the simple-root basis; a coroot
  is an integer tuple in the simple-coroot basis.  The pairing of a root
  ``c`` with a coroot ``e`` is ``c . cartan . e``.
* Cocharacters (coweights) are written in the fundamental-coweight basis, so
  ``<alpha_i, x> = x[i]``.  The simple coroot alpha_j^vee is column j of the
  Cartan matrix in these coordinates.
* Weyl group elements act on roots on the left; ``WeylElement.word = (i1,...,il)``
  means ``s_{i1} ... s_{il}``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .lattice import LatticeQuotient, lattice_quotient, solve_integer

Root = tuple[int, ...]

FAMILIES = "ABCDEFG"


class ResourceGuardExceeded(RuntimeError):
    """Raised when a computation would exceed a configured enumeration bound."""


ISOGENIES = ("adjoint", "simply-connected", "intermediate")


# --------------------------------------------------------------------------
# Cartan types


@dataclass(frozen=True, order=True)
class CartanType:
    """An irreducible Cartan type, optionally with a quasi-split twist order."""

    family: str
    rank: int
    twist: int = 1

    def __post_init__(self):
        f, n, t = self.family, self.rank, self.twist
        if f not in FAMILIES:
            raise ValueError(f"unknown family {f!r}")
        if not isinstance(n, int) or n < 1:
            raise ValueError(f"rank must be a positive integer, got {n!r}")
        valid = {
            "A": n >= 1,
            "B": n >= 2,
            "C": n >= 2,
            "D": n >= 3,
            "E": n in (6, 7, 8),
            "F": n == 4,
            "G": n == 2,
        }[f]
        if not valid:
            raise ValueError(f"no root system of type {f}{n}")
        allowed = {1}
        if (f == "A" and n >= 2) or f == "D" or (f == "E" and n == 6):
            allowed.add(2)
        if f == "D" and n == 4:
            allowed.add(3)
        if t not in allowed:
            raise ValueError(f"twist {t} is not a diagram automorphism order of {f}{n}")

    def __str__(self) -> str:
        prefix = "" if self.twist == 1 else f"^{self.twist}"
        return f"{prefix}{self.family}{self.rank}"

    @classmethod
    def parse(cls, text: str) -> "CartanType":
        """Parse strings such as ``"E6"``, ``"^2E6"`` or ``"D4"``."""
        text = text.strip()
        twist = 1
        if text.startswith("^"):
            twist = int(text[1])
            text = text[2:]
        return cls(text[0].upper(), int(text[1:]), twist)


def cartan_matrix(family: str, rank: int) -> list[list[int]]:
    """Cartan matrix ``C[i][j] = <alpha_i, alpha_j^vee>`` in Bourbaki numbering."""
    CartanType(family, rank)
    n = rank
    C = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i, j, a=-1, b=-1):
        C[i][j] = a
        C[j][i] = b

    if family in "ABCD":
        chain = n - 1 if family == "D" else n
        for i in range(chain - 1):
            link(i, i + 1)
        if family == "B":
            # alpha_n short: <alpha_{n-1}, alpha_n^vee> = -2
            link(n - 2, n - 1, -2, -1)
        elif family == "C":
            link(n - 2, n - 1, -1, -2)
        elif family == "D":
            link(n - 3, n - 1)
    elif family == "E":
        link(0, 2)
        link(1, 3)
        for i in range(2, n - 1):
            link(i, i + 1)
    elif family == "F":
        link(0, 1)
        link(1, 2, -2, -1)
        link(2, 3)
    elif family == "G":
        # alpha_1 short, alpha_2 long
        link(0, 1, -1, -3)
    return C


def symmetrizer(cartan: Sequence[Sequence[int]]) -> list[int]:
    """Half squared lengths ``d_i`` with ``d_j C[i][j] = d_i C[j][i]``, minimal 1 per component."""
    from fractions import Fraction

    n = len(cartan)
    d: list[Fraction | None] = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        comp = [start]
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if j != i and cartan[i][j] != 0 and d[j] is None:
                    # d_j C[i][j] = d_i C[j][i]
                    d[j] = d[i] * cartan[j][i] / cartan[i][j]
                    comp.append(j)
                    stack.append(j)
        lo = min(d[k] for k in comp)
        for k in comp:
            d[k] = d[k] / lo
    out = []
    for v in d:
        assert v is not None and v.denominator == 1
        out.append(int(v))
    return out


def components(cartan: Sequence[Sequence[int]]) -> list[list[int]]:
    """Connected components of the Dynkin diagram, each sorted."""
    n = len(cartan)
    seen = [False] * n
    out = []
    for s in range(n):
        if seen[s]:
            continue
        seen[s] = True
        comp, stack = [s], [s]
        while stack:
            i = stack.pop()
            for j in range(n):
                if not seen[j] and cartan[i][j] != 0:
                    seen[j] = True
                    comp.append(j)
                    stack.append(j)
        out.append(sorted(comp))
    return out


def identify_component(cartan: Sequence[Sequence[int]], nodes: Sequence[int]) -> str:
    """Name of the irreducible root system spanned by ``nodes`` (e.g. ``"D4"``).

    Rank-two doubly laced systems are reported as ``B2``; other non simply
    laced chains are ``B`` or ``C`` according to whether the end node past the
    double bond is short or long.
    """
    nodes = list(nodes)
    k = len(nodes)
    if k == 1:
        return "A1"
    sub = [[cartan[i][j] for j in nodes] for i in nodes]
    bonds = {}
    deg = [0] * k
    for a in range(k):
        for b in range(a + 1, k):
            if sub[a][b] != 0:
                bonds[(a, b)] = sub[a][b] * sub[b][a]
                deg[a] += 1
                deg[b] += 1
    mult = sorted(bonds.values())
    if 3 in mult:
        return "G2"
    if 2 in mult:
        if k == 2:
            return "B2"
        (a, b), = [e for e, v in bonds.items() if v == 2]
        ends = [i for i in range(k) if deg[i] == 1]
        if k == 4 and all(deg[x] == 2 for x in (a, b)):
            return "F4"
        end = a if deg[a] == 1 else b
        other = b if end == a else a
        # end node short iff <alpha_other, alpha_end^vee> = -2
        return f"B{k}" if sub[other][end] == -2 else f"C{k}"
    branch = [i for i in range(k) if deg[i] == 3]
    if not branch:
        return f"A{k}"
    c = branch[0]
    arms = []
    for start in (j for j in range(k) if sub[c][j] != 0 and j != c):
        length, prev, cur = 1, c, start
        while True:
            nxt = [j for j in range(k) if j not in (prev, cur) and sub[cur][j] != 0]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    arms.sort()
    if arms[0] == 1 and arms[1] == 1:
        return f"D{k}"
    return {(1, 2, 2): "E6", (1, 2, 3): "E7", (1, 2, 4): "E8"}[tuple(arms)]


def normalize_shape(names: Iterable[str]) -> tuple[str, ...]:
    """Sorted component list with low-rank coincidences resolved (C2=B2, D3=A3, D2=2A1)."""
    out = []
    for name in names:
        fam, r = name[0], int(name[1:])
        if r == 0:
            continue
        if fam in "BC" and r == 1:
            fam = "A"
        if fam == "C" and r == 2:
            fam = "B"
        if fam == "D" and r == 3:
            fam = "A"
        if fam == "D" and r == 2:
            out += ["A1", "A1"]
            continue
        if fam == "D" and r == 1:
            continue
        out.append(f"{fam}{r}")
    return tuple(sorted(out))


# --------------------------------------------------------------------------
# Root systems


def _positive_roots(cartan: Sequence[Sequence[int]]) -> list[Root]:
    """Positive roots by root-string extension, ordered by height then coordinates."""
    n = len(cartan)
    simple = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
    roots = set(simple)
    layer = list(simple)
    while layer:
        nxt = []
        for g in layer:
            for i in range(n):
                pair = sum(g[k] * cartan[k][i] for k in range(n))  # <g, alpha_i^vee>
                p = 0
                down = list(g)
                while True:
                    down[i] -= 1
                    if tuple(down) in roots:
                        p += 1
                    else:
                        break
                q = p - pair
                if q > 0:
                    up = list(g)
                    up[i] += 1
                    t = tuple(up)
                    if t not in roots:
                        roots.add(t)
                        nxt.append(t)
        layer = nxt
    return sorted(roots, key=root_order_key)


def root_order_key(g: Root):
    """Canonical order: height, then coordinates in decreasing lexicographic order."""
    return (sum(g), tuple(-c for c in g))


def reflection_closure(cartan: Sequence[Sequence[int]]) -> set[Root]:
    """All roots as the orbit of the simple roots under simple reflections."""
    n = len(cartan)
    start = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
    seen = set(start)
    stack = list(start)
    while stack:
        g = stack.pop()
        for i in range(n):
            pair = sum(g[k] * cartan[k][i] for k in range(n))
            if pair:
                h = list(g)
                h[i] -= pair
                t = tuple(h)
                if t not in seen:
                    seen.add(t)
                    stack.append(t)
    return seen


# --------------------------------------------------------------------------
# Weyl group elements


@dataclass(frozen=True)
class WeylElement:
    """A Weyl group element stored through its canonical reduced word.

    The canonical word is the lexicographically smallest reduced word.  It is
    obtained from the coweight ``w . rho^vee`` by repeatedly stripping the
    smallest left descent.
    """

    word: tuple[int, ...]
    length: int

    def __post_init__(self):
        if self.length != len(self.word):
            raise ValueError("length must equal the length of the reduced word")


class RootDatum:
    """Based root datum of an irreducible (or, for sub-data, reducible) root system.

    Parameters
    ----------
    cartan_type : CartanType or None
        Irreducible type; None for reducible sub-data.
    cartan : matrix
        ``cartan[i][j] = <alpha_i, alpha_j^vee>``.
    isogeny : str
        ``"adjoint"``, ``"simply-connected"`` or ``"intermediate"``.
    cocharacter_basis : rows, optional
        A Z-basis of the cocharacter lattice in fundamental-coweight
        coordinates.  Defaults follow ``isogeny``.
    """

    def __init__(
        self,
        cartan_type: CartanType | None,
        cartan: Sequence[Sequence[int]],
        isogeny: str = "adjoint",
        cocharacter_basis: Sequence[Sequence[int]] | None = None,
        bourbaki: bool = True,
    ):
        if isogeny not in ISOGENIES:
            raise ValueError(f"unknown isogeny tag {isogeny!r}")
        self.cartan_type = cartan_type
        self.cartan = tuple(tuple(int(v) for v in row) for row in cartan)
        self.rank = len(self.cartan)
        self.isogeny = isogeny
        self.bourbaki = bourbaki
        n = self.rank
        if cocharacter_basis is None:
            if isogeny == "simply-connected":
                cocharacter_basis = [[self.cartan[i][j] for i in range(n)] for j in range(n)]
            else:
                cocharacter_basis = [[int(i == j) for j in range(n)] for i in range(n)]
        self.cocharacter_basis = tuple(tuple(int(v) for v in r) for r in cocharacter_basis)
        if np.linalg.matrix_rank(np.array(self.cocharacter_basis, dtype=float)) != n:
            raise ValueError("cocharacter basis must have full rank")
        for j in range(n):
            if solve_integer(np.array(self.cocharacter_basis).T.tolist(), self.simple_coroot_coweight(j)) is None:
                raise ValueError("cocharacter lattice must contain the coroot lattice")

    # -- basic data --------------------------------------------------------

    @cached_property
    def cartan_array(self) -> np.ndarray:
        return np.array(self.cartan, dtype=np.int64)

    @cached_property
    def d(self) -> tuple[int, ...]:
        """Half squared lengths of the simple roots."""
        return tuple(symmetrizer(self.cartan))

    @cached_property
    def form(self) -> np.ndarray:
        """Symmetric invariant form on the root lattice, (alpha_i, alpha_j) = C[i][j] d_j."""
        C = self.cartan_array
        return C * np.array(self.d, dtype=np.int64)[None, :]

    @cached_property
    def positive_roots(self) -> tuple[Root, ...]:
        return tuple(_positive_roots(self.cartan))

    @cached_property
    def roots(self) -> tuple[Root, ...]:
        """All roots: positive roots in canonical order followed by their negatives."""
        pos = self.positive_roots
        return pos + tuple(tuple(-c for c in g) for g in pos)

    @cached_property
    def root_index(self) -> dict[Root, int]:
        return {g: i for i, g in enumerate(self.roots)}

    @cached_property
    def simple_roots(self) -> tuple[Root, ...]:
        """Simple roots in the simple-root basis (unit vectors)."""
        n = self.rank
        return tuple(tuple(int(i == k) for k in range(n)) for i in range(n))

    def is_root(self, g: Sequence[int]) -> bool:
        return tuple(g) in self.root_index

    def _check_root(self, g: Sequence[int]) -> Root:
        g = tuple(int(v) for v in g)
        if g not in self.root_index:
            raise ValueError(f"{g} is not a root")
        return g

    def is_positive(self, g: Sequence[int]) -> bool:
        return any(v > 0 for v in g)

    def height(self, g: Sequence[int]) -> int:
        return int(sum(g))

    def norm2(self, g: Sequence[int]) -> int:
        v = np.array(g, dtype=np.int64)
        return int(v @ self.form @ v)

    def is_long(self, g: Sequence[int]) -> bool:
        return self.norm2(g) == max(self.norm2(s) for s in self.simple_roots)

    def coroot(self, g: Sequence[int]) -> Root:
        """gamma^vee in simple-coroot coordinates."""
        g = self._check_root(g)
        ng = self.norm2(g) // 2
        out = []
        for i, c in enumerate(g):
            num = c * self.d[i]
            assert num % ng == 0
            out.append(num // ng)
        return tuple(out)

    def pair(self, g: Sequence[int], cor: Sequence[int]) -> int:
        """<g, cor> for g in root coordinates and cor in coroot coordinates."""
        return int(np.array(g, dtype=np.int64) @ self.cartan_array @ np.array(cor, dtype=np.int64))

    def pair_roots(self, g: Sequence[int], h: Sequence[int]) -> int:
        """<g, h^vee> for two roots."""
        return self.pair(g, self.coroot(h))

    def coroot_coweight(self, cor: Sequence[int]) -> tuple[int, ...]:
        """A coroot-lattice vector expressed in fundamental-coweight coordinates."""
        v = self.cartan_array @ np.array(cor, dtype=np.int64)
        return tuple(int(x) for x in v)

    def simple_coroot_coweight(self, j: int) -> tuple[int, ...]:
        return tuple(self.cartan[i][j] for i in range(self.rank))

    def reflect(self, i: int, g: Sequence[int]) -> Root:
        """s_i applied to a root-lattice vector."""
        pair = sum(g[k] * self.cartan[k][i] for k in range(self.rank))
        h = list(g)
        h[i] -= pair
        return tuple(h)

    def reflect_by(self, r: Sequence[int], g: Sequence[int]) -> Root:
        """s_r(g) = g - <g, r^vee> r for a root r."""
        p = self.pair_roots(g, r)
        return tuple(a - p * b for a, b in zip(g, r))

    def reflect_coweight(self, i: int, x: Sequence) -> tuple:
        """s_i applied to a coweight in fundamental-coweight coordinates."""
        xi = x[i]
        return tuple(x[j] - xi * self.cartan[j][i] for j in range(self.rank))

    @property
    def dim(self) -> int:
        return len(self.roots) + self.rank

    @property
    def num_positive(self) -> int:
        return len(self.positive_roots)

    # -- lattices --------------------------------------------------------

    @cached_property
    def simple_roots_in_character_basis(self) -> tuple[tuple[int, ...], ...]:
        """alpha_i in the basis of X^* dual to ``cocharacter_basis``."""
        L = self.cocharacter_basis
        return tuple(tuple(L[k][i] for k in range(self.rank)) for i in range(self.rank))

    @cached_property
    def simple_coroots_in_cocharacter_basis(self) -> tuple[tuple[int, ...], ...]:
        LT = np.array(self.cocharacter_basis).T.tolist()
        out = []
        for j in range(self.rank):
            x = solve_integer(LT, self.simple_coroot_coweight(j))
            out.append(tuple(x))
        return tuple(out)

    @cached_property
    def _cocharacter_inverse(self) -> list[list[Fraction]]:
        """Exact inverse of the transpose of the cocharacter basis."""
        n = self.rank
        LT = [[Fraction(self.cocharacter_basis[j][i]) for j in range(n)] for i in range(n)]
        inv = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        for c in range(n):
            piv = next(r for r in range(c, n) if LT[r][c] != 0)
            LT[c], LT[piv] = LT[piv], LT[c]
            inv[c], inv[piv] = inv[piv], inv[c]
            f = LT[c][c]
            LT[c] = [x / f for x in LT[c]]
            inv[c] = [x / f for x in inv[c]]
            for r in range(n):
                if r != c and LT[r][c] != 0:
                    g = LT[r][c]
                    LT[r] = [x - g * y for x, y in zip(LT[r], LT[c])]
                    inv[r] = [x - g * y for x, y in zip(inv[r], inv[c])]
        return inv

    @cached_property
    def _cocharacter_inverse_int(self) -> tuple[int, list[list[int]]]:
        """(D, M) with M / D the inverse above and M integral."""
        inv = self._cocharacter_inverse
        D = 1
        for row in inv:
            for a in row:
                D = D * a.denominator // math.gcd(D, a.denominator)
        return D, [[int(a * D) for a in row] for row in inv]

    def _cocharacter_scaled(self, x: Sequence[int]) -> tuple[int, list[int]]:
        D, M = self._cocharacter_inverse_int
        return D, [sum(a * int(v) for a, v in zip(row, x)) for row in M]

    def in_cocharacter_lattice(self, x: Sequence[int]) -> bool:
        D, y = self._cocharacter_scaled(x)
        return all(c % D == 0 for c in y)

    def cocharacter_coordinates(self, x: Sequence[int]) -> tuple[int, ...]:
        D, y = self._cocharacter_scaled(x)
        if any(c % D for c in y):
            raise ValueError(f"{tuple(x)} is not in the cocharacter lattice")
        return tuple(c // D for c in y)

    def dual(self) -> "RootDatum":
        """The dual root datum: roots and coroots exchanged."""
        ct = self.cartan_type
        new_ct = None
        bourbaki = self.bourbaki
        if ct is not None:
            fam = {"B": "C", "C": "B"}.get(ct.family, ct.family)
            if ct.family in "FG":
                bourbaki = False
            new_ct = CartanType(fam, ct.rank, ct.twist)
        iso = {"adjoint": "simply-connected", "simply-connected": "adjoint"}.get(self.isogeny, "intermediate")
        # X_*(dual) = X^*(self).  In coweight coordinates of the dual, a character
        # chi of self (written against the dual basis of cocharacter_basis) has
        # i-th coordinate <chi, alpha_i^vee>.
        n = self.rank
        cor = self.simple_coroots_in_cocharacter_basis
        basis = [[cor[i][k] for i in range(n)] for k in range(n)]
        transposed = [[self.cartan[j][i] for j in range(n)] for i in range(n)]
        return RootDatum(new_ct, transposed, iso, basis, bourbaki=bourbaki)

    # -- Weyl group ------------------------------------------------------

    @cached_property
    def rho_check(self) -> tuple[int, ...]:
        return tuple([1] * self.rank)

    def weyl_from_word(self, word: Sequence[int]) -> WeylElement:
        """Canonical element for the product s_{i1}...s_{il} (any word)."""
        v = self.rho_check
        for i in reversed(list(word)):
            v = self.reflect_coweight(i, v)
        return self.weyl_from_rho(v)

    def weyl_from_rho(self, v: Sequence[int]) -> WeylElement:
        """The element w with w . rho^vee = v, via the dominance chain."""
        v = tuple(v)
        word = []
        while True:
            neg = next((i for i in range(self.rank) if v[i] < 0), None)
            if neg is None:
                break
            word.append(neg)
            v = self.reflect_coweight(neg, v)
        if v != self.rho_check:
            raise ValueError("vector is not in the W-orbit of rho^vee")
        return WeylElement(tuple(word), len(word))

    def rho_image(self, w: WeylElement | Sequence[int]) -> tuple[int, ...]:
        word = w.word if isinstance(w, WeylElement) else w
        v = self.rho_check
        for i in reversed(list(word)):
            v = self.reflect_coweight(i, v)
        return v

    def is_reduced(self, word: Sequence[int]) -> bool:
        return self.weyl_from_word(word).length == len(word)

    def act(self, w: WeylElement | Sequence[int], g: Sequence[int]) -> Root:
        word = w.word if isinstance(w, WeylElement) else w
        g = tuple(g)
        for i in reversed(list(word)):
            g = self.reflect(i, g)
        return g

    def act_coweight(self, w: WeylElement | Sequence[int], x: Sequence) -> tuple:
        word = w.word if isinstance(w, WeylElement) else w
        x = tuple(x)
        for i in reversed(list(word)):
            x = self.reflect_coweight(i, x)
        return x

    def multiply(self, u: WeylElement, v: WeylElement) -> WeylElement:
        return self.weyl_from_word(u.word + v.word)

    def inverse(self, w: WeylElement) -> WeylElement:
        return self.weyl_from_word(tuple(reversed(w.word)))

    def identity(self) -> WeylElement:
        return WeylElement((), 0)

    def inversion_set(self, w: WeylElement) -> list[Root]:
        """N(w) = {gamma > 0 : w gamma < 0}."""
        return [g for g in self.positive_roots if not self.is_positive(self.act(w, g))]

    @cached_property
    def longest_element(self) -> WeylElement:
        return self.weyl_from_rho(tuple(-v for v in self.rho_check))

    def parabolic_longest(self, J: Iterable[int]) -> WeylElement:
        """Longest element of the parabolic subgroup generated by s_j, j in J."""
        J = sorted(set(J))
        v = self.rho_check
        word: list[int] = []
        while True:
            # right multiplication by s_j increases length iff w(alpha_j) > 0,
            # i.e. <alpha_j, w^{-1} ...>; track w via its word
            j = next((j for j in J if self.is_positive(self.act(word, self.simple_roots[j]))), None)
            if j is None:
                break
            word.append(j)
        return self.weyl_from_word(word)

    def weyl_order(self) -> int:
        """|W| as the product of the invariant degrees."""
        out = 1
        for e in exponents_from_heights(self):
            out *= e + 1
        return out

    def enumerate_weyl(self, limit: int = 200_000) -> list[tuple[int, ...]]:
        """All coweights w . rho^vee (one per element); refuses groups above ``limit``."""
        if self.weyl_order() > limit:
            raise ResourceGuardExceeded(f"|W| = {self.weyl_order()} exceeds enumeration limit {limit}")
        start = self.rho_check
        seen = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for i in range(self.rank):
                u = self.reflect_coweight(i, v)
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        return sorted(seen)

    def weyl_matrix(self, w: WeylElement | Sequence[int]) -> np.ndarray:
        """Matrix of w on the root lattice (columns are images of simple roots)."""
        cols = [self.act(w, s) for s in self.simple_roots]
        return np.array(cols, dtype=np.int64).T

    # -- invariants ------------------------------------------------------

    def require_irreducible(self):
        if len(components(self.cartan)) != 1:
            raise ValueError("operation requires an irreducible root datum")

    def __repr__(self) -> str:
        name = str(self.cartan_type) if self.cartan_type else "reducible"
        return f"RootDatum({name}, {self.isogeny})"


def build_root_datum(
    ctype: CartanType | str,
    isogeny: str = "adjoint",
    extra_cocharacters: Sequence[Sequence[int]] | None = None,
) -> RootDatum:
    """Root datum of the given Cartan type and isogeny.

    ``extra_cocharacters`` (fundamental-coweight coordinates) are adjoined to
    the coroot lattice for the ``"intermediate"`` tag.
    """
    if isinstance(ctype, str):
        ctype = CartanType.parse(ctype)
    C = cartan_matrix(ctype.family, ctype.rank)
    basis = None
    if isogeny == "intermediate":
        if not extra_cocharacters:
            raise ValueError("intermediate isogeny needs extra cocharacter generators")
        n = ctype.rank
        gens = [[C[i][j] for i in range(n)] for j in range(n)] + [list(v) for v in extra_cocharacters]
        basis = _hermite_basis(gens, n)
    elif extra_cocharacters:
        raise ValueError("extra cocharacters only apply to the intermediate tag")
    return RootDatum(ctype, C, isogeny, basis)


def _hermite_basis(gens: Sequence[Sequence[int]], n: int) -> list[list[int]]:
    from sympy import Matrix
    from sympy.matrices.normalforms import hermite_normal_form

    H = hermite_normal_form(Matrix(gens).T)  # columns span the lattice
    cols = [list(map(int, H.col(k))) for k in range(H.shape[1]) if any(H.col(k))]
    if len(cols) != n:
        raise ValueError("generators do not span a full-rank lattice")
    return cols


def highest_root(d: RootDatum) -> tuple[Root, dict[int, int]]:
    """The highest root theta and its marks m_beta (indexed by simple-root number)."""
    d.require_irreducible()
    theta = d.positive_roots[-1]
    assert all(theta[k] >= g[k] for g in d.positive_roots for k in range(d.rank))
    return theta, {i: theta[i] for i in range(d.rank)}


def coxeter_number(d: RootDatum) -> int:
    """1 + sum of the highest-root marks."""
    _, marks = highest_root(d)
    return 1 + sum(marks.values())


def rho_pairing(d: RootDatum, g: Sequence[int]) -> int:
    """<g, 2 rho^vee> computed as a sum over the positive coroots."""
    g = d._check_root(g)
    return sum(d.pair(g, d.coroot(h)) for h in d.positive_roots)


@dataclass(frozen=True)
class FundamentalGroup:
    """X_*(T) modulo a coroot lattice, presented by Smith normal form."""

    invariant_factors: tuple[int, ...]
    generator_reps: tuple[tuple[int, ...], ...]  # fundamental-coweight coordinates
    quotient: LatticeQuotient = field(repr=False, compare=False)

    @property
    def order(self) -> int | None:
        return self.quotient.order

    def classify(self, x: Sequence[int], d: RootDatum) -> tuple[int, ...]:
        """Class of a cocharacter (coweight coordinates) in the quotient."""
        return self.quotient.reduce(d.cocharacter_coordinates(x))


def fundamental_group(d: RootDatum, coroots: Iterable[Root] | None = None) -> FundamentalGroup:
    """X_*(T) / <coroots> (all coroots by default) via Smith normal form."""
    if coroots is None:
        rels = [d.simple_coroots_in_cocharacter_basis[j] for j in range(d.rank)]
    else:
        rels = [d.cocharacter_coordinates(d.coroot_coweight(c)) for c in coroots]
    q = lattice_quotient(rels, d.rank)
    L = d.cocharacter_basis
    reps = tuple(
        tuple(sum(g[k] * L[k][i] for k in range(d.rank)) for i in range(d.rank))
        for g in q.generator_reps
    )
    return FundamentalGroup(q.invariant_factors, reps, q)


def exponents_from_heights(d: RootDatum) -> list[int]:
    """Exponents of W from the dual of the partition of positive roots by height.

    Works component by component for reducible data.
    """
    out: list[int] = []
    for comp in components(d.cartan):
        counts: dict[int, int] = {}
        for g in d.positive_roots:
            if all(g[k] == 0 for k in range(d.rank) if k not in comp):
                counts[sum(g)] = counts.get(sum(g), 0) + 1
        counts[0] = len(comp)
        top = max(counts)
        for e in range(1, top + 1):
            out += [e] * (counts.get(e, 0) - counts.get(e + 1, 0))
    return sorted(out)


def all_types(max_rank: int, families: str = FAMILIES) -> list[CartanType]:
    """Every irreducible Cartan type of rank at most ``max_rank`` (untwisted)."""
    out = []
    for f in families:
        for n in range(1, max_rank + 1):
            try:
                out.append(CartanType(f, n))
            except ValueError:
                pass
    return out
