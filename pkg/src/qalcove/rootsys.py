"""
Finite root systems and their Weyl groups, with exact integer/rational data.

Roots are stored in the simple-root basis together with their coroots in the
simple-coroot basis, weights in the fundamental-weight basis.  Weyl group
elements are identified by the integer matrix of their action on the simple
roots, so equality never depends on a choice of reduced word.

>>> rs = build_root_system("A", 2)
>>> [str(a) for a in rs.positive_roots]
['a1', 'a2', 'a1+a2']
>>> len(rs.weyl), rs.longest.length
(6, 3)
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np

__all__ = [
    "Root", "Coroot", "Weight", "WeylElement", "RootSystem", "DominantData",
    "build_root_system", "parse_type", "pair",
]

_SERIES_RANKS = {
    "A": lambda n: n >= 1,
    "B": lambda n: n >= 2,
    "C": lambda n: n >= 2,
    "D": lambda n: n >= 4,
    "E": lambda n: n in (6, 7, 8),
    "F": lambda n: n == 4,
    "G": lambda n: n == 2,
}


def _fmt_combination(coords, symbol: str) -> str:
    if not any(coords):
        return "0"
    out = ""
    for i, c in enumerate(coords, start=1):
        if c == 0:
            continue
        sign = "-" if c < 0 else ("+" if out else "")
        mag = abs(c)
        out += sign + ("" if mag == 1 else str(mag)) + f"{symbol}{i}"
    return out


@dataclass(frozen=True, order=True)
class Coroot:
    """An element of the coroot lattice, in the simple-coroot basis."""
    coords: tuple[int, ...]

    def __add__(self, other: Coroot) -> Coroot:
        return Coroot(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: Coroot) -> Coroot:
        return Coroot(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> Coroot:
        return Coroot(tuple(-a for a in self.coords))

    def __mul__(self, k: int) -> Coroot:
        return Coroot(tuple(k * a for a in self.coords))

    __rmul__ = __mul__

    @classmethod
    def zero(cls, rank: int) -> Coroot:
        return cls((0,) * rank)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __str__(self) -> str:
        return _fmt_combination(self.coords, "a^")


@dataclass(frozen=True, order=True)
class Root:
    """A (possibly negative) root; ``coroot`` is its coroot."""
    coords: tuple[int, ...]
    coroot: Coroot = field(compare=False)

    def __neg__(self) -> Root:
        return Root(tuple(-c for c in self.coords), -self.coroot)

    @property
    def sign(self) -> int:
        return 1 if any(c > 0 for c in self.coords) else -1

    def __abs__(self) -> Root:
        return self if self.sign > 0 else -self

    @property
    def height(self) -> int:
        return sum(self.coords)

    def __str__(self) -> str:
        return _fmt_combination(self.coords, "a")


@dataclass(frozen=True, eq=False)
class Weight:
    """A rational weight in the fundamental-weight basis."""
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        coords = tuple(Fraction(c) for c in self.coords)
        object.__setattr__(self, "coords", coords)
        # Fraction hashing and comparison are slow; use normalised integer pairs
        key = tuple((c.numerator, c.denominator) for c in coords)
        object.__setattr__(self, "_key", key)
        object.__setattr__(self, "_hash", hash(key))

    def __eq__(self, other):
        if not isinstance(other, Weight):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return self._hash

    def __add__(self, other: Weight) -> Weight:
        return Weight(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: Weight) -> Weight:
        return Weight(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> Weight:
        return Weight(tuple(-a for a in self.coords))

    def __mul__(self, k) -> Weight:
        return Weight(tuple(k * a for a in self.coords))

    __rmul__ = __mul__

    @classmethod
    def zero(cls, rank: int) -> Weight:
        return cls((0,) * rank)

    @property
    def rank(self) -> int:
        return len(self.coords)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coords)

    def is_dominant(self) -> bool:
        return all(c >= 0 for c in self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __str__(self) -> str:
        if not any(self.coords):
            return "0"
        out = ""
        for i, c in enumerate(self.coords, start=1):
            if c == 0:
                continue
            sign = "-" if c < 0 else ("+" if out else "")
            mag = abs(c)
            coef = "" if mag == 1 else (str(mag) if mag.denominator == 1 else f"({mag})")
            out += f"{sign}{coef}w{i}"
        return out


def pair(weight: Weight, coroot: Coroot | Root) -> Fraction:
    """Exact value of the canonical pairing of a weight with a coroot.

    A :class:`Root` argument is paired through its coroot.
    """
    if isinstance(coroot, Root):
        coroot = coroot.coroot
    if len(weight.coords) != len(coroot.coords):
        raise ValueError(
            f"dimension mismatch: weight of rank {len(weight.coords)}, "
            f"coroot of rank {len(coroot.coords)}")
    return sum((a * b for a, b in zip(weight.coords, coroot.coords)), Fraction(0))


@dataclass(frozen=True, eq=False)
class WeylElement:
    """A Weyl group element.

    ``matrix[i][j]`` is the coefficient of the simple root ``a(i+1)`` in the
    image of ``a(j+1)``.  Equality and hashing use the matrix only.
    """
    matrix: tuple[tuple[int, ...], ...]
    length: int
    word: tuple[int, ...]
    index: int

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash(self.matrix))

    def __eq__(self, other):
        return self is other or (isinstance(other, WeylElement) and self.matrix == other.matrix)

    def __hash__(self):
        return self._hash

    def __str__(self) -> str:
        return "".join(f"s{i}" for i in self.word) if self.word else "e"

    __repr__ = __str__


@dataclass(frozen=True)
class DominantData:
    dominant: Weight
    longest: WeylElement   # w(lambda): maximal in {w : w lambda_+ = lambda}
    shortest: WeylElement  # u(lambda): minimal in the same set
    stabilizer_nodes: tuple[int, ...]  # 1-based nodes i with <lambda_+, a_i^v> = 0


def _gram_matrix(series: str, n: int) -> list[list[Fraction]]:
    """Symmetric bilinear form on simple roots, Bourbaki numbering."""
    B = [[Fraction(0)] * n for _ in range(n)]

    def link(i, j, v):
        B[i][j] = B[j][i] = Fraction(v)

    for i in range(n):
        B[i][i] = Fraction(2)
    if series in "ABCD":
        chain = n - 1 if series != "D" else n - 2
        for i in range(chain):
            link(i, i + 1, -1)
        if series == "B":
            B[n - 1][n - 1] = Fraction(1)
            link(n - 2, n - 1, Fraction(-1))
        elif series == "C":
            B[n - 1][n - 1] = Fraction(4)
            link(n - 2, n - 1, -2)
        elif series == "D":
            link(n - 3, n - 1, -1)
    elif series == "E":
        link(0, 2, -1)
        link(1, 3, -1)
        for i in range(2, n - 1):
            link(i, i + 1, -1)
    elif series == "F":
        B[0][0] = B[1][1] = Fraction(4)
        link(0, 1, -2)
        link(1, 2, -2)
        link(2, 3, -1)
    elif series == "G":
        B[1][1] = Fraction(6)
        link(0, 1, -3)
    return B


def parse_type(token: str) -> tuple[str, int]:
    """Split a token such as ``"B3"`` into ``("B", 3)``."""
    m = re.fullmatch(r"\s*([A-Ga-g])\s*(\d+)\s*", token)
    if not m:
        raise ValueError(f"cannot parse root system type {token!r}")
    return m.group(1).upper(), int(m.group(2))


class RootSystem:
    """Root datum of a finite crystallographic root system plus its Weyl group.

    Build instances with :func:`build_root_system`.
    """

    def __init__(self, series: str, rank: int):
        if series not in _SERIES_RANKS or not _SERIES_RANKS[series](rank):
            raise ValueError(f"invalid finite type {series}{rank}")
        if rank > 8:
            raise ValueError(f"rank {rank} exceeds the supported maximum of 8")
        self.series = series
        self.rank = rank
        gram = _gram_matrix(series, rank)
        self._gram = gram
        # cartan[i][j] = <a_i^v, a_j>
        cartan = [[int(2 * gram[i][j] / gram[i][i]) for j in range(rank)] for i in range(rank)]
        self.cartan = np.array(cartan, dtype=np.int64)
        self._check_cartan()
        self._build_roots()

    _LAZY = frozenset({
        "weyl", "_weyl_index", "_np", "identity", "longest", "_simple", "_refl_np",
        "right_reflect", "_reflection_element", "_weight_np",
    })

    def __getattr__(self, name):
        # the Weyl group is only built on first use (E7/E8 are too large to enumerate)
        if name in RootSystem._LAZY and "weyl" not in self.__dict__:
            self._build_weyl()
            return getattr(self, name)
        raise AttributeError(name)

    def __repr__(self):
        return f"RootSystem({self.series}{self.rank})"

    @property
    def name(self) -> str:
        return f"{self.series}{self.rank}"

    def _check_cartan(self):
        A = self.cartan
        assert all(A[i, i] == 2 for i in range(self.rank))
        for i in range(self.rank):
            for j in range(self.rank):
                if i != j:
                    assert A[i, j] <= 0
                    assert (A[i, j] == 0) == (A[j, i] == 0)

    # roots

    def _norm(self, coords) -> Fraction:
        g = self._gram
        n = self.rank
        return sum((coords[i] * coords[j] * g[i][j] for i in range(n) for j in range(n)),
                   Fraction(0))

    def _make_root(self, coords) -> Root:
        coords = tuple(int(c) for c in coords)
        norm = self._norm(coords)
        co = []
        for j, c in enumerate(coords):
            v = Fraction(c) * self._gram[j][j] / norm
            assert v.denominator == 1
            co.append(int(v))
        return Root(coords, Coroot(tuple(co)))

    def _build_roots(self):
        n = self.rank
        A = self.cartan
        simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
        found = set(simple)
        frontier = list(simple)
        # closure of the simple roots under simple reflections
        while frontier:
            nxt = []
            for c in frontier:
                for i in range(n):
                    p = sum(c[j] * int(A[i, j]) for j in range(n))
                    img = tuple(c[j] - (p if j == i else 0) for j in range(n))
                    if img not in found:
                        found.add(img)
                        nxt.append(img)
            frontier = nxt
        pos = [c for c in found if all(x >= 0 for x in c)]
        pos.sort(key=lambda c: (sum(c), tuple(-x for x in c)))
        self.positive_roots: list[Root] = [self._make_root(c) for c in pos]
        self.simple_roots: list[Root] = self.positive_roots[:n]
        assert [r.coords for r in self.simple_roots] == simple
        self.root_index: dict[Root, int] = {r: k for k, r in enumerate(self.positive_roots)}
        self._root_coords = {r.coords for r in self.positive_roots}
        self._root_coords |= {(-r).coords for r in self.positive_roots}
        self._root_by_coroot: dict[tuple, Root] = {}
        for r in self.positive_roots:
            self._root_by_coroot[r.coroot.coords] = r
            self._root_by_coroot[(-r).coroot.coords] = -r
        self.highest_root: Root = max(self.positive_roots, key=lambda r: r.height)
        norms = {r: self._norm(r.coords) for r in self.positive_roots}
        short = min(norms.values())
        self.highest_short_root: Root = max(
            (r for r in self.positive_roots if norms[r] == short), key=lambda r: r.height)
        self.rho_pairings: dict[Root, int] = {r: sum(r.coroot.coords) for r in self.positive_roots}
        self._root_weight = {r: self._root_as_weight(r) for r in self.positive_roots}

    @property
    def all_roots(self) -> list[Root]:
        return self.positive_roots + [-r for r in self.positive_roots]

    def root(self, coords) -> Root:
        """Look up a root (either sign) by its simple-root coordinates."""
        coords = tuple(int(c) for c in coords)
        if coords not in self._root_coords:
            raise ValueError(f"{coords} is not a root of {self.name}")
        return self._make_root(coords)

    def parse_root(self, text: str) -> Root:
        """Parse ``"a1+a2"``, ``"-a1"``, ``"3a1+2a2"`` or coordinates ``"1,1"``."""
        t = text.replace(" ", "")
        if re.fullmatch(r"-?\d+(,-?\d+)*", t):
            return self.root(int(c) for c in t.split(","))
        terms = re.findall(r"([+-]?)(\d*)a(\d+)", t)
        if not terms or "".join(f"{sg}{c}a{i}" for sg, c, i in terms) != t.lstrip("+"):
            raise ValueError(f"cannot parse root {text!r}")
        coords = [0] * self.rank
        for sg, c, i in terms:
            i = int(i)
            if not 1 <= i <= self.rank:
                raise ValueError(f"index {i} out of range in {text!r}")
            coords[i - 1] += (-1 if sg == "-" else 1) * (int(c) if c else 1)
        return self.root(coords)

    def root_of_coroot(self, coroot: Coroot) -> Root | None:
        """The root whose coroot is ``coroot``, or None."""
        return self._root_by_coroot.get(coroot.coords)

    def _root_as_weight(self, r: Root) -> Weight:
        A = self.cartan
        n = self.rank
        return Weight(tuple(sum(int(A[i, j]) * r.coords[j] for j in range(n)) for i in range(n)))

    def root_weight(self, r: Root) -> Weight:
        """The root ``r`` written in the fundamental-weight basis."""
        if r.sign > 0:
            return self._root_weight[r]
        return -self._root_weight[-r]

    def weight(self, coords) -> Weight:
        if len(coords) != self.rank:
            raise ValueError(f"expected {self.rank} weight coefficients, got {len(coords)}")
        return Weight(tuple(coords))

    def fundamental_weight(self, i: int) -> Weight:
        return Weight(tuple(int(j == i - 1) for j in range(self.rank)))

    @cached_property
    def rho(self) -> Weight:
        return Weight((1,) * self.rank)

    def simple_coroot(self, i: int) -> Coroot:
        return Coroot(tuple(int(j == i - 1) for j in range(self.rank)))

    # Weyl group

    def _simple_matrices(self):
        n = self.rank
        mats = []
        for i in range(n):
            M = np.eye(n, dtype=np.int64)
            M[i, :] -= self.cartan[i, :]
            mats.append(M)
        return mats

    def _build_weyl(self):
        n = self.rank
        simple = self._simple_matrices()
        self._simple = simple
        ident = np.eye(n, dtype=np.int64)
        key = lambda M: tuple(tuple(int(x) for x in row) for row in M)
        mats = {key(ident): ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for M in frontier:
                for S in simple:
                    P = M @ S
                    k = key(P)
                    if k not in mats:
                        mats[k] = P
                        nxt.append(P)
            frontier = nxt
        pos = np.array([r.coords for r in self.positive_roots], dtype=np.int64).T

        def length(M):
            img = M @ pos
            return int(np.sum(np.all(img <= 0, axis=0)))

        info = {k: length(M) for k, M in mats.items()}
        # reduced words: peel off the smallest right descent
        words: dict[tuple, tuple[int, ...]] = {key(ident): ()}
        for k in sorted(info, key=info.get):
            if info[k] == 0:
                continue
            M = mats[k]
            for i in range(n):
                if (M[:, i] <= 0).all():
                    words[k] = words[key(M @ simple[i])] + (i + 1,)
                    break
        order = sorted(info, key=lambda k: (info[k], words[k]))
        self.weyl: list[WeylElement] = [
            WeylElement(k, info[k], words[k], idx) for idx, k in enumerate(order)]
        self._weyl_index = {w.matrix: w.index for w in self.weyl}
        self._np = [mats[w.matrix] for w in self.weyl]
        self.identity = self.weyl[0]
        self.longest = self.weyl[-1]
        assert self.longest.length == len(self.positive_roots)
        # right multiplication by reflections s_beta, beta positive
        refl = [self._reflection_matrix(r) for r in self.positive_roots]
        self._refl_np = refl
        self.right_reflect: list[list[int]] = [
            [self._weyl_index[key(M @ R)] for R in refl] for M in self._np]
        self._reflection_element = [self._weyl_index[key(R)] for R in refl]
        # weight action: fundamental-weight basis, s_i(lam) = lam - lam_i * alpha_i
        cols = np.array([[int(self.cartan[j, i]) for j in range(n)] for i in range(n)]).T
        wsimple = []
        for i in range(n):
            M = np.eye(n, dtype=np.int64)
            M[:, i] -= cols[:, i]
            wsimple.append(M)
        wmats = []
        for w in self.weyl:
            M = np.eye(n, dtype=np.int64)
            for i in w.word:
                M = M @ wsimple[i - 1]
            wmats.append(M)
        self._weight_np = wmats

    def _reflection_matrix(self, r: Root):
        n = self.rank
        # s_r(a_j) = a_j - <a_j, r^v> r
        M = np.eye(n, dtype=np.int64)
        for j in range(n):
            p = sum(int(self.cartan[i, j]) * r.coroot.coords[i] for i in range(n))
            for i in range(n):
                M[i, j] -= p * r.coords[i]
        return M

    def element(self, word) -> WeylElement:
        """The group element s_{i1} s_{i2} ... for the given word of node indices."""
        n = self.rank
        M = np.eye(n, dtype=np.int64)
        for i in word:
            if not 1 <= i <= n:
                raise ValueError(f"simple reflection index {i} out of range 1..{n}")
            M = M @ self._simple[i - 1]
        return self.weyl[self._weyl_index[tuple(tuple(int(x) for x in row) for row in M)]]

    def parse_element(self, text: str) -> WeylElement:
        """Parse ``"s1 s2 s1"``, ``"s1s2s1"``, ``"1 2 1"`` or ``"e"``."""
        t = text.strip()
        if t in ("", "e"):
            return self.identity
        if "s" in t:
            idx = re.findall(r"s\s*(\d+)", t)
            if re.sub(r"s\s*\d+|\s|\*", "", t):
                raise ValueError(f"cannot parse Weyl group word {text!r}")
        else:
            idx = re.findall(r"\d+", t)
            if re.sub(r"[\d\s,]", "", t):
                raise ValueError(f"cannot parse Weyl group word {text!r}")
        return self.element([int(i) for i in idx])

    def mul(self, a: WeylElement, b: WeylElement) -> WeylElement:
        M = self._np[a.index] @ self._np[b.index]
        return self.weyl[self._weyl_index[tuple(tuple(int(x) for x in row) for row in M)]]

    def inverse(self, a: WeylElement) -> WeylElement:
        return self.element(tuple(reversed(a.word)))

    def reflection(self, r: Root) -> WeylElement:
        return self.weyl[self._reflection_element[self.root_index[abs(r)]]]

    def times_reflection(self, w: WeylElement, r: Root) -> WeylElement:
        """``w * s_|r|``."""
        return self.weyl[self.right_reflect[w.index][self.root_index[abs(r)]]]

    def act_root(self, w: WeylElement, r: Root) -> Root:
        img = self._np[w.index] @ np.array(r.coords, dtype=np.int64)
        return self._make_root(img)

    def act(self, w: WeylElement, lam: Weight) -> Weight:
        M = self._weight_np[w.index]
        n = self.rank
        return Weight(tuple(sum(int(M[i, j]) * lam.coords[j] for j in range(n)) for i in range(n)))

    def is_descent(self, w: WeylElement, i: int) -> bool:
        """True when w(a_i) is negative (right descent)."""
        return bool((self._np[w.index][:, i - 1] <= 0).all())

    def parabolic_longest(self, nodes) -> WeylElement:
        """Longest element of the parabolic subgroup generated by ``nodes``."""
        nodes = set(nodes)
        best = self.identity
        for w in self.weyl:
            if set(w.word) <= nodes and w.length > best.length:
                best = w
        return best

    def dominant_data(self, lam: Weight) -> DominantData:
        """Dominant representative of the orbit of ``lam`` and its coset extremes."""
        if not lam.is_integral():
            raise ValueError(f"{lam} is not an integral weight")
        dom = None
        for w in self.weyl:
            img = self.act(w, lam)
            if img.is_dominant():
                dom = img
                break
        assert dom is not None
        coset = [w for w in self.weyl if self.act(w, dom) == lam]
        longest = max(coset, key=lambda w: w.length)
        shortest = min(coset, key=lambda w: w.length)
        assert sum(1 for w in coset if w.length == longest.length) == 1
        assert sum(1 for w in coset if w.length == shortest.length) == 1
        nodes = tuple(i + 1 for i, c in enumerate(dom.coords) if c == 0)
        w0I = self.parabolic_longest(nodes)
        assert self.mul(shortest, w0I) == longest
        assert longest.length == shortest.length + w0I.length
        return DominantData(dom, longest, shortest, nodes)

    def pairings(self, lam: Weight) -> dict[Root, Fraction]:
        return {r: pair(lam, r) for r in self.positive_roots}


_CACHE: dict[tuple[str, int], RootSystem] = {}


def build_root_system(series: str, rank: int | None = None) -> RootSystem:
    """Build (and memoise) the root system of the given finite type.

    ``build_root_system("B", 3)`` and ``build_root_system("B3")`` are equivalent.
    """
    if rank is None:
        series, rank = parse_type(series)
    series = series.upper()
    k = (series, rank)
    if k not in _CACHE:
        _CACHE[k] = RootSystem(series, rank)
    return _CACHE[k]
