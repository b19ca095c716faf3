"""
Reflection orders, inversion sets of translations and suitable lambda-chains.

A reflection order on a positive system ``U`` (either the standard positive
roots or ``w(lam)`` applied to them) is a total order in which every sum
``a + b`` of two members sits strictly between its summands.  The classes
``RO(lam, ...)`` add a block condition driven by the signs of ``<lam, a^v>``.

The inversion set ``Inv(lam)`` of the translation by ``lam`` consists of affine
coroots ``a^v + k*delta``; sorting it through ``Phi`` yields the suitable chain
``Gamma(lam)`` that the forgetful map is built on.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .rootsys import Coroot, Root, RootSystem, Weight, pair

__all__ = [
    "AffineCoroot", "ChainEntry", "LambdaChain", "ReflectionOrder",
    "all_reflection_orders", "check_affine_reflection_order", "check_coroot_betweenness",
    "check_partition_lemma", "in_ro", "in_ro_conjugate", "inversion_set", "is_reflection_order",
    "order_from_word", "partition", "phi", "reduced_words", "ro_conjugate",
    "ro_conjugate_inverse", "ro_for_lambda", "ro_orders", "suitable_chain",
]


@dataclass(frozen=True)
class ReflectionOrder:
    """A total order, listed from smallest to largest."""

    roots: tuple[Root, ...]

    def __iter__(self):
        return iter(self.roots)

    def __len__(self):
        return len(self.roots)

    def __getitem__(self, k):
        return self.roots[k]

    @cached_property
    def _pos(self) -> dict[Root, int]:
        return {r: k for k, r in enumerate(self.roots)}

    def position(self, r: Root) -> int:
        return self._pos[r]

    def less(self, a: Root, b: Root) -> bool:
        return self._pos[a] < self._pos[b]

    def reversed(self) -> ReflectionOrder:
        return ReflectionOrder(tuple(reversed(self.roots)))

    def to_list(self) -> list[list[int]]:
        return [list(r.coords) for r in self.roots]

    def __str__(self) -> str:
        return " < ".join(str(r) for r in self.roots)


def _as_order(order) -> ReflectionOrder:
    return order if isinstance(order, ReflectionOrder) else ReflectionOrder(tuple(order))


def partition(rs: RootSystem, lam: Weight) -> tuple[tuple[Root, ...], tuple[Root, ...], tuple[Root, ...]]:
    """``(negative, zero, positive)`` parts of the positive roots by the sign of ``<lam, a^v>``."""
    neg, zero, pos = [], [], []
    for r in rs.positive_roots:
        p = pair(lam, r)
        (neg if p < 0 else zero if p == 0 else pos).append(r)
    return tuple(neg), tuple(zero), tuple(pos)


# reflection-order predicates

def is_reflection_order(rs: RootSystem, order, universe=None) -> tuple[bool, tuple[Root, Root] | None]:
    """Check the betweenness axiom.

    Returns ``(True, None)`` or ``(False, (a, b))`` where ``a`` precedes ``b``,
    ``a + b`` lies in the universe and is not between them.  The universe
    defaults to the set of roots in ``order``.
    """
    order = _as_order(order)
    if universe is not None and (set(universe) != set(order.roots)
                                 or len(order) != len(set(universe))):
        raise ValueError("order is not a permutation of the universe")
    if len(set(order.roots)) != len(order):
        raise ValueError("order repeats a root")
    by_coords = {r.coords: r for r in order.roots}
    n = len(order)
    for i in range(n):
        a = order[i]
        for j in range(i + 1, n):
            b = order[j]
            s = by_coords.get(tuple(x + y for x, y in zip(a.coords, b.coords)))
            if s is None:
                continue
            if not i < order.position(s) < j:
                return False, (a, b)
    return True, None


def check_coroot_betweenness(rs: RootSystem, order) -> tuple[Root, Root] | None:
    """Coroot version of betweenness: if ``a`` precedes ``b`` and ``a^v + b^v`` is
    a coroot of the universe, its root must sit between them.  Returns a violating
    pair or None."""
    order = _as_order(order)
    members = set(order.roots)
    n = len(order)
    for i in range(n):
        for j in range(i + 1, n):
            a, b = order[i], order[j]
            c = rs.root_of_coroot(a.coroot + b.coroot)
            if c is None or c not in members:
                continue
            if not i < order.position(c) < j:
                return a, b
    return None


def in_ro(rs: RootSystem, lam: Weight, order) -> bool:
    """Membership in RO(lam, positive roots): a reflection order with the
    negative block first, then the zero block, then the positive block."""
    order = _as_order(order)
    if set(order.roots) != set(rs.positive_roots) or len(order) != len(rs.positive_roots):
        return False
    if not is_reflection_order(rs, order)[0]:
        return False
    rank = [0 if pair(lam, r) < 0 else 1 if pair(lam, r) == 0 else 2 for r in order]
    return rank == sorted(rank)


def _conjugate_universe(rs: RootSystem, lam: Weight) -> set[Root]:
    neg, zero, pos = partition(rs, lam)
    return set(pos) | {-r for r in neg} | {-r for r in zero}


def in_ro_conjugate(rs: RootSystem, lam: Weight, prec) -> bool:
    """Membership in RO(lam, w(lam) applied to the positive roots)."""
    prec = _as_order(prec)
    universe = _conjugate_universe(rs, lam)
    if set(prec.roots) != universe or len(prec) != len(universe):
        return False
    if not is_reflection_order(rs, prec)[0]:
        return False
    neg, zero, pos = partition(rs, lam)
    posset, negset = set(pos), {-r for r in neg}
    rank = [0 if r in posset else 1 if r in negset else 2 for r in prec]
    return rank == sorted(rank)


def ro_conjugate(rs: RootSystem, lam: Weight, order) -> ReflectionOrder:
    """The bijection RO(lam, positive roots) -> RO(lam, w(lam) positive roots).

    Positive block as is, then the negated negative block, then the negated
    zero block, each keeping the order it had.
    """
    order = _as_order(order)
    if not in_ro(rs, lam, order):
        raise ValueError(f"order {order} is not in RO({lam})")
    pos = [r for r in order if pair(lam, r) > 0]
    neg = [-r for r in order if pair(lam, r) < 0]
    zero = [-r for r in order if pair(lam, r) == 0]
    return ReflectionOrder(tuple(pos + neg + zero))


def ro_conjugate_inverse(rs: RootSystem, lam: Weight, prec) -> ReflectionOrder:
    prec = _as_order(prec)
    if not in_ro_conjugate(rs, lam, prec):
        raise ValueError(f"order {prec} is not in the conjugate class for {lam}")
    pos = [r for r in prec if r.sign > 0]
    neg = [-r for r in prec if r.sign < 0 and pair(lam, r) > 0]
    zero = [-r for r in prec if r.sign < 0 and pair(lam, r) == 0]
    return ReflectionOrder(tuple(neg + zero + pos))


# reduced words and the orders they induce

def order_from_word(rs: RootSystem, word) -> ReflectionOrder:
    """Order ``a_{i1} < s_{i1} a_{i2} < s_{i1} s_{i2} a_{i3} < ...`` from a
    reduced word of the longest element."""
    roots = []
    prefix = rs.identity
    for i in word:
        roots.append(rs.act_root(prefix, rs.simple_roots[i - 1]))
        prefix = rs.mul(prefix, rs.element([i]))
    if prefix != rs.longest or len(word) != len(rs.positive_roots):
        raise ValueError(f"{word} is not a reduced word of the longest element")
    return ReflectionOrder(tuple(roots))


def reduced_words(rs: RootSystem, w, limit: int | None = None):
    """Yield reduced words of ``w`` in lexicographic order (at most ``limit``)."""
    count = 0

    def rec(x):
        if x.length == 0:
            yield ()
            return
        for i in range(1, rs.rank + 1):
            y = rs.mul(rs.element([i]), x)
            if y.length < x.length:
                for rest in rec(y):
                    yield (i,) + rest

    for word in rec(w):
        yield word
        count += 1
        if limit is not None and count >= limit:
            return


def all_reflection_orders(rs: RootSystem, limit: int | None = None) -> list[ReflectionOrder]:
    """Reflection orders on the positive roots, one per reduced word of the
    longest element."""
    return [order_from_word(rs, word) for word in reduced_words(rs, rs.longest, limit)]


def ro_orders(rs: RootSystem, lam: Weight, limit: int | None = None) -> list[ReflectionOrder]:
    """Members of RO(lam, positive roots) among the word-induced orders."""
    return [o for o in all_reflection_orders(rs, limit) if in_ro(rs, lam, o)]


def ro_for_lambda(rs: RootSystem, lam: Weight) -> ReflectionOrder:
    """A member of RO(lam, positive roots) built from the length-additive
    factorisation ``w0 = u(-lam)^{-1} u(lam) w0(I)``."""
    dd = rs.dominant_data(lam)
    u_minus = rs.dominant_data(-lam).shortest
    word = tuple(reversed(u_minus.word)) + dd.shortest.word + rs.parabolic_longest(
        dd.stabilizer_nodes).word
    assert len(word) == len(rs.positive_roots)
    assert rs.element(word) == rs.longest
    betas = []
    for k, i in enumerate(word):
        tail = rs.element(tuple(reversed(word[k + 1:])))
        betas.append(rs.act_root(tail, rs.simple_roots[i - 1]))
    assert is_reflection_order(rs, betas)[0]
    prec = ReflectionOrder(tuple(rs.act_root(dd.longest, b) for b in betas))
    order = ro_conjugate_inverse(rs, lam, prec)
    assert in_ro(rs, lam, order)
    return order


def check_partition_lemma(rs: RootSystem, lam: Weight) -> bool:
    """``w(lam)`` applied to the positive roots equals P ⊔ -Z ⊔ -N."""
    wl = rs.dominant_data(lam).longest
    image = {rs.act_root(wl, r) for r in rs.positive_roots}
    return image == _conjugate_universe(rs, lam)


# affine coroots and the inversion set

@dataclass(frozen=True, order=True)
class AffineCoroot:
    """``coroot + degree * delta``."""

    coroot: Coroot
    degree: int

    def __add__(self, other: AffineCoroot) -> AffineCoroot:
        return AffineCoroot(self.coroot + other.coroot, self.degree + other.degree)

    def __sub__(self, other: AffineCoroot) -> AffineCoroot:
        return AffineCoroot(self.coroot - other.coroot, self.degree - other.degree)

    def is_real(self, rs: RootSystem) -> bool:
        return rs.root_of_coroot(self.coroot) is not None

    def is_positive(self, rs: RootSystem) -> bool:
        r = rs.root_of_coroot(self.coroot)
        if r is None:
            return False
        return self.degree >= 1 or (self.degree == 0 and r.sign > 0)

    def bar(self, rs: RootSystem) -> Root:
        r = rs.root_of_coroot(self.coroot)
        if r is None:
            raise ValueError(f"{self.coroot} is not a coroot")
        return r

    def __str__(self) -> str:
        if self.degree == 0:
            return str(self.coroot)
        d = "d" if self.degree == 1 else f"{self.degree}d"
        return f"{self.coroot}+{d}"


def _chi(r: Root) -> int:
    return 0 if r.sign > 0 else 1


def inversion_set(rs: RootSystem, lam: Weight) -> list[AffineCoroot]:
    """All ``a^v + k delta`` with ``chi(a) <= k < chi(a) + <lam, a^v>``."""
    out = []
    for r in rs.all_roots:
        p = pair(lam, r)
        if p.denominator != 1:
            raise ValueError(f"{lam} is not integral")
        c = _chi(r)
        out.extend(AffineCoroot(r.coroot, k) for k in range(c, c + int(p)))
    return out


def _in_inv(rs: RootSystem, lam: Weight, beta: AffineCoroot) -> bool:
    r = rs.root_of_coroot(beta.coroot)
    if r is None:
        return False
    c = _chi(r)
    return c <= beta.degree < c + pair(lam, r)


def phi(rs: RootSystem, lam: Weight, beta: AffineCoroot) -> tuple[Fraction, Root]:
    """``(deg / <lam, bar>, bar)`` for a member of the inversion set."""
    if not _in_inv(rs, lam, beta):
        raise ValueError(f"{beta} is not in Inv({lam})")
    r = beta.bar(rs)
    return Fraction(beta.degree) / pair(lam, r), r


@dataclass(frozen=True)
class ChainEntry:
    root: Root          # gamma_k (signed)
    level: int          # l_k
    ltilde: int         # <lam, gamma_k^v> - l_k
    source: AffineCoroot | None = None
    d: Fraction | None = None

    def to_dict(self) -> dict:
        out = {"root": list(self.root.coords), "level": self.level}
        if self.source is not None:
            out["coroot"] = list(self.source.coroot.coords)
            out["degree"] = self.source.degree
        return out


@dataclass(frozen=True)
class LambdaChain:
    """A lambda-chain with levels; ``order`` is set for suitable chains."""

    lam: Weight
    entries: tuple[ChainEntry, ...]
    order: ReflectionOrder | None = None

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, k):
        return self.entries[k]

    def __iter__(self):
        return iter(self.entries)

    @property
    def roots(self) -> tuple[Root, ...]:
        return tuple(e.root for e in self.entries)

    @property
    def levels(self) -> tuple[int, ...]:
        return tuple(e.level for e in self.entries)

    @property
    def suitable(self) -> bool:
        return self.order is not None

    @cached_property
    def _lookup(self) -> dict[tuple[int, int, Root], int]:
        return {(e.d.numerator, e.d.denominator, e.root): k
                for k, e in enumerate(self.entries) if e.d is not None}

    @cached_property
    def signs(self) -> tuple[int, ...]:
        return tuple(e.root.sign for e in self.entries)

    @cached_property
    def d_values(self) -> tuple[Fraction, ...]:
        """Distinct rational parts ``d``, increasing."""
        return tuple(sorted({e.d for e in self.entries if e.d is not None}))

    @cached_property
    def d_ranks(self) -> tuple[int, ...]:
        """Index of each entry's ``d`` in :attr:`d_values`."""
        rank = {d: k for k, d in enumerate(self.d_values)}
        return tuple(rank[e.d] for e in self.entries)

    def locate(self, d: Fraction, root: Root) -> int | None:
        """0-based position of the entry with ``Phi = (d, root)``."""
        d = Fraction(d)
        return self._lookup.get((d.numerator, d.denominator, root))

    def locate_key(self, num: int, den: int, root: Root) -> int | None:
        """:meth:`locate` with ``d = num/den`` given in lowest terms."""
        return self._lookup.get((num, den, root))

    def to_json(self) -> str:
        return json.dumps([e.to_dict() for e in self.entries])

    @classmethod
    def from_roots(cls, rs: RootSystem, lam: Weight, roots, levels) -> LambdaChain:
        """Wrap an externally supplied chain; levels are required."""
        roots = list(roots)
        levels = list(levels)
        if len(roots) != len(levels):
            raise ValueError("a chain needs one level per root")
        entries = []
        for r, lv in zip(roots, levels):
            p = pair(lam, r)
            entries.append(ChainEntry(r, int(lv), int(p) - int(lv)))
        return cls(lam, tuple(entries))


def suitable_chain(rs: RootSystem, lam: Weight, order=None) -> LambdaChain:
    """Sort the inversion set by ``Phi`` (rational part first, then the root in
    the reverse of the conjugate order)."""
    order = ro_for_lambda(rs, lam) if order is None else _as_order(order)
    prec = ro_conjugate(rs, lam, order)
    star = {r: len(prec) - 1 - k for k, r in enumerate(prec.roots)}
    inv = inversion_set(rs, lam)
    keyed = []
    for beta in inv:
        d, r = phi(rs, lam, beta)
        keyed.append(((d, star[r]), beta, d, r))
    keys = [k for k, *_ in keyed]
    if len(set(keys)) != len(keys):
        raise AssertionError(f"Phi is not injective on Inv({lam})")
    keyed.sort(key=lambda t: t[0])
    entries = tuple(
        ChainEntry(r, beta.degree, int(pair(lam, r)) - beta.degree, beta, d)
        for _, beta, d, r in keyed)
    return LambdaChain(lam, entries, order)


def check_affine_reflection_order(rs: RootSystem, chain: LambdaChain) -> list[str]:
    """Both axioms of an affine reflection order for a suitable chain; returns
    a list of violations (empty when the order is fine)."""
    items = [e.source for e in chain.entries]
    if any(b is None for b in items):
        raise ValueError("chain has no affine provenance")
    pos = {b: k for k, b in enumerate(items)}
    errors = []
    # (1) closure and betweenness for sums of two members
    for i, a in enumerate(items):
        for b in items[i + 1:]:
            s = a + b
            if not s.is_positive(rs):
                continue
            if s not in pos:
                errors.append(f"closure: {a} + {b} missing")
                continue
            lo, hi = sorted((pos[a], pos[b]))
            if not lo < pos[s] < hi:
                errors.append(f"betweenness: {a}, {s}, {b}")
    # (2) for each member split into two positive affine coroots, one part precedes it
    coroots = [r.coroot for r in rs.all_roots]
    for g in items:
        for c in coroots:
            rest = g.coroot - c
            if rs.root_of_coroot(rest) is None:
                continue
            for k in range(0, g.degree + 1):
                a = AffineCoroot(c, k)
                b = AffineCoroot(rest, g.degree - k)
                if not (a.is_positive(rs) and b.is_positive(rs)):
                    continue
                ok = (a in pos and pos[a] < pos[g]) or (b in pos and pos[b] < pos[g])
                if not ok:
                    errors.append(f"convexity: {g} = {a} + {b}")
    return errors
