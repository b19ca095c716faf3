"""
Formal terms of the Chevalley-type expansion of a graded character.

Both expansions, the one indexed by admissible subsets and the one indexed by
(interpolated QLS path, endpoint) pairs, are reduced to multisets of
:class:`ChevalleyTerm`.  The graded characters themselves are treated as free
symbols indexed by ``(direction, translation)``, so the identity becomes
equality of these multisets.  The common factor coming from the partition
tuples ``Par(lam)`` is the same on both sides and is only reinstated by
:func:`emit_series`.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .alcove import admissible_subsets
from .forgetful import image_set
from .iqls import ShapeContext, enumerate_iqls, shape_context
from .reforder import LambdaChain, suitable_chain
from .rootsys import Coroot, RootSystem, Weight, WeylElement, pair

__all__ = [
    "PartitionTuple", "ChevalleyTerm", "par_truncated", "terms_from_admissible",
    "terms_from_iqls", "verify_identity", "emit_series", "partitions",
]


def partitions(n: int, max_len: int, max_part: int | None = None):
    """Partitions of ``n`` with at most ``max_len`` parts, parts weakly decreasing."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    if max_len == 0:
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, max_len - 1, first):
            yield (first,) + rest


@dataclass(frozen=True)
class PartitionTuple:
    parts: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return sum(sum(p) for p in self.parts)

    @property
    def iota(self) -> Coroot:
        return Coroot(tuple(p[0] if p else 0 for p in self.parts))

    def __str__(self) -> str:
        return "(" + ", ".join(
            "()" if not p else "(" + ",".join(map(str, p)) + ")" for p in self.parts) + ")"


def par_truncated(lam: Weight, N: int) -> list[PartitionTuple]:
    """Tuples in ``Par(lam)`` of total size at most ``N``, ordered by size and
    then lexicographically."""
    if N < 0:
        raise ValueError("truncation must be non-negative")
    bounds = [max(int(m), 0) for m in lam.coords]
    out = []

    def rec(i, remaining, acc):
        if i == len(bounds):
            out.append(PartitionTuple(tuple(acc)))
            return
        for n in range(remaining + 1):
            for p in partitions(n, bounds[i]):
                rec(i + 1, remaining - n, acc + [p])

    rec(0, N, [])
    out.sort(key=lambda c: (c.size, c.parts))
    return out


@dataclass(frozen=True)
class ChevalleyTerm:
    sign: int
    q: int | Fraction
    weight: Weight
    direction: WeylElement
    shift: Coroot

    def sort_key(self):
        return (self.direction.index, self.shift.coords, self.weight.coords, self.q, self.sign)

    def to_dict(self) -> dict:
        return {"sign": self.sign, "q": str(self.q), "weight": str(self.weight),
                "direction": str(self.direction), "shift": list(self.shift.coords)}


def _int_if_integral(q: Fraction) -> int | Fraction:
    q = Fraction(q)
    return int(q) if q.denominator == 1 else q


def terms_from_admissible(rs: RootSystem, w: WeylElement, chain: LambdaChain) -> list[ChevalleyTerm]:
    return [ChevalleyTerm((-1) ** A.n, -A.height, A.wt, A.end, A.down)
            for A in admissible_subsets(rs, w, chain)]


def terms_from_iqls(ctx: ShapeContext, w: WeylElement, paths=None) -> list[ChevalleyTerm]:
    if paths is None:
        paths = ctx.enumerate()
    out = []
    for eta, u in image_set(ctx, w, paths):
        exponent = ctx.nega(eta) + u.length - eta.iota.length
        out.append(ChevalleyTerm((-1) ** (exponent % 2), _int_if_integral(ctx.deg_w(eta, w)),
                                 ctx.wt(eta), u, ctx.xi(u, eta, w)))
    return out


def verify_identity(rs: RootSystem, lam: Weight, w: WeylElement, order=None,
                    paths=None, chain: LambdaChain | None = None) -> dict:
    """Compare the two term multisets; the report is JSON-serialisable."""
    ctx = shape_context(rs, lam, order)
    if chain is None:
        chain = suitable_chain(rs, lam, ctx.order)
    lhs = Counter(terms_from_admissible(rs, w, chain))
    rhs = Counter(terms_from_iqls(ctx, w, paths))
    only_lhs = sorted((lhs - rhs).elements(), key=ChevalleyTerm.sort_key)
    only_rhs = sorted((rhs - lhs).elements(), key=ChevalleyTerm.sort_key)
    return {
        "case": {"type": rs.name, "lambda": [str(c) for c in lam.coords], "w": str(w)},
        "lhs_terms": sum(lhs.values()),
        "rhs_terms": sum(rhs.values()),
        "equal": lhs == rhs,
        "diff": {"admissible_only": [t.to_dict() for t in only_lhs],
                 "iqls_only": [t.to_dict() for t in only_rhs]},
        "unverifiable": ["vanishing of the sum when mu + lambda is not dominant "
                         "(needs the characters themselves)"],
    }


def emit_series(rs: RootSystem, lam: Weight, w: WeylElement, xi: Coroot, N: int,
                order=None, source: str = "iqls") -> list[dict]:
    """Truncated expansion with symbolic character factors.

    One entry per (term, partition tuple) with ``|chi| <= N``; entries are
    ordered by ``|chi|`` first, so a lower truncation is a prefix of a higher one.
    """
    ctx = shape_context(rs, lam, order)
    if source == "iqls":
        terms = terms_from_iqls(ctx, w)
    elif source == "alcove":
        terms = terms_from_admissible(rs, w, suitable_chain(rs, lam, ctx.order))
    else:
        raise ValueError(f"unknown source {source!r}")
    terms.sort(key=ChevalleyTerm.sort_key)
    shift0 = pair(lam, xi)
    out = []
    for chi in par_truncated(lam, N):
        for t in terms:
            q = t.q - shift0 - chi.size
            out.append({
                "sign": t.sign,
                "q_exponent": str(_int_if_integral(q)),
                "weight": [str(c) for c in t.weight.coords],
                "chi": [list(p) for p in chi.parts],
                "gch_index": {"direction": str(t.direction),
                              "translation": list((xi + t.shift + chi.iota).coords)},
            })
    return out


def series_json(entries: list[dict]) -> str:
    return json.dumps(entries, indent=1)
