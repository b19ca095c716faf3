"""
The forgetful map from admissible subsets of a suitable chain to pairs
(interpolated QLS path, endpoint), its inverse and its image.

For ``A = {j_1 < ... < j_s}`` with path vertices ``u_0 = w, ..., u_s`` and
rational parts ``d_j`` of the chain entries, the positions are grouped by
equal ``d``.  ``m_1`` counts the entries with ``d = 0``; each intermediate
group ends at the next ``m``; the entries with ``d = 1`` come after ``m_t``.
Inside an intermediate group the negated roots come first and ``n_a`` marks
where they stop.  Then

    Xi(A) = (u_{m_t}, ..., u_{m_1}; u_{n_{t-1}}, ..., u_{n_1};
             0, 1 - d_{m_t}, ..., 1 - d_{m_2}, 1).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .alcove import AdmissibleSubset, admissible_subset
from .iqls import MINUS, PLUS, ArrowMissing, IQLSPath, ShapeContext
from .reforder import LambdaChain
from .rootsys import RootSystem, WeylElement

__all__ = [
    "ForgetfulRecord", "xi_map", "forgetful", "inverse", "image_predicate", "image_set",
    "NotInImage", "inverse_positions",
]


class NotInImage(ArrowMissing):
    """The pair is not in the image of the forgetful map."""


@dataclass(frozen=True)
class ForgetfulRecord:
    source: AdmissibleSubset
    ms: tuple[int, ...]
    ns: tuple[int, ...]
    eta: IQLSPath

    @property
    def u(self) -> WeylElement:
        return self.source.end


def _check_chain(ctx: ShapeContext, chain: LambdaChain):
    if chain.order is None or chain.order != ctx.order or chain.lam != ctx.lam:
        raise ValueError("the chain must be the suitable chain of the context's order")


def xi_map(ctx: ShapeContext, chain: LambdaChain, A: AdmissibleSubset,
           distinct_y: bool = True, validate: bool = True) -> ForgetfulRecord:
    """Segment ``A`` and build the record.  With ``validate`` the image is
    checked against the definition of an interpolated path."""
    _check_chain(ctx, chain)
    pos = A.positions
    s = len(pos)
    u = A.path.vertices
    # work with ranks of d among the chain's distinct values; 0 and 1 are the ends
    values = chain.d_values
    ranks = [chain.d_ranks[j - 1] for j in pos]
    lo = 0 if values and values[0] == 0 else -1
    hi = len(values) - 1 if values and values[-1] == 1 else len(values)
    signs = chain.signs

    m1 = sum(1 for r in ranks if r == lo)
    inner = sorted({r for r in ranks if lo < r < hi})
    ms = [m1] + [sum(1 for r in ranks if r <= c) for c in inner]
    levels = [values[c] for c in inner]
    t = len(ms)
    assert ms[-1] == s - sum(1 for r in ranks if r == hi)

    ns = []
    for a in range(t - 1):
        seg = [signs[j - 1] for j in pos[ms[a]:ms[a + 1]]]
        k = seg.count(-1)
        assert all(sg < 0 for sg in seg[:k]), \
            f"segment {a + 1} of {A.label()} mixes signs out of order"
        ns.append(ms[a] + k)

    x = tuple(u[ms[a]] for a in reversed(range(t)))
    y = tuple(u[ns[a]] for a in reversed(range(t - 1)))
    sigma = (Fraction(0),) + tuple(1 - c for c in reversed(levels)) + (Fraction(1),)
    eta = IQLSPath(x, y, sigma)
    if validate and not ctx.is_path(eta, distinct_y=distinct_y):
        raise AssertionError(f"Xi({A.label()}) = {eta} is not an interpolated QLS path")
    return ForgetfulRecord(A, tuple(ms), tuple(ns), eta)


def forgetful(ctx: ShapeContext, chain: LambdaChain, A: AdmissibleSubset,
              distinct_y: bool = True):
    """``(Xi(A), end(A))``."""
    return xi_map(ctx, chain, A, distinct_y).eta, A.end


def image_predicate(ctx: ShapeContext, eta: IQLSPath, u: WeylElement, w: WeylElement,
                    q0: bool = False) -> bool:
    return (ctx.has_arrow(w, eta.kappa, 1, PLUS, q0)
            and ctx.has_arrow(eta.iota, u, 1, MINUS, q0))


def image_set(ctx: ShapeContext, w: WeylElement, paths, q0: bool = False):
    """All ``(eta, u)`` with ``eta`` in ``paths`` satisfying the image predicate."""
    rs = ctx.rs
    out = []
    for eta in paths:
        if not ctx.has_arrow(w, eta.kappa, 1, PLUS, q0):
            continue
        for u in sorted(ctx.targets(eta.iota, 1, MINUS, q0)):
            out.append((eta, rs.weyl[u]))
    return out


_NEGATED: dict[str, tuple] = {}


def _negated(rs: RootSystem) -> tuple:
    if rs.name not in _NEGATED:
        _NEGATED[rs.name] = tuple(-r for r in rs.positive_roots)
    return _NEGATED[rs.name]


def inverse_positions(ctx: ShapeContext, chain: LambdaChain, eta: IQLSPath, u: WeylElement,
                      w: WeylElement, q0: bool = False) -> tuple[int, ...]:
    """1-based chain positions of the admissible subset mapping to ``(eta, u)``.

    The witness arrows are the unique label-increasing paths; each label is
    lifted to the chain entry with the matching rational part ``d``.
    """
    _check_chain(ctx, chain)
    rs: RootSystem = ctx.rs
    signed = {PLUS: rs.positive_roots, MINUS: _negated(rs)}
    positions, labels_used = [], []

    # d = 1 - sigma is carried as a reduced pair (num, den)
    def take(x, y, sigma, sign, num, den, what):
        labels = ctx.targets(x, sigma, sign, q0).get(y.index)
        if labels is None:
            raise NotInImage(f"no arrow {x} =({sign})=> {y} at level {sigma} ({what})")
        for k in labels:
            r = signed[sign][k]
            j = chain.locate_key(num, den, r)
            if j is None:
                raise NotInImage(f"({Fraction(num, den)}, {r}) is not a chain entry")
            positions.append(j + 1)
            labels_used.append(k)

    take(w, eta.kappa, 1, PLUS, 0, 1, "w to final direction")
    for i in reversed(range(1, eta.s)):
        sg = eta.sigma[i]
        num, den = sg.denominator - sg.numerator, sg.denominator
        take(eta.x[i], eta.y[i - 1], sg, MINUS, num, den, f"junction {i}, negative part")
        take(eta.y[i - 1], eta.x[i - 1], sg, PLUS, num, den, f"junction {i}, positive part")
    take(eta.iota, u, 1, MINUS, 1, 1, "initial direction to u")
    if any(a >= b for a, b in zip(positions, positions[1:])):
        raise NotInImage(f"lifted positions {positions} are not increasing")

    kinds = ctx.graph.kind_table
    x = w.index
    for k in labels_used:
        if kinds[x][k] is None:
            raise AssertionError(f"lifted subset {positions} leaves the graph at {rs.weyl[x]}")
        x = rs.right_reflect[x][k]
    if x != u.index:
        raise AssertionError(f"lifted subset {positions} ends at {rs.weyl[x]}, not {u}")
    return tuple(positions)


def inverse(ctx: ShapeContext, chain: LambdaChain, eta: IQLSPath, u: WeylElement,
            w: WeylElement, q0: bool = False) -> AdmissibleSubset:
    """Rebuild the admissible subset mapping to ``(eta, u)``."""
    positions = inverse_positions(ctx, chain, eta, u, w, q0)
    A = admissible_subset(ctx.rs, w, chain, positions, q0)
    assert A is not None and A.end == u
    return A
