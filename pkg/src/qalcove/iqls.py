"""
Interpolated QLS paths and interpolated LS paths of an arbitrary integral shape.

An interpolated path is ``eta = (x_1..x_s; y_1..y_{s-1}; 0 = s_0 < ... < s_s = 1)``
with, at every junction ``i``, an arrow ``x_{i+1} =(lam,-)=> y_i`` followed by
``y_i =(lam,+)=> x_i``, both at level ``s_i``.  An arrow of sign ``+`` (resp.
``-``) is a QBG path whose labels come from the roots pairing positively
(resp. negatively) with ``lam``, are integral at the given level, and decrease
along the fixed reflection order.  Label-decreasing for an order is
label-increasing for its reverse, which is again a reflection order, so each
arrow, when it exists, is the unique shortest path between its endpoints.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .qbg import QBGPath, build_qbg
from .reforder import ReflectionOrder, in_ro, partition, ro_for_lambda
from .rootsys import Coroot, RootSystem, Weight, WeylElement, pair

__all__ = [
    "IQLSPath", "ShapeContext", "shape_context", "sigma_candidates", "enumerate_iqls",
    "enumerate_ils", "path_stats", "deg_w", "xi", "ArrowMissing",
]

PLUS = "+"
MINUS = "-"


class ArrowMissing(ValueError):
    """A required arrow does not exist."""


def _fmt_frac(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class IQLSPath:
    x: tuple[WeylElement, ...]
    y: tuple[WeylElement, ...]
    sigma: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.y) != len(self.x) - 1 or len(self.sigma) != len(self.x) + 1:
            raise ValueError("inconsistent sequence lengths")
        object.__setattr__(self, "_hash", hash(
            (self.x, self.y, tuple((q.numerator, q.denominator) for q in self.sigma))))

    def __hash__(self):
        return self._hash

    @property
    def s(self) -> int:
        return len(self.x)

    @property
    def iota(self) -> WeylElement:
        return self.x[0]

    @property
    def kappa(self) -> WeylElement:
        return self.x[-1]

    def sort_key(self):
        return (self.s, self.sigma, tuple(v.index for v in reversed(self.x)),
                tuple(v.index for v in reversed(self.y)))

    def __str__(self) -> str:
        xs = ", ".join(map(str, self.x))
        ys = ", ".join(map(str, self.y))
        ss = ", ".join(_fmt_frac(q) for q in self.sigma)
        return f"({xs}; {ys}; {ss})" if ys else f"({xs}; ; {ss})"

    def to_dict(self) -> dict:
        return {"x": [str(v) for v in self.x], "y": [str(v) for v in self.y],
                "sigma": [[q.numerator, q.denominator] for q in self.sigma]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def straight(cls, x: WeylElement) -> IQLSPath:
        return cls((x,), (), (Fraction(0), Fraction(1)))


def sigma_candidates(rs: RootSystem, lam: Weight) -> list[Fraction]:
    """Levels in (0, 1) at which some root pairing nontrivially with ``lam`` is integral."""
    out = set()
    for r in rs.positive_roots:
        p = abs(pair(lam, r))
        if p.denominator != 1:
            raise ValueError(f"{lam} is not integral")
        p = int(p)
        for a in range(1, p):
            out.add(Fraction(a, p))
    return sorted(out)


class ShapeContext:
    """Arrow machinery for a fixed shape ``lam`` and order in RO(lam)."""

    def __init__(self, rs: RootSystem, lam: Weight, order: ReflectionOrder):
        if not in_ro(rs, lam, order):
            raise ValueError(f"order {order} is not in RO({lam})")
        self.rs = rs
        self.lam = lam
        self.order = order
        self.graph = build_qbg(rs)
        self.neg, self.zero, self.pos = partition(rs, lam)
        self.pairing = {r: pair(lam, r) for r in rs.positive_roots}
        self.reverse = tuple(reversed(order.roots))
        self.sigmas = sigma_candidates(rs, lam)
        self._pools: dict[tuple, tuple] = {}
        self._pool_idx: dict[tuple, tuple[int, ...]] = {}
        self._junctions: dict[IQLSPath, tuple[Coroot, Fraction]] = {}

    @staticmethod
    def _key(sign, sigma):
        if isinstance(sigma, int):
            return sign, sigma, 1
        return sign, sigma.numerator, sigma.denominator

    def pool(self, sign: str, sigma) -> tuple:
        """Allowed labels, listed in the order in which they may appear."""
        key = self._key(sign, sigma)
        if key not in self._pools:
            sigma = Fraction(sigma)
            block = set(self.pos if sign == PLUS else self.neg)
            self._pools[key] = tuple(
                r for r in self.reverse
                if r in block and (sigma * self.pairing[r]).denominator == 1)
            self._pool_idx[key] = tuple(self.rs.root_index[r] for r in self._pools[key])
        return self._pools[key]

    def arrow(self, x: WeylElement, y: WeylElement, sigma=1, sign: str = PLUS,
              q0: bool = False) -> QBGPath | None:
        return self.graph.label_increasing_path(x, y, self.pool(sign, sigma), bruhat_only=q0)

    def targets(self, x: WeylElement, sigma=1, sign: str = PLUS, q0: bool = False) -> dict:
        """target index -> label indices of the witness path."""
        key = self._key(sign, sigma)
        idx = self._pool_idx.get(key)
        if idx is None:
            self.pool(sign, sigma)
            idx = self._pool_idx[key]
        return self.graph.targets_by_index(x.index, idx, q0)

    def has_arrow(self, x: WeylElement, y: WeylElement, sigma=1, sign: str = PLUS,
                  q0: bool = False) -> bool:
        return y.index in self.targets(x, sigma, sign, q0)

    # validation

    def is_path(self, eta: IQLSPath, q0: bool = False, distinct_y: bool = True) -> bool:
        """Check every condition in the definition of an interpolated path.

        ``distinct_y=False`` drops the requirement ``y_i != y_{i+1}``.
        """
        s = eta.s
        if eta.sigma[0] != 0 or eta.sigma[-1] != 1:
            return False
        if any(a >= b for a, b in zip(eta.sigma, eta.sigma[1:])):
            return False
        if any(eta.x[i] == eta.x[i + 1] for i in range(s - 1)):
            return False
        if distinct_y and any(eta.y[i] == eta.y[i + 1] for i in range(s - 2)):
            return False
        for i in range(s - 1):
            sg = eta.sigma[i + 1]
            if not self.has_arrow(eta.x[i + 1], eta.y[i], sg, MINUS, q0):
                return False
            if not self.has_arrow(eta.y[i], eta.x[i], sg, PLUS, q0):
                return False
        return True

    # enumeration

    def enumerate(self, q0: bool = False, distinct_y: bool = True) -> list[IQLSPath]:
        rs = self.rs
        weyl = rs.weyl
        sigmas = self.sigmas
        out = []

        # Paths are grown from the final direction backwards; every partial
        # suffix, closed off with sigma_0 = 0, is itself a path.
        def grow(xs, ys, ss):
            out.append(IQLSPath(tuple(weyl[i] for i in reversed(xs)),
                                tuple(weyl[i] for i in reversed(ys)),
                                (Fraction(0),) + tuple(reversed(ss))))
            upper = ss[-1]
            x_next = xs[-1]
            for sg in sigmas:
                if sg >= upper:
                    break
                for y in self.targets(weyl[x_next], sg, MINUS, q0):
                    if distinct_y and ys and y == ys[-1]:
                        continue
                    for x in self.targets(weyl[y], sg, PLUS, q0):
                        if x == x_next:
                            continue
                        grow(xs + [x], ys + [y], ss + [sg])

        for w in weyl:
            grow([w.index], [], [Fraction(1)])
        out.sort(key=IQLSPath.sort_key)
        return out

    # statistics

    def wt(self, eta: IQLSPath) -> Weight:
        rs = self.rs
        total = Weight.zero(rs.rank)
        for k, x in enumerate(eta.x):
            total = total + rs.act(x, self.lam) * (eta.sigma[k + 1] - eta.sigma[k])
        return total

    def nega(self, eta: IQLSPath) -> int:
        g = self.graph
        return sum(g.distance(eta.x[k + 1], eta.y[k]) for k in range(eta.s - 1))

    def _junction_weights(self, eta: IQLSPath) -> list[Coroot]:
        g = self.graph
        out = []
        for k in range(eta.s - 1):
            a = g.shortest_data(eta.x[k + 1], eta.y[k])[1]
            b = g.shortest_data(eta.y[k], eta.x[k])[1]
            out.append(a + b)
        return out

    def junction_data(self, eta: IQLSPath) -> tuple[Coroot, Fraction]:
        """``(sum of junction weights, sum of sigma_i <lam, junction weight_i>)``;
        the parts of ``xi`` and ``Deg_w`` that do not depend on ``w`` or ``u``."""
        data = self._junctions.get(eta)
        if data is None:
            total = Coroot.zero(self.rs.rank)
            deg = Fraction(0)
            for k, c in enumerate(self._junction_weights(eta)):
                total = total + c
                deg += eta.sigma[k + 1] * pair(self.lam, c)
            data = self._junctions[eta] = (total, deg)
        return data

    def deg_w(self, eta: IQLSPath, w: WeylElement, check: bool = True) -> Fraction:
        if check and not self.has_arrow(w, eta.kappa, 1, PLUS):
            raise ArrowMissing(f"no arrow {w} =(+)=> kappa = {eta.kappa}")
        return -pair(self.lam, self.graph.shortest_data(w, eta.kappa)[1]) - self.junction_data(eta)[1]

    def xi(self, u: WeylElement, eta: IQLSPath, w: WeylElement, check: bool = True) -> Coroot:
        if check:
            if not self.has_arrow(w, eta.kappa, 1, PLUS):
                raise ArrowMissing(f"no arrow {w} =(+)=> kappa = {eta.kappa}")
            if not self.has_arrow(eta.iota, u, 1, MINUS):
                raise ArrowMissing(f"no arrow iota = {eta.iota} =(-)=> {u}")
        g = self.graph
        return (g.shortest_data(w, eta.kappa)[1] + self.junction_data(eta)[0]
                + g.shortest_data(eta.iota, u)[1])


_CONTEXTS: dict[tuple, ShapeContext] = {}


def shape_context(rs: RootSystem, lam: Weight, order=None) -> ShapeContext:
    """Memoised :class:`ShapeContext`; the order defaults to :func:`ro_for_lambda`."""
    if order is None:
        order = ro_for_lambda(rs, lam)
    elif not isinstance(order, ReflectionOrder):
        order = ReflectionOrder(tuple(order))
    key = (rs.name, lam, order)
    if key not in _CONTEXTS:
        _CONTEXTS[key] = ShapeContext(rs, lam, order)
    return _CONTEXTS[key]


def enumerate_iqls(rs: RootSystem, lam: Weight, order=None,
                   distinct_y: bool = True) -> list[IQLSPath]:
    return shape_context(rs, lam, order).enumerate(q0=False, distinct_y=distinct_y)


def enumerate_ils(rs: RootSystem, lam: Weight, order=None,
                  distinct_y: bool = True) -> list[IQLSPath]:
    return shape_context(rs, lam, order).enumerate(q0=True, distinct_y=distinct_y)


def path_stats(rs: RootSystem, lam: Weight, eta: IQLSPath, order=None):
    """``(iota, kappa, wt, nega)``."""
    ctx = shape_context(rs, lam, order)
    return eta.iota, eta.kappa, ctx.wt(eta), ctx.nega(eta)


def deg_w(rs: RootSystem, lam: Weight, eta: IQLSPath, w: WeylElement, order=None) -> Fraction:
    return shape_context(rs, lam, order).deg_w(eta, w)


def xi(rs: RootSystem, lam: Weight, u: WeylElement, eta: IQLSPath, w: WeylElement,
       order=None) -> Coroot:
    return shape_context(rs, lam, order).xi(u, eta, w)
