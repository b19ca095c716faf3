"""
Invariant sweep over small root systems.

Every check is exact.  Results are tallied per check name; the first few
failures of each check are kept verbatim.  Reports contain no timings so that
repeated runs are byte-identical.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .alcove import iter_admissible
from .chevalley import ChevalleyTerm
from .forgetful import NotInImage, image_set, inverse_positions, xi_map
from .iqls import ShapeContext, shape_context
from .qbg import UniquenessError, build_qbg
from .reforder import (
    all_reflection_orders, check_affine_reflection_order, check_coroot_betweenness,
    check_partition_lemma, in_ro, inversion_set, is_reflection_order, ro_for_lambda, ro_orders,
    suitable_chain,
)
from .rootsys import RootSystem, Weight, build_root_system, pair

__all__ = [
    "Tally", "DEFAULT_TYPES", "DEFAULT_CAP", "verify_graph", "verify_shape", "verify_case",
    "sweep", "inversion_size", "weights_in_box",
]

DEFAULT_TYPES = ("A2", "B2", "C2", "G2", "A3")
DEFAULT_CAP = 24
SHELLABILITY_TYPES = ("A2", "B2", "A3")
MAX_KEPT = 5


@dataclass
class Tally:
    passed: Counter = field(default_factory=Counter)
    failed: Counter = field(default_factory=Counter)
    examples: dict = field(default_factory=dict)

    def check(self, name: str, ok: bool, detail=None) -> bool:
        if ok:
            self.passed[name] += 1
        else:
            self.failed[name] += 1
            kept = self.examples.setdefault(name, [])
            if len(kept) < MAX_KEPT:
                kept.append(detail() if callable(detail) else str(detail))
        return ok

    def merge(self, other: Tally):
        self.passed.update(other.passed)
        self.failed.update(other.failed)
        for k, v in other.examples.items():
            kept = self.examples.setdefault(k, [])
            kept.extend(v[:MAX_KEPT - len(kept)])

    @property
    def ok(self) -> bool:
        return not self.failed

    def to_dict(self) -> dict:
        names = sorted(set(self.passed) | set(self.failed))
        return {
            "ok": self.ok,
            "checks": {n: {"passed": self.passed[n], "failed": self.failed[n]} for n in names},
            "failures": {n: self.examples[n] for n in sorted(self.examples)},
        }


def inversion_size(rs: RootSystem, lam: Weight) -> int:
    return int(sum(abs(pair(lam, r)) for r in rs.positive_roots))


def weights_in_box(rs: RootSystem, lo: int, hi: int):
    for coords in product(range(lo, hi + 1), repeat=rs.rank):
        yield rs.weight(coords)


# graph-level checks

def verify_graph(rs: RootSystem, tally: Tally, shellability: bool | None = None):
    """Distances, path weights, reflection orders and shellability for one type."""
    g = build_qbg(rs)
    name = rs.name
    for v in rs.weyl:
        for w in rs.weyl:
            d = g.distance(v, w)
            tally.check("qbg.parity", (d - (w.length - v.length)) % 2 == 0,
                        lambda: f"{name}: l({v} => {w}) = {d}")
            try:
                g.shortest_data(v, w, verify=True)
                tally.check("qbg.wt_path_independence", True)
            except AssertionError as exc:
                tally.check("qbg.wt_path_independence", False, f"{name}: {exc}")

    orders = all_reflection_orders(rs)
    for o in orders:
        tally.check("reforder.is_reflection_order", is_reflection_order(rs, o)[0],
                    lambda: f"{name}: {o}")
        bad = check_coroot_betweenness(rs, o)
        tally.check("reforder.coroot_betweenness", bad is None,
                    lambda: f"{name}: {o} violates at {bad}")

    if shellability is None:
        shellability = name in SHELLABILITY_TYPES
    if not shellability:
        return
    for o in orders:
        for v in rs.weyl:
            try:
                paths = g.label_increasing_paths_from(v, o.roots)
            except UniquenessError as exc:
                tally.check("qbg.shellability", False, f"{name}: {exc}")
                continue
            ok = len(paths) == len(rs.weyl) and all(
                len(p) == g.distance(v, w) for w, p in paths.items())
            tally.check("qbg.shellability", ok,
                        lambda: f"{name}: order {o}, start {v}: {len(paths)} targets")


# shape-level checks

def _is_minuscule(rs: RootSystem, lam: Weight) -> bool:
    vals = {pair(lam, r) for r in rs.positive_roots}
    return not lam.is_zero() and (vals <= {0, 1} or vals <= {0, -1})


def _is_regular_dominant(rs: RootSystem, lam: Weight) -> bool:
    return all(pair(lam, r) > 0 for r in rs.positive_roots)


def verify_shape(rs: RootSystem, lam: Weight, tally: Tally, order=None, ws=None,
                 distinct_y: bool = True) -> dict:
    """All forgetful-map and Chevalley checks for one shape and every ``w`` in ``ws``.

    ``distinct_y`` selects the strict definition of interpolated paths
    (``y_i != y_{i+1}``) or the relaxed one without that condition.
    """
    case = f"{rs.name} lambda={lam}"
    if order is None:
        order = ro_for_lambda(rs, lam)
    tally.check("reforder.in_ro", in_ro(rs, lam, order), case)
    tally.check("reforder.partition_lemma", check_partition_lemma(rs, lam), case)

    inv = inversion_set(rs, lam)
    tally.check("reforder.inv_cardinality", len(inv) == inversion_size(rs, lam),
                lambda: f"{case}: |Inv| = {len(inv)}")
    try:
        chain = suitable_chain(rs, lam, order)
        tally.check("reforder.phi_injective", True)
    except AssertionError as exc:
        tally.check("reforder.phi_injective", False, f"{case}: {exc}")
        return {"case": case, "skipped": "Phi not injective"}
    errs = check_affine_reflection_order(rs, chain)
    tally.check("reforder.affine_reflection_order", not errs, lambda: f"{case}: {errs[:3]}")

    ctx = shape_context(rs, lam, order)
    paths = ctx.enumerate(distinct_y=distinct_y)
    ils = ctx.enumerate(q0=True, distinct_y=distinct_y)
    ils_set = [eta for eta in ils]
    index = {eta: k for k, eta in enumerate(paths)}
    ils_idx = {index.get(eta, -1) for eta in ils}
    tally.check("iqls.ils_subset", -1 not in ils_idx, case)
    ils_idx.discard(-1)
    memo = {"index": index, "wt": [None] * len(paths), "nega": [None] * len(paths),
            "ils": ils_idx}

    if _is_regular_dominant(rs, lam):
        ok = all(eta.y[i] == eta.x[i + 1] for eta in paths for i in range(eta.s - 1))
        ok = ok and all(ctx.nega(eta) == 0 for eta in paths)
        tally.check("iqls.regular_dominant_remark", ok, case)
    if _is_minuscule(rs, lam):
        tally.check("iqls.minuscule_remark",
                    all(eta.s == 1 for eta in paths) and len(paths) == len(rs.weyl), case)

    total_subsets = 0
    for w in (rs.weyl if ws is None else ws):
        total_subsets += _verify_w(rs, w, ctx, chain, paths, ils_set, memo, tally, case,
                                   distinct_y)
    return {"case": case, "inv": len(inv), "iqls": len(paths), "ils": len(ils),
            "admissible": total_subsets}


def _verify_w(rs, w, ctx: ShapeContext, chain, paths, ils_set, memo, tally: Tally, case,
              distinct_y: bool = True) -> int:
    g = ctx.graph
    case = f"{case} w={w}"
    # paths are interned: every statistic is keyed by the index in ``paths``
    index, wt_memo, nega_memo, ils_idx = memo["index"], memo["wt"], memo["nega"], memo["ils"]
    deg_memo = {}

    def wt_of(k):
        if wt_memo[k] is None:
            wt_memo[k] = ctx.wt(paths[k])
        return wt_memo[k]

    def nega_of(k):
        if nega_memo[k] is None:
            nega_memo[k] = ctx.nega(paths[k])
        return nega_memo[k]

    def deg_of(k):
        if k not in deg_memo:
            deg = ctx.deg_w(paths[k], w, check=False)
            deg_memo[k] = int(deg) if deg.denominator == 1 else deg
        return deg_memo[k]

    images, images0 = [], []
    lhs = Counter()
    for A in iter_admissible(rs, w, chain):
        lhs[ChevalleyTerm((-1) ** A.n, -A.height, A.wt, A.end, A.down)] += 1
        try:
            eta = xi_map(ctx, chain, A, validate=False).eta
        except AssertionError as exc:
            tally.check("forgetful.well_defined", False, f"{case}: {exc}")
            continue
        # the enumeration is complete, so membership is the definition check
        k = index.get(eta)
        if not tally.check("forgetful.well_defined", k is not None,
                           lambda: f"{case}: Xi({A.label()}) = {eta} is not an interpolated path"):
            continue
        eta = paths[k]
        u = A.end
        images.append((k, u.index))
        if A.is_bruhat:
            images0.append((k, u.index))
            tally.check("forgetful.q0_lands_in_ils", k in ils_idx,
                        lambda: f"{case}: {A.label()} -> {eta}")

        wt = wt_of(k)
        tally.check("forgetful.wt", wt == A.wt, lambda: f"{case}: {A.label()}: {A.wt} vs {wt}")
        nega = nega_of(k)
        ell = g.distance(eta.iota, u)
        tally.check("forgetful.n_identity", A.n == nega + ell,
                    lambda: f"{case}: {A.label()}: n={A.n}, nega={nega}, l={ell}")
        tally.check("forgetful.n_mod2", (A.n - nega - u.length + eta.iota.length) % 2 == 0,
                    lambda: f"{case}: {A.label()}")
        deg = deg_of(k)
        tally.check("chevalley.height_to_deg", A.height == -deg,
                    lambda: f"{case}: {A.label()}: height={A.height}, Deg={deg}")
        xi = ctx.xi(u, eta, w, check=False)
        tally.check("chevalley.down_to_xi", A.down == xi,
                    lambda: f"{case}: {A.label()}: down={A.down}, xi={xi}")
        try:
            back = inverse_positions(ctx, chain, eta, u, w)
            tally.check("forgetful.round_trip", back == A.positions,
                        lambda: f"{case}: {A.label()} -> {back}")
        except (NotInImage, AssertionError) as exc:
            tally.check("forgetful.round_trip", False, f"{case}: {A.label()}: {exc}")

    image = set(images)
    tally.check("forgetful.injective", len(image) == len(images),
                lambda: f"{case}: {len(images)} subsets, {len(image)} images")
    expected = [(index[eta], u.index) for eta, u in image_set(ctx, w, paths)]
    tally.check("forgetful.image", image == set(expected),
                lambda: f"{case}: {len(image ^ set(expected))} pairs differ")
    expected0 = {(index[eta], u.index) for eta, u in image_set(ctx, w, ils_set, q0=True)}
    tally.check("forgetful.q0_image", set(images0) == expected0,
                lambda: f"{case}: {len(set(images0) ^ expected0)} pairs differ")

    rhs = Counter()
    for k, ui in expected:
        eta, u = paths[k], rs.weyl[ui]
        sign = (-1) ** ((nega_of(k) + u.length - eta.iota.length) % 2)
        rhs[ChevalleyTerm(sign, deg_of(k), wt_of(k), u, ctx.xi(u, eta, w, check=False))] += 1
    tally.check("chevalley.term_multiset", lhs == rhs,
                lambda: f"{case}: {sum((lhs - rhs).values())} admissible-only, "
                        f"{sum((rhs - lhs).values())} iqls-only")
    return sum(lhs.values())


def _order_invariance(rs: RootSystem, lam: Weight, limit: int = 3, distinct_y: bool = True) -> dict:
    """How IQLS(lam) and ILS(lam) vary over several orders in RO(lam)."""
    orders = ro_orders(rs, lam, limit=None)[:limit]
    sets = [frozenset(shape_context(rs, lam, o).enumerate(distinct_y=distinct_y)) for o in orders]
    sets0 = [frozenset(shape_context(rs, lam, o).enumerate(q0=True, distinct_y=distinct_y))
             for o in orders]
    return {"orders": len(orders), "iqls_sizes": sorted({len(s) for s in sets}),
            "iqls_invariant": len(set(sets)) <= 1, "ils_invariant": len(set(sets0)) <= 1}


def verify_case(rs: RootSystem, lam: Weight, ws=None, order=None, distinct_y: bool = True) -> dict:
    tally = Tally()
    info = verify_shape(rs, lam, tally, order=order, ws=ws, distinct_y=distinct_y)
    return {"case": info, **tally.to_dict()}


def _run_shape(args):
    type_name, coords, invariance, distinct_y = args
    rs = build_root_system(type_name)
    lam = rs.weight(coords)
    tally = Tally()
    info = verify_shape(rs, lam, tally, distinct_y=distinct_y)
    info["failed"] = dict(sorted(tally.failed.items()))
    if invariance:
        info["order_invariance"] = _order_invariance(rs, lam, distinct_y=distinct_y)
    return info, tally


def _run_graph(type_name):
    tally = Tally()
    verify_graph(build_root_system(type_name), tally)
    return type_name, tally


def sweep(types=DEFAULT_TYPES, lo: int = -2, hi: int = 2, cap: int = DEFAULT_CAP,
          invariance: bool = True, workers: int | None = None, distinct_y: bool = True) -> dict:
    """Run every check over the box of weights; parallel over shapes when
    ``workers`` is not 1.  The report does not depend on ``workers``."""
    jobs, skipped = [], []
    for t in types:
        rs = build_root_system(t)
        for lam in weights_in_box(rs, lo, hi):
            size = inversion_size(rs, lam)
            coords = tuple(int(c) for c in lam.coords)
            if size > cap:
                skipped.append({"type": t, "lambda": list(coords), "inv": size})
            else:
                jobs.append((t, coords, invariance, distinct_y))

    if workers == 1 or len(jobs) <= 1:
        graph_results = [_run_graph(t) for t in types]
        shape_results = [_run_shape(j) for j in jobs]
    else:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=workers) as pool:
            graph_results = list(pool.map(_run_graph, types))
            # biggest shapes first keeps the pool busy; results are re-ordered below
            order = sorted(range(len(jobs)), key=lambda k: -_weight(jobs[k]))
            done = dict(zip(order, pool.map(_run_shape, [jobs[k] for k in order])))
            shape_results = [done[k] for k in range(len(jobs))]

    total = Tally()
    for _, t in graph_results:
        total.merge(t)
    cases = []
    for info, t in shape_results:
        total.merge(t)
        cases.append(info)
    report = {"types": list(types), "range": [lo, hi], "cap": cap, "distinct_y": distinct_y,
              "shapes": len(jobs), "skipped": skipped, "cases": cases}
    report.update(total.to_dict())
    return report


def _weight(job) -> int:
    t, coords = job[:2]
    rs = build_root_system(t)
    return len(rs.weyl) * 2 ** inversion_size(rs, rs.weight(coords))
