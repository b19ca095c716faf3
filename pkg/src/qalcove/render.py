"""Markdown and JSON rendering of tables and enumerations."""

from __future__ import annotations

import json

from .alcove import AdmissibleSubset, admissible_subsets
from .forgetful import forgetful
from .iqls import IQLSPath, ShapeContext, _fmt_frac
from .qbg import build_qbg
from .reforder import LambdaChain, inversion_set
from .rootsys import Coroot, RootSystem, Weight, WeylElement

__all__ = [
    "markdown_table", "admissible_rows", "forgetful_rows", "image_rows", "stats_rows",
    "iqls_records", "chain_records", "inversion_records", "render_rows", "json_lines",
]

YES, NO, NONE = "○", "×", "---"


def markdown_table(headers, rows) -> str:
    lines = ["| " + " | ".join(headers) + " |", "|" + "|".join("---" for _ in headers) + "|"]
    for row in rows:
        lines.append("| " + " | ".join(str(c) for c in row) + " |")
    return "\n".join(lines) + "\n"


def json_lines(records) -> str:
    return "".join(json.dumps(r, sort_keys=True) + "\n" for r in records)


def _weight_json(lam: Weight) -> list[str]:
    return [_fmt_frac(c) for c in lam.coords]


def _coroot_json(c: Coroot) -> list[int]:
    return list(c.coords)


# each *_rows function returns (headers, markdown rows, json records)

def admissible_rows(rs: RootSystem, w: WeylElement, chain: LambdaChain):
    subsets = admissible_subsets(rs, w, chain)
    headers = ["A", "end(A)", "down(A)", "wt(A)", "height(A)"]
    rows = [(A.label(), A.end, A.down, A.wt, A.height) for A in subsets]
    records = [{"A": list(A.positions), "end": str(A.end), "down": _coroot_json(A.down),
                "wt": _weight_json(A.wt), "height": A.height, "n": A.n} for A in subsets]
    return headers, rows, records


def forgetful_rows(ctx: ShapeContext, w: WeylElement, chain: LambdaChain):
    headers = ["A", "Xi~(A) = (Xi(A), end(A))"]
    rows, records = [], []
    for A in admissible_subsets(ctx.rs, w, chain):
        eta, u = forgetful(ctx, chain, A)
        rows.append((A.label(), f"({eta}, {u})"))
        records.append({"A": list(A.positions), "eta": eta.to_dict(), "u": str(u)})
    return headers, rows, records


def _u_list(ctx: ShapeContext, eta: IQLSPath) -> list[WeylElement]:
    g = ctx.graph
    targets = [ctx.rs.weyl[i] for i in ctx.targets(eta.iota, 1, "-")]
    return sorted(targets, key=lambda u: (g.distance(eta.iota, u), u.index))


def image_rows(ctx: ShapeContext, w: WeylElement, paths):
    headers = ["eta", f"{w} => kappa(eta)?", "u with iota(eta) => u"]
    rows, records = [], []
    for eta in paths:
        ok = ctx.has_arrow(w, eta.kappa, 1, "+")
        us = _u_list(ctx, eta) if ok else []
        rows.append((str(eta), YES if ok else NO, ", ".join(map(str, us)) if ok else NONE))
        records.append({"eta": eta.to_dict(), "arrow": ok, "u": [str(u) for u in us]})
    return headers, rows, records


def stats_rows(ctx: ShapeContext, w: WeylElement, chain: LambdaChain):
    headers = ["A", f"xi(end(A), Xi(A), {w})", f"Deg_{w}(Xi(A))"]
    rows, records = [], []
    for A in admissible_subsets(ctx.rs, w, chain):
        eta, u = forgetful(ctx, chain, A)
        xi = ctx.xi(u, eta, w)
        deg = ctx.deg_w(eta, w)
        rows.append((A.label(), xi, _fmt_frac(deg)))
        records.append({"A": list(A.positions), "xi": _coroot_json(xi), "deg": _fmt_frac(deg)})
    return headers, rows, records


def iqls_records(ctx: ShapeContext, paths):
    headers = ["eta", "iota", "kappa", "wt", "nega"]
    rows, records = [], []
    for eta in paths:
        wt, nega = ctx.wt(eta), ctx.nega(eta)
        rows.append((str(eta), eta.iota, eta.kappa, wt, nega))
        records.append({**eta.to_dict(), "wt": _weight_json(wt), "nega": nega})
    return headers, rows, records


def chain_records(chain: LambdaChain):
    headers = ["k", "root", "level", "d"]
    rows, records = [], []
    for k, e in enumerate(chain, start=1):
        d = "" if e.d is None else _fmt_frac(e.d)
        rows.append((k, e.root, e.level, d))
        rec = e.to_dict()
        if e.d is not None:
            rec["d"] = d
        records.append(rec)
    return headers, rows, records


def inversion_records(rs: RootSystem, lam: Weight):
    headers = ["affine coroot", "coroot", "degree"]
    inv = inversion_set(rs, lam)
    rows = [(str(b), b.coroot, b.degree) for b in inv]
    records = [{"coroot": _coroot_json(b.coroot), "degree": b.degree} for b in inv]
    return headers, rows, records


def qbg_records(rs: RootSystem):
    g = build_qbg(rs)
    headers = ["source", "target", "label", "kind"]
    edges = g.edges()
    rows = [(e.source, e.target, e.label, "bruhat" if e.kind == "B" else "quantum") for e in edges]
    records = [{"source": str(e.source), "target": str(e.target), "label": list(e.label.coords),
                "kind": r[3]} for e, r in zip(edges, rows)]
    return headers, rows, records


def render_rows(data, fmt: str) -> str:
    headers, rows, records = data
    if fmt == "markdown":
        return markdown_table(headers, rows)
    if fmt == "json":
        return json_lines(records)
    raise ValueError(f"format {fmt!r} is not available here")
