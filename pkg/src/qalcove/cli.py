"""Command-line front end.

    qalcove table {admissible,forgetful,image,stats} --type A2 --lambda=-1,2 --w s1
    qalcove enumerate {iqls,ils,qbg,chain,inversions} --type A2 --lambda=-1,3
    qalcove verify --type A2 --sweep=-2..2
    qalcove series --type A2 --lambda=-1,2 --w s1 --xi 0,0 --truncate-par 1

A whole case can also be given as one token, ``--case "A2/-1,2/s1"``; see
:class:`CaseSpec` for the syntax.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass, replace

from . import __version__
from .chevalley import emit_series, verify_identity
from .iqls import shape_context
from .qbg import build_qbg
from .reforder import ReflectionOrder, in_ro, suitable_chain
from .render import (
    admissible_rows, chain_records, forgetful_rows, image_rows, inversion_records,
    iqls_records, json_lines, markdown_table, qbg_records, render_rows, stats_rows,
)
from .rootsys import Coroot, build_root_system, parse_type
from .verify import DEFAULT_CAP, DEFAULT_TYPES, inversion_size, sweep, verify_case

__all__ = ["CaseSpec", "CaseSpecError", "main"]

FORMATS = ("markdown", "json", "dot")


class CaseSpecError(ValueError):
    """A malformed case description; ``position`` is a 0-based column."""

    def __init__(self, message: str, text: str = "", position: int | None = None):
        if position is not None:
            message = f"{message} at position {position}: {text!r}"
        super().__init__(message)
        self.position = position


def _parse_int_list(text: str, what: str, offset: int = 0) -> tuple[int, ...]:
    out = []
    pos = 0
    for part in text.split(","):
        if not re.fullmatch(r"\s*[+-]?\d+\s*", part):
            raise CaseSpecError(f"bad {what} entry", text, offset + pos)
        out.append(int(part))
        pos += len(part) + 1
    return tuple(out)


def _normalise_word(text: str, offset: int = 0) -> str:
    t = text.strip()
    if t in ("all", "e", ""):
        return t or "e"
    if "s" in t:
        bad = re.search(r"[^s\d\s*]", t)
        idx = re.findall(r"s\s*(\d+)", t)
    else:
        bad = re.search(r"[^\d\s,]", t)
        idx = re.findall(r"\d+", t)
    if bad or not idx:
        raise CaseSpecError("bad Weyl group word", text, offset + (bad.start() if bad else 0))
    return "".join(f"s{i}" for i in idx)


def _parse_sweep(text: str, offset: int = 0) -> tuple[int, int]:
    m = re.fullmatch(r"\s*([+-]?\d+)\s*\.\.\s*([+-]?\d+)\s*", text)
    if not m:
        raise CaseSpecError("sweep bounds must look like 'a..b'", text, offset)
    return int(m.group(1)), int(m.group(2))


@dataclass(frozen=True)
class CaseSpec:
    """Everything that selects a computation.

    Text form: ``TYPES/LAMBDA/W`` followed by ``;key=value`` options, e.g.
    ``A2/-1,2/s1;order=auto;format=markdown;N=0;sweep=none;cap=24``.  Missing
    options take their defaults; :meth:`format` always writes all of them.
    """

    types: tuple[str, ...]
    lam: tuple[int, ...] | None = None
    w: str = "all"
    order: tuple[str, ...] | None = None
    fmt: str = "markdown"
    truncate: int = 0
    sweep: tuple[int, int] | None = None
    cap: int = DEFAULT_CAP

    def __post_init__(self):
        if self.fmt not in FORMATS:
            raise CaseSpecError(f"unknown format {self.fmt!r}")
        if self.truncate < 0:
            raise CaseSpecError("truncation must be non-negative")
        for t in self.types:
            parse_type(t)

    @classmethod
    def parse(cls, text: str) -> CaseSpec:
        head, *opts = text.split(";")
        parts = head.split("/")
        if not 1 <= len(parts) <= 3:
            raise CaseSpecError("expected TYPES/LAMBDA/W", text, 0)
        types_text = parts[0]
        types = tuple(t.strip().upper() for t in types_text.split(",") if t.strip())
        for t in types:
            try:
                parse_type(t)
            except ValueError:
                raise CaseSpecError("bad root system type", text, text.find(t)) from None
        offset = len(types_text) + 1
        lam = None
        if len(parts) > 1 and parts[1].strip() not in ("", "*"):
            lam = _parse_int_list(parts[1], "lambda", offset)
        offset += len(parts[1]) + 1 if len(parts) > 1 else 0
        w = _normalise_word(parts[2], offset) if len(parts) > 2 else "all"
        kw = {}
        offset = len(head) + 1
        for opt in opts:
            key, sep, value = opt.partition("=")
            key = key.strip()
            if not sep:
                raise CaseSpecError("options must be key=value", text, offset)
            if key == "order":
                kw["order"] = None if value == "auto" else tuple(
                    v.strip() for v in value.split("<"))
            elif key == "format":
                kw["fmt"] = value
            elif key == "N":
                kw["truncate"] = _parse_int_list(value, "N", offset + 2)[0]
            elif key == "sweep":
                kw["sweep"] = None if value == "none" else _parse_sweep(value, offset + 6)
            elif key == "cap":
                kw["cap"] = _parse_int_list(value, "cap", offset + 4)[0]
            else:
                raise CaseSpecError(f"unknown option {key!r}", text, offset)
            offset += len(opt) + 1
        return cls(types, lam, w, **kw)

    def format(self) -> str:
        lam = "*" if self.lam is None else ",".join(map(str, self.lam))
        order = "auto" if self.order is None else "<".join(self.order)
        sw = "none" if self.sweep is None else f"{self.sweep[0]}..{self.sweep[1]}"
        return (f"{','.join(self.types)}/{lam}/{self.w};order={order};format={self.fmt};"
                f"N={self.truncate};sweep={sw};cap={self.cap}")

    __str__ = format

    # resolution against a root system

    @property
    def type(self) -> str:
        if len(self.types) != 1:
            raise CaseSpecError("this command needs exactly one root system type")
        return self.types[0]

    def root_system(self):
        return build_root_system(self.type)

    def weight(self, rs):
        if self.lam is None:
            raise CaseSpecError("this command needs --lambda")
        if len(self.lam) != rs.rank:
            raise CaseSpecError(f"lambda needs {rs.rank} coefficients for {rs.name}")
        return rs.weight(self.lam)

    def elements(self, rs):
        if self.w == "all":
            return list(rs.weyl)
        return [rs.parse_element(self.w)]

    def reflection_order(self, rs, lam):
        if self.order is None:
            return None
        try:
            order = ReflectionOrder(tuple(rs.parse_root(r) for r in self.order))
        except ValueError as exc:
            raise CaseSpecError(str(exc)) from None
        if not in_ro(rs, lam, order):
            raise CaseSpecError(f"the order {order} is not compatible with lambda = {lam}")
        return order


def _read_order(path: str) -> tuple[str, ...]:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    tokens = [t for t in re.split(r"[<\s]+", text) if t]
    if not tokens:
        raise CaseSpecError(f"order file {path!r} is empty")
    return tuple(tokens)


# commands

def _per_w(spec: CaseSpec, rs, build) -> str:
    """Run ``build(w)`` for each selected ``w`` and join the rendered output."""
    ws = spec.elements(rs)
    if spec.fmt == "dot":
        raise CaseSpecError("dot output is only available for 'enumerate qbg'")
    chunks = []
    for w in ws:
        headers, rows, records = build(w)
        if spec.fmt == "json":
            chunks.append(json_lines({"w": str(w), **r} for r in records))
        else:
            title = f"### w = {w}\n\n" if len(ws) > 1 else ""
            chunks.append(title + markdown_table(headers, rows))
    return "\n".join(chunks) if spec.fmt == "markdown" else "".join(chunks)


def cmd_table(kind: str, spec: CaseSpec) -> str:
    rs = spec.root_system()
    lam = spec.weight(rs)
    order = spec.reflection_order(rs, lam)
    ctx = shape_context(rs, lam, order)
    chain = suitable_chain(rs, lam, ctx.order)
    if kind == "admissible":
        return _per_w(spec, rs, lambda w: admissible_rows(rs, w, chain))
    if kind == "forgetful":
        return _per_w(spec, rs, lambda w: forgetful_rows(ctx, w, chain))
    if kind == "image":
        paths = ctx.enumerate()
        return _per_w(spec, rs, lambda w: image_rows(ctx, w, paths))
    if kind == "stats":
        return _per_w(spec, rs, lambda w: stats_rows(ctx, w, chain))
    raise CaseSpecError(f"unknown table {kind!r}")


def cmd_enumerate(kind: str, spec: CaseSpec) -> str:
    rs = spec.root_system()
    if kind == "qbg":
        if spec.fmt == "dot":
            return build_qbg(rs).to_dot()
        return render_rows(qbg_records(rs), spec.fmt)
    if spec.fmt == "dot":
        raise CaseSpecError("dot output is only available for 'enumerate qbg'")
    lam = spec.weight(rs)
    if kind == "inversions":
        return render_rows(inversion_records(rs, lam), spec.fmt)
    order = spec.reflection_order(rs, lam)
    ctx = shape_context(rs, lam, order)
    if kind == "chain":
        return render_rows(chain_records(suitable_chain(rs, lam, ctx.order)), spec.fmt)
    if kind in ("iqls", "ils"):
        return render_rows(iqls_records(ctx, ctx.enumerate(q0=(kind == "ils"))), spec.fmt)
    raise CaseSpecError(f"unknown enumeration {kind!r}")


def cmd_verify(spec: CaseSpec, relaxed_y: bool = False) -> tuple[int, str]:
    distinct_y = not relaxed_y
    if spec.sweep is not None:
        lo, hi = spec.sweep
        types = spec.types or DEFAULT_TYPES
        report = sweep(types, lo, hi, spec.cap, distinct_y=distinct_y)
    else:
        rs = spec.root_system()
        lam = spec.weight(rs)
        size = inversion_size(rs, lam)
        if size > spec.cap:
            report = {"ok": True, "skipped": [{"type": rs.name, "lambda": list(spec.lam),
                                               "inv": size}]}
        else:
            order = spec.reflection_order(rs, lam)
            ws = spec.elements(rs)
            report = verify_case(rs, lam, ws=ws, order=order, distinct_y=distinct_y)
            paths = None if distinct_y else shape_context(rs, lam, order).enumerate(distinct_y=False)
            identities = [verify_identity(rs, lam, w, order, paths=paths) for w in ws]
            report["identity"] = [{k: r[k] for k in ("case", "lhs_terms", "rhs_terms", "equal")}
                                  for r in identities]
            report["ok"] = report["ok"] and all(r["equal"] for r in identities)
    return (0 if report["ok"] else 1), json.dumps(report, indent=1, sort_keys=True) + "\n"


def cmd_series(spec: CaseSpec, xi_text: str | None) -> str:
    rs = spec.root_system()
    lam = spec.weight(rs)
    order = spec.reflection_order(rs, lam)
    xi = Coroot.zero(rs.rank) if xi_text is None else Coroot(_parse_int_list(xi_text, "xi"))
    if len(xi.coords) != rs.rank:
        raise CaseSpecError(f"xi needs {rs.rank} coefficients")
    out = {}
    for w in spec.elements(rs):
        out[str(w)] = emit_series(rs, lam, w, xi, spec.truncate, order)
    if spec.w != "all":
        out = next(iter(out.values()))
    return json.dumps(out, indent=1, sort_keys=True) + "\n"


# argument handling

def _fix_negative_values(argv: list[str]) -> list[str]:
    """Allow ``--lambda -1,2`` in addition to ``--lambda=-1,2``."""
    out = []
    it = iter(range(len(argv)))
    for i in it:
        a = argv[i]
        if a in ("--lambda", "--sweep", "--xi") and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{a}={argv[i + 1]}")
            next(it, None)
        else:
            out.append(a)
    return out


def _add_case_flags(p: argparse.ArgumentParser, formats=("markdown", "json")):
    p.add_argument("--case", help="whole case as one token, e.g. 'A2/-1,2/s1'")
    p.add_argument("--type", help="root system type, e.g. A2 (comma-separated for sweeps)")
    p.add_argument("--lambda", dest="lam", help="fundamental-weight coefficients, e.g. -1,2")
    p.add_argument("--w", help="Weyl group element ('s1 s2', '1 2', 'e') or 'all'")
    p.add_argument("--order", default="auto",
                   help="'auto' or a file listing the reflection order (roots like a1+a2)")
    p.add_argument("--format", choices=formats, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qalcove",
        description="Quantum alcove model, interpolated QLS paths and the forgetful map.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table", help="reproduce a table for one case")
    p.add_argument("kind", choices=["admissible", "forgetful", "image", "stats"])
    _add_case_flags(p)

    p = sub.add_parser("enumerate", help="dump an enumeration")
    p.add_argument("kind", choices=["iqls", "ils", "qbg", "chain", "inversions"])
    _add_case_flags(p, FORMATS)

    p = sub.add_parser("verify", help="run the invariant checks; exit status 1 on failure")
    _add_case_flags(p, ("json",))
    p.add_argument("--sweep", help="coefficient range 'a..b' for every fundamental weight")
    p.add_argument("--cap", type=int, default=None, help=f"skip |Inv(lambda)| above this "
                                                         f"(default {DEFAULT_CAP})")
    p.add_argument("--relaxed-y", action="store_true",
                   help="drop the condition y_i != y_(i+1) from the path definition")

    p = sub.add_parser("series", help="truncated Chevalley expansion with symbolic characters")
    _add_case_flags(p, ("json",))
    p.add_argument("--xi", help="translation coroot, e.g. 0,0 (default 0)")
    p.add_argument("--truncate-par", type=int, default=None, metavar="N")
    return parser


def spec_from_args(args) -> CaseSpec:
    spec = CaseSpec.parse(args.case) if args.case else CaseSpec(types=())
    changes = {}
    if args.type:
        changes["types"] = tuple(t.strip().upper() for t in args.type.split(",") if t.strip())
    if args.lam is not None:
        changes["lam"] = _parse_int_list(args.lam, "lambda")
    if args.w is not None:
        changes["w"] = _normalise_word(args.w)
    if args.order != "auto":
        changes["order"] = _read_order(args.order)
    if args.format is not None:
        changes["fmt"] = args.format
    elif args.command in ("verify", "series"):
        changes["fmt"] = "json"
    if getattr(args, "sweep", None) is not None:
        changes["sweep"] = _parse_sweep(args.sweep)
    if getattr(args, "cap", None) is not None:
        changes["cap"] = args.cap
    if getattr(args, "truncate_par", None) is not None:
        changes["truncate"] = args.truncate_par
    spec = replace(spec, **changes)
    if not spec.types and not (args.command == "verify" and spec.sweep is not None):
        raise CaseSpecError("--type is required")
    return spec


def main(argv: list[str] | None = None) -> int:
    argv = _fix_negative_values(list(sys.argv[1:] if argv is None else argv))
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        spec = spec_from_args(args)
        if args.command == "table":
            out, status = cmd_table(args.kind, spec), 0
        elif args.command == "enumerate":
            out, status = cmd_enumerate(args.kind, spec), 0
        elif args.command == "verify":
            status, out = cmd_verify(spec, args.relaxed_y)
        else:
            out, status = cmd_series(spec, args.xi), 0
    except (CaseSpecError, ValueError) as exc:
        print(f"qalcove: error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(out)
    return status


if __name__ == "__main__":
    sys.exit(main())
