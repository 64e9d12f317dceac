"""Command-line interface.

Subcommands: ``cheby``, ``bounds``, ``invert``, ``verify``, ``sweep``, ``audit``.

Exit codes: 0 success, 1 usage or parse error, 2 domain or degenerate-bound
error, 3 a derived bound was exceeded by an empirical maximum.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import __version__, bounds, chebyshev
from .errors import BiunivError, BoundUndefined
from .gsigma import ClassParams
from .report import BOUND_FIELDS, clean_json, csv_text, document, dumps_document, make_manifest
from .schwarz import Mode
from .search import SearchConfig, sweep
from .series import normalized, reverse

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_VIOLATION = 0, 1, 2, 3
DEFAULT_R = "-1,0,0.5,1,2"

SWEEP_FIELDS = ("delta", "t", "m", "functional", "r", "mode", "empirical_max",
                "bound_printed", "bound_derived", "margin_derived", "violation_printed",
                "violation_derived", "p1_re", "p1_im", "p2_re", "p2_im", "q2_re", "q2_im",
                "seed", "samples", "feasible_samples", "no_feasible_sample")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# --- grid parsing ---------------------------------------------------------------

def parse_values(spec: str, kind=float) -> list:
    """Expand ``"a,b,c"`` and ``"start:stop:step"`` (inclusive) items."""
    out = []
    for item in str(spec).split(","):
        item = item.strip()
        if not item:
            raise UsageError(f"empty item in {spec!r}")
        try:
            if ":" in item:
                parts = [float(x) for x in item.split(":")]
                if len(parts) != 3 or parts[2] <= 0 or parts[1] < parts[0]:
                    raise ValueError
                start, stop, step = parts
                count = int(round((stop - start) / step)) + 1
                if start + (count - 1) * step > stop + 1e-9 * max(1.0, abs(stop)):
                    count -= 1
                vals = [round(start + i * step, 12) for i in range(count)]
            else:
                vals = [float(item)]
        except ValueError:
            raise UsageError(f"cannot parse {item!r}") from None
        for v in vals:
            if kind is int:
                if v != int(v):
                    raise UsageError(f"{v!r} is not an integer")
                v = int(v)
            out.append(v)
    return out


def _grid(args, delta_default: str, t_default: str, m_default: str):
    deltas = parse_values(args.delta or delta_default)
    ts = parse_values(args.t or t_default)
    ms = parse_values(args.m or m_default, int)
    points = sorted(ClassParams(d, t, m) for d in deltas for t in ts for m in ms)
    spec = {"delta": args.delta or delta_default, "t": args.t or t_default,
            "m": args.m or m_default}
    return points, spec


def _modes(name: str) -> list[Mode]:
    return [Mode.PAPER, Mode.SCHUR] if name == "both" else [Mode(name)]


def _write(text: str, out: str | None):
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        Path(out).write_text(text, encoding="utf-8")


# --- commands -------------------------------------------------------------------

def cmd_cheby(args, argv) -> int:
    fn = chebyshev.u_poly if args.kind == "U" else chebyshev.t_poly
    print(f"{fn(args.n, args.t):.15g}")
    return EXIT_OK


def _bound_rows(params: ClassParams, rs, formula: str, literal: bool) -> list[dict]:
    rows = []
    for r in [None, *rs]:
        rep = bounds.bound_report(params, r, literal).to_dict()
        if formula in ("printed", "both") and rep["printed_a2"] is None:
            raise BoundUndefined("bound undefined")
        if r is not None and formula in ("printed", "both") and rep["fs_printed"] is None:
            raise BoundUndefined("bound undefined")
        drop = {"printed": "derived", "derived": "printed"}.get(formula)
        if drop:
            for k in list(rep):
                if k.startswith(drop) or (k.startswith("sigma_") and k.endswith(drop)) \
                        or (k.startswith("fs_") and k.endswith(drop)):
                    rep[k] = None
            if rep["fs_case"] is not None:
                rep["fs_case"][drop] = None
        rows.append(rep)
    return rows


def cmd_bounds(args, argv) -> int:
    params = ClassParams(args.delta, args.t, args.m)
    rs = parse_values(args.r) if args.r else []
    rows = _bound_rows(params, rs, args.formula, args.fs_branch_literal)
    if args.format == "json":
        text = json.dumps(clean_json(rows), indent=2) + "\n"
    else:
        flat = []
        for row in rows:
            row = dict(row)
            case = row.pop("fs_case") or {}
            row["fs_case_printed"] = case.get("printed")
            row["fs_case_derived"] = case.get("derived")
            flat.append(row)
        fields = [f for f in BOUND_FIELDS if f != "fs_case"] + ["fs_case_printed",
                                                                "fs_case_derived"]
        text = csv_text(flat, fields)
    _write(text, args.out)
    return EXIT_OK


def cmd_invert(args, argv) -> int:
    tail = parse_values(args.coeffs)
    order = args.order if args.order is not None else len(tail) + 1
    if order < 2:
        raise UsageError("--order must be >= 2")
    g = reverse(normalized(tail, order=order))
    print(", ".join(_fmt_coeff(c) for c in g.coeffs[2:]))
    return EXIT_OK


def _fmt_coeff(c: complex) -> str:
    re, im = c.real + 0.0, c.imag + 0.0
    if abs(im) <= 1e-15 * max(1.0, abs(re)):
        return f"{re:.15g}" if re != 0 else "0"
    return f"{complex(re, im)!r}"


def _config(args, mode: Mode) -> SearchConfig:
    return SearchConfig(samples=args.samples, seed=args.seed, mode=mode,
                        refine_steps=args.refine, refine_shrink=args.refine_shrink)


def _run_sweep(points, rs, args) -> list:
    reports = []
    for mode in _modes(args.mode):
        reports.extend(sweep([(p, rs) for p in points], _config(args, mode)))
    return reports


def cmd_verify(args, argv) -> int:
    params = ClassParams(args.delta, args.t, args.m)
    rs = parse_values(args.r)
    reports = _run_sweep([params], rs, args)
    violations = sum(r.violation_derived for r in reports)
    payload = {"reports": [r.to_dict() for r in reports], "violations_derived": violations}
    grid = {"delta": args.delta, "t": args.t, "m": args.m, "r": args.r, "mode": args.mode,
            "samples": args.samples, "refine": args.refine,
            "refine_shrink": args.refine_shrink}
    _write(dumps_document(document(payload, argv, args.seed, grid, __version__)), args.out)
    return EXIT_VIOLATION if violations else EXIT_OK


def _sweep_rows(reports) -> list[dict]:
    rows = []
    for rep in reports:
        d = rep.to_dict()
        pair = d.pop("argmax") or {}
        for name in ("p1", "p2", "q2"):
            re_im = pair.get(name) or [None, None]
            d[f"{name}_re"], d[f"{name}_im"] = re_im
        rows.append(d)
    return rows


def _search_args(args, points, spec, rs):
    grid = dict(spec, r=args.r, mode=args.mode, samples=args.samples, refine=args.refine,
                refine_shrink=args.refine_shrink, points=len(points))
    return grid


def cmd_sweep(args, argv) -> int:
    points, spec = _grid(args, *_DEFAULT_GRID)
    rs = parse_values(args.r)
    reports = _run_sweep(points, rs, args)
    text = csv_text(_sweep_rows(reports), SWEEP_FIELDS)
    _write(text, args.out)
    if args.out and args.out != "-":
        manifest = make_manifest(argv, args.seed, _search_args(args, points, spec, rs),
                                 __version__, text.encode("utf-8"))
        Path(args.out + ".manifest.json").write_text(
            json.dumps({"manifest": manifest, "file": Path(args.out).name}, indent=2) + "\n",
            encoding="utf-8")
    return EXIT_VIOLATION if any(r.violation_derived for r in reports) else EXIT_OK


def _audit_flags(records) -> list[dict]:
    flags = []
    for rec in records:
        for e in rec.to_dict()["comparisons"]:
            hits = [k for k, v in e.items()
                    if v is True and (k.startswith("printed_below") or k.startswith("derived_below"))]
            if hits:
                flags.append({**rec.params.to_dict(), "functional": e["functional"],
                              "r": e["r"], "flags": hits})
    return flags


def cmd_audit(args, argv) -> int:
    points, spec = _grid(args, *_DEFAULT_GRID)
    rs = parse_values(args.r)
    reports = [] if args.no_search else _run_sweep(points, rs, args)
    records = bounds.audit([(p, rs) for p in points], reports, literal=args.fs_branch_literal)
    payload = {
        "records": [rec.to_dict() for rec in records],
        "flags": _audit_flags(records),
        "extremal": [r.to_dict() for r in reports],
    }
    grid = _search_args(args, points, spec, rs)
    grid["fs_branch_literal"] = args.fs_branch_literal
    grid["search"] = not args.no_search
    _write(dumps_document(document(payload, argv, args.seed, grid, __version__)), args.out)
    if args.csv:
        Path(args.csv).write_text(csv_text(_sweep_rows(reports), SWEEP_FIELDS), encoding="utf-8")
    return EXIT_VIOLATION if any(r.violation_derived for r in reports) else EXIT_OK


_DEFAULT_GRID = ("1,1.5,2,3", "0.55:0.95:0.1", "0,1,2")


# --- parser ---------------------------------------------------------------------

def _add_search(p, samples=100_000):
    p.add_argument("--r", default=DEFAULT_R, help="FS parameters (list or range)")
    p.add_argument("--samples", type=int, default=samples)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--mode", choices=["paper", "schur", "both"], default="both")
    p.add_argument("--refine", type=int, default=200, help="refinement rounds")
    p.add_argument("--refine-shrink", type=float, default=0.7)
    p.add_argument("--out", default=None)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="biuniv", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("cheby", help="evaluate T_n(t) or U_n(t)")
    p.add_argument("--kind", choices=["T", "U"], required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t", type=float, required=True)
    p.set_defaults(func=cmd_cheby)

    p = sub.add_parser("bounds", help="printed and derived bounds at one point")
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--r", default=None)
    p.add_argument("--formula", choices=["printed", "derived", "both"], default="both")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--fs-branch-literal", action="store_true")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("invert", help="compositional inverse of z + a2 z^2 + ...")
    p.add_argument("--coeffs", required=True, help="a2,a3,...")
    p.add_argument("--order", type=int, default=None)
    p.set_defaults(func=cmd_invert)

    p = sub.add_parser("verify", help="search one point and gate on derived bounds")
    p.add_argument("--delta", type=float, default=1.0)
    p.add_argument("--t", type=float, default=0.75)
    p.add_argument("--m", type=int, default=0)
    _add_search(p)
    p.set_defaults(func=cmd_verify)

    for name, func in (("sweep", cmd_sweep), ("audit", cmd_audit)):
        p = sub.add_parser(name, help=f"{name} over a parameter grid")
        p.add_argument("--delta", default=None)
        p.add_argument("--t", default=None)
        p.add_argument("--m", default=None)
        _add_search(p)
        if name == "audit":
            p.add_argument("--fs-branch-literal", action="store_true")
            p.add_argument("--no-search", action="store_true")
            p.add_argument("--csv", default=None, help="also write the extremal CSV")
        p.set_defaults(func=func)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, ["biuniv", *argv])
    except UsageError as exc:
        print(f"biuniv: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BoundUndefined as exc:
        print(f"biuniv: bound undefined: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except BiunivError as exc:
        print(f"biuniv: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ValueError as exc:
        print(f"biuniv: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
