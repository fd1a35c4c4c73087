"""Command-line front end: ``srkbounds {bound,spectrum,alpha,reproduce,msrd}``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from typing import Any, Sequence

from .bounds_classical import CLASSICAL_BOUNDS, PUNCTURED, TABULATED
from .core import ParameterError, SrkParams, normalize_params
from .msrd import (
    ALL_METHODS,
    DEFAULT_METHODS,
    LINEAR_PROGRAM,
    RATIO_TYPE,
    MsrdVerdict,
    ScanGrid,
    evaluate_bound,
    msrd_scan,
    msrd_threshold_t,
)
from .oracle import DEFAULT_VERTEX_CAP, VertexCapExceeded, build_graph, exact_alpha_k
from .reproduce import TABLE_IDS, reproduce_table
from .spectra import regularity_delta, srk_spectrum

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CAP = 2
EXIT_REPRODUCE_FAIL = 3

FORMATS = ("json", "csv", "md")

_ALIASES = {
    "rt": RATIO_TYPE,
    "ratio": RATIO_TYPE,
    "lp": LINEAR_PROGRAM,
    "is": "iS",
    "ih": "iH",
    "ip": "iP",
    "ie": "iE",
    "s": "S",
    "singleton": "S",
    "sp": "SP",
    "psp": "PSP",
    "td": "TD",
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit with 2, which we reserve for caps
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _csv_ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _methods(text: str) -> tuple[str, ...]:
    out = []
    for raw in text.split(","):
        key = raw.strip()
        if not key:
            continue
        name = _ALIASES.get(key.lower(), key)
        if name not in ALL_METHODS:
            raise argparse.ArgumentTypeError(f"unknown bound {raw!r}")
        out.append(name)
    return tuple(out)


def default_vertex_cap() -> int:
    env = os.environ.get("SRK_MAX_VERTICES")
    if env is None:
        return DEFAULT_VERTEX_CAP
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"SRK_MAX_VERTICES must be an integer, got {env!r}") from None


# rendering ---------------------------------------------------------------


def to_json_value(value: Any) -> Any:
    """Integers become decimal strings so that big values survive any JSON reader."""
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, int):
        return str(value)
    if isinstance(value, (list, tuple)):
        return [to_json_value(v) for v in value]
    if isinstance(value, dict):
        return {str(k): to_json_value(v) for k, v in value.items()}
    return value


def render_json(record: Any) -> str:
    return json.dumps(to_json_value(record), sort_keys=True, separators=(",", ":"))


def _table_cell(value: Any) -> str:
    if value is None:
        return "0"
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, (list, tuple)):
        return ",".join(map(str, value))
    return str(value)


def render_rows(records: list[dict[str, Any]], columns: Sequence[str], fmt: str) -> str:
    if fmt == "json":
        return "\n".join(render_json(r) for r in records)
    cells = [[_table_cell(r.get(c)) for c in columns] for r in records]
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        writer.writerows(cells)
        return buf.getvalue().rstrip("\n")
    if fmt == "md":
        lines = ["| " + " | ".join(columns) + " |", "|" + "---|" * len(columns)]
        lines += ["| " + " | ".join(row) + " |" for row in cells]
        return "\n".join(lines)
    raise UsageError(f"unknown format {fmt!r}")


def _params_record(params: SrkParams) -> dict[str, Any]:
    return {"q": params.q, "n": list(params.n), "m": list(params.m), "V": params.size}


# commands ------------------------------------------------------------------


def _params_from(args) -> SrkParams:
    return normalize_params(args.q, args.n, args.m)


def cmd_bound(args) -> int:
    params = _params_from(args)
    methods = args.methods or (RATIO_TYPE,) + CLASSICAL_BOUNDS
    record = _params_record(params)
    record["d"] = args.d
    if not 1 <= args.d <= params.N:
        raise UsageError(f"d must lie in 1..{params.N}")
    for name in methods:
        record[name] = evaluate_bound(name, params, args.d, args.psp_convention).value
    columns = ["q", "n", "m", "d", "V", *methods]
    print(render_rows([record], columns, args.format))
    return EXIT_OK


def cmd_spectrum(args) -> int:
    params = _params_from(args)
    spec = srk_spectrum(params)
    if args.format == "json":
        record = _params_record(params)
        record["delta"] = regularity_delta(params)
        record["spectrum"] = [list(e) for e in spec.entries]
        print(render_json(record))
        return EXIT_OK
    rows = [{"eigenvalue": e, "multiplicity": k} for e, k in spec.entries]
    print(f"# {params} V={params.size} delta={regularity_delta(params)}")
    print(render_rows(rows, ["eigenvalue", "multiplicity"], args.format))
    return EXIT_OK


def cmd_alpha(args) -> int:
    params = _params_from(args)
    cap = args.max_vertices if args.max_vertices is not None else default_vertex_cap()
    graph = build_graph(params, cap)
    if args.dump:
        with open(args.dump, "w") as fh:
            fh.write(graph.dump())
    result = exact_alpha_k(graph, args.k, budget_seconds=args.budget_seconds)
    record = _params_record(params)
    record.update({"k": args.k, "alpha": result.value, "exact": result.exact, "nodes": result.nodes})
    print(render_rows([record], ["q", "n", "m", "V", "k", "alpha", "exact", "nodes"], args.format))
    return EXIT_OK


def cmd_reproduce(args) -> int:
    cap = args.max_vertices if args.max_vertices is not None else default_vertex_cap()
    report = reproduce_table(args.table, max_vertices=cap, alpha_budget=args.alpha_budget, compute_alpha=not args.no_alpha)
    if args.format == "text":
        for cell in report.cells:
            print(cell.line())
        print(report.summary())
    else:
        rows = [
            {
                "row": c.row,
                "params": c.label,
                "column": c.column,
                "expected": c.expected,
                "computed": c.computed,
                "status": c.status,
                "note": c.note,
            }
            for c in report.cells
        ]
        print(render_rows(rows, ["row", "params", "column", "expected", "computed", "status", "note"], args.format))
    return EXIT_OK if report.ok else EXIT_REPRODUCE_FAIL


def verdict_record(v: MsrdVerdict) -> dict[str, Any]:
    record = _params_record(v.params)
    record.update(
        {
            "t": v.params.t,
            "d": v.d,
            "singleton": v.singleton_size,
            "best_bound": {"name": v.best_bound.name, "value": v.best_bound.value},
            "excluded": v.excluded,
            "only_spectral": v.only_spectral,
            "bounds": {b.name: b.value for b in v.bounds},
        }
    )
    return record


def cmd_msrd(args) -> int:
    if not args.scan:
        if args.q is None or args.m is None or args.n is None:
            raise UsageError("threshold queries need --q, --m and --n (or use --scan)")
        if len(args.m) != 1 or len(args.n) != 1:
            raise UsageError("threshold queries take a single --m and --n")
        t = msrd_threshold_t(args.q, args.m[0], args.n[0])
        if args.format == "json":
            print(render_json({"q": args.q, "m": args.m[0], "n": args.n[0], "d": 3, "max_t": t}))
        else:
            print(f"an MSRD code with d=3 in n=({args.n[0]},1,...,1), m=({args.m[0]},1,...,1) over F_{args.q} needs t <= {t}")
        return EXIT_OK
    q = args.q if args.q is not None else 2
    normalize_params(q, (1,), (1,))  # rejects non prime powers
    grid = ScanGrid(q=q, max_m=args.max_m, max_t=args.max_t)
    cap = args.max_vertices if args.max_vertices is not None else default_vertex_cap()
    methods = args.methods or DEFAULT_METHODS
    verdicts = []
    for d in args.d or (3, 4):
        verdicts.extend(msrd_scan(grid, d, cap, methods, args.psp_convention))
    verdicts.sort(key=lambda v: (v.params.size, v.params.t, v.params.n, v.params.m, v.d))
    if args.only_excluded:
        verdicts = [v for v in verdicts if v.excluded]
    records = [verdict_record(v) for v in verdicts]
    if args.format == "json":
        for r in records:
            print(render_json(r))
    else:
        flat = [
            {**r, "best": f"{r['best_bound']['name']}={r['best_bound']['value']}", "RT": r["bounds"].get(RATIO_TYPE)}
            for r in records
        ]
        cols = ["t", "q", "n", "m", "d", "V", "RT", "singleton", "best", "excluded", "only_spectral"]
        print(render_rows(flat, cols, args.format))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="srkbounds", description="Upper bounds on sum-rank-metric codes.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def shape(p, required=True):
        p.add_argument("--q", type=int, required=required, help="field size (a prime power)")
        p.add_argument("--n", type=_csv_ints, required=required, help="rows per block, comma separated")
        p.add_argument("--m", type=_csv_ints, required=required, help="columns per block, comma separated")

    p = sub.add_parser("bound", help="evaluate bounds on A_q(n, m, d)")
    shape(p)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--methods", type=_methods, help="comma-separated bound names (default: RT and all classical)")
    p.add_argument("--psp-convention", choices=(PUNCTURED, TABULATED), default=PUNCTURED)
    p.add_argument("--format", choices=FORMATS, default="md")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("spectrum", help="adjacency spectrum of the sum-rank-metric graph")
    shape(p)
    p.add_argument("--format", choices=FORMATS, default="md")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("alpha", help="exact k-independence number by brute force")
    shape(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--max-vertices", type=int, help="vertex cap (default: $SRK_MAX_VERTICES or 65536)")
    p.add_argument("--budget-seconds", type=float, default=60.0)
    p.add_argument("--dump", help="write the graph as an edge list to this path")
    p.add_argument("--format", choices=FORMATS, default="md")
    p.set_defaults(func=cmd_alpha)

    p = sub.add_parser("reproduce", help="recompute a reference table and diff it")
    p.add_argument("--table", type=int, choices=TABLE_IDS, required=True)
    p.add_argument("--max-vertices", type=int)
    p.add_argument("--alpha-budget", type=float, default=60.0)
    p.add_argument("--no-alpha", action="store_true", help="skip the brute-force alpha cells")
    p.add_argument("--format", choices=("text",) + FORMATS, default="text")
    p.set_defaults(func=cmd_reproduce)

    p = sub.add_parser("msrd", help="MSRD block-length thresholds and exclusion scans")
    shape(p, required=False)
    p.add_argument("--scan", action="store_true")
    p.add_argument("--d", type=_csv_ints, help="distances to scan (default 3,4)")
    p.add_argument("--max-vertices", type=int)
    p.add_argument("--max-m", type=int, default=3)
    p.add_argument("--max-t", type=int, default=16)
    p.add_argument("--methods", type=_methods)
    p.add_argument("--psp-convention", choices=(PUNCTURED, TABULATED), default=TABULATED)
    p.add_argument("--only-excluded", action="store_true")
    p.add_argument("--format", choices=FORMATS, default="json")
    p.set_defaults(func=cmd_msrd)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except VertexCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except BrokenPipeError:
        # downstream reader (e.g. head) closed early; silence the flush at exit
        devnull = os.open(os.devnull, os.O_WRONLY)
        os.dup2(devnull, sys.stdout.fileno())
        return 0


if __name__ == "__main__":
    sys.exit(main())
