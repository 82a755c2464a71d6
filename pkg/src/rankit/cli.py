"""Command-line front end.

Subcommands: eval, table, invert, oracle, tsp, cfg, complexity, report-all.
Every subcommand accepts --out/--format/--seed/--tol; JSON output is
deterministic (sorted keys, seeded generators, canonical orderings).
Exit codes: 0 success, 1 module error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import cfg, complexity, funcs, inversion, report, tables, tsp
from .core import CostLedger, RankitError, classify, ranking_matrix_markdown

INT_DOMAIN_FNS = {"collatz", "bbs", "gtd"}


def _num(text: str) -> float | int:
    value = float(text)
    return int(value) if value.is_integer() else value


def _intify(value):
    if isinstance(value, float) and value.is_integer():
        return int(value)
    return value


def _fn_input(fid: str, value: float | int):
    return int(value) if fid in INT_DOMAIN_FNS else value


def _emit(args, payload: dict, md: str | None = None, csv_text: str | None = None) -> None:
    if args.format == "json":
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    elif args.format == "md":
        text = md if md is not None else json.dumps(payload, indent=2, sort_keys=True) + "\n"
    else:
        if csv_text is None:
            raise RankitError("csv output is not available for this subcommand")
        text = csv_text
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_eval(args) -> None:
    fid = args.fn
    x = _fn_input(fid, _num(args.x))
    if fid == "sine":
        value = funcs.taylor_sine(x, args.terms)
    else:
        value = funcs.get_function(fid).fn(x)
    _emit(args, {"fn": fid, "x": x, "value": value}, md=f"{value}\n")


def _cmd_table(args) -> None:
    ledger = CostLedger()
    table = tables.build_table(args.fn, _num(args.lo), _num(args.hi),
                               _num(args.step), ledger=ledger)
    payload: dict = {
        "fn": args.fn,
        "entries": len(table),
        "forward_evals": ledger.forward_evals,
        "rows": [[i, x, y] for i, (x, y) in enumerate(table.inputs_sorted(), start=1)],
    }
    if args.find_output is not None:
        lookup_ledger = CostLedger()
        found = tables.lookup_by_output(table, float(args.find_output),
                                        args.tol, ledger=lookup_ledger)
        payload["lookup"] = {"output": float(args.find_output), "input": found,
                             "comparisons": lookup_ledger.comparisons}
    csv_text = tables.table_to_csv(table, float_digits=args.digits)
    md = csv_text if args.find_output is None else \
        csv_text + f"\n{payload['lookup']['input']} " \
                   f"({payload['lookup']['comparisons']} comparisons)\n"
    _emit(args, payload, md=md, csv_text=csv_text)


def _cmd_invert(args) -> None:
    descriptor = funcs.get_function(args.fn)
    lo = _num(args.lo) if args.lo is not None else descriptor.lo
    hi = _num(args.hi) if args.hi is not None else descriptor.hi
    step = _num(args.step) if args.step is not None else descriptor.step
    ledger = CostLedger()
    if args.exhaustive:
        domain = tables.grid_points(lo, hi, step)
        result = inversion.exhaustive_invert(args.fn, _num(args.target), domain,
                                             tol=args.tol, ledger=ledger)
    else:
        bracket = inversion.Bracket(lo, hi, step)
        result = inversion.bisect_invert(args.fn, _num(args.target), bracket,
                                         tol=args.tol, ledger=ledger)
    result = _intify(result)
    payload = {"fn": args.fn, "target": _num(args.target), "input": result,
               "forward_evals": ledger.forward_evals,
               "comparisons": ledger.comparisons}
    _emit(args, payload,
          md=f"{result}\nforward evaluations: {ledger.forward_evals}, "
             f"comparisons: {ledger.comparisons}\n")


def _cmd_oracle(args) -> None:
    preload = tables.SAMPLE_ORACLE_ROWS if args.preload else None
    notebook = tables.OracleNotebook(seed=args.seed, preload=preload)
    answers = [[q, notebook.query(q)] for q in (args.query or [])]
    payload = {"seed": args.seed, "answers": answers,
               "recorded": [[q, notebook.recorded[q]] for q in sorted(notebook.recorded)]}
    md = "\n".join(f"{q} -> {r}" for q, r in answers) + "\n" if answers else ""
    _emit(args, payload, md=md, csv_text=notebook.export_csv())


def _load_instance(args) -> tsp.DistanceMatrix:
    if args.instance is None:
        return tsp.FIVE_CITIES
    with open(args.instance, encoding="utf-8") as fh:
        text = fh.read()
    if args.instance.endswith(".csv"):
        return tsp.DistanceMatrix.from_csv(text, allow_asymmetric=args.allow_asymmetric)
    return tsp.DistanceMatrix.from_json(text, allow_asymmetric=args.allow_asymmetric)


def _cmd_tsp(args) -> None:
    if args.write_instance:
        with open(args.write_instance, "w", encoding="utf-8") as fh:
            fh.write(tsp.FIVE_CITIES.to_json() + "\n")
        _emit(args, {"written": args.write_instance},
              md=f"wrote {args.write_instance}\n")
        return
    m = _load_instance(args)
    if args.mode == "distance":
        if not args.tour:
            raise RankitError("--mode distance needs --tour")
        tour = tuple(int(c) for c in args.tour.split(","))
        dist = tsp.tour_distance(m, tour)
        _emit(args, {"tour": list(tour), "distance": dist}, md=f"{dist}\n")
    elif args.mode == "mapping":
        table = tsp.sorted_mapping(m)
        payload = {"entries": len(table),
                   "rows": [[",".join(map(str, t)), d] for t, d in table.outputs_sorted()]}
        _emit(args, payload, md=tsp.mapping_to_csv(table),
              csv_text=tsp.mapping_to_csv(table))
    else:
        ledger = CostLedger()
        tour, dist = tsp.shortest_tour(m, ledger=ledger)
        payload = {"tour": list(tour), "distance": dist,
                   "forward_evals": ledger.forward_evals}
        _emit(args, payload,
              md=f"{dist} via {'-'.join(map(str, tour))} "
                 f"({ledger.forward_evals} evaluations)\n")


def _cmd_cfg(args) -> None:
    if args.write_example:
        with open(args.write_example, "w", encoding="utf-8") as fh:
            fh.write(cfg.format_graph(cfg.single_branch_graph()))
        _emit(args, {"written": args.write_example}, md=f"wrote {args.write_example}\n")
        return
    if not args.graph:
        raise RankitError("cfg needs --graph FILE (or --write-example FILE)")
    with open(args.graph, encoding="utf-8") as fh:
        graph = cfg.parse_graph(fh.read())
    augmented = cfg.augment(graph)
    cycles = cfg.enumerate_cycles(augmented)
    doubling = [{"depth": d, "cycles": got, "predicted": want}
                for d in range(args.doubling_depth + 1)
                for got, want in [cfg.doubling_check(d)]]
    payload = {"cycles": [list(c) for c in cycles],
               "cyclomatic_number": cfg.cyclomatic_number(augmented),
               "doubling": doubling}
    md_lines = [f"cycles ({len(cycles)}):"]
    md_lines += ["  " + "-".join(map(str, c)) for c in cycles]
    md_lines.append(f"cyclomatic number: {payload['cyclomatic_number']}")
    md_lines.append("doubling check (depth cycles predicted):")
    md_lines += [f"  {row['depth']} {row['cycles']} {row['predicted']}"
                 for row in doubling]
    _emit(args, payload, md="\n".join(md_lines) + "\n")


def _cmd_complexity(args) -> None:
    fids = list(funcs.function_ids()) if args.all else [args.fn]
    if fids == [None]:
        raise RankitError("complexity needs --fn ID or --all")
    params = {}
    if args.n is not None:
        params["n"] = args.n
    if args.input_bits is not None:
        params["input_bits"] = args.input_bits
    records = [complexity.report(fid, params=params, constant_c=args.constant_c)
               for fid in fids]
    payload = {"reports": records}
    rows = [(r["function_id"], funcs.get_function(r["function_id"]).profile,
             classify(funcs.get_function(r["function_id"]).profile))
            for r in records]
    md = ranking_matrix_markdown(rows)
    md += "\n" + "\n".join(f"{r['function_id']}: {r['verdict']}" for r in records) + "\n"
    _emit(args, payload, md=md)


def _cmd_report_all(args) -> None:
    full = report.build_report(seed=args.seed, tol=args.tol,
                               constant_c=args.constant_c)
    written = report.write_outputs(full, args.out_dir,
                                   figures=not args.no_figures)
    payload = dict(full)
    payload["written"] = written
    _emit(args, payload, md=report.report_markdown(full))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write output to this file instead of stdout")
    common.add_argument("--format", choices=("json", "md", "csv"), default="json")
    common.add_argument("--seed", type=int, default=1, help="oracle generator seed")
    common.add_argument("--tol", type=float, default=inversion.DEFAULT_TOL,
                        help="match tolerance for searches")

    parser = argparse.ArgumentParser(prog="rankit",
                                     description="function ranking toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="forward-evaluate a catalog function")
    p.add_argument("--fn", required=True)
    p.add_argument("--x", required=True)
    p.add_argument("--terms", type=int, default=5)
    p.set_defaults(handler=_cmd_eval)

    p = sub.add_parser("table", parents=[common], help="build a dual-sorted lookup table")
    p.add_argument("--fn", required=True)
    p.add_argument("--lo", required=True)
    p.add_argument("--hi", required=True)
    p.add_argument("--step", default="1")
    p.add_argument("--find-output", help="invert this output through the table")
    p.add_argument("--digits", type=int, help="round outputs in CSV to this many decimals")
    p.set_defaults(handler=_cmd_table)

    p = sub.add_parser("invert", parents=[common], help="invert a function by search")
    p.add_argument("--fn", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--lo")
    p.add_argument("--hi")
    p.add_argument("--step")
    p.add_argument("--exhaustive", action="store_true",
                   help="scan the whole grid instead of bisecting")
    p.set_defaults(handler=_cmd_invert)

    p = sub.add_parser("oracle", parents=[common], help="query the notebook oracle")
    p.add_argument("--query", "-q", type=int, action="append")
    p.add_argument("--preload", action="store_true",
                   help="start from the sample notebook rows")
    p.set_defaults(handler=_cmd_oracle)

    p = sub.add_parser("tsp", parents=[common], help="five-city tour experiments")
    p.add_argument("--instance", help="JSON or CSV distance matrix (default: built-in)")
    p.add_argument("--mode", choices=("shortest", "mapping", "distance"),
                   default="shortest")
    p.add_argument("--tour", help="comma-separated closed tour for --mode distance")
    p.add_argument("--allow-asymmetric", action="store_true")
    p.add_argument("--write-instance", help="write the built-in instance to this file")
    p.set_defaults(handler=_cmd_tsp)

    p = sub.add_parser("cfg", parents=[common], help="flow-graph cycles and counts")
    p.add_argument("--graph", help="edge-list file with entry/exit headers")
    p.add_argument("--doubling-depth", type=int, default=10)
    p.add_argument("--write-example", help="write the six-vertex example graph")
    p.set_defaults(handler=_cmd_cfg)

    p = sub.add_parser("complexity", parents=[common], help="size ledgers and verdicts")
    p.add_argument("--fn")
    p.add_argument("--all", action="store_true")
    p.add_argument("--n", type=int, help="city count for the tour-length mapping")
    p.add_argument("--input-bits", type=int)
    p.add_argument("--constant-c", type=int, default=0)
    p.set_defaults(handler=_cmd_complexity)

    p = sub.add_parser("report-all", parents=[common],
                       help="regenerate every headline number, with files and figures")
    p.add_argument("--out-dir", default="rankit-report")
    p.add_argument("--no-figures", action="store_true")
    p.add_argument("--constant-c", type=int, default=0)
    p.set_defaults(handler=_cmd_report_all)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.handler(args)
    except (RankitError, ValueError, OSError) as exc:
        print(f"rankit: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
