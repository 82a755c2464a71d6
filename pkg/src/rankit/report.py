"""One-shot report: regenerate every headline number, write the delimited
outputs, and render the companion figures.

The report drives each subsystem once with fixed inputs -- the 45..76
degree sine table, the 0.829 inversion, the five-city tour table, the
six-vertex branch graph, the doubling ladder, and the preloaded oracle --
and emits a JSON record, a markdown summary, CSV exports, and PNG figures
side by side.  Identical inputs produce byte-identical JSON.
"""

from __future__ import annotations

import json
import os

from . import cfg, complexity, funcs, inversion, tables, tsp
from .core import CostLedger, classify, ranking_matrix_markdown

DEMO_TARGET = 0.829
DOUBLING_DEPTHS = range(0, 11)
CATALOG_ORDER = ("sine", "arcsine", "collatz", "bbs", "gtd")


def build_report(seed: int = 1, tol: float = inversion.DEFAULT_TOL,
                 constant_c: int = 0) -> dict:
    report: dict = {}

    # Sine table, 45..76 degrees, values at 4 decimals.
    table_ledger = CostLedger()
    sine_table = tables.build_table("sine", 45, 76, 1, ledger=table_ledger)
    report["sine_table"] = {
        "rows": [[i, int(x), f"{y:.4f}"] for i, (x, y) in
                 enumerate(sine_table.inputs_sorted(), start=1)],
        "forward_evals": table_ledger.forward_evals,
    }
    lookup_ledger = CostLedger()
    found = tables.lookup_by_output(sine_table, DEMO_TARGET, tol, ledger=lookup_ledger)
    report["table_lookup"] = {"target": DEMO_TARGET, "degrees": int(found),
                              "comparisons": lookup_ledger.comparisons}

    # Bisection inversion of the same target without a table.
    bisect_ledger = CostLedger()
    probes: list[tuple[float, float]] = []

    def recorded_sine(x):
        y = funcs.taylor_sine(x)
        probes.append((x, y))
        return y

    bracket = inversion.Bracket(0, 90, 1)
    degrees = inversion.bisect_invert(recorded_sine, DEMO_TARGET, bracket,
                                      tol=tol, ledger=bisect_ledger)
    report["bisection"] = {
        "target": DEMO_TARGET,
        "degrees": int(degrees),
        "forward_evals": bisect_ledger.forward_evals,
        "comparisons": bisect_ledger.comparisons,
        "probes": [[float(x), round(y, 4)] for x, y in probes],
    }

    # Analytic inversion.
    report["arcsine"] = {"input": DEMO_TARGET,
                         "degrees": round(funcs.arcsine(DEMO_TARGET), 4)}

    # Five-city tours: reference rows, optimum, and the sorted mapping.
    m = tsp.FIVE_CITIES
    reference_tours = ((0, 2, 1, 3, 4, 0), (0, 1, 2, 3, 4, 0),
                       (2, 3, 0, 1, 4, 2), (3, 2, 1, 4, 0, 3))
    rows = []
    for tour in reference_tours:
        normalized = tsp.rotate_to_start(tour, 0)
        rows.append({"tour": list(tour),
                     "normalized": list(normalized),
                     "distance": tsp.tour_distance(m, tour)})
    shortest_ledger = CostLedger()
    best_tour, best_distance = tsp.shortest_tour(m, ledger=shortest_ledger)
    mapping = tsp.sorted_mapping(m)
    head_tour, head_distance = next(mapping.outputs_sorted())
    report["tsp"] = {
        "reference_rows": rows,
        "shortest": {"tour": list(best_tour), "distance": best_distance,
                     "forward_evals": shortest_ledger.forward_evals},
        "mapping_head": {"tour": list(head_tour), "distance": head_distance},
        "tours_from_start_0": len(mapping),
        "tours_all_starts": len(tuple(tsp.enumerate_all_tours(m))),
    }

    # Branch graph cycles and the doubling ladder.
    branch_graph = cfg.augment(cfg.single_branch_graph())
    cycles = cfg.enumerate_cycles(branch_graph)
    report["flow_graph"] = {
        "cycles": [list(c) for c in cycles],
        "cyclomatic_number": cfg.cyclomatic_number(branch_graph),
        "even_trace": list(cfg.trace("collatz", 6).path),
        "odd_trace": list(cfg.trace("collatz", 7).path),
    }
    report["doubling"] = [
        {"depth": d, "cycles": got, "predicted": predicted}
        for d in DOUBLING_DEPTHS
        for got, predicted in [cfg.doubling_check(d)]
    ]

    # Oracle notebook: preloaded replay plus fresh seeded draws.
    preloaded = tables.OracleNotebook(seed=seed, preload=tables.SAMPLE_ORACLE_ROWS)
    replayed = [[q, preloaded.query(q)] for q, _ in tables.SAMPLE_ORACLE_ROWS]
    fresh = tables.OracleNotebook(seed=seed)
    fresh_draws = [[q, fresh.query(q)] for q in range(10)]
    report["oracle"] = {"seed": seed, "replayed_rows": replayed,
                        "fresh_draws": fresh_draws}

    # Category matrix and size accounting.
    report["categories"] = [
        {"function_id": fid,
         "profile": funcs.get_function(fid).profile.as_dict(),
         "category": classify(funcs.get_function(fid).profile).value}
        for fid in CATALOG_ORDER
    ]
    report["complexity"] = [complexity.report(fid, constant_c=constant_c)
                            for fid in CATALOG_ORDER]
    return report


def report_markdown(report: dict) -> str:
    lines = ["# Function ranking report", ""]
    lines.append("## Capability ranks")
    lines.append("")
    rows = [(entry["function_id"],
             funcs.get_function(entry["function_id"]).profile,
             classify(funcs.get_function(entry["function_id"]).profile))
            for entry in report["categories"]]
    lines.append(ranking_matrix_markdown(rows).rstrip())
    lines.append("")
    b = report["bisection"]
    lines.append("## Headlines")
    lines.append("")
    lines.append(f"- binary-search inversion of sine at {b['target']}: "
                 f"{b['degrees']} degrees in {b['comparisons']} probes "
                 f"({b['forward_evals']} evaluations including endpoints)")
    lines.append(f"- analytic inversion of {report['arcsine']['input']}: "
                 f"{report['arcsine']['degrees']} degrees")
    s = report["tsp"]["shortest"]
    lines.append(f"- shortest five-city tour: {'-'.join(map(str, s['tour']))} at "
                 f"{s['distance']} km after {s['forward_evals']} exhaustive evaluations")
    fg = report["flow_graph"]
    lines.append(f"- one decision point: {len(fg['cycles'])} execution cycles, "
                 f"cyclomatic number {fg['cyclomatic_number']}")
    last = report["doubling"][-1]
    lines.append(f"- doubling law holds through depth {last['depth']}: "
                 f"{last['cycles']} cycles = 2^{last['depth']}")
    lines.append("")
    lines.append("## Size verdicts")
    lines.append("")
    lines.append("| function | description bits | mapping | table bits | verdict |")
    lines.append("|---|---|---|---|---|")
    for entry in report["complexity"]:
        size = entry["ledgers"]["size"]
        mapping = (f"{entry['mapping_entries']} entries"
                   if entry["function_id"] == "gtd"
                   else f"{size['mapping_bits']} bits")
        lines.append(f"| {entry['function_id']} | {size['description_bits']} | "
                     f"{mapping} | {size['table_bits']} | {entry['verdict']} |")
    lines.append("")
    lines.append("## Sine table (45..76 degrees)")
    lines.append("")
    lines.append("| index | degrees | sine |")
    lines.append("|---|---|---|")
    for index, deg, value in report["sine_table"]["rows"]:
        lines.append(f"| {index} | {deg} | {value} |")
    lines.append("")
    return "\n".join(lines)


def render_figures(report: dict, out_dir: str) -> list[str]:
    """PNG companions to the delimited outputs; returns written paths."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    os.makedirs(out_dir, exist_ok=True)
    written = []

    def save(fig, name: str) -> None:
        path = os.path.join(out_dir, name)
        fig.savefig(path, dpi=120)
        plt.close(fig)
        written.append(path)

    # Bisection probes on the sine curve.
    fig, ax = plt.subplots(figsize=(7, 4.5))
    xs = [x / 2 for x in range(0, 181)]
    ax.plot(xs, [funcs.taylor_sine(x) for x in xs], color="tab:blue", label="sine")
    b = report["bisection"]
    px = [p[0] for p in b["probes"]]
    py = [p[1] for p in b["probes"]]
    ax.scatter(px, py, color="tab:red", zorder=3, label="probes")
    for i, (x, y) in enumerate(zip(px, py), start=1):
        ax.annotate(str(i), (x, y), textcoords="offset points", xytext=(6, -10))
    ax.axhline(b["target"], color="gray", linewidth=0.8, linestyle="--")
    ax.set_xlabel("degrees")
    ax.set_ylabel("sine")
    ax.set_title(f"Binary-search inversion of {b['target']} "
                 f"in {b['comparisons']} probes")
    ax.legend()
    save(fig, "sine_inversion.png")

    # Tour lengths: enumeration order versus sorted order.
    m = tsp.FIVE_CITIES
    lengths = [tsp.tour_distance(m, t) for t in tsp.enumerate_all_tours(m)]
    fig, (left, right) = plt.subplots(1, 2, figsize=(10, 4), sharey=True)
    left.plot(lengths, linewidth=0.9)
    left.set_title("tour order (no usable structure)")
    left.set_xlabel("tour index")
    left.set_ylabel("length (km)")
    right.plot(sorted(lengths), color="tab:green", linewidth=1.2)
    right.set_title("sorted by length")
    right.set_xlabel("rank")
    fig.suptitle("Five-city tour lengths")
    save(fig, "tour_lengths.png")

    # Decision doubling ladder.
    fig, ax = plt.subplots(figsize=(6, 4))
    depths = [row["depth"] for row in report["doubling"]]
    counts = [row["cycles"] for row in report["doubling"]]
    ax.semilogy(depths, [2 ** d for d in depths], "--", color="gray",
                label="2^depth", base=2)
    ax.semilogy(depths, counts, "o", color="tab:red", label="enumerated", base=2)
    ax.set_xlabel("decision points in series")
    ax.set_ylabel("execution cycles")
    ax.set_title("Each decision point doubles the cycle count")
    ax.legend()
    save(fig, "branch_doubling.png")

    # 3x+1 orbit of 27.
    orbit = funcs.collatz_trajectory(27, 200)
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.plot(orbit.values, linewidth=1.0)
    ax.set_xlabel("step")
    ax.set_ylabel("value")
    ax.set_title(f"3x+1 orbit of 27 ({len(orbit.values) - 1} steps to 1)")
    save(fig, "collatz_orbit.png")

    return written


def write_outputs(report: dict, out_dir: str, figures: bool = True) -> list[str]:
    """Write report.json/report.md, the CSV exports, and the figures."""
    os.makedirs(out_dir, exist_ok=True)
    written = []

    def emit(name: str, text: str) -> None:
        path = os.path.join(out_dir, name)
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
        written.append(path)

    emit("report.json", json.dumps(report, indent=2, sort_keys=True) + "\n")
    emit("report.md", report_markdown(report))

    sine_table = tables.build_table("sine", 45, 76, 1)
    emit("sine_table.csv", tables.table_to_csv(sine_table, float_digits=4))
    emit("tsp_mapping.csv", tsp.mapping_to_csv(tsp.sorted_mapping(tsp.FIVE_CITIES)))
    notebook = tables.OracleNotebook(preload=tables.SAMPLE_ORACLE_ROWS)
    emit("oracle_notebook.csv", notebook.export_csv())

    if figures:
        written += render_figures(report, os.path.join(out_dir, "figures"))
    return written
