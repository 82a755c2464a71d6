"""Rank 2 machinery: dual-sorted lookup tables and the lazily sampled oracle.

A mapping table keeps one copy of the (input, output) pairs in build order
plus two index permutations, one sorted by input and one by output, so the
same data answers forward and inverse queries.  The oracle notebook fixes a
random answer on first query and replays it forever after; its dice are a
fixed 64-bit linear congruential generator so every run is bit-exact.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .core import CostLedger, NotFound, RankitError


class InfeasibleTable(RankitError):
    """Requested table exceeds the practical entry-count ceiling."""


# Tables beyond this many entries are flagged theoretical only.
RANK2_MAX_ENTRIES = 2 ** 24


@dataclass(frozen=True)
class MappingTable:
    """Input-output pairs with two sort views.

    ``entries`` stays in insertion order; ``index_by_input`` and
    ``index_by_output`` are permutations of entry positions.  Output ties
    break by ascending input so every ordering is deterministic.
    """

    entries: tuple
    index_by_input: tuple
    index_by_output: tuple

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple]) -> "MappingTable":
        entries = tuple(pairs)
        order = range(len(entries))
        by_input = tuple(sorted(order, key=lambda i: entries[i][0]))
        by_output = tuple(sorted(order, key=lambda i: (entries[i][1], entries[i][0])))
        return cls(entries=entries, index_by_input=by_input, index_by_output=by_output)

    def __len__(self) -> int:
        return len(self.entries)

    def inputs_sorted(self):
        return (self.entries[i] for i in self.index_by_input)

    def outputs_sorted(self):
        return (self.entries[i] for i in self.index_by_output)


def _resolve(f) -> Callable:
    if callable(f):
        return f
    from . import funcs  # deferred to avoid an import cycle
    return funcs.get_function(f).fn


def grid_points(lo: float, hi: float, step: float) -> list:
    """Inclusive grid from lo to hi; empty when lo > hi."""
    if step <= 0:
        raise ValueError("step must be positive")
    points = []
    count = int(round((hi - lo) / step)) + 1 if hi >= lo else 0
    for i in range(count):
        x = lo + i * step
        if isinstance(lo, int) and isinstance(step, int):
            x = int(x)
        points.append(x)
    return points


def build_table(f, lo: float, hi: float, step: float = 1,
                ledger: CostLedger | None = None) -> MappingTable:
    """Forward-evaluate f over the grid and index both columns.

    Each grid point costs one forward evaluation.  The entry count is
    checked against RANK2_MAX_ENTRIES before any evaluation happens.
    """
    ledger = ledger if ledger is not None else CostLedger()
    fn = _resolve(f)
    points = grid_points(lo, hi, step)
    if len(points) > RANK2_MAX_ENTRIES:
        raise InfeasibleTable(
            f"{len(points)} entries exceed the {RANK2_MAX_ENTRIES} feasibility ceiling")
    pairs = []
    for x in points:
        pairs.append((x, fn(x)))
        ledger.forward_evals += 1
    return MappingTable.from_pairs(pairs)


def lookup_by_output(table: MappingTable, y, tol: float = 0.0,
                     ledger: CostLedger | None = None):
    """Invert through the output-sorted index by binary search.

    Locates the first entry whose output is >= y - tol and accepts it when
    it lies within tol; output ties resolve to the smallest input via the
    composite sort key.  Ordering decisions land in ``comparisons``, entry
    accesses in ``table_probes``.
    """
    ledger = ledger if ledger is not None else CostLedger()
    n = len(table)
    if n == 0:
        raise NotFound("empty table")
    lo, hi = 0, n
    floor = y - tol
    while lo < hi:
        mid = (lo + hi) // 2
        ledger.table_probes += 1
        ledger.comparisons += 1
        if table.entries[table.index_by_output[mid]][1] < floor:
            lo = mid + 1
        else:
            hi = mid
    if lo == n:
        raise NotFound(f"no table output within {tol} of {y}")
    ledger.table_probes += 1
    entry = table.entries[table.index_by_output[lo]]
    if abs(entry[1] - y) > tol:
        raise NotFound(f"no table output within {tol} of {y}")
    return entry[0]


def table_to_csv(table: MappingTable, order: str = "input",
                 headers: Sequence[str] = ("index", "input", "output"),
                 float_digits: int | None = None) -> str:
    """CSV with a 1-based index column, in the requested sort view."""
    view = table.inputs_sorted() if order == "input" else table.outputs_sorted()
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(headers)
    for i, (x, yv) in enumerate(view, start=1):
        if float_digits is not None and isinstance(yv, float):
            yv = f"{yv:.{float_digits}f}"
        writer.writerow([i, _cell(x), yv])
    return buf.getvalue()


def _cell(value):
    if isinstance(value, tuple):
        return ",".join(str(v) for v in value)
    if isinstance(value, float) and value.is_integer():
        return int(value)
    return value


# --- oracle notebook ----------------------------------------------------------

LCG_MULTIPLIER = 6364136223846793005
LCG_INCREMENT = 1442695040888963407
_MASK64 = (1 << 64) - 1


def lcg_step(state: int) -> int:
    return (state * LCG_MULTIPLIER + LCG_INCREMENT) & _MASK64


def lcg_draw(state: int) -> int:
    """Two-digit value from the top seven bits of the state."""
    return (state >> 57) % 100


# First fill of the notebook used in reports and tests, in recording order.
SAMPLE_ORACLE_ROWS = (
    (4, 90), (27, 35), (2, 56), (19, 54), (96, 93),
    (98, 99), (67, 48), (66, 22), (20, 89), (62, 39),
)


class OracleNotebook:
    """Lazily sampled random function with write-once answers.

    A repeated query replays the recorded answer and never touches the
    generator, so the recorded mapping is independent of query order.
    Single writer only: a miss mutates both the notebook and the generator.
    """

    def __init__(self, seed: int = 1,
                 preload: Iterable[tuple[int, int]] | None = None) -> None:
        self.generator_state = seed & _MASK64
        self.recorded: dict[int, int] = {}
        if preload is not None:
            for q, r in preload:
                self.recorded[q] = r

    def query(self, q: int) -> int:
        if q in self.recorded:
            return self.recorded[q]
        self.generator_state = lcg_step(self.generator_state)
        r = lcg_draw(self.generator_state)
        self.recorded[q] = r
        return r

    def to_table(self) -> MappingTable:
        return MappingTable.from_pairs(sorted(self.recorded.items()))

    def export_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["q", "r"])
        for q in sorted(self.recorded):
            writer.writerow([q, self.recorded[q]])
        return buf.getvalue()


def oracle_query(nb: OracleNotebook, q: int) -> int:
    """Functional form of the notebook query."""
    return nb.query(q)
