"""Rank taxonomy, category split, and the cost/size ledgers shared by all modules.

A function description earns up to four capability ranks:

* rank 1 -- forward evaluation by a program,
* rank 2 -- evaluation/inversion through a precomputed dual-sorted table,
* rank 3 -- inversion by logarithmic search without a table,
* rank 4 -- inversion through an explicit inverse function.

Functions with rank 3 or rank 4 fall in category C1 (efficiently invertible);
functions with neither fall in C2 (only forward evaluation and tables remain).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum


class RankitError(Exception):
    """Base class for all toolkit errors."""


class UnknownFunction(RankitError):
    """Requested function identifier is not in the catalog."""


class NotFound(RankitError):
    """A search finished without a match within tolerance."""


class ZeroMapping(RankitError):
    """A size verdict was requested for an empty mapping."""


class Category(Enum):
    C1 = "C1"
    C2 = "C2"


class Verdict(Enum):
    LOW = "LOW"
    HIGH = "HIGH"


@dataclass(frozen=True)
class RankProfile:
    """Declared capability flags for one cataloged function.

    rank2 implies rank1: a lookup table is only buildable by forward
    evaluation.  The remaining flags are independent.
    """

    rank1: bool
    rank2: bool
    rank3: bool
    rank4: bool

    def __post_init__(self) -> None:
        if self.rank2 and not self.rank1:
            raise ValueError("rank2 requires rank1: tables are built by forward evaluation")

    def as_dict(self) -> dict:
        return {"rank1": self.rank1, "rank2": self.rank2,
                "rank3": self.rank3, "rank4": self.rank4}


@dataclass
class CostLedger:
    """Operation counters for one experiment.

    forward_evals counts function evaluations, table_probes counts table
    entry accesses, comparisons counts ordering decisions taken by a search
    loop.  Counters only ever increase; one ledger belongs to one experiment
    thread.
    """

    forward_evals: int = 0
    table_probes: int = 0
    comparisons: int = 0

    def as_dict(self) -> dict:
        return {"forward_evals": self.forward_evals,
                "table_probes": self.table_probes,
                "comparisons": self.comparisons}


@dataclass
class SizeLedger:
    """Description/mapping/table sizes entering a complexity verdict.

    ``constant_c`` is the additive slack allowed on the mapping side of the
    comparison; it defaults to zero and is CLI-settable because no canonical
    value exists for it.
    """

    description_bits: int
    mapping_bits: int
    table_bits: int = 0
    constant_c: int = 0

    def __post_init__(self) -> None:
        for name in ("description_bits", "mapping_bits", "table_bits", "constant_c"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")

    def as_dict(self) -> dict:
        return {"description_bits": self.description_bits,
                "mapping_bits": self.mapping_bits,
                "table_bits": self.table_bits,
                "constant_c": self.constant_c}


def classify(profile: RankProfile) -> Category:
    """C1 iff the profile has any efficient inversion route (rank 3 or 4)."""
    return Category.C1 if (profile.rank3 or profile.rank4) else Category.C2


def complexity_verdict(ledger: SizeLedger) -> Verdict:
    """Strict size comparison: LOW iff description (+table) < mapping + c.

    ``table_bits`` is zero unless the caller accounts for a C2 function,
    where the stored lookup table joins the description side.
    """
    if ledger.mapping_bits == 0:
        raise ZeroMapping("mapping size is zero; no verdict possible")
    lhs = ledger.description_bits + ledger.table_bits
    if lhs < ledger.mapping_bits + ledger.constant_c:
        return Verdict.LOW
    return Verdict.HIGH


def report_record(function_id: str, profile: RankProfile, category: Category,
                  size: SizeLedger | None = None,
                  cost: CostLedger | None = None) -> dict:
    """Assemble the JSON-ready report object for one function."""
    ledgers: dict = {}
    if size is not None:
        ledgers["size"] = size.as_dict()
    if cost is not None:
        ledgers["cost"] = cost.as_dict()
    return {"function_id": function_id,
            "profile": profile.as_dict(),
            "category": category.value,
            "ledgers": ledgers}


_CHECK = "✓"
_CROSS = "✗"


def ranking_matrix_markdown(rows: list[tuple[str, RankProfile, Category]]) -> str:
    """Markdown table of rank flags and category, one row per function."""
    lines = ["| function | rank 1 | rank 2 | rank 3 | rank 4 | category |",
             "|---|---|---|---|---|---|"]
    for fid, profile, category in rows:
        marks = [_CHECK if flag else _CROSS
                 for flag in (profile.rank1, profile.rank2, profile.rank3, profile.rank4)]
        lines.append(f"| {fid} | {marks[0]} | {marks[1]} | {marks[2]} | {marks[3]} | {category.value} |")
    return "\n".join(lines) + "\n"
