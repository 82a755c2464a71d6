"""Size accounting: description length versus mapping length per function.

Description size is the exact UTF-8 byte length of the cataloged source
text times 8.  Mapping size uses the coarse unit the headline estimates are
quoted in: one unit per stored value, so a (input, output) pair costs 2 and
a 32-bit-input function reports 2 * 2^32.  The declared per-entry interface
width is annotated separately and never silently multiplied in.  For the
path-length function the mapping is reported as its entry count n!, which
grows super-exponentially while the description stays constant.
"""

from __future__ import annotations

from .core import Category, SizeLedger, classify, complexity_verdict, report_record
from .funcs import get_function

UNITS_PER_ENTRY = 2  # one input value + one output value


def description_size(fid: str) -> int:
    """Bits of the canonical stored source text (UTF-8 octets x 8)."""
    return len(get_function(fid).description_text.encode("utf-8")) * 8


def mapping_entries(fid: str, params: dict | None = None) -> int:
    """Entry count of the full input-output table under the parameters."""
    return get_function(fid).mapping_entries(params or {})


def mapping_size(fid: str, params: dict | None = None) -> int:
    """Mapping size: units for fixed-width functions, entry count for gtd."""
    descriptor = get_function(fid)
    entries = descriptor.mapping_entries(params or {})
    if descriptor.entries_only:
        return entries
    return entries * UNITS_PER_ENTRY


def size_ledger(fid: str, params: dict | None = None,
                constant_c: int = 0) -> SizeLedger:
    """Assemble the ledger; the table joins the ledger only for C2 functions.

    A C2 function is fully described only together with its lookup table,
    and that table stores the very mapping being measured, so table bits
    equal mapping bits and the description side can never win the strict
    comparison.
    """
    descriptor = get_function(fid)
    entries = descriptor.mapping_entries(params or {})
    mapping_bits = entries * UNITS_PER_ENTRY
    category = classify(descriptor.profile)
    table_bits = mapping_bits if category is Category.C2 else 0
    return SizeLedger(description_bits=description_size(fid),
                      mapping_bits=mapping_bits,
                      table_bits=table_bits,
                      constant_c=constant_c)


def report(fid: str, params: dict | None = None, constant_c: int = 0) -> dict:
    """Combined record: profile, category, size ledger, and verdict."""
    descriptor = get_function(fid)
    params = params or {}
    ledger = size_ledger(fid, params, constant_c)
    category = classify(descriptor.profile)
    record = report_record(fid, descriptor.profile, category, size=ledger)
    record["verdict"] = complexity_verdict(ledger).value
    record["mapping_entries"] = descriptor.mapping_entries(params)
    record["entry_bits"] = descriptor.entry_bits(params)
    return record
