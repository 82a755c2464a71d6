"""Rank 3 machinery: bisection inversion over a monotone bracket, the
exhaustive-search fallback, and an empirical monotonicity prober.

Bisection runs on a discrete grid so probe counts are deterministic; the
midpoint is the floor of the index midpoint and the first grid point within
tolerance wins.  Exhaustive scans walk the domain in its given (canonical)
order and bill every evaluation to the ledger, which is the whole point:
the two ledgers side by side show the log2(n) versus n gap.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable

from .core import CostLedger, NotFound, RankitError


class NotBracketed(RankitError):
    """Target lies outside [f(lo), f(hi)]."""


class NotMonotone(RankitError):
    """A probe violated the ordering the bracket promised."""


DEFAULT_TOL = 5e-4


@dataclass(frozen=True)
class Bracket:
    """Inclusive grid [lo, hi] with a positive step dividing the span."""

    lo: float
    hi: float
    step: float = 1.0

    def __post_init__(self) -> None:
        if self.lo >= self.hi:
            raise ValueError("bracket needs lo < hi")
        if self.step <= 0:
            raise ValueError("bracket step must be positive")
        span = self.hi - self.lo
        steps = round(span / self.step)
        if steps < 1 or abs(steps * self.step - span) > 1e-9 * max(1.0, abs(span)):
            raise ValueError("bracket span must be a whole number of steps")

    @property
    def n_points(self) -> int:
        return round((self.hi - self.lo) / self.step) + 1

    def point(self, i: int) -> float:
        x = self.lo + i * self.step
        if isinstance(self.lo, int) and isinstance(self.step, int):
            return int(x)
        return x


def _resolve(f) -> Callable:
    if callable(f):
        return f
    from . import funcs
    return funcs.get_function(f).fn


def bisect_invert(f, target: float, bracket: Bracket, tol: float = DEFAULT_TOL,
                  ledger: CostLedger | None = None) -> float:
    """Find a grid point x with |f(x) - target| <= tol by binary search.

    Needs f non-decreasing on the grid and the target inside [f(lo), f(hi)].
    Endpoint evaluations count as forward evals; each midpoint probe adds
    one forward eval and one comparison, and at most ceil(log2 n) + 1
    comparisons happen for an n-point grid.  Ordering violations seen along
    the way raise NotMonotone.
    """
    ledger = ledger if ledger is not None else CostLedger()
    fn = _resolve(f)
    lo, hi = 0, bracket.n_points - 1
    f_lo = fn(bracket.point(lo))
    f_hi = fn(bracket.point(hi))
    ledger.forward_evals += 2
    if abs(f_lo - target) <= tol:
        return bracket.point(lo)
    if abs(f_hi - target) <= tol:
        return bracket.point(hi)
    if f_lo > f_hi:
        raise NotMonotone(f"f(lo)={f_lo} > f(hi)={f_hi} on a non-decreasing bracket")
    if not f_lo <= target <= f_hi:
        raise NotBracketed(f"target {target} outside [{f_lo}, {f_hi}]")
    while hi - lo > 1:
        mid = (lo + hi) // 2
        f_mid = fn(bracket.point(mid))
        ledger.forward_evals += 1
        ledger.comparisons += 1
        if abs(f_mid - target) <= tol:
            return bracket.point(mid)
        if not f_lo <= f_mid <= f_hi:
            raise NotMonotone(
                f"f({bracket.point(mid)})={f_mid} leaves the bracket value range")
        if f_mid < target:
            lo, f_lo = mid, f_mid
        else:
            hi, f_hi = mid, f_mid
    raise NotFound(f"no grid point within {tol} of {target}")


def exhaustive_invert(f, target, domain: Iterable, tol: float = 0.0,
                      ledger: CostLedger | None = None):
    """Scan the domain in order; first input matching the target wins.

    The ledger's forward_evals equals the scan position of the answer, or
    the full domain size when nothing matches.
    """
    ledger = ledger if ledger is not None else CostLedger()
    fn = _resolve(f)
    for x in domain:
        ledger.forward_evals += 1
        if abs(fn(x) - target) <= tol:
            return x
    raise NotFound(f"no domain element maps within {tol} of {target}")


def probe_rank3(f, bracket: Bracket, samples: int | None = None) -> bool:
    """True iff f is non-decreasing across evenly spaced grid samples.

    Any inversion of order refutes the sorted-structure requirement that
    logarithmic inversion rests on; non-strict monotonicity passes.
    """
    if samples is None:
        samples = bracket.n_points
    if samples < 2:
        raise ValueError("monotonicity probe needs at least two samples")
    samples = min(samples, bracket.n_points)
    fn = _resolve(f)
    last_idx = bracket.n_points - 1
    previous = None
    for j in range(samples):
        idx = round(j * last_idx / (samples - 1))
        value = fn(bracket.point(idx))
        if previous is not None and value < previous:
            return False
        previous = value
    return True
