"""Reference function catalog: truncated-series sine, analytic arcsine,
the 3x+1 step, and the Blum-Blum-Shub generator.

Angles are degrees at every public boundary (the tables are degree-indexed);
radians are internal only.  All arithmetic is 64-bit float even where a
declared interface width says 32-bit: the accuracy claims survive and table
comparisons round to 4 decimals anyway.
"""

from __future__ import annotations

import inspect
import math
import sys
from dataclasses import dataclass
from typing import Callable, NamedTuple

from .core import RankProfile, RankitError, UnknownFunction


class InvalidTermCount(RankitError):
    """A series was requested with no terms at all."""


class OutOfRange(RankitError):
    """Input lies outside the function's domain."""


class InvalidModulus(RankitError):
    """Generator modulus factors fail the 3 (mod 4) prime requirement."""


# Degrees are the external angle unit everywhere; radians stay internal.
AngleDegrees = float


# --- truncated-series sine -------------------------------------------------

def _sin_series(x: float, terms: int) -> float:
    # Loop recurrence: each pass adds one odd-power term, then advances the
    # running power by -x^2 and the factorial by the next two factors.
    res, pw, fact = 0.0, x, 1.0
    for i in range(terms):
        res += pw / fact
        pw *= -x * x
        fact *= (2 * (i + 1)) * (2 * (i + 1) + 1)
    return res


def _cos_series(x: float, terms: int) -> float:
    res, pw, fact = 0.0, 1.0, 1.0
    for i in range(terms):
        res += pw / fact
        pw *= -x * x
        fact *= (2 * i + 1) * (2 * i + 2)
    return res


def taylor_sine(degrees: AngleDegrees, terms: int = 5) -> float:
    """Alternating odd series for sine on a degree input.

    Five terms hold the first quadrant to better than 1e-4 (the remainder is
    bounded by (pi/2)^11/11!), which is all the 4-decimal tables need.
    """
    if terms < 1:
        raise InvalidTermCount("series needs at least one term")
    return _sin_series(math.radians(degrees), terms)


REFERENCE_TERMS = 20


def reference_sine(degrees: AngleDegrees) -> float:
    """20-term series; exact to double precision on the first quadrant."""
    return _sin_series(math.radians(degrees), REFERENCE_TERMS)


_NEWTON_TOL = 1e-12
_NEWTON_MAX_ITER = 50


def arcsine(y: float) -> AngleDegrees:
    """Analytic inverse of sine, in degrees on [-90, 90].

    Newton iteration on the reference series, seeded at y*90 degrees.  This
    is a genuine inverse-function evaluation: no table and no search over a
    grid is involved.
    """
    if not -1.0 <= y <= 1.0:
        # Forward evaluation can round a unit value a few ulps past 1.
        if abs(y) <= 1.0 + 1e-12:
            y = 1.0 if y > 0 else -1.0
        else:
            raise OutOfRange(f"arcsine input {y} outside [-1, 1]")
    if y == 1.0:
        return 90.0
    if y == -1.0:
        return -90.0
    theta = y * math.pi / 2  # sin(t) >= 2t/pi on the quadrant, so f(seed) >= 0
    for _ in range(_NEWTON_MAX_ITER):
        f = _sin_series(theta, REFERENCE_TERMS) - y
        if abs(f) <= _NEWTON_TOL:
            return math.degrees(theta)
        theta -= f / _cos_series(theta, REFERENCE_TERMS)
    raise RankitError(f"arcsine iteration did not converge for y={y}")


# --- 3x+1 ------------------------------------------------------------------

def collatz_step(n: int) -> int:
    """One 3x+1 iteration: halve when even, triple-and-add-one when odd."""
    if n < 1:
        raise ValueError("3x+1 step is defined for positive integers")
    return n // 2 if n % 2 == 0 else 3 * n + 1


class Trajectory(NamedTuple):
    values: tuple
    truncated: bool


def collatz_trajectory(n: int, max_steps: int) -> Trajectory:
    """Orbit of n up to and including the first 1.

    Nobody has proved the iteration always reaches 1, so the orbit is cut at
    ``max_steps`` transitions and flagged truncated instead of looping on.
    """
    if n < 1 or max_steps < 1:
        raise ValueError("need n >= 1 and max_steps >= 1")
    values = [n]
    while values[-1] != 1:
        if len(values) > max_steps:
            return Trajectory(tuple(values), True)
        values.append(collatz_step(values[-1]))
    return Trajectory(tuple(values), False)


# --- Blum-Blum-Shub ----------------------------------------------------------

def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class BbsState:
    """Generator state x under modulus M = p*q with p, q = 3 (mod 4)."""

    modulus: int
    state: int


def make_bbs(p: int, q: int, seed: int) -> BbsState:
    """Validate the modulus factors and seed, return the initial state."""
    for factor in (p, q):
        if not _is_prime(factor) or factor % 4 != 3:
            raise InvalidModulus(f"{factor} is not a prime congruent to 3 mod 4")
    if p == q:
        raise InvalidModulus("factors must differ")
    modulus = p * q
    if not 1 <= seed < modulus:
        raise ValueError(f"seed {seed} outside [1, {modulus})")
    if math.gcd(seed, modulus) != 1:
        raise ValueError(f"seed {seed} shares a factor with the modulus")
    return BbsState(modulus=modulus, state=seed)


def bbs_next(s: BbsState) -> BbsState:
    """One squaring step; the emitted bit is the new state's low bit."""
    return BbsState(modulus=s.modulus, state=(s.state * s.state) % s.modulus)


def bbs_bit(s: BbsState) -> int:
    return s.state & 1


def bbs_bits(s: BbsState, count: int) -> tuple[tuple[int, ...], BbsState]:
    """Emit ``count`` bits, returning them with the final state."""
    bits = []
    for _ in range(count):
        s = bbs_next(s)
        bits.append(bbs_bit(s))
    return tuple(bits), s


BBS_DEMO_P, BBS_DEMO_Q = 7, 11
BBS_PREFIX_BITS = 8


def bbs_prefix(seed: int, p: int = BBS_DEMO_P, q: int = BBS_DEMO_Q,
               nbits: int = BBS_PREFIX_BITS) -> int:
    """First ``nbits`` output bits from ``seed``, packed MSB-first.

    This is the scalar view of the generator used for inversion
    experiments: recovering the seed from it has no better generic route
    than scanning the seed space.
    """
    modulus = p * q
    if not 1 <= seed < modulus:
        raise ValueError(f"seed {seed} outside [1, {modulus})")
    value, x = 0, seed
    for _ in range(nbits):
        x = (x * x) % modulus
        value = (value << 1) | (x & 1)
    return value


def bbs_valid_seeds(p: int = BBS_DEMO_P, q: int = BBS_DEMO_Q) -> tuple[int, ...]:
    modulus = p * q
    return tuple(s for s in range(1, modulus) if math.gcd(s, modulus) == 1)


# --- catalog ------------------------------------------------------------------

@dataclass(frozen=True)
class FunctionDescriptor:
    """A cataloged function: callable, declared ranks, default grid, sizes.

    ``description_text`` is the canonical source text whose UTF-8 byte
    length measures the description size.  ``mapping_entries`` maps domain
    parameters to the entry count of the full input-output table;
    ``entries_only`` marks functions whose mapping size is reported as an
    entry count rather than bits.  ``entry_bits`` annotates the declared
    per-entry interface width.
    """

    fid: str
    fn: Callable
    profile: RankProfile
    lo: float
    hi: float
    step: float
    description_text: str
    mapping_entries: Callable[[dict], int]
    entry_bits: Callable[[dict], int]
    entries_only: bool = False


_CATALOG: dict[str, FunctionDescriptor] = {}


def register(descriptor: FunctionDescriptor) -> None:
    _CATALOG[descriptor.fid] = descriptor


def _module_source(module) -> str:
    return inspect.getsource(module)


def _build_catalog() -> None:
    from . import tsp  # deferred: tsp pulls in the tables machinery

    funcs_text = _module_source(sys.modules[__name__])
    tsp_text = _module_source(tsp)
    gtd_fn, gtd_tours = tsp.gtd_index_function()

    register(FunctionDescriptor(
        fid="sine",
        fn=taylor_sine,
        profile=RankProfile(rank1=True, rank2=True, rank3=True, rank4=True),
        lo=0.0, hi=90.0, step=1.0,
        description_text=funcs_text,
        mapping_entries=lambda p: 2 ** int(p.get("input_bits", 32)),
        entry_bits=lambda p: int(p.get("input_bits", 32)) + int(p.get("output_bits", 32)),
    ))
    register(FunctionDescriptor(
        fid="arcsine",
        fn=arcsine,
        profile=RankProfile(rank1=True, rank2=True, rank3=True, rank4=True),
        lo=-1.0, hi=1.0, step=0.01,
        description_text=funcs_text,
        mapping_entries=lambda p: 2 ** int(p.get("input_bits", 32)),
        entry_bits=lambda p: int(p.get("input_bits", 32)) + int(p.get("output_bits", 32)),
    ))
    register(FunctionDescriptor(
        fid="collatz",
        fn=collatz_step,
        profile=RankProfile(rank1=True, rank2=True, rank3=False, rank4=False),
        lo=1, hi=2 ** 16, step=1,
        description_text=funcs_text,
        mapping_entries=lambda p: 2 ** int(p.get("input_bits", 16)),
        entry_bits=lambda p: int(p.get("input_bits", 16)) + int(p.get("output_bits", 18)),
    ))
    register(FunctionDescriptor(
        fid="bbs",
        fn=bbs_prefix,
        profile=RankProfile(rank1=True, rank2=True, rank3=False, rank4=False),
        lo=1, hi=BBS_DEMO_P * BBS_DEMO_Q - 1, step=1,
        description_text=funcs_text,
        mapping_entries=lambda p: len(bbs_valid_seeds()),
        entry_bits=lambda p: 7 + BBS_PREFIX_BITS,
    ))
    register(FunctionDescriptor(
        fid="gtd",
        fn=gtd_fn,
        profile=RankProfile(rank1=True, rank2=True, rank3=False, rank4=False),
        lo=0, hi=len(gtd_tours) - 1, step=1,
        description_text=tsp_text,
        mapping_entries=lambda p: math.factorial(int(p.get("n", 5))),
        entry_bits=lambda p: _gtd_entry_bits(int(p.get("n", 5))),
        entries_only=True,
    ))


def _gtd_entry_bits(n: int) -> int:
    city_bits = max(1, math.ceil(math.log2(n))) if n > 1 else 1
    return (n + 1) * city_bits + 32


def get_function(fid: str) -> FunctionDescriptor:
    """Resolve a string identifier to its catalog descriptor."""
    if not _CATALOG:
        _build_catalog()
    try:
        return _CATALOG[fid]
    except KeyError:
        raise UnknownFunction(f"no catalog entry named {fid!r}") from None


def function_ids() -> tuple[str, ...]:
    if not _CATALOG:
        _build_catalog()
    return tuple(_CATALOG)
