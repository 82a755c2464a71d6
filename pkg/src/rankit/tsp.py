"""Travelling-salesman worked example: distance matrices, closed tours, the
path-length function, brute-force enumeration, and the output-sorted
mapping table.

Distances are exact integers (km); a tour is a tuple of city indices whose
first element repeats at the end.  Closed tours from a fixed start city 0
are canonical, giving (n-1)! distinct rows; the n! figure over all starts
is reported alongside, and rows starting elsewhere are rotation-normalised
for comparison.  No heuristics on purpose: brute force is the only
available inversion route here, which is what the cost ledgers demonstrate.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

from .core import CostLedger, RankitError
from .tables import InfeasibleTable, MappingTable, RANK2_MAX_ENTRIES

Tour = tuple  # city indices, closed: first == last


class DimensionMismatch(RankitError):
    """Tour references a city outside the matrix."""


class TooLarge(RankitError):
    """Instance too big for desk-scale exhaustive enumeration."""


BRUTE_FORCE_MAX_CITIES = 12


@dataclass(frozen=True)
class DistanceMatrix:
    """Symmetric n x n distance matrix with a zero diagonal."""

    n: int
    d: tuple

    @classmethod
    def from_lists(cls, rows: Sequence[Sequence[int]],
                   allow_asymmetric: bool = False) -> "DistanceMatrix":
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("distance matrix must be square")
        for i in range(n):
            if rows[i][i] != 0:
                raise ValueError(f"diagonal entry d[{i}][{i}] must be 0")
            for j in range(n):
                if rows[i][j] < 0:
                    raise ValueError("distances must be non-negative")
                if not allow_asymmetric and rows[i][j] != rows[j][i]:
                    raise ValueError(f"asymmetric entry at ({i}, {j}); "
                                     "pass allow_asymmetric to accept")
        return cls(n=n, d=tuple(tuple(int(v) for v in r) for r in rows))

    @classmethod
    def from_json(cls, text: str, allow_asymmetric: bool = False) -> "DistanceMatrix":
        obj = json.loads(text)
        rows = obj["d"]
        if obj.get("n") is not None and obj["n"] != len(rows):
            raise ValueError("declared n does not match matrix size")
        return cls.from_lists(rows, allow_asymmetric=allow_asymmetric)

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "d": [list(r) for r in self.d]}, indent=2)

    @classmethod
    def from_csv(cls, text: str, allow_asymmetric: bool = False) -> "DistanceMatrix":
        rows = [[int(v) for v in row] for row in csv.reader(io.StringIO(text)) if row]
        return cls.from_lists(rows, allow_asymmetric=allow_asymmetric)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerows(self.d)
        return buf.getvalue()


# Five-city demo instance used throughout the reports.
FIVE_CITIES = DistanceMatrix.from_lists([
    [0, 170, 150, 600, 330],
    [170, 0, 190, 500, 200],
    [150, 190, 0, 490, 230],
    [600, 500, 490, 0, 280],
    [330, 200, 230, 280, 0],
])


def validate_tour(m: DistanceMatrix, tour: Tour) -> None:
    if len(tour) < 2 or tour[0] != tour[-1]:
        raise ValueError(f"tour {tour} is not closed")
    interior = tour[:-1]
    if max(interior) >= m.n:
        raise DimensionMismatch(f"tour city {max(interior)} exceeds {m.n - 1}")
    if min(interior) < 0:
        raise DimensionMismatch(f"negative city index in {tour}")
    if sorted(interior) != list(range(m.n)):
        raise ValueError(f"tour {tour} does not visit each of {m.n} cities once")


def tour_distance(m: DistanceMatrix, tour: Tour,
                  ledger: CostLedger | None = None) -> int:
    """Sum of consecutive-leg distances around the closed tour."""
    validate_tour(m, tour)
    if ledger is not None:
        ledger.forward_evals += 1
    return sum(m.d[tour[i]][tour[i + 1]] for i in range(len(tour) - 1))


def enumerate_tours(m: DistanceMatrix, start: int = 0) -> Iterator[Tour]:
    """All closed tours from ``start``, lexicographic in the interior."""
    if not 0 <= start < m.n:
        raise ValueError(f"start city {start} outside [0, {m.n})")
    rest = [c for c in range(m.n) if c != start]
    for perm in itertools.permutations(rest):
        yield (start,) + perm + (start,)


def enumerate_all_tours(m: DistanceMatrix) -> Iterator[Tour]:
    """All n! closed tours over every start city, lexicographic."""
    for perm in itertools.permutations(range(m.n)):
        yield perm + (perm[0],)


def rotate_to_start(tour: Tour, city: int = 0) -> Tour:
    """Rotate a closed tour so it begins (and ends) at ``city``."""
    interior = tour[:-1]
    if city not in interior:
        raise ValueError(f"city {city} not on tour {tour}")
    i = interior.index(city)
    return interior[i:] + interior[:i] + (city,)


def reverse_tour(tour: Tour) -> Tour:
    return tuple(reversed(tour))


def sorted_mapping(m: DistanceMatrix,
                   ledger: CostLedger | None = None) -> MappingTable:
    """Output-sorted (tour, distance) table over all start-0 tours."""
    count = math.factorial(m.n - 1) if m.n > 1 else 1
    if count > RANK2_MAX_ENTRIES:
        raise InfeasibleTable(f"{count} tours exceed the table ceiling")
    pairs = [(t, tour_distance(m, t, ledger)) for t in enumerate_tours(m, 0)]
    return MappingTable.from_pairs(pairs)


def shortest_tour(m: DistanceMatrix,
                  ledger: CostLedger | None = None) -> tuple[Tour, int]:
    """Exhaustive minimum over start-0 tours, ties broken lexicographically.

    Exactly (n-1)! evaluations land on the ledger; there is no shortcut.
    """
    if m.n > BRUTE_FORCE_MAX_CITIES:
        raise TooLarge(f"{m.n} cities need {math.factorial(m.n - 1)} evaluations")
    best_tour, best_distance = None, None
    for t in enumerate_tours(m, 0):
        dist = tour_distance(m, t, ledger)
        if best_distance is None or dist < best_distance:
            best_tour, best_distance = t, dist
    return best_tour, best_distance


def mapping_to_csv(table: MappingTable) -> str:
    """CSV rows tour,distance in ascending distance order."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["tour", "distance"])
    for tour, dist in table.outputs_sorted():
        writer.writerow([",".join(str(c) for c in tour), dist])
    return buf.getvalue()


@lru_cache(maxsize=1)
def _demo_tours() -> tuple:
    return tuple(enumerate_all_tours(FIVE_CITIES))


def gtd_index_function():
    """Scalar view of the path-length function on the demo instance.

    Maps the index of a tour (in the canonical all-starts enumeration) to
    its length, so the generic probing and inversion machinery can treat
    the mapping as an ordinary integer function.  Returns the callable and
    the tour list it indexes.
    """
    tours = _demo_tours()

    def gtd(index) -> int:
        i = int(index)
        if not 0 <= i < len(tours):
            raise ValueError(f"tour index {index} outside [0, {len(tours)})")
        return tour_distance(FIVE_CITIES, tours[i])

    return gtd, tours
