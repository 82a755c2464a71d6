"""rankit: rank computable functions by their inversion capabilities.

Forward evaluation, table lookup, binary-search inversion, and analytic
inversion are graded as ranks 1-4; functions with any efficient inversion
route are category C1, the rest C2.  Cost and size ledgers make the
log2(n)-versus-n and description-versus-mapping gaps measurable.
"""

from .core import (
    Category,
    CostLedger,
    NotFound,
    RankProfile,
    RankitError,
    SizeLedger,
    UnknownFunction,
    Verdict,
    ZeroMapping,
    classify,
    complexity_verdict,
)
from .funcs import (
    BbsState,
    FunctionDescriptor,
    Trajectory,
    arcsine,
    bbs_bits,
    bbs_next,
    collatz_step,
    collatz_trajectory,
    get_function,
    make_bbs,
    taylor_sine,
)
from .inversion import Bracket, bisect_invert, exhaustive_invert, probe_rank3
from .tables import MappingTable, OracleNotebook, build_table, lookup_by_output
from .tsp import DistanceMatrix, FIVE_CITIES, shortest_tour, sorted_mapping, tour_distance

__version__ = "0.1.0"
