"""Pure and complementary summing registers: cycle census, cycle joining,
de Bruijn generation and the classification of registers whose cycle
lengths all divide n + 1."""
from ._backend import BACKEND
from .cycle_census import CensusTable, census, csr_count, golomb_totals, psr_count, weight_census
from .debruijn import (
    UTable, build_main_cycle, count_utables, default_utable, generate,
    preferred_state, validate_utable, verify_debruijn,
)
from .errors import (
    CapExceeded, ConsistencyError, GenerationError, JoinError, OrderError, SumregError,
)
from .fsr import (
    CycleRep, FeedbackSpec, Kind, State, adjacency_graph, companion, conjugate,
    cycle_of, decompose, evaluate, join_cycles, next_state,
)
from .omega import enumerate_omega, in_omega, omega_witness

__version__ = "0.1.0"
