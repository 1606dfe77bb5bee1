"""Invertible Bloom lookup tables with an exact finite-length analysis toolkit.

The table itself lives in ``table``; ``census`` counts stopping matrices
exactly, ``bounds`` turns the counts into a union bound on the listing
failure probability, ``oracle`` is the exhaustive ground truth for tiny
parameters, and ``simulate`` estimates the same probability by Monte
Carlo.  ``cli`` exposes all of it as CSV-emitting subcommands.
"""

from ibltlab.backend import available_backends, backend_name
from ibltlab.bounds import BoundBreakdown, size2_asymptote, stopping_set_probability, union_bound
from ibltlab.census import (
    StoppingCensus,
    count_stopping_bruteforce,
    is_stopping_matrix,
    matrix_from_columns,
    pivots,
)
from ibltlab.errors import ResourceGuardError
from ibltlab.hashing import (
    ExplicitScheme,
    HashKind,
    HashParams,
    PartitionedUniformScheme,
    SsAvoidingScheme,
    make_partitioned_uniform,
    make_ss_avoiding,
)
from ibltlab.oracle import (
    StateMatrix,
    contains_stopping_submatrix,
    exact_failure_probability,
    iter_state_matrices,
    peel_fixpoint,
)
from ibltlab.simulate import (
    KeyModel,
    SimReport,
    TrialConfig,
    run_trials,
    sweep,
    wilson_interval,
)
from ibltlab.table import (
    Cell,
    GetResult,
    GetStatus,
    Iblt,
    ListingResult,
    ListingStatus,
)

__version__ = "0.1.0"

__all__ = [
    "BoundBreakdown",
    "Cell",
    "ExplicitScheme",
    "GetResult",
    "GetStatus",
    "HashKind",
    "HashParams",
    "Iblt",
    "KeyModel",
    "ListingResult",
    "ListingStatus",
    "PartitionedUniformScheme",
    "ResourceGuardError",
    "SimReport",
    "SsAvoidingScheme",
    "StateMatrix",
    "StoppingCensus",
    "TrialConfig",
    "available_backends",
    "backend_name",
    "contains_stopping_submatrix",
    "count_stopping_bruteforce",
    "exact_failure_probability",
    "is_stopping_matrix",
    "iter_state_matrices",
    "make_partitioned_uniform",
    "make_ss_avoiding",
    "matrix_from_columns",
    "peel_fixpoint",
    "pivots",
    "run_trials",
    "size2_asymptote",
    "stopping_set_probability",
    "sweep",
    "union_bound",
    "wilson_interval",
]
