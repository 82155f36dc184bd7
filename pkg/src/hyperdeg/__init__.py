"""Counting, sampling and verifying simple r-uniform hypergraphs with a given degree sequence."""

from .configuration import (
    CellLayout,
    HypergraphView,
    LambdaPlusReport,
    Partition,
    classify_lambda_plus,
    edges_of,
    is_simple,
    loop_part_count,
    random_partition,
)
from .core import (
    CountResult,
    DegreeSequence,
    DivisibilityError,
    asymptotic_count,
    asymptotic_count_regular,
    configuration_multiplicity,
    falling_factorial,
    loop_cap_N,
    moment,
    part_containment_probability,
    partition_space_size,
)
from .mc import (
    EstimateReport,
    ExhaustedError,
    estimate_event_rates,
    estimate_p_simple,
    sample_simple_hypergraph,
)
from .oracle import (
    CapExceededError,
    ExactCensus,
    census,
    enumerate_partitions,
    enumerate_simple_hypergraphs,
    exact_ratio,
    switching_tally,
)
from .summation import (
    SummationProblem,
    SummationResult,
    evaluate_summation,
    p_simple_from_switching_model,
)
from .switching import (
    LegalityDiagnosis,
    SwitchingError,
    SwitchingTuple,
    apply_forward,
    apply_reverse,
    diagnose_forward,
    diagnose_reverse,
    enumerate_forward_candidates,
    enumerate_reverse_candidates,
    ratio_prediction,
)

__version__ = "0.1.0"
