"""Sign consistency of influence graphs and diagnosis of minimal inconsistent cores."""

from .diagnose import (
    DiagnosisReport,
    Mode,
    approximate_all_mics,
    cycle_relation,
    diagnose_one,
    find_all_mics,
    find_one_mic,
    is_mic,
    merge_mics,
    mic_graph,
)
from .gen import GenParams, InvalidParams, generate
from .io import ParseError, export_asp_facts, export_dot, parse_instance, read_instance, write_instance
from .kernel import BACKEND
from .model import (
    ConflictingObservation,
    DuplicateEdge,
    Edge,
    Instance,
    InstanceError,
    Mic,
    Sign,
    UnknownVertexReference,
    ValidatedInstance,
    Witness,
    guess_inputs,
    validate,
)
from .reduce import ReductionReport, reduce_inputs
from .solver import (
    BudgetExceeded,
    ConsistencyResult,
    ConstraintScope,
    Limits,
    Status,
    check_consistency,
    check_restricted,
    verify_witness,
)

__version__ = "0.1.0"
