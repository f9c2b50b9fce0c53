"""Small cuts cover: exact primal-dual solver, adversarial generator, verifiers."""

from .covering import (
    BruteForceCoreOracle,
    CoreOracle,
    Instance,
    Link,
    as_cost,
    cores_bruteforce,
    covers,
    covers_by_enumeration,
    enumeration_bound,
    is_minimal_cover,
    is_small_cut,
    link_crosses,
    violated_cuts,
)
from .errors import (
    BoundExceededError,
    ConstructionError,
    InfeasibleError,
    InvalidParameterError,
    SmallCutsError,
    VerificationError,
)
from .multigraph import Cut, MultiGraph, cut_degree, delta_edges, global_min_cut
from .oracle import (
    Check,
    GapResult,
    SweepRow,
    VerifierReport,
    brute_force_optimum,
    gap_experiment,
    gap_sweep,
    verify_cores_lemma,
    verify_feasibility_lemma,
)
from .serialize import (
    fraction_str,
    instance_from_text,
    instance_to_text,
    read_instance,
    to_dot,
    trace_to_obj,
    write_instance,
)
from .tightgen import (
    AnalyticCoreOracle,
    FamilySlices,
    GadgetParams,
    LabeledInstance,
    analytic_cores,
    analytic_initial_cores,
    detect_generated,
    expected_family_slices,
    generate_instance,
    glued_instance,
    infer_params,
    single_gadget,
)
from .wgmv import (
    DualSolution,
    IterationRecord,
    RunResult,
    TiePolicy,
    cost_of,
    dual_feasible,
    dual_objective,
    phase1,
    reverse_delete,
    run,
)

__version__ = "0.1.0"

__all__ = [
    "AnalyticCoreOracle",
    "BoundExceededError",
    "BruteForceCoreOracle",
    "Check",
    "ConstructionError",
    "CoreOracle",
    "Cut",
    "DualSolution",
    "FamilySlices",
    "GadgetParams",
    "GapResult",
    "InfeasibleError",
    "Instance",
    "InvalidParameterError",
    "IterationRecord",
    "LabeledInstance",
    "Link",
    "MultiGraph",
    "RunResult",
    "SmallCutsError",
    "SweepRow",
    "TiePolicy",
    "VerificationError",
    "VerifierReport",
    "analytic_cores",
    "analytic_initial_cores",
    "as_cost",
    "brute_force_optimum",
    "cores_bruteforce",
    "cost_of",
    "covers",
    "covers_by_enumeration",
    "cut_degree",
    "delta_edges",
    "detect_generated",
    "dual_feasible",
    "dual_objective",
    "enumeration_bound",
    "expected_family_slices",
    "fraction_str",
    "gap_experiment",
    "gap_sweep",
    "generate_instance",
    "global_min_cut",
    "glued_instance",
    "infer_params",
    "instance_from_text",
    "instance_to_text",
    "is_minimal_cover",
    "is_small_cut",
    "link_crosses",
    "phase1",
    "read_instance",
    "reverse_delete",
    "run",
    "single_gadget",
    "to_dot",
    "trace_to_obj",
    "verify_cores_lemma",
    "verify_feasibility_lemma",
    "violated_cuts",
    "write_instance",
]
