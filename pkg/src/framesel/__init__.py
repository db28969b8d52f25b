"""Norm-bounded greedy subset selection from equal-norm Parseval frames.

The package picks n of m frame vectors so that the selected rank-one sum
has spectral norm strictly below 1/sqrt(N) + (1 + 1/(sqrt(N) - 1)) * n/m,
i.e. n/m plus an O(1/sqrt(N)) term, and emits a certificate that replays
from scratch. A set-system construction shows the matching two-sided
confinement one might hope for is impossible.
"""

from .config import DEFAULT_TOLS, Tolerances
from .errors import (
    BarrierError,
    CertificateMismatchError,
    ConvergenceError,
    FrameError,
    SelectionError,
    ToleranceBreachError,
)
from .frames import (
    DiagonalSelector,
    FrameFamily,
    FrameValidationReport,
    compressed_gram,
    frame_from_dict,
    frame_to_dict,
    frame_to_projection,
    harmonic_frame,
    load_frame,
    load_projection,
    modulated_harmonic_frame,
    projection_from_dict,
    projection_to_dict,
    projection_to_frame,
    rescale_norms,
    save_frame,
    save_projection,
    validate_frame,
)
from .hermitian import (
    EigenSystem,
    chebyshev_sum_bound,
    composed_resolvent_inverse,
    eigh,
    hermitian_defect,
    jacobi_eigh,
    lapack_eigh,
    outer_product,
    outer_product_accumulate,
    resolvent_quadratic_form,
    resolvent_rank_one_downdate,
    sherman_morrison_resolvent_update,
)
from .katz import (
    DichotomyReport,
    KatzSystem,
    build_katz,
    closed_form_range,
    dichotomy_check,
    save_dichotomy_report,
    subset_sum_range,
)
from .selector import (
    BarrierSchedule,
    CertificateReport,
    SelectionCertificate,
    SelectionState,
    SelectionStep,
    averaging_identity_check,
    barrier_push_check,
    barrier_schedule,
    certificate_from_dict,
    certificate_to_dict,
    complement_lower_bound,
    eigenvalue_histogram,
    feasibility_value,
    initial_selection_state,
    load_certificate,
    save_certificate,
    select_subset,
    selection_step,
    upper_potential,
    verify_certificate,
)

__version__ = "0.1.0"

__all__ = [
    "BarrierError",
    "BarrierSchedule",
    "CertificateMismatchError",
    "CertificateReport",
    "ConvergenceError",
    "DEFAULT_TOLS",
    "DiagonalSelector",
    "DichotomyReport",
    "EigenSystem",
    "FrameError",
    "FrameFamily",
    "FrameValidationReport",
    "KatzSystem",
    "SelectionCertificate",
    "SelectionError",
    "SelectionState",
    "SelectionStep",
    "ToleranceBreachError",
    "Tolerances",
    "averaging_identity_check",
    "barrier_push_check",
    "barrier_schedule",
    "build_katz",
    "certificate_from_dict",
    "certificate_to_dict",
    "chebyshev_sum_bound",
    "closed_form_range",
    "complement_lower_bound",
    "composed_resolvent_inverse",
    "compressed_gram",
    "dichotomy_check",
    "eigenvalue_histogram",
    "eigh",
    "feasibility_value",
    "frame_from_dict",
    "frame_to_dict",
    "frame_to_projection",
    "harmonic_frame",
    "hermitian_defect",
    "initial_selection_state",
    "jacobi_eigh",
    "lapack_eigh",
    "load_certificate",
    "load_frame",
    "load_projection",
    "modulated_harmonic_frame",
    "outer_product",
    "outer_product_accumulate",
    "projection_from_dict",
    "projection_to_dict",
    "projection_to_frame",
    "rescale_norms",
    "resolvent_quadratic_form",
    "resolvent_rank_one_downdate",
    "save_certificate",
    "save_dichotomy_report",
    "save_frame",
    "save_projection",
    "select_subset",
    "selection_step",
    "sherman_morrison_resolvent_update",
    "subset_sum_range",
    "upper_potential",
    "validate_frame",
    "verify_certificate",
]
