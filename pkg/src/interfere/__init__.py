"""Multiparticle interference in linear interferometers.

Transition probabilities for bosons, fermions, and distinguishable
particles from permanents and determinants, a generating-function
engine, and machine checks of the permanent/determinant identities that
tie the three statistics together.
"""

from .combinat import (
    bounded_subvectors,
    enumerate_occupations,
    enumerate_subsets,
    factorial_product,
    subtract_indicator,
)
from .errors import (
    BudgetExceededError,
    DimensionMismatchError,
    DimensionTooSmallError,
    IndexOutOfRangeError,
    InterferenceError,
    NotSquareError,
    NotUnitaryError,
    OccupationOverflowError,
    SingularDenominatorError,
    SizeLimitError,
    UnsupportedPatternError,
)
from .genfunc import gf_closed_form, gf_minor_expansion, gf_truncated_series
from .identities import (
    IdentityReport,
    Naturalness,
    NaturalnessLabel,
    check_classical_convolution,
    check_corollary1,
    check_lemma2,
    check_muir,
    check_single_mode_bunching,
    check_sum_difference_system,
    check_theorem1,
    check_theorem2,
    check_theorem2_dilation,
    check_three_particle,
    check_two_particle,
    classify_transition,
    sweep_lemma2,
    sweep_signed_convolution,
)
from .matrixcore import (
    UnitaryMatrix,
    balanced_beamsplitter,
    classical_matrix,
    fourier_matrix,
    haar_random_unitary,
    load_matrix,
    matrix_from_json,
    matrix_to_json,
    minor_keep,
    permutation_matrix,
    save_matrix,
    submatrix_by_occupation,
    unitary_dilation,
    validate_unitary,
)
from .permdet import (
    MatrixFunctionValue,
    determinant,
    occupation_permanent,
    permanent,
    permanent_naive,
    relative_error,
)
from .transition import (
    ProbabilityCache,
    TransitionTriple,
    boson_prob,
    classical_prob,
    fermion_prob,
    output_distribution,
    transition_triple,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetExceededError",
    "DimensionMismatchError",
    "DimensionTooSmallError",
    "IdentityReport",
    "IndexOutOfRangeError",
    "InterferenceError",
    "MatrixFunctionValue",
    "Naturalness",
    "NaturalnessLabel",
    "NotSquareError",
    "NotUnitaryError",
    "OccupationOverflowError",
    "ProbabilityCache",
    "SingularDenominatorError",
    "SizeLimitError",
    "TransitionTriple",
    "UnitaryMatrix",
    "UnsupportedPatternError",
    "balanced_beamsplitter",
    "boson_prob",
    "bounded_subvectors",
    "check_classical_convolution",
    "check_corollary1",
    "check_lemma2",
    "check_muir",
    "check_single_mode_bunching",
    "check_sum_difference_system",
    "check_theorem1",
    "check_theorem2",
    "check_theorem2_dilation",
    "check_three_particle",
    "check_two_particle",
    "classical_matrix",
    "classical_prob",
    "classify_transition",
    "determinant",
    "enumerate_occupations",
    "enumerate_subsets",
    "factorial_product",
    "fermion_prob",
    "fourier_matrix",
    "gf_closed_form",
    "gf_minor_expansion",
    "gf_truncated_series",
    "haar_random_unitary",
    "load_matrix",
    "matrix_from_json",
    "matrix_to_json",
    "minor_keep",
    "occupation_permanent",
    "output_distribution",
    "permanent",
    "permanent_naive",
    "permutation_matrix",
    "relative_error",
    "save_matrix",
    "submatrix_by_occupation",
    "subtract_indicator",
    "sweep_lemma2",
    "sweep_signed_convolution",
    "transition_triple",
    "unitary_dilation",
    "validate_unitary",
]
