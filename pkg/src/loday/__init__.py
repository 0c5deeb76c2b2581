"""Exact structure-constant computer algebra for super dialgebras and
Leibniz superalgebras: axiom checkers, bracket functors, matrix algebras
over dialgebras, weight decompositions, root-grading certificates, and
coordinatized models."""

from .core import (
    AlgebraError,
    BilinearMap,
    BilinearProduct,
    LeibnizSuperalgebra,
    SuperDialgebra,
    SuperSpace,
    ViolationReport,
    basis_vector,
    vector_from_mapping,
)
from .linalg import (
    LinearMap,
    SparseVector,
    Subspace,
    char_poly,
    intersect,
    kernel,
    rational_roots,
    row_reduce,
    subspace_sum,
)
from .checks import (
    check_ass,
    check_bar_unit,
    check_graded,
    check_leibniz,
    check_right_leibniz,
    check_superderivation,
    is_lie,
)
from .constructions import (
    Restriction,
    ad,
    associative_quotient,
    centre,
    derived_subalgebra,
    differential_dialgebra,
    ideal_closure,
    leibniz_from_lie_square,
    lie_quotient,
    lie_tensor_dialgebra,
    quotient_algebra,
    restrict,
    tensor_dialgebras,
    to_leibniz,
    to_right_leibniz,
)
from .matrix import (
    GlBasis,
    build_gl,
    build_sl,
    cartan_of_sl,
    check_steinberg_relations,
    matrix_dialgebra,
    sl_algebra,
    supertrace,
)
from .weights import (
    GradingCertificate,
    WeightDecomposition,
    check_delta_graded,
    weight_decomposition,
)
from .models import (
    ConditionReport,
    KappaModelData,
    SlModelData,
    build_canonical_model,
    build_kappa_model,
    build_sl_model,
    check_kappa_conditions,
    check_sl_model_conditions,
    circ_and_bracket,
    extract_coordinates,
    sl_model_scalar_copy,
    star_product,
    supertrace_form,
)

__version__ = "0.1.0"

__all__ = [
    "AlgebraError",
    "BilinearMap",
    "BilinearProduct",
    "ConditionReport",
    "GlBasis",
    "GradingCertificate",
    "KappaModelData",
    "LeibnizSuperalgebra",
    "LinearMap",
    "Restriction",
    "SlModelData",
    "SparseVector",
    "Subspace",
    "SuperDialgebra",
    "SuperSpace",
    "ViolationReport",
    "WeightDecomposition",
    "ad",
    "associative_quotient",
    "basis_vector",
    "build_canonical_model",
    "build_gl",
    "build_kappa_model",
    "build_sl",
    "build_sl_model",
    "cartan_of_sl",
    "centre",
    "char_poly",
    "check_ass",
    "check_bar_unit",
    "check_delta_graded",
    "check_graded",
    "check_kappa_conditions",
    "check_leibniz",
    "check_right_leibniz",
    "check_sl_model_conditions",
    "check_steinberg_relations",
    "check_superderivation",
    "circ_and_bracket",
    "derived_subalgebra",
    "differential_dialgebra",
    "extract_coordinates",
    "ideal_closure",
    "intersect",
    "is_lie",
    "kernel",
    "leibniz_from_lie_square",
    "lie_quotient",
    "lie_tensor_dialgebra",
    "matrix_dialgebra",
    "quotient_algebra",
    "rational_roots",
    "restrict",
    "row_reduce",
    "sl_algebra",
    "sl_model_scalar_copy",
    "star_product",
    "subspace_sum",
    "supertrace",
    "supertrace_form",
    "tensor_dialgebras",
    "to_leibniz",
    "to_right_leibniz",
    "vector_from_mapping",
    "weight_decomposition",
]
