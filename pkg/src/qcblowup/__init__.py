"""Exact classical and small quantum cohomology of blow-ups of projective
space along linear subspaces, with Groebner-based quotient rings and
three-point Gromov-Witten extraction."""

from .errors import (
    BudgetError,
    CheckFailure,
    ParseError,
    StructuralError,
    UsageError,
)
from .geometry import (
    BLOWUP,
    BLOWUP_TO_BUNDLE,
    BUNDLE,
    BUNDLE_TO_BLOWUP,
    EXCEPTIONAL_LINE,
    FIBER_LINE,
    ChernVector,
    CurveClass,
    GeometryParams,
    Presentation,
    anticanonical_class,
    change_vars,
    chern_coefficients,
    classical_presentation,
    classical_relations,
    curve_dual,
    derive_params,
    fano_positivity_check,
    integrate,
    moduli_dimension_identities,
    oracle_integrate,
    pair_divisor_curve,
    pairing_matrix,
    segre_integral_oracle,
    variables_for,
    verify_classical_geometry,
    virtual_dimension,
)
from .groebner import (
    GroebnerBasis,
    Ideal,
    QuotientRing,
    buchberger,
    ideal_equal,
    normal_form,
    spolynomial,
    staircase_basis,
)
from .poly import (
    GREVLEX,
    GRLEX,
    LEX,
    MonomialOrder,
    Polynomial,
    Scalar,
    VariableSet,
    blowup_variables,
    bundle_variables,
    monomial_compare,
)
from .quantum import (
    GWQuery,
    GWTable,
    QuantumPresentation,
    basis_corrections,
    class_representative,
    contribution_by_class,
    decompose_contributions,
    gw_invariant,
    quantum_presentation,
    quantum_product,
    quantum_relations,
    verify_gw_identities,
    verify_quantum_presentation,
    verify_s3_symmetry,
)
from .report import CheckEntry, CheckReport

__version__ = "0.1.0"

__all__ = [
    "BLOWUP",
    "BLOWUP_TO_BUNDLE",
    "BUNDLE",
    "BUNDLE_TO_BLOWUP",
    "BudgetError",
    "CheckEntry",
    "CheckFailure",
    "CheckReport",
    "ChernVector",
    "CurveClass",
    "EXCEPTIONAL_LINE",
    "FIBER_LINE",
    "GREVLEX",
    "GRLEX",
    "GWQuery",
    "GWTable",
    "GeometryParams",
    "GroebnerBasis",
    "Ideal",
    "LEX",
    "MonomialOrder",
    "ParseError",
    "Polynomial",
    "Presentation",
    "QuantumPresentation",
    "QuotientRing",
    "Scalar",
    "StructuralError",
    "UsageError",
    "VariableSet",
    "anticanonical_class",
    "basis_corrections",
    "blowup_variables",
    "buchberger",
    "bundle_variables",
    "change_vars",
    "chern_coefficients",
    "class_representative",
    "classical_presentation",
    "classical_relations",
    "contribution_by_class",
    "curve_dual",
    "decompose_contributions",
    "derive_params",
    "fano_positivity_check",
    "gw_invariant",
    "ideal_equal",
    "integrate",
    "moduli_dimension_identities",
    "monomial_compare",
    "normal_form",
    "oracle_integrate",
    "pair_divisor_curve",
    "pairing_matrix",
    "quantum_presentation",
    "quantum_product",
    "quantum_relations",
    "segre_integral_oracle",
    "spolynomial",
    "staircase_basis",
    "variables_for",
    "verify_classical_geometry",
    "verify_gw_identities",
    "verify_quantum_presentation",
    "verify_s3_symmetry",
    "virtual_dimension",
]
