"""Exact-arithmetic workbench for composition algebras, vector products,
and trivalent diagram rewriting.

Everything is computed over the rationals (or over polynomials in the loop
value delta); no floating point is used anywhere.
"""

from .scalars import DeltaPoly, NotDivisible, Rational, divide_linear
from .algebras import (
    ALGEBRA_NAMES,
    AlgebraElement,
    AlgebraMismatch,
    CompositionAlgebra,
    UnknownName,
    VerificationReport,
    build_base,
    build_named,
    build_zorn,
    cayley_dickson_double,
    check_composition,
    derivation_algebra,
    properties,
)
from .vpa import (
    DegenerateComplement,
    InvalidVPA,
    LMap,
    VectorProductAlgebra,
    adjoin_unit,
    clifford_check,
    imaginary_part,
    verify_vpa,
    vpa_derivations,
)
from .diagrams import (
    CanonicalDiagram,
    Diagram,
    LinearCombo,
    MalformedDiagram,
    canonicalize,
    combo_from_json,
    combo_to_json,
    diagram_from_json,
    diagram_to_json,
    random_diagram,
)
from .rewrite import (
    Irreducible,
    ProbeReport,
    Rule,
    RuleSet,
    apply_rule,
    confluence_probe,
    evaluate_closed,
    find_redexes,
    normalize,
)
from .concrete import (
    BoundaryMismatch,
    evaluate_concrete,
    gram_matrix,
    gram_rank,
    tensors_equal,
)
from .hurwitz import (
    CaseLeaf,
    CaseSplit,
    CaseTree,
    DerivationMismatch,
    classify,
    compose4,
    derivation_projector,
    derive_hurwitz,
    fund_relation,
    g2_rules,
    generic_rules,
    reference_diagrams,
    tree4,
)
from .triality import (
    IsotropicBasePoint,
    RhoAction,
    Triality,
    algebra_from_triality,
    spin_rep,
    triality_from_algebra,
    verify_clifford_rho,
    verify_triality,
)
from .sym import (
    HyperbolicSpace,
    NotSpecial,
    SpecialReport,
    System,
    build_system,
    extract_triality,
    verify_special,
    verify_system,
)

__all__ = [
    "DeltaPoly",
    "NotDivisible",
    "Rational",
    "divide_linear",
    "ALGEBRA_NAMES",
    "AlgebraElement",
    "AlgebraMismatch",
    "CompositionAlgebra",
    "UnknownName",
    "VerificationReport",
    "build_base",
    "build_named",
    "build_zorn",
    "cayley_dickson_double",
    "check_composition",
    "derivation_algebra",
    "properties",
    "CanonicalDiagram",
    "Diagram",
    "LinearCombo",
    "MalformedDiagram",
    "canonicalize",
    "combo_from_json",
    "combo_to_json",
    "diagram_from_json",
    "diagram_to_json",
    "random_diagram",
    "Irreducible",
    "ProbeReport",
    "Rule",
    "RuleSet",
    "apply_rule",
    "confluence_probe",
    "evaluate_closed",
    "find_redexes",
    "normalize",
    "BoundaryMismatch",
    "evaluate_concrete",
    "gram_matrix",
    "gram_rank",
    "tensors_equal",
    "CaseLeaf",
    "CaseSplit",
    "CaseTree",
    "DerivationMismatch",
    "classify",
    "compose4",
    "derivation_projector",
    "derive_hurwitz",
    "fund_relation",
    "g2_rules",
    "generic_rules",
    "reference_diagrams",
    "tree4",
    "DegenerateComplement",
    "InvalidVPA",
    "LMap",
    "VectorProductAlgebra",
    "adjoin_unit",
    "clifford_check",
    "imaginary_part",
    "verify_vpa",
    "vpa_derivations",
    "IsotropicBasePoint",
    "RhoAction",
    "Triality",
    "algebra_from_triality",
    "spin_rep",
    "triality_from_algebra",
    "verify_clifford_rho",
    "verify_triality",
    "HyperbolicSpace",
    "NotSpecial",
    "SpecialReport",
    "System",
    "build_system",
    "extract_triality",
    "verify_special",
    "verify_system",
]

__version__ = "0.1.0"
