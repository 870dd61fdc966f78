"""ringlab: exhaustive structure analysis for small finite rings."""

from .errors import (BudgetExhausted, CapExceeded, ExprError, InvalidSpec,
                     NoSolution, NotCommutative, NotTFineBase,
                     OrderCapExceeded, RinglabError, ZeroMatrix,
                     ZeroNotEligible)
from .specs import (Cyclic, Dihedral, DirectProductGroup, EndAbelian,
                    ExplicitTable, GaloisField, GroupRing, GroupSpec, Matrix,
                    Product, Quotient, RingSpec, UpperTriangular, ZMod,
                    parse_group_spec, parse_ring_spec, render, render_group,
                    spec_order)
from .rings import (DEFAULT_MAX_ORDER, FiniteRing, IdealHandle, end_abelian,
                    ideal_closure, quotient, realize)
from .groups import GroupTable, realize_group

__version__ = "0.1.0"

from .classify import (NIResult, PolyPeriodicity, PowerProfile,
                       StructuralSubsets, UnitGroupNilpotency,
                       idempotent_power, is_NI, is_weakly_2_primal,
                       nil_additively_closed, nilpotence_index_bound,
                       poly_element_periodic, power_data, power_profile,
                       structural_subsets, unit_group_is_nilpotent)
from .decompose import (KINDS, PREDICATE_KINDS, Certificate,
                        ExhaustiveFailure, PredicateResult,
                        VerificationResult, certificate_from_json,
                        certificate_to_json, decompose, failure_to_json,
                        ring_predicate, verify_certificate)
from .matrix_tfine import (MatrixDecomposition, MatrixVerification,
                           handle_to_mat, mat_to_handle, matrix_nilpotency_index,
                           matrix_torsion_order, one_as_two_units,
                           similarity_normalize, tfine_decompose_matrix,
                           verify_matrix_decomposition)
from .groupring import (GroupRingView, NilIdealReport, augmentation,
                        augmentation_ideal, delta_nil_check, groupring_scan,
                        groupring_view)
from .formatting import parse_element, pretty
from .report import classification_report, report_to_markdown
from .catalog import DEFAULT_CATALOG, catalog_specs
from .suites import CheckResult, run_suite

__all__ = [
    "BudgetExhausted", "CapExceeded", "ExprError", "InvalidSpec",
    "NoSolution", "NotCommutative", "NotTFineBase", "OrderCapExceeded",
    "RinglabError", "ZeroMatrix", "ZeroNotEligible",
    "Cyclic", "Dihedral", "DirectProductGroup", "EndAbelian",
    "ExplicitTable", "GaloisField", "GroupRing", "GroupSpec", "Matrix",
    "Product", "Quotient", "RingSpec", "UpperTriangular", "ZMod",
    "parse_group_spec", "parse_ring_spec", "render", "render_group",
    "spec_order",
    "DEFAULT_MAX_ORDER", "FiniteRing", "IdealHandle", "end_abelian",
    "ideal_closure", "quotient", "realize",
    "GroupTable", "realize_group",
    "NIResult", "PolyPeriodicity", "PowerProfile", "StructuralSubsets",
    "UnitGroupNilpotency", "idempotent_power", "is_NI", "is_weakly_2_primal",
    "nil_additively_closed", "nilpotence_index_bound",
    "poly_element_periodic", "power_data", "power_profile",
    "structural_subsets", "unit_group_is_nilpotent",
    "KINDS", "PREDICATE_KINDS", "Certificate", "ExhaustiveFailure",
    "PredicateResult", "VerificationResult", "certificate_from_json",
    "certificate_to_json", "decompose", "failure_to_json", "ring_predicate",
    "verify_certificate",
    "MatrixDecomposition", "MatrixVerification", "handle_to_mat",
    "mat_to_handle", "matrix_nilpotency_index", "matrix_torsion_order",
    "one_as_two_units", "similarity_normalize", "tfine_decompose_matrix",
    "verify_matrix_decomposition",
    "GroupRingView", "NilIdealReport", "augmentation", "augmentation_ideal",
    "delta_nil_check", "groupring_scan", "groupring_view",
    "parse_element", "pretty",
    "classification_report", "report_to_markdown",
    "DEFAULT_CATALOG", "catalog_specs",
    "CheckResult", "run_suite",
    "__version__",
]
