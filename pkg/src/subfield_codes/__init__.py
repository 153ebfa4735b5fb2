"""Linear codes from trace functions on defining sets over finite fields."""

from .bounds import BoundViolation, OptimalityVerdict, classify, griesmer_gap, griesmer_sum
from .defining_sets import (DefiningSet, PreconditionError, Prediction, build,
                            compute_tau, delta_in_subfield, family1_build,
                            family1_special_build, family2_build, family3_build,
                            family4_build, parse_element, theta1_nonempty,
                            theta2_nonempty, theta3_nonempty, weight_enumerator)
from .engine import (CapExceeded, CodeSummary, GeneratorMatrix, codewords,
                     enumerate_code, generator_matrix)
from .field import (FieldCtx, FieldElement, FieldError, SubfieldHandle, base_symbol,
                    build_field, extension_field, relative_trace, subfield)
from .report import construct, reproduce_paper, sweep
from .structure import (StructuralReport, is_self_orthogonal, minimality,
                        set_algebra_self_orth, structural_report)
from .verify import VerificationReport, verify_prediction

__version__ = "0.1.0"

__all__ = [
    "BoundViolation", "CapExceeded", "CodeSummary", "DefiningSet", "FieldCtx",
    "FieldElement", "FieldError", "GeneratorMatrix", "OptimalityVerdict",
    "PreconditionError", "Prediction", "StructuralReport", "SubfieldHandle",
    "VerificationReport", "base_symbol", "build", "build_field", "classify",
    "codewords", "compute_tau", "construct", "delta_in_subfield", "enumerate_code",
    "extension_field", "family1_build", "family1_special_build", "family2_build",
    "family3_build", "family4_build", "generator_matrix", "griesmer_gap",
    "griesmer_sum", "is_self_orthogonal", "minimality", "parse_element",
    "relative_trace", "reproduce_paper", "set_algebra_self_orth",
    "structural_report", "subfield", "sweep", "theta1_nonempty", "theta2_nonempty",
    "theta3_nonempty", "verify_prediction", "weight_enumerator",
]
