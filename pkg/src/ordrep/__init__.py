"""Exact representability checks for ordered spaces with polyhedral data.

A calibrated ordered space here is ``R^d`` with a finitely generated pointed
cone and a list of polyhedral seminorms ``p(x) = max_i |<a_i, x>|``.  All
arithmetic is rational and every decision comes with a certificate that can
be checked by plain evaluation.
"""

from .cone import PolyCone, Witnessed, contains, dual_cone, is_pointed, same_cone
from .criteria import (ConsistencyError, CriterionReport, DecompositionError, GKResult, StateCertificate,
                       check_full, check_state_cover, find_state, grosberg_krein, krein_decompose,
                       semi_negative, semi_positive)
from .exactla import ContractError, rat, vec
from .extend import (AdditivityResult, BNNResult, ExtensionProblem, HypothesisError,
                     additivity_extension_witness, bnn_check, bnn_construct, norm_additivity_check,
                     subspace_norm, verify_extension, verify_violation)
from .instance import (Instance, InputError, generate_instance, load_fixture, load_instance, parse_instance,
                       parse_space, serialize_instance, serialize_space)
from .lp import LPOutcome, LPProblem, solve, verify_certificate
from .represent import (FiniteStateSpace, RepresentationReport, build_representation, realize_state,
                        state_vertices, verify_representation)
from .space import (CalibratedSpace, NotPointedError, NotSeparatingError, PolyhedralSeminorm, Quotient,
                    Subspace, eval_seminorm, functional_norm, gauge, is_increasing, is_positive,
                    order_seminorm, order_unit_check, quotient, saturate, sup_seminorm)
from .suite import SuiteReport, run_suite

__version__ = "0.1.0"

__all__ = [
    "PolyCone",
    "Witnessed",
    "contains",
    "dual_cone",
    "is_pointed",
    "same_cone",
    "ConsistencyError",
    "CriterionReport",
    "DecompositionError",
    "GKResult",
    "StateCertificate",
    "check_full",
    "check_state_cover",
    "find_state",
    "grosberg_krein",
    "krein_decompose",
    "semi_negative",
    "semi_positive",
    "ContractError",
    "rat",
    "vec",
    "AdditivityResult",
    "BNNResult",
    "ExtensionProblem",
    "HypothesisError",
    "additivity_extension_witness",
    "bnn_check",
    "bnn_construct",
    "norm_additivity_check",
    "subspace_norm",
    "verify_extension",
    "verify_violation",
    "Instance",
    "InputError",
    "generate_instance",
    "load_fixture",
    "load_instance",
    "parse_instance",
    "parse_space",
    "serialize_instance",
    "serialize_space",
    "LPOutcome",
    "LPProblem",
    "solve",
    "verify_certificate",
    "FiniteStateSpace",
    "RepresentationReport",
    "build_representation",
    "realize_state",
    "state_vertices",
    "verify_representation",
    "CalibratedSpace",
    "NotPointedError",
    "NotSeparatingError",
    "PolyhedralSeminorm",
    "Quotient",
    "Subspace",
    "eval_seminorm",
    "functional_norm",
    "gauge",
    "is_increasing",
    "is_positive",
    "order_seminorm",
    "order_unit_check",
    "quotient",
    "saturate",
    "sup_seminorm",
    "SuiteReport",
    "run_suite",
]
