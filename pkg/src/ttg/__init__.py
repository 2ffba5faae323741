"""Support data, Rickard idempotents and extended supports over finite spectral spaces."""
from .errors import (
    ContractError, InputError, NotRepresentableError, ParseError, ResourceCapError,
    SemanticError, TheoremViolation, TTGError,
)
from .finspace import (
    FinSpace, MapPredicates, SpaceMap, closed_points, closure, generic_points, map_predicates,
    v_of, z_of,
)
from .report import Property, Report, Verdict
from .suppdata import (
    CompactObject, SupportDatum, ThickIdeal, check_axioms, faithful_via_closed_points,
    galois_check, is_comparative, is_faithful, is_realizing, is_tensorial, phi, sigma_of, theta,
    universal_eta,
)
from .rickard import (
    BigObject, IdempotentSpec, check_extension_axioms, eta_pullback_extension,
    extended_support, gamma_ideal_support, gamma_point_support, idempotent_identities_check,
    is_extension_faithful, l_ideal_support, tensor_idem, tensor_orbit,
)
from .explorer import (
    InstanceFamily, TheoremSuite, default_suite, enumerate_instances, run_family, run_suite,
    search_counterexamples,
)
from .dsl import WorkbenchFile, parse, render
from .emit import emit

__version__ = "0.1.0"
