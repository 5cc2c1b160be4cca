"""projdyn: exact computation for endomorphisms of projective space.

Subpackages by layer: coeff (fields), mpoly (sparse polynomials), resultant
(Sylvester/Macaulay elimination), dynamics (endomorphisms, pushforwards,
improperness certificates), sympow (symmetric powers of P^1 maps, period
polynomials), cli (command line).
"""

from .coeff import DEFAULT_MODULAR_PRIME, GF, QQ, parse_field
from .errors import (DegeneracyError, InvalidInputError, NotDivisibleError,
                     ProjdynError, RingMismatchError, UnsupportedScopeError,
                     VerificationError)
from .mpoly import (Polynomial, Ring, default_aliases, determinant, divexact,
                    embed, equal_up_to_scalar, format_polynomial,
                    parse_polynomial, poly_gcd, primitive_part,
                    squarefree_part)
from .resultant import (discriminant_binary, gradient_resultant,
                        macaulay_critical_degree, macaulay_resultant,
                        map_resultant, resultant_degrees, sylvester_matrix,
                        sylvester_resultant)
from .dynamics import (Endomorphism, HypersurfaceForm, OrbitRecord,
                       PCFSearchReport, ProjectivePoint, binary_form_roots,
                       critical_points, dim_end, dim_forms,
                       endomorphism_from_strings, fixed_form,
                       generic_cert_degree, has_periodic_critical_point,
                       improper_certificate, jacobian, jacobian_polynomial,
                       periodic_points, pushforward, pushforward_iterated,
                       search_improper_witness)
from .sympow import (CriticalLocusReport, PeriodPolynomial, PointTuple,
                     SymForm, admissible_periods, bicritical_wanderer,
                     check_fhp, collision_locus_member,
                     critical_locus_structure_check, find_pcf_parameter,
                     hyperplane_of_point, period_polynomial,
                     periodic_critical_form, reciprocal_power_map,
                     symmetric_power, vieta)

__all__ = [
    "DEFAULT_MODULAR_PRIME", "GF", "QQ", "parse_field",
    "ProjdynError", "InvalidInputError", "RingMismatchError",
    "NotDivisibleError", "DegeneracyError", "UnsupportedScopeError",
    "VerificationError",
    "Ring", "Polynomial", "embed", "primitive_part", "equal_up_to_scalar",
    "divexact", "poly_gcd", "squarefree_part", "determinant",
    "parse_polynomial", "format_polynomial", "default_aliases",
    "sylvester_matrix", "sylvester_resultant", "macaulay_resultant",
    "map_resultant", "gradient_resultant", "discriminant_binary",
    "resultant_degrees", "macaulay_critical_degree",
    "ProjectivePoint", "OrbitRecord", "PCFSearchReport", "HypersurfaceForm",
    "Endomorphism", "endomorphism_from_strings", "jacobian",
    "jacobian_polynomial", "pushforward", "pushforward_iterated",
    "improper_certificate", "search_improper_witness", "fixed_form",
    "periodic_points", "binary_form_roots", "critical_points",
    "has_periodic_critical_point", "dim_forms", "dim_end",
    "generic_cert_degree",
    "PointTuple", "SymForm", "vieta", "symmetric_power",
    "hyperplane_of_point", "check_fhp", "collision_locus_member",
    "CriticalLocusReport", "critical_locus_structure_check",
    "admissible_periods", "periodic_critical_form", "PeriodPolynomial",
    "period_polynomial", "reciprocal_power_map", "find_pcf_parameter",
    "bicritical_wanderer",
]

__version__ = "0.1.0"
