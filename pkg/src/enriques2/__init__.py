"""Characteristic-two Enriques surface equations: exact construction,
canonicalization, resolution and classification over GF(2^k)."""

from .field import FieldSpec, FieldElement, GF, NonUniqueRoot
from .poly import Polynomial, parse_poly, NotDivisible, ParseError
from .geometry import (DivisorClass, CS, CX, CT, K_Y, D_COVER, intersect,
                       chi_line_bundle, chi_cover_total, check_multihomogeneous,
                       OddPairing)
from .cover import (DoubleCover, cover_from_text, localize, make_squarefree,
                    singular_points, lipman_conditions, smooth_along,
                    is_quasielliptic, split_fiber)
from .resolution import (resolve_point, blowup_normalize, classify,
                         euler_contribution, r_intersection_type, DualGraph,
                         ResolutionLog, NotSingular, Nonisolated, StepLimit)
from .families import (FamilySpec, parse_family, build_family, degenerate,
                       GeneralFormZ2, GeneralFormA2, canonicalize_z2,
                       canonicalize_alpha2, impose_z2_e6_conditions,
                       normalize_unit, verify_family, euler_audit,
                       random_family, sweep, InadmissibleParameter,
                       WouldBeNonisolated, ObstructedReduction, RootUnavailable,
                       AuditMismatch)

__version__ = "0.1.0"
