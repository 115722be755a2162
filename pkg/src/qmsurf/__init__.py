"""Genus-two curves and abelian surfaces with quaternionic multiplication."""

from .exactfield import (DEFAULT_PRECISION, DeltaMismatch, Poly, QuadExt,
                         poly_discriminant, rational_reconstruct,
                         recognize_qf, resultant)
from .quatalg import (QuatAlgebra, QuatOrder, Quaternion,
                      class_number, enumerate_positive_norm,
                      pi_principal_count, ramified_primes)
from .pollab import (HomologyRep, PolarizationError, PrincipalCandidate,
                     check_alternating, frobenius_type, is_polarization,
                     pfaffian, principal_search, q_polarizability,
                     rebase_period_matrix, rosati_image, twist_form)
from .endodetect import (AnalyticAction, DetectionError, ScanResult,
                         analytic_to_homology, is_integral_endomorphism,
                         rosati, scan_order)
from .igusa import (IgusaError, InvariantTuple, absolute_invariants_numeric,
                    conjugate_curve, igusa_clebsch, igusa_clebsch_numeric,
                    same_invariants)
from .richelot import (DegenerateGroupingError, QuadraticGrouping,
                       RichelotError, RichelotImage, enumerate_groupings,
                       richelot_step, verify_isogeny_periods)
from . import hypnum

__version__ = "0.1.0"
