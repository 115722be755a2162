from .curves import (BranchPoints, CurveError, CurveModel, dump_curve,
                     find_roots, load_curve)
from .periods import (HomologyBasis, PeriodError, PeriodMatrix,
                      build_period_matrix, integrate_period,
                      small_period_matrix, validate_riemann)
from .rosenhain import (DecomposableSurfaceError, RosenhainCurve,
                        RosenhainError, rosenhain_reconstruct)
from .theta import (ALL_CHARS, EVEN_CHARS, ODD_CHARS, ThetaError,
                    even_theta_constants, parity, theta_constant,
                    theta_gradient)
