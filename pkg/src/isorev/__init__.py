"""isorev: construction and independent verification of surfaces that are
intrinsically surfaces of revolution.

Three construction regimes -- the closed-form twisted minimal family, numeric
constant-mean-curvature surfaces via frame integration, and zero-twist data
realized as honest surfaces of revolution -- plus a finite-difference
curvature oracle that referees all of them.
"""
from ._kernels import BACKEND as KERNEL_BACKEND
from .errors import (ConfigError, DegenerateImmersionError, IsorevError,
                     NonpositiveInitialRhoError, PlaneDegeneracyError,
                     RadicandError, SingularMetricError, UmbilicSampleError,
                     UnknownPresetError, UnwrapAmbiguityError)
from .geometry import (FormPair, Mesh, PrincipalData, SurfaceMap, TwistFit,
                       fit_twist, fundamental_forms, principal_data,
                       sample_mesh, shape_from_forms)
from .intrinsic import (IntrinsicData, MetricProfile, codazzi_residuals,
                        gauss_residual, lambda_pair, master_ode_residual)
from .minimal import (MinimalParams, WeierstrassData, bjorling_point,
                      frame_closed_form, minimal_point, period_vector,
                      preset, profile_curve, recover_AB, rho_minimal,
                      weierstrass_integrate)
from .cmc import (FrameState, OdeSolution, SmythForm, cylinder_point, hopf,
                  integrate_profile, integrate_surface, smyth_residual,
                  solve_rho)
from .revolve import (RevolveProfile, build_revolve, min_admissible_c,
                      revolve_point, untwisted_lambdas)

__version__ = "0.1.0"
