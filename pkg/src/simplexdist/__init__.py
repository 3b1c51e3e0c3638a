"""Distribution families on the probability simplex, their shared
normalization constant, and the symmetric-polynomial machinery behind it,
with independent quadrature and Monte Carlo cross-checks throughout."""

from .analytics import (LogRatioStats, McEstimate, dirichlet_moments, logratio_stats,
                        mc_covariance, mc_estimate, sm_tilt_covariance, sm_tilt_mean,
                        sm_tilt_moment, sm_tilt_moment_continuation, tilt_family)
from .distributions import (G4B, Dirichlet, DirichletMixture, FamilyParams,
                            InverseSchlomilch, ParamVector, Schlomilch,
                            SchlomilchMixture, Superellipsoid, dual_transform,
                            g4b_decompose, gumbel_softmax_sample, log_pdf,
                            mixture_weights, params_from_dict, params_to_dict,
                            rng_stream, sample, superellipsoid_inverse_map,
                            superellipsoid_map)
from .errors import (BranchAmbiguityError, BudgetExceededError, DomainError,
                     MethodUnavailableError, NonIntegrableError, SimplexDistError,
                     UnsupportedRegimeError)
from .normalization import (NormalizationQuery, algebraic_recurrence_residual,
                            carlson_r, compositions, i_closed_sigma1, i_dual,
                            i_multinomial, i_quadrature, log_i_closed_sigma1,
                            log_i_gradient, log_i_hessian, log_i_multinomial)
from .quadrature import QuadratureResult, QuadratureSpec, integrate_01, integrate_simplex
from .specialfn import (digamma, gauss_2f1, gauss_2f1_finite, log_gamma,
                        log_multinomial, log_pochhammer, pochhammer, trigamma)
from .sympoly import (bspline_density, bspline_moment, deformed_h,
                      deformed_h_by_partitions, fractional_h, fractional_q,
                      partitions, power_sum, standard_h, symmetric_mean_q)

__version__ = "0.1.0"
