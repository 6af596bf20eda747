"""Thinned Tracy-Widom distributions F_beta(s, gamma) for beta = 1, 2, 4.

Three mutually validating evaluation routes (Airy-kernel Fredholm
determinant, Ablowitz-Segur Painleve-II integration, closed-form tail
expansions) plus a tridiagonal-ensemble Monte Carlo sampler.
"""

__version__ = "0.1.0"

from .errors import (DomainError, IllConditioningError, NumericError,
                     RangeError, ThinnedTWError)
from .fredholm import (CountingDistribution, DiscretizedKernel, ThinningParams,
                       build_kernel, counting_distribution, f2_determinant,
                       f2_determinant_sf, ln_f2_determinant,
                       resolvent_diagnostics)
from .painleve import (PainleveTrajectory, f1, f1_sf, f2, f2_sf, f4, f4_sf,
                       get_trajectory, solve_as, total_integral_check)
from .quadrature import QuadRule, gauss_legendre
from .sampler import (SampleBatch, empirical_vs_analytic, rescale_edge,
                      sample_batch, sample_spectrum, thin_and_max)
from .specfun import (AiryPair, LogGammaValue, airy, log_barnes_g_product,
                      log_gamma, zeta_prime_minus_one)
from .tails import (TailEvaluation, TailName, dlnf2_ds_expansion, ln_f1_left,
                    ln_f2_left, ln_f4_left, phase, right_tail,
                    right_tail_complement, transition_ln_f2, u_as_oscillatory,
                    weibull_limit)

__all__ = [
    "__version__",
    "ThinnedTWError", "DomainError", "RangeError", "NumericError",
    "IllConditioningError",
    "AiryPair", "LogGammaValue", "airy", "log_gamma", "log_barnes_g_product",
    "zeta_prime_minus_one",
    "QuadRule", "gauss_legendre",
    "ThinningParams", "DiscretizedKernel", "CountingDistribution",
    "build_kernel", "f2_determinant", "f2_determinant_sf", "ln_f2_determinant",
    "counting_distribution", "resolvent_diagnostics",
    "PainleveTrajectory", "solve_as", "get_trajectory", "f1", "f1_sf",
    "f2", "f2_sf", "f4", "f4_sf", "total_integral_check",
    "TailEvaluation", "TailName", "ln_f2_left", "ln_f1_left", "ln_f4_left",
    "right_tail", "right_tail_complement", "weibull_limit", "transition_ln_f2",
    "phase", "dlnf2_ds_expansion", "u_as_oscillatory",
    "SampleBatch", "sample_spectrum", "rescale_edge", "thin_and_max",
    "sample_batch", "empirical_vs_analytic",
]
