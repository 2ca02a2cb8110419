"""Method-of-moments learning of uniform spherical Gaussian mixtures, with
pair-correlation-factor diagnostics and perturbation bounds."""

from .analysis import (
    BoundReport,
    SampleCount,
    beauzamy_bound,
    bombieri_norm,
    c_sigma_k,
    samples_cor1,
    samples_cor2,
    theorem1_bounds,
    wilkinson_demo,
)
from .mixture import Mixture, PcfReport, center, mixture_variance, pcf, variance_aware_pcf
from .moments import (
    HermiteCoeffTable,
    Kind,
    MomentVector,
    PowerSums,
    empirical_moments,
    exact_moments,
    hermite_coeffs,
    power_sums_from_moments,
)
from .newton_poly import (
    ParamPolynomial,
    RootSet,
    elementary_from_power_sums,
    extract_real_means,
    find_roots,
    match_roots,
    uniqueness_check,
)
from .sampling import SampleSet, center_samples, sample

__version__ = "0.1.0"
