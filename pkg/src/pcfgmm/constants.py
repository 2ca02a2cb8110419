"""Tunable constants shared across the package.

Every slack constant used to operationalise an asymptotic ("much less than")
bound lives here, so the amount of slack is auditable in one place.
"""

# Largest supported number of components. Moment inversion needs orders up to
# 2 * K_MAX and the bound formulas carry exp(0.5 (m / sigma)^2); beyond ~12 the
# double-precision pipeline has no significant digits left.
K_MAX = 12

# Median-of-means: number of groups is ceil(MOM_GROUP_FACTOR * ln(1 / delta)).
MOM_GROUP_FACTOR = 8.0

# Calibration constant linking target precision to sample count in tests:
# n = ceil(KAPPA * ln(1 / delta) / eps^2).
KAPPA = 1.0

# Aberth-Ehrlich root finder.
ABERTH_MAX_ITER = 200
ABERTH_TOL = 1e-14
ABERTH_ANGLE_OFFSET = 0.25

# Imaginary parts below IM_TOL * (1 + |Re|) are treated as numerical dust.
IM_TOL = 1e-6

# Slack constants for the "<<" bounds.
#   power-sum error:  |P^_m - P_m| <= C * eps * k * sigma^m * exp(0.5 (m/sigma)^2)
#   coefficient error: |e^_m - e_m| <= C * eps * k * (2 sigma)^m * exp(0.5 (m/sigma)^2)
POWER_SUM_BOUND_C = 3.0
COEFF_BOUND_C = 5.0

# Sample counts beyond this are reported as saturated (unsigned 64-bit range).
SAMPLE_COUNT_MAX = 2**64 - 1

# Sampling chunk size; each chunk gets its own RNG stream keyed by (seed, chunk).
SAMPLE_CHUNK = 1 << 20
