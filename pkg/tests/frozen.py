"""Reference values frozen before the implementation was tested against them.

Sources are either hand-derived closed forms or the midpoint oracles in
``tests/oracles.py`` (which import nothing from the package).
"""

import math

EULER_GAMMA = 0.5772156649015329

# Govindarajulu special case vs uniform, by oracle; closed form (2/3)^(a+1) Gamma(a+1)
GOVSPECIAL_UNIFORM = {
    0.25: 0.5460180628961703,
    0.5: 0.48240083637217834,
    0.75: 0.45204883623900033,
    1.0: 0.4444444444444444,
}
# Printed table row for the same pair
GOVSPECIAL_UNIFORM_PRINTED = {0.25: 0.546, 0.5: 0.482, 0.75: 0.452, 1.0: 0.609}

EQUILIBRIUM_SELF_EXP2_A1 = (1.0 - math.log(2.0)) / 2.0  # oracle: 0.15342640972002722
EQUILIBRIUM_SELF_EXP2_A05 = 0.07340912571515282
EQUILIBRIUM_PAIR_UNIFORM_A1 = 0.5 - math.log(2.0)  # oracle: -0.19314718055994523

MLF_KL_EXP1_EXP2_A05 = math.pi / 2 - 0.5  # oracle: 1.0707963267948966
MLF_KL_EXP2_EXP1_A05 = 0.30365045915063793
MLF_QFCRE_UNIFORM_A05 = math.pi / 16  # oracle: 0.19634954084936207

# A(1) = exp(-1 - gamma); oracle: 0.561459483566885 and 0.20654940105499242
BOUND_ENTROPY_EXP1_A1 = math.exp(-EULER_GAMMA)
BOUND_ENTROPY_UNIFORM_A1 = math.exp(-1.0 - EULER_GAMMA)

# Printed linear-hazard form (denominator a(1+u)), a=1, b=2, against Exp(1)
LINEAR_HAZARD_PRINTED = {0.25: 0.03913976174203752, 0.5: 0.01842880565255263, 0.75: 0.008976895400354838}
LINEAR_HAZARD_TABLE = {0.25: 0.039, 0.5: 0.018, 0.75: 0.0089}

ESTIMATOR_HAND = 0.3190375754648034

# Example values for the simulation designs
SIM_TRUE = {
    ("powerpareto", 0.2): 1.3597,
    ("powerpareto", 0.5): 1.6367,
    ("govindarajulu", 0.75): 0.2915,
    ("govindarajulu", 0.85): 0.2866,
}

# Upper record, Exp(1), m=3, alpha=0.5: Gamma(1.5) + Gamma(2.5) + Gamma(3.5)/2
RECORD_EXP1_M3_A05 = math.gamma(1.5) + math.gamma(2.5) + math.gamma(3.5) / 2.0
