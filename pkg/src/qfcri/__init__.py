"""Quantile-based fractional cumulative residual inaccuracy.

Analytic measures over quantile-function models, order-statistic plug-in
estimators, a Monte-Carlo bias/MSE harness, chaotic-map and market-regime
studies.
"""

from .errors import (
    ConvergenceError,
    DegeneracyError,
    DivergenceError,
    DomainError,
    InfiniteTermError,
    ParameterError,
    ParseError,
    QfcriError,
    SingularityError,
)
from .estimation import (
    empirical_cdf,
    empirical_qdf,
    empirical_qf,
    estimate_qcri,
    estimate_qfcre,
    estimate_qfcri,
    estimate_qfcrir,
)
from .measures import (
    MeasureResult,
    mlf_kl,
    mlf_qfcre,
    mlf_qfcri,
    qcri,
    qfcre,
    qfcri,
    qfcri_equilibrium_pair,
    qfcri_equilibrium_self,
    qfcri_phm,
    qfcri_upper_record,
    qfcrir,
    series_system_qfcri,
)
from .models import (
    CoxPH,
    Exponential,
    Govindarajulu,
    GovindarajuluSpecial,
    LinearHazard,
    ParetoI,
    PowerPareto,
    QuantileModel,
    RescaledBeta,
    SampleBatch,
    Transform,
    Transformed,
    Uniform,
    parse_model,
    sample,
    weibull,
)
from .numerics import DEFAULT_QUADRATURE, QuadratureConfig

__version__ = "0.1.0"
