"""Distributions represented by their quantile functions.

Every model exposes the quantile function ``Q(u)``, the quantile density
``q(u) = dQ/du`` and the cumulative hazard ``-log(1 - F(x))`` (the latter in
closed form where the family allows it, otherwise by bracketed root finding
on ``Q``).  Internally the families evaluate at a pair ``(u, s)`` with
``s = 1 - u`` supplied separately, so that the upper tail can be reached
without cancellation: ``model.qf_upper(s)`` is ``Q(1 - s)`` for tiny ``s``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, ClassVar

import numpy as np
from scipy import optimize

from .errors import ConvergenceError, DomainError, ParameterError, ParseError, SingularityError
from .numerics import DEFAULT_QUADRATURE, QuadratureConfig, integrate_unit

__all__ = [
    "QuantileModel",
    "Uniform",
    "Exponential",
    "GovindarajuluSpecial",
    "Govindarajulu",
    "PowerPareto",
    "RescaledBeta",
    "LinearHazard",
    "ParetoI",
    "CoxPH",
    "Transform",
    "Transformed",
    "SampleBatch",
    "eval_qf",
    "eval_qdf",
    "compose_q3",
    "hazard_quantile",
    "mean_residual_quantile",
    "quantile_mean",
    "mean",
    "transform_model",
    "weibull",
    "sample",
    "parse_model",
]


def _check_unit(u):
    arr = np.asarray(u, dtype=float)
    if not np.all((arr > 0.0) & (arr < 1.0)):
        raise DomainError(f"probability level must lie in (0, 1), got {u!r}")
    return arr


def _positive(**kwargs):
    for name, value in kwargs.items():
        if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
            raise ParameterError(f"{name} must be a finite positive number, got {value!r}")


def _scalar(out):
    out = np.asarray(out, dtype=float)
    return float(out) if out.ndim == 0 else out


class QuantileModel:
    """Base class.  Subclasses implement ``_qf(u, s)`` and ``_qdf(u, s)``.

    Families with an explicit distribution function also override
    ``_cumhaz(x)``; otherwise it is found by inverting ``Q``.
    """

    family: ClassVar[str] = "abstract"

    # -- to override -------------------------------------------------
    def _qf(self, u, s):
        raise NotImplementedError

    def _qdf(self, u, s):
        raise NotImplementedError

    @property
    def support_low(self) -> float:
        return float(self._qf(0.0, 1.0))

    @property
    def support_high(self) -> float:
        with np.errstate(divide="ignore", invalid="ignore"):
            return float(self._qf(1.0, 0.0))

    def params(self) -> dict:
        return {}

    # -- public evaluation ----------------------------------------------
    def qf(self, u):
        u = np.asarray(u, dtype=float)
        return _scalar(self._qf(u, 1.0 - u))

    def qdf(self, u):
        u = np.asarray(u, dtype=float)
        return _scalar(self._qdf(u, 1.0 - u))

    def qf_upper(self, s):
        """``Q(1 - s)``, accurate for small survival probability ``s``."""
        s = np.asarray(s, dtype=float)
        return _scalar(self._qf(1.0 - s, s))

    def qdf_upper(self, s):
        s = np.asarray(s, dtype=float)
        return _scalar(self._qdf(1.0 - s, s))

    def cumhaz(self, x):
        """Cumulative hazard ``-log(1 - F(x))``: 0 below, inf above the support."""
        x = np.asarray(x, dtype=float)
        if x.ndim == 0:
            return float(self._cumhaz(float(x)))
        return np.array([self._cumhaz(float(v)) for v in x.ravel()]).reshape(x.shape)

    def cdf(self, x):
        h = np.asarray(self.cumhaz(x), dtype=float)
        return _scalar(-np.expm1(-h))

    def sf(self, x):
        h = np.asarray(self.cumhaz(x), dtype=float)
        return _scalar(np.exp(-h))

    def _gap(self, u, s):
        """Distance ``Q(1-) - Q(u)`` to a finite upper endpoint."""
        return self.support_high - float(self._qf(u, s))

    def _cumhaz_gap(self, d: float) -> float:
        """Cumulative hazard at distance ``d`` below a finite upper endpoint."""
        if d <= 0.0:
            return math.inf
        return self._cumhaz(self.support_high - d)

    # -- generic inversion -----------------------------------------------
    def _q_of_t(self, t: float) -> float:
        # Q at u = 1 - exp(-t), evaluated through whichever of u, s is exact.
        if t < 0.5:
            u = -math.expm1(-t)
            return float(self._qf(u, 1.0 - u))
        s = math.exp(-t)
        return float(self._qf(1.0 - s, s))

    def _cumhaz(self, x: float) -> float:
        lo, hi = self.support_low, self.support_high
        if x <= lo:
            return 0.0
        if x >= hi:
            return math.inf
        g = lambda t: self._q_of_t(t) - x  # noqa: E731
        t_lo = 1e-3
        while g(t_lo) > 0:
            t_lo *= 1e-3
            if t_lo < 1e-300:
                return 0.0
        t_hi = 1.0
        while g(t_hi) < 0:
            t_hi *= 2.0
            if t_hi > 700.0:
                return math.inf
        try:
            return float(optimize.brentq(g, t_lo, t_hi, xtol=1e-300, rtol=1e-15, maxiter=500))
        except (RuntimeError, ValueError) as exc:
            raise ConvergenceError(f"could not invert {self.spec()} at x={x!r}") from exc

    # -- misc -------------------------------------------------------------
    def spec(self) -> str:
        body = ",".join(f"{k}={v:g}" for k, v in self.params().items())
        return f"{self.family}:{body}" if body else self.family

    def __str__(self):
        return self.spec()


@dataclass(frozen=True)
class Uniform(QuantileModel):
    family: ClassVar[str] = "uniform"

    def _qf(self, u, s):
        return u

    def _qdf(self, u, s):
        return np.ones_like(np.asarray(u, dtype=float))

    @property
    def support_low(self):
        return 0.0

    @property
    def support_high(self):
        return 1.0

    def _cumhaz(self, x):
        if x <= 0.0:
            return 0.0
        if x >= 1.0:
            return math.inf
        return -math.log1p(-x)

    def _gap(self, u, s):
        return float(s)

    def _cumhaz_gap(self, d):
        return -math.log(d) if d > 0.0 else math.inf


@dataclass(frozen=True)
class Exponential(QuantileModel):
    rate: float = 1.0
    family: ClassVar[str] = "exponential"

    def __post_init__(self):
        _positive(rate=self.rate)

    def params(self):
        return {"lambda": self.rate}

    def _qf(self, u, s):
        with np.errstate(divide="ignore"):
            return -np.log(s) / self.rate

    def _qdf(self, u, s):
        with np.errstate(divide="ignore"):
            return 1.0 / (self.rate * s)

    @property
    def support_low(self):
        return 0.0

    @property
    def support_high(self):
        return math.inf

    def _cumhaz(self, x):
        return self.rate * max(x, 0.0)


@dataclass(frozen=True)
class GovindarajuluSpecial(QuantileModel):
    """``Q(u) = 2u - u**2``."""

    family: ClassVar[str] = "govspecial"

    def _qf(self, u, s):
        return np.asarray(u, dtype=float) * (1.0 + s)

    def _qdf(self, u, s):
        return 2.0 * np.asarray(s, dtype=float)

    @property
    def support_low(self):
        return 0.0

    @property
    def support_high(self):
        return 1.0

    def _cumhaz(self, x):
        if x <= 0.0:
            return 0.0
        if x >= 1.0:
            return math.inf
        return -0.5 * math.log1p(-x)

    def _gap(self, u, s):
        return float(s) ** 2

    def _cumhaz_gap(self, d):
        return -0.5 * math.log(d) if d > 0.0 else math.inf


@dataclass(frozen=True)
class Govindarajulu(QuantileModel):
    """``Q(u) = theta + sigma((beta + 1) u**beta - beta u**(beta + 1))``."""

    theta: float = 0.0
    sigma: float = 1.0
    beta: float = 1.0
    family: ClassVar[str] = "govindarajulu"

    def __post_init__(self):
        if not math.isfinite(self.theta):
            raise ParameterError("theta must be finite")
        _positive(sigma=self.sigma, beta=self.beta)

    def params(self):
        return {"theta": self.theta, "sigma": self.sigma, "beta": self.beta}

    def _qf(self, u, s):
        b = self.beta
        u = np.asarray(u, dtype=float)
        return self.theta + self.sigma * u**b * ((b + 1.0) - b * u)

    def _qdf(self, u, s):
        b = self.beta
        with np.errstate(divide="ignore"):
            return self.sigma * b * (b + 1.0) * np.asarray(u, dtype=float) ** (b - 1.0) * s

    def _gap(self, u, s):
        # 1 - u**b (1 + b s), without cancellation
        b = self.beta
        return -self.sigma * math.expm1(b * math.log1p(-s) + math.log1p(b * s))

    @property
    def support_low(self):
        return self.theta

    @property
    def support_high(self):
        return self.theta + self.sigma


@dataclass(frozen=True)
class PowerPareto(QuantileModel):
    """``Q(u) = C u**l1 (1 - u)**(-l2)``."""

    c: float = 1.0
    l1: float = 1.0
    l2: float = 1.0
    family: ClassVar[str] = "powerpareto"

    def __post_init__(self):
        _positive(c=self.c, l1=self.l1, l2=self.l2)

    def params(self):
        return {"c": self.c, "l1": self.l1, "l2": self.l2}

    def _qf(self, u, s):
        with np.errstate(divide="ignore"):
            return self.c * np.asarray(u, dtype=float) ** self.l1 * np.asarray(s, dtype=float) ** (-self.l2)

    def _qdf(self, u, s):
        with np.errstate(divide="ignore", invalid="ignore"):
            return self._qf(u, s) * (self.l1 / u + self.l2 / s)

    @property
    def support_low(self):
        return 0.0

    @property
    def support_high(self):
        return math.inf


@dataclass(frozen=True)
class RescaledBeta(QuantileModel):
    """``Q(u) = r(1 - (1 - u)**(1/c))``."""

    r: float = 1.0
    c: float = 1.0
    family: ClassVar[str] = "rescaledbeta"

    def __post_init__(self):
        _positive(r=self.r, c=self.c)

    def params(self):
        return {"r": self.r, "c": self.c}

    def _qf(self, u, s):
        return self.r * -np.expm1(np.log(s) / self.c)

    def _qdf(self, u, s):
        with np.errstate(divide="ignore"):
            return (self.r / self.c) * np.asarray(s, dtype=float) ** (1.0 / self.c - 1.0)

    @property
    def support_low(self):
        return 0.0

    @property
    def support_high(self):
        return self.r

    def _cumhaz(self, x):
        if x <= 0.0:
            return 0.0
        if x >= self.r:
            return math.inf
        return -self.c * math.log1p(-x / self.r)

    def _gap(self, u, s):
        return self.r * float(s) ** (1.0 / self.c)

    def _cumhaz_gap(self, d):
        return -self.c * math.log(d / self.r) if d > 0.0 else math.inf


@dataclass(frozen=True)
class LinearHazard(QuantileModel):
    """Linear hazard quantile model, ``H(u) = a + b u``.

    ``Q(u) = log((a + b u) / (a (1 - u))) / (a + b)``.
    """

    a: float = 1.0
    b: float = 1.0
    family: ClassVar[str] = "linearhazard"

    def __post_init__(self):
        _positive(a=self.a, b=self.b)

    def params(self):
        return {"a": self.a, "b": self.b}

    def _qf(self, u, s):
        a, b = self.a, self.b
        with np.errstate(divide="ignore"):
            return (np.log(a + b * np.asarray(u, dtype=float)) - math.log(a) - np.log(s)) / (a + b)

    def _qdf(self, u, s):
        with np.errstate(divide="ignore"):
            return 1.0 / (s * (self.a + self.b * np.asarray(u, dtype=float)))

    @property
    def support_low(self):
        return 0.0

    @property
    def support_high(self):
        return math.inf

    def _cumhaz(self, x):
        if x <= 0.0:
            return 0.0
        a, b = self.a, self.b
        k = a + b
        return k * x + math.log(a + b * math.exp(-k * x)) - math.log(k)


@dataclass(frozen=True)
class ParetoI(QuantileModel):
    """``Q(u) = (1 - u)**(-1/a)`` on ``[1, inf)``."""

    a: float = 1.0
    family: ClassVar[str] = "pareto"

    def __post_init__(self):
        _positive(a=self.a)

    def params(self):
        return {"a": self.a}

    def _qf(self, u, s):
        with np.errstate(divide="ignore"):
            return np.asarray(s, dtype=float) ** (-1.0 / self.a)

    def _qdf(self, u, s):
        with np.errstate(divide="ignore"):
            return np.asarray(s, dtype=float) ** (-1.0 / self.a - 1.0) / self.a

    @property
    def support_low(self):
        return 1.0

    @property
    def support_high(self):
        return math.inf

    def _cumhaz(self, x):
        return self.a * math.log(x) if x > 1.0 else 0.0


@dataclass(frozen=True)
class CoxPH(QuantileModel):
    """Proportional-hazards companion of ``base``: survival ``S_base**theta``."""

    base: QuantileModel = field(default_factory=Exponential)
    theta: float = 1.0
    family: ClassVar[str] = "coxph"

    def __post_init__(self):
        _positive(theta=self.theta)

    def params(self):
        return {"theta": self.theta}

    def spec(self):
        return f"coxph:theta={self.theta:g}|{self.base.spec()}"

    def _inner(self, s):
        # survival level of the base model: s_base = s**(1/theta)
        with np.errstate(divide="ignore"):
            sb = np.exp(np.log(s) / self.theta)
            ub = -np.expm1(np.log(s) / self.theta)
        return ub, sb

    def _qf(self, u, s):
        ub, sb = self._inner(s)
        return self.base._qf(ub, sb)

    def _qdf(self, u, s):
        ub, sb = self._inner(s)
        with np.errstate(divide="ignore", invalid="ignore"):
            return self.base._qdf(ub, sb) * sb / (self.theta * s)

    @property
    def support_low(self):
        return self.base.support_low

    @property
    def support_high(self):
        return self.base.support_high

    def _cumhaz(self, x):
        return self.theta * self.base._cumhaz(x)

    def _gap(self, u, s):
        ub, sb = self._inner(s)
        return self.base._gap(float(ub), float(sb))

    def _cumhaz_gap(self, d):
        return self.theta * self.base._cumhaz_gap(d)


@dataclass(frozen=True)
class Transform:
    """A strictly increasing map of the real line used by :class:`Transformed`.

    ``derivative`` and ``inverse`` may be ``None`` for custom maps; then the
    quantile density falls back to central differences and the cumulative
    hazard to root finding.
    """

    name: str
    forward: Callable = field(compare=False)
    inverse: Callable | None = field(default=None, compare=False)
    derivative: Callable | None = field(default=None, compare=False)
    args: tuple = ()

    @classmethod
    def identity(cls):
        f = lambda x: np.asarray(x, dtype=float)  # noqa: E731
        return cls("identity", f, f, lambda x: np.ones_like(np.asarray(x, dtype=float)))

    @classmethod
    def power(cls, k: float):
        _positive(k=k)
        return cls(
            "power",
            lambda x: np.power(x, k),
            lambda y: np.power(y, 1.0 / k),
            lambda x: k * np.power(x, k - 1.0),
            (k,),
        )

    @classmethod
    def log(cls):
        return cls("log", np.log, np.exp, lambda x: 1.0 / np.asarray(x, dtype=float))

    @classmethod
    def exp(cls):
        return cls("exp", np.exp, np.log, np.exp)

    @classmethod
    def affine(cls, c: float, d: float = 0.0):
        _positive(c=c)
        return cls(
            "affine",
            lambda x: c * np.asarray(x, dtype=float) + d,
            lambda y: (np.asarray(y, dtype=float) - d) / c,
            lambda x: np.full_like(np.asarray(x, dtype=float), c),
            (c, d),
        )

    def inverted(self) -> "Transform":
        if self.inverse is None:
            raise ParameterError(f"transform {self.name!r} has no known inverse")
        if self.name == "power":
            return Transform.power(1.0 / self.args[0])
        if self.name == "log":
            return Transform.exp()
        if self.name == "exp":
            return Transform.log()
        if self.name == "affine":
            c, d = self.args
            return Transform.affine(1.0 / c, -d / c)
        if self.name == "identity":
            return self
        return Transform(self.name + "^-1", self.inverse, self.forward, None)

    def describe(self) -> str:
        if self.name == "power":
            return f"power={self.args[0]:g}"
        if self.name == "affine":
            return f"scale={self.args[0]:g},shift={self.args[1]:g}"
        return self.name


@dataclass(frozen=True)
class Transformed(QuantileModel):
    """Model of ``tau(X)`` for increasing ``tau``: ``Q(u) = tau(Q_X(u))``."""

    base: QuantileModel = field(default_factory=Exponential)
    transform: Transform = field(default_factory=Transform.identity)
    fd_step: float = 1e-6
    family: ClassVar[str] = "transform"

    def spec(self):
        return f"transform:{self.transform.describe()}|{self.base.spec()}"

    def _qf(self, u, s):
        with np.errstate(divide="ignore", invalid="ignore"):
            return self.transform.forward(self.base._qf(u, s))

    def _qdf(self, u, s):
        if self.transform.derivative is not None:
            with np.errstate(divide="ignore", invalid="ignore"):
                x = self.base._qf(u, s)
                return self.transform.derivative(x) * self.base._qdf(u, s)
        h = self.fd_step
        u = np.asarray(u, dtype=float)
        s = np.asarray(s, dtype=float)
        return (self._qf(u + h, s - h) - self._qf(u - h, s + h)) / (2.0 * h)

    @property
    def support_low(self):
        with np.errstate(divide="ignore"):
            return float(self.transform.forward(self.base.support_low))

    @property
    def support_high(self):
        with np.errstate(over="ignore"):
            return float(self.transform.forward(self.base.support_high))

    def _cumhaz(self, x):
        if self.transform.inverse is None:
            return super()._cumhaz(x)
        lo, hi = self.support_low, self.support_high
        if x <= lo:
            return 0.0
        if x >= hi:
            return math.inf
        return self.base._cumhaz(float(self.transform.inverse(x)))

    def _gap(self, u, s):
        if self.transform.name == "affine":
            return self.transform.args[0] * self.base._gap(u, s)
        return super()._gap(u, s)

    def _cumhaz_gap(self, d):
        if self.transform.name == "affine":
            return self.base._cumhaz_gap(d / self.transform.args[0])
        return super()._cumhaz_gap(d)


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------


def eval_qf(model: QuantileModel, u):
    _check_unit(u)
    return model.qf(u)


def eval_qdf(model: QuantileModel, u):
    _check_unit(u)
    return model.qdf(u)


def compose_q3(x_model: QuantileModel, y_model: QuantileModel, p):
    """``Q3(p) = G(Q_X(p))``, the CDF of ``y_model`` at the ``p``-quantile of ``x_model``.

    Clamped to 0 (1) when ``Q_X(p)`` falls below (above) the support of ``y_model``.
    """
    _check_unit(p)
    if x_model == y_model:
        return _scalar(np.asarray(p, dtype=float))
    return y_model.cdf(x_model.qf(p))


def hazard_quantile(model: QuantileModel, u):
    """``H(u) = 1 / (q(u)(1 - u))``."""
    u = _check_unit(u)
    q = np.asarray(model.qdf(u), dtype=float)
    if np.any(q == 0.0):
        raise SingularityError("quantile density vanishes; hazard quantile is infinite")
    return _scalar(1.0 / (q * (1.0 - u)))


def mean_residual_quantile(
    model: QuantileModel, u: float, cfg: QuadratureConfig = DEFAULT_QUADRATURE
) -> float:
    """``M(u) = (1/(1-u)) * integral_u^1 (Q(p) - Q(u)) dp``."""
    _check_unit(u)
    qu = float(model.qf(u))
    res = integrate_unit(lambda p, s: float(model._qf(p, s)) - qu, cfg, lo=u)
    return res.value / (1.0 - u)


def quantile_mean(model: QuantileModel, cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    """``mu = integral_0^1 (1 - p) q(p) dp``, i.e. ``E[X] - Q(0+)``."""
    return integrate_unit(lambda p, s: s * float(model._qdf(p, s)), cfg).value


def mean(model: QuantileModel, cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    """``E[X] = integral_0^1 Q(p) dp``."""
    return integrate_unit(lambda p, s: float(model._qf(p, s)), cfg).value


def transform_model(model: QuantileModel, transform: Transform) -> Transformed:
    """Model of ``tau(X)``; rejects maps that are not increasing on the support."""
    grid = np.linspace(1e-6, 1.0 - 1e-6, 2001)
    with np.errstate(all="ignore"):
        vals = np.asarray(transform.forward(model.qf(grid)), dtype=float)
    if not np.all(np.isfinite(vals)):
        raise ParameterError(
            f"transform {transform.describe()} is undefined on the support of {model.spec()}"
        )
    if np.any(np.diff(vals) < 0) or not vals[-1] > vals[0]:
        raise ParameterError(
            f"transform {transform.describe()} is not increasing on the support of {model.spec()}"
        )
    return Transformed(model, transform)


def weibull(theta: float, b: float) -> Transformed:
    """``X**(1/b)`` for ``X ~ Exponential(theta)``."""
    return transform_model(Exponential(theta), Transform.power(1.0 / b))


# ---------------------------------------------------------------------------
# Samples
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class SampleBatch:
    """An immutable batch of finite observations, kept sorted."""

    values: np.ndarray

    def __post_init__(self):
        v = np.sort(np.asarray(self.values, dtype=float).ravel())
        if v.size < 1:
            raise DomainError("a sample batch needs at least one observation")
        if not np.all(np.isfinite(v)):
            raise DomainError("sample values must be finite")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def n(self) -> int:
        return int(self.values.size)

    def __len__(self):
        return self.n

    def __eq__(self, other):
        return isinstance(other, SampleBatch) and np.array_equal(self.values, other.values)

    def scaled(self, a: float) -> "SampleBatch":
        return SampleBatch(self.values * a)


def sample(model: QuantileModel, n: int, seed: int | np.random.SeedSequence) -> SampleBatch:
    """Inverse-transform sample of size ``n`` from a seeded generator."""
    if n < 1:
        raise DomainError("n must be >= 1")
    u = np.random.default_rng(seed).random(n)
    u = np.where(u == 0.0, np.nextafter(0.0, 1.0), u)
    return SampleBatch(model.qf(u))


# ---------------------------------------------------------------------------
# Parsing of ``family:key=value,...`` specs
# ---------------------------------------------------------------------------

_FAMILIES = {
    "uniform": (Uniform, {}),
    "exponential": (Exponential, {"lambda": "rate", "rate": "rate", "theta": "rate"}),
    "exp": (Exponential, {"lambda": "rate", "rate": "rate", "theta": "rate"}),
    "govspecial": (GovindarajuluSpecial, {}),
    "govindarajulu_special": (GovindarajuluSpecial, {}),
    "govindarajulu": (Govindarajulu, {"theta": "theta", "sigma": "sigma", "beta": "beta"}),
    "powerpareto": (PowerPareto, {"c": "c", "l1": "l1", "l2": "l2"}),
    "rescaledbeta": (RescaledBeta, {"r": "r", "c": "c"}),
    "linearhazard": (LinearHazard, {"a": "a", "b": "b"}),
    "pareto": (ParetoI, {"a": "a"}),
    "paretoi": (ParetoI, {"a": "a"}),
}


def _parse_kv(body: str, text: str) -> dict[str, float]:
    out: dict[str, float] = {}
    if not body.strip():
        return out
    for item in body.split(","):
        if "=" not in item:
            raise ParseError(f"expected key=value in {text!r}, got {item!r}")
        key, _, val = item.partition("=")
        try:
            out[key.strip().lower()] = float(val)
        except ValueError:
            raise ParseError(f"bad number {val!r} in {text!r}") from None
    return out


def parse_model(text: str) -> QuantileModel:
    """Parse ``family:key=value,...``.

    Wrappers take a base spec after ``|``::

        coxph:theta=2|exponential:lambda=1
        transform:power=0.5|exponential:lambda=1
        transform:log|pareto:a=3
        transform:scale=2,shift=1|uniform
        weibull:theta=1,b=2
    """
    text = text.strip()
    head, sep, rest = text.partition("|")
    family, _, body = head.partition(":")
    family = family.strip().lower()
    try:
        if family == "coxph":
            if not sep:
                raise ParseError(f"coxph needs a base model after '|': {text!r}")
            kv = _parse_kv(body, text)
            return CoxPH(parse_model(rest), kv.pop("theta", kv.pop("beta", 1.0)))
        if family == "transform":
            if not sep:
                raise ParseError(f"transform needs a base model after '|': {text!r}")
            base = parse_model(rest)
            body = body.strip().lower()
            if body in ("log", "exp", "identity"):
                tr = getattr(Transform, body)()
            else:
                kv = _parse_kv(body, text)
                if "power" in kv:
                    tr = Transform.power(kv["power"])
                elif "scale" in kv or "shift" in kv:
                    tr = Transform.affine(kv.get("scale", 1.0), kv.get("shift", 0.0))
                else:
                    raise ParseError(f"unknown transform in {text!r}")
            return transform_model(base, tr)
        if family == "weibull":
            kv = _parse_kv(body, text)
            return weibull(kv.get("theta", 1.0), kv.get("b", 1.0))
        if sep:
            raise ParseError(f"unexpected '|' in {text!r}")
        if family not in _FAMILIES:
            raise ParseError(f"unknown family {family!r} in {text!r}")
        cls, names = _FAMILIES[family]
        kv = _parse_kv(body, text)
        kwargs = {}
        for key, val in kv.items():
            if key not in names:
                raise ParseError(f"unknown parameter {key!r} for {family}")
            kwargs[names[key]] = val
        return cls(**kwargs)
    except ParameterError as exc:
        raise ParseError(f"invalid model {text!r}: {exc}") from exc
