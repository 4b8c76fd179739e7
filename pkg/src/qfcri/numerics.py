"""Quadrature over the unit interval and a few special-function helpers."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import integrate

from .errors import DivergenceError, DomainError, ParameterError

# Breakpoints in t = -log(1 - p) on the right half of the unit interval.
_T_BREAKPOINTS = (2.0, 5.0, 10.0, 20.0, 40.0)


@dataclass(frozen=True)
class QuadratureConfig:
    """Tolerances for integrals over (0, 1).

    ``endpoint_clip`` trims the left end.  The right half is integrated in
    ``t = -log(1 - p)`` up to ``tail_cutoff``; the last half of that range
    is used as a divergence test.
    """

    rel_tol: float = 1e-9
    abs_tol: float = 1e-12
    max_subdivisions: int = 2000
    endpoint_clip: float = 1e-12
    tail_cutoff: float = 200.0

    def __post_init__(self):
        for name in ("rel_tol", "abs_tol", "endpoint_clip", "tail_cutoff"):
            if not getattr(self, name) > 0:
                raise ParameterError(f"{name} must be strictly positive")
        if self.max_subdivisions < 1:
            raise ParameterError("max_subdivisions must be >= 1")
        if not self.endpoint_clip < 1e-6:
            raise ParameterError("endpoint_clip must be below 1e-6")


DEFAULT_QUADRATURE = QuadratureConfig()


@dataclass(frozen=True)
class Integral:
    value: float
    abs_error: float
    evaluations: int


def _quad(g, a, b, cfg, points=()):
    pts = [p for p in points if a < p < b]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        value, err, info, *rest = integrate.quad(
            g,
            a,
            b,
            epsabs=cfg.abs_tol,
            epsrel=cfg.rel_tol,
            limit=cfg.max_subdivisions,
            points=pts or None,
            full_output=1,
        )
    ier = rest[0] if rest and isinstance(rest[0], int) else 0
    if not math.isfinite(value):
        raise DivergenceError("integral is not finite")
    if ier != 0 and err > 1e-6 * max(1.0, abs(value)):
        raise DivergenceError(
            f"quadrature did not converge (ier={ier}, value={value:.6g}, "
            f"error estimate={err:.3g}); the integral may diverge"
        )
    return float(value), float(err), int(info["neval"])


def integrate_unit(
    f: Callable[[float, float], float],
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
    lo: float = 0.0,
    hi: float = 1.0,
) -> Integral:
    """Integrate ``f(p, s)``, ``s = 1 - p``, over ``p`` in ``(lo, hi)``.

    ``s`` is passed separately so integrands can stay accurate as ``p -> 1``.
    ``(lo, 1/2)`` is integrated directly; ``(1/2, hi)`` after the change of
    variable ``t = -log(1 - p)``.  A non-finite integrand, a failed
    subdivision, or a right tail that does not die out raises
    :class:`DivergenceError`.
    """

    def checked(p, s):
        v = f(p, s)
        if not math.isfinite(v):
            raise DivergenceError(f"integrand is not finite at p={p!r}")
        return v

    total = err = 0.0
    neval = 0
    a = max(lo, cfg.endpoint_clip)
    b = min(hi, 0.5)
    if b > a:
        v, e, k = _quad(lambda p: checked(p, 1.0 - p), a, b, cfg)
        total, err, neval = v, e, k

    if hi > 0.5:
        t0 = -math.log1p(-max(lo, 0.5))
        t_end = cfg.tail_cutoff if hi >= 1.0 else min(cfg.tail_cutoff, -math.log1p(-hi))

        def g(t):
            s = math.exp(-t)
            return checked(-math.expm1(-t), s) * s

        t_mid = t_end / 2.0 if hi >= 1.0 else t_end
        if t_mid > t0:
            v, e, k = _quad(g, t0, t_mid, cfg, _T_BREAKPOINTS)
            total, err, neval = total + v, err + e, neval + k
        if hi >= 1.0:
            tail, e, k = _quad(g, max(t0, t_mid), t_end, cfg)
            total, err, neval = total + tail, err + e, neval + k
            if abs(tail) > 1e3 * max(cfg.abs_tol, cfg.rel_tol * abs(total)):
                raise DivergenceError(
                    f"integral does not converge as p -> 1 (tail mass {tail:.3g})"
                )
    return Integral(total, err, neval)


def gamma_fn(z: float) -> float:
    """Gamma function for real ``z > 0``."""
    if not z > 0:
        raise DomainError(f"gamma_fn needs z > 0, got {z!r}")
    return math.gamma(z)


def log_factorial(i: int | np.ndarray):
    from scipy.special import gammaln

    return gammaln(np.asarray(i, dtype=float) + 1.0)


def signed_power(w, k: float):
    """``sign(w) * |w| ** k``, real-valued for negative ``w``."""
    w = np.asarray(w, dtype=float)
    out = np.sign(w) * np.abs(w) ** k
    return out if out.ndim else float(out)


def check_alpha(alpha: float) -> float:
    """Validate a fractional order in ``(0, 1]``."""
    alpha = float(alpha)
    if not (0.0 < alpha <= 1.0):
        raise DomainError(f"fractional order must lie in (0, 1], got {alpha!r}")
    return alpha
