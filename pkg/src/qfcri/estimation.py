"""Nonparametric plug-in estimators built on order statistics.

The estimator of the inaccuracy of ``X`` against ``Y`` is

    sum_{i=1}^{n-1} (1 - i/n) [-log(1 - G_hat(X_(i)))]**alpha (X_(i) - X_(i-1))

with ``G_hat`` the empirical CDF of the ``Y`` batch and ``X_(0)`` an origin
(0 for lifetime data).  Two CDF conventions are offered: ``"standard"``
(``#{y <= x}/m``) and ``"plotting_position"`` (``#{y <= x}/(m+1)``, default),
which keeps every log term finite.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DegeneracyError, DomainError, InfiniteTermError
from .models import SampleBatch
from .numerics import check_alpha

STANDARD = "standard"
PLOTTING_POSITION = "plotting_position"
CONVENTIONS = (STANDARD, PLOTTING_POSITION)

__all__ = [
    "SampleBatch",
    "STANDARD",
    "PLOTTING_POSITION",
    "as_batch",
    "empirical_qf",
    "empirical_qdf",
    "empirical_cdf",
    "estimate_qfcri",
    "estimate_qfcre",
    "estimate_qcri",
    "estimate_qfcrir",
]


def as_batch(data) -> SampleBatch:
    return data if isinstance(data, SampleBatch) else SampleBatch(np.asarray(data, dtype=float))


def _check_convention(convention):
    if convention not in CONVENTIONS:
        raise ValueError(f"convention must be one of {CONVENTIONS}, got {convention!r}")


def _cell(n: int, u: float) -> int:
    if not 0.0 < u < 1.0:
        raise DomainError(f"probability level must lie in (0, 1), got {u!r}")
    # k with (k-1)/n < u <= k/n
    return min(max(math.ceil(n * u), 1), n)


def _padded(batch: SampleBatch, origin: float) -> np.ndarray:
    return np.concatenate(([origin], batch.values))


def empirical_qf(data, u: float, mode: str = "step", origin: float = 0.0) -> float:
    """Parzen's empirical quantile function.

    ``step``: ``X_(k)`` on ``((k-1)/n, k/n]``.  ``smoothed``: linear
    interpolation between ``X_(k-1)`` and ``X_(k)`` on that cell, with
    ``X_(0) = origin``.
    """
    b = as_batch(data)
    k = _cell(b.n, u)
    if mode == "step":
        return float(b.values[k - 1])
    if mode != "smoothed":
        raise ValueError(f"mode must be 'step' or 'smoothed', got {mode!r}")
    x = _padded(b, origin)
    n = b.n
    return float(n * (k / n - u) * x[k - 1] + n * (u - (k - 1) / n) * x[k])


def empirical_qdf(data, u: float, origin: float = 0.0) -> float:
    """``n (X_(k) - X_(k-1))`` on the ``k``-th cell, ``X_(0) = origin``."""
    b = as_batch(data)
    k = _cell(b.n, u)
    x = _padded(b, origin)
    return float(b.n * (x[k] - x[k - 1]))


def empirical_cdf(data, x, convention: str = PLOTTING_POSITION):
    """``#{values <= x}`` divided by ``n`` or, for plotting positions, ``n + 1``."""
    _check_convention(convention)
    b = as_batch(data)
    counts = np.searchsorted(b.values, np.asarray(x, dtype=float), side="right")
    denom = b.n + 1 if convention == PLOTTING_POSITION else b.n
    out = counts / denom
    return float(out) if np.ndim(out) == 0 else out


def _resolve_origin(b: SampleBatch, origin) -> float:
    if isinstance(origin, str):
        if origin != "min":
            raise ValueError(f"origin must be a number or 'min', got {origin!r}")
        return float(b.values[0])
    origin = float(origin)
    if b.values[0] < origin:
        if origin == 0.0:
            raise DomainError(
                "sample has negative values; shift by the minimum before estimating"
            )
        raise DomainError(f"sample has values below the origin {origin:g}")
    return origin


def _spacings(b: SampleBatch, origin) -> np.ndarray:
    # X_(i) - X_(i-1) for i = 1..n-1
    x = _padded(b, _resolve_origin(b, origin))
    return np.diff(x)[:-1]


def _weighted_sum(weights, log_terms, spacings, alpha) -> float:
    active = (spacings != 0.0) & (log_terms > 0.0) & (weights > 0.0)
    if not np.any(active):
        return 0.0
    if np.any(np.isinf(log_terms[active])):
        raise InfiniteTermError(
            "empirical CDF of the assigned sample reaches 1 below the largest "
            "observation; use the plotting_position convention"
        )
    terms = weights[active] * log_terms[active] ** alpha * spacings[active]
    return math.fsum(terms.tolist())


def estimate_qfcri(
    x,
    y,
    alpha: float,
    convention: str = PLOTTING_POSITION,
    origin: float | str = 0.0,
) -> float:
    """Plug-in estimate of the inaccuracy of sample ``x`` against sample ``y``.

    ``origin`` is ``X_(0)``: 0 for non-negative lifetime data, a known lower
    support endpoint, or ``"min"`` for the sample minimum.
    """
    alpha = check_alpha(alpha)
    _check_convention(convention)
    bx, by = as_batch(x), as_batch(y)
    n = bx.n
    if n < 2:
        _resolve_origin(bx, origin)
        return 0.0
    spacings = _spacings(bx, origin)
    g_hat = np.asarray(empirical_cdf(by, bx.values[:-1], convention))
    with np.errstate(divide="ignore"):
        log_terms = -np.log1p(-g_hat)
    weights = 1.0 - np.arange(1, n) / n
    return _weighted_sum(weights, log_terms, spacings, alpha)


def estimate_qcri(x, y, convention: str = PLOTTING_POSITION, origin: float | str = 0.0) -> float:
    """Cumulative residual inaccuracy estimate, the ``alpha = 1`` case."""
    return estimate_qfcri(x, y, 1.0, convention, origin)


def estimate_qfcre(x, alpha: float, convention: str = STANDARD, origin: float | str = 0.0) -> float:
    """Plug-in entropy estimate with the self-CDF ``i/n`` (or ``i/(n+1)``)."""
    alpha = check_alpha(alpha)
    _check_convention(convention)
    bx = as_batch(x)
    n = bx.n
    if n < 2:
        _resolve_origin(bx, origin)
        return 0.0
    spacings = _spacings(bx, origin)
    i = np.arange(1, n)
    ranks = i / (n + 1) if convention == PLOTTING_POSITION else i / n
    return _weighted_sum(1.0 - i / n, -np.log1p(-ranks), spacings, alpha)


def estimate_qfcrir(
    x,
    y,
    alpha: float,
    convention: str = PLOTTING_POSITION,
    origin: float | str = 0.0,
    denominator_convention: str = STANDARD,
) -> float:
    """Ratio of the inaccuracy estimate to the entropy estimate of ``x``.

    The denominator is :func:`estimate_qfcre` with self-ranks ``i/n`` by
    default.  Pass ``denominator_convention=convention`` to use the same
    ranks in both places; then ``y == x`` (tie-free) gives exactly 1.
    """
    den = estimate_qfcre(x, alpha, denominator_convention, origin)
    if den == 0.0:
        raise DegeneracyError("entropy estimate is zero (constant or single-value sample)")
    return estimate_qfcri(x, y, alpha, convention, origin) / den
