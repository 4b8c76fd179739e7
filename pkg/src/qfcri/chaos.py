"""Chebyshev and logistic map orbits and pairwise discrepancy grids."""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .estimation import PLOTTING_POSITION, estimate_qfcri
from .models import SampleBatch
from .numerics import check_alpha

KINDS = ("chebyshev", "logistic")
DEFAULT_X1 = {"chebyshev": 0.3, "logistic": 0.1}
_CLAMP_SLACK = 1e-12


@dataclass(frozen=True)
class MapConfig:
    kind: str
    param: float
    x1: float
    n: int = 1000

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"kind must be one of {KINDS}, got {self.kind!r}")
        if self.n < 2:
            raise DomainError("orbit length n must be >= 2")
        p, x1 = self.param, self.x1
        if not (math.isfinite(p) and math.isfinite(x1)):
            raise DomainError("map parameter and start value must be finite")
        if self.kind == "chebyshev":
            if p <= 0:
                raise DomainError(f"chebyshev parameter must be > 0, got {p}")
            if abs(x1) > 1:
                raise DomainError(f"chebyshev start value must lie in [-1, 1], got {x1}")
        else:
            if not 0 <= p <= 4:
                raise DomainError(f"logistic parameter must lie in [0, 4], got {p}")
            if not 0 <= x1 <= 1:
                raise DomainError(f"logistic start value must lie in [0, 1], got {x1}")


def _clamp(v: float) -> float:
    if abs(v) > 1.0 + _CLAMP_SLACK:
        raise DomainError(f"chebyshev iterate {v!r} left [-1, 1]")
    return min(1.0, max(-1.0, v))


def orbit(cfg: MapConfig) -> np.ndarray:
    """Raw orbit ``x_1, ..., x_n`` (no burn-in, no shift)."""
    out = np.empty(cfg.n)
    x = cfg.x1
    out[0] = x
    if cfg.kind == "chebyshev":
        a2 = cfg.param * cfg.param
        for i in range(1, cfg.n):
            x = math.cos(a2 * math.acos(_clamp(x)))
            out[i] = x
    else:
        c = cfg.param
        for i in range(1, cfg.n):
            x = c * x * (1.0 - x)
            out[i] = x
    return out


def generate_series(cfg: MapConfig) -> SampleBatch:
    return SampleBatch(orbit(cfg))


def min_shift(values) -> np.ndarray:
    v = np.asarray(values, dtype=float)
    return v - v.min()


@dataclass
class DiscrepancyGrid:
    kind: str
    axis1: list[float]
    axis2: list[float]
    values: np.ndarray  # shape (len(axis1), len(axis2)); NaN marks a failed cell
    alpha: float
    actual_axis: int = 1
    failures: dict | None = None

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["param1", "param2", "qfcri"])
        for i, p1 in enumerate(self.axis1):
            for j, p2 in enumerate(self.axis2):
                v = self.values[i, j]
                w.writerow([f"{p1:.12g}", f"{p2:.12g}", "" if math.isnan(v) else f"{v:.12g}"])
        return buf.getvalue()

    def to_json(self) -> str:
        vals = [[None if math.isnan(v) else float(v) for v in row] for row in self.values]
        return json.dumps(
            {
                "kind": self.kind,
                "alpha": self.alpha,
                "actual_axis": self.actual_axis,
                "axis1": list(map(float, self.axis1)),
                "axis2": list(map(float, self.axis2)),
                "values": vals,
                "failures": {f"{i},{j}": m for (i, j), m in (self.failures or {}).items()},
            },
            indent=2,
        )


def discrepancy_grid(
    kind: str,
    axis1,
    axis2,
    alpha: float,
    x1: float | None = None,
    n: int = 1000,
    actual_axis: int = 1,
    convention: str = PLOTTING_POSITION,
    threads: int = 1,
) -> DiscrepancyGrid:
    """Cell ``(i, j)`` compares the orbits at ``axis1[i]`` and ``axis2[j]``.

    ``actual_axis`` picks which orbit plays the true distribution ``X``:
    with 1 the cell is ``est(orbit(axis1[i]), orbit(axis2[j]))``, with 2 the
    arguments are swapped.  Each orbit is shifted by its own minimum.
    """
    alpha = check_alpha(alpha)
    if actual_axis not in (1, 2):
        raise ValueError("actual_axis must be 1 or 2")
    axis1, axis2 = [float(a) for a in axis1], [float(a) for a in axis2]
    if not axis1 or not axis2:
        raise DomainError("grid axes must be non-empty")
    x1 = DEFAULT_X1[kind] if x1 is None else x1

    cache: dict[float, np.ndarray | Exception] = {}
    for p in set(axis1) | set(axis2):
        try:
            cache[p] = min_shift(orbit(MapConfig(kind, p, x1, n)))
        except (DomainError, ArithmeticError) as exc:
            cache[p] = exc

    def cell(ij):
        i, j = ij
        a, b = cache[axis1[i]], cache[axis2[j]]
        if actual_axis == 2:
            a, b = b, a
        for z in (a, b):
            if isinstance(z, Exception):
                return math.nan, str(z)
        try:
            v = estimate_qfcri(a, b, alpha, convention)
        except (DomainError, ArithmeticError) as exc:
            return math.nan, str(exc)
        return v, None

    idx = [(i, j) for i in range(len(axis1)) for j in range(len(axis2))]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(cell, idx))
    else:
        results = [cell(ij) for ij in idx]

    values = np.full((len(axis1), len(axis2)), math.nan)
    failures = {}
    for (i, j), (v, msg) in zip(idx, results):
        values[i, j] = v
        if msg is not None:
            failures[(i, j)] = msg
    return DiscrepancyGrid(kind, axis1, axis2, values, alpha, actual_axis, failures)


# Axis roles that reproduce the qualitative regions of the published maps:
# for Chebyshev the first parameter is the true orbit, for logistic the second.
PRESET_ACTUAL_AXIS = {"chebyshev": 1, "logistic": 2}


def default_axis(kind: str, size: int = 50) -> np.ndarray:
    if kind == "chebyshev":
        return np.linspace(0.1, 3.0, size)
    return np.linspace(0.1, 4.0, size)
