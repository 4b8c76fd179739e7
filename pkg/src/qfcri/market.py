"""Closing prices -> log returns -> shifted regime windows -> asymmetric curves."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from datetime import date, datetime
from pathlib import Path

import numpy as np

from .errors import DomainError, ParseError
from .estimation import PLOTTING_POSITION, estimate_qfcri
from .numerics import check_alpha


class WindowError(DomainError):
    """A regime window holds too few returns."""


@dataclass(frozen=True)
class PriceSeries:
    dates: tuple[date, ...]
    closes: np.ndarray

    def __post_init__(self):
        closes = np.asarray(self.closes, dtype=float)
        if len(self.dates) != closes.size:
            raise DomainError("dates and closes differ in length")
        if closes.size < 2:
            raise DomainError("a price series needs at least 2 rows")
        if any(b <= a for a, b in zip(self.dates, self.dates[1:])):
            raise DomainError("dates must be strictly increasing")
        if np.any(~np.isfinite(closes)) or np.any(closes <= 0):
            raise DomainError("closing prices must be positive and finite")
        closes.setflags(write=False)
        object.__setattr__(self, "closes", closes)

    def __len__(self):
        return self.closes.size


@dataclass(frozen=True)
class ReturnSeries:
    dates: tuple[date, ...]
    values: np.ndarray

    def __len__(self):
        return len(self.values)

    def window(self, start: date, end: date) -> "ReturnSeries":
        keep = [i for i, d in enumerate(self.dates) if start <= d <= end]
        return ReturnSeries(tuple(self.dates[i] for i in keep), self.values[keep])


@dataclass(frozen=True)
class RegimeSpec:
    name: str
    start: date
    end: date

    def __post_init__(self):
        if not self.start < self.end:
            raise DomainError(f"regime {self.name!r}: start must precede end")

    @classmethod
    def from_dict(cls, d: dict, date_format: str = "%Y-%m-%d") -> "RegimeSpec":
        def conv(v):
            return v if isinstance(v, date) else datetime.strptime(v, date_format).date()

        return cls(d["name"], conv(d["start"]), conv(d["end"]))


# Plausible windows for an Indian equity index; artifact defaults, not
# boundaries taken from any publication.
DEFAULT_REGIMES = {
    "crisis": RegimeSpec("crisis", date(2008, 1, 1), date(2009, 6, 30)),
    "slowdown": RegimeSpec("slowdown", date(2011, 1, 1), date(2013, 8, 31)),
    "bullrun": RegimeSpec("bullrun", date(2014, 1, 1), date(2017, 12, 31)),
    "pandemic": RegimeSpec("pandemic", date(2020, 2, 1), date(2021, 6, 30)),
    "inflation": RegimeSpec("inflation", date(2022, 1, 1), date(2023, 6, 30)),
}
DEFAULT_PAIRS = (("crisis", "pandemic"), ("pandemic", "inflation"), ("slowdown", "bullrun"))


def load_prices(
    path,
    date_column: str = "date",
    close_column: str = "close",
    date_format: str = "%Y-%m-%d",
) -> PriceSeries:
    """Read a header CSV of dates and closes; rows are sorted by date."""
    text = Path(path).read_text()
    if not text.strip():
        raise ParseError(f"{path}: empty file")
    reader = csv.DictReader(io.StringIO(text))
    fields = reader.fieldnames or []
    for col in (date_column, close_column):
        if col not in fields:
            raise ParseError(f"{path}: missing column {col!r} (have {fields})")
    rows = {}
    for row in reader:
        line = reader.line_num
        try:
            d = datetime.strptime(row[date_column].strip(), date_format).date()
            c = float(row[close_column])
        except (ValueError, AttributeError, TypeError):
            raise ParseError(f"{path}:{line}: cannot parse row {row!r}") from None
        if not math.isfinite(c) or c <= 0:
            raise ParseError(f"{path}:{line}: closing price must be positive, got {c}")
        if d in rows:
            raise ParseError(f"{path}:{line}: duplicate date {d.isoformat()}")
        rows[d] = c
    if not rows:
        raise ParseError(f"{path}: no data rows")
    if len(rows) < 2:
        raise ParseError(f"{path}: need at least 2 price rows, got 1")
    dates = tuple(sorted(rows))
    return PriceSeries(dates, np.array([rows[d] for d in dates]))


def log_returns(prices: PriceSeries) -> ReturnSeries:
    """``R_t = log P_t - log P_{t-1}``, dated by ``t``."""
    return ReturnSeries(prices.dates[1:], np.diff(np.log(prices.closes)))


def shift_transform(returns: ReturnSeries) -> ReturnSeries:
    """``Z_t = R_t - min R``."""
    if len(returns) < 1:
        raise DomainError("cannot shift an empty return series")
    return ReturnSeries(returns.dates, returns.values - returns.values.min())


def _window_values(returns: ReturnSeries, reg: RegimeSpec, shift: str) -> np.ndarray:
    w = returns.window(reg.start, reg.end)
    if len(w) < 2:
        raise WindowError(
            f"window too small: regime {reg.name!r} holds {len(w)} return(s), need >= 2"
        )
    return shift_transform(w).values if shift == "window" else w.values


@dataclass
class RegimeTable:
    a: str
    b: str
    alphas: list[float]
    forward: list[float]
    reverse: list[float]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["alpha", "forward", "reverse"])
        for al, f, r in zip(self.alphas, self.forward, self.reverse):
            w.writerow([f"{al:.12g}", f"{f:.12g}", f"{r:.12g}"])
        return buf.getvalue()

    def as_dict(self) -> dict:
        return {"a": self.a, "b": self.b, "alpha": self.alphas,
                "forward": self.forward, "reverse": self.reverse}


def regime_discrepancy(
    returns: ReturnSeries,
    reg_a: RegimeSpec,
    reg_b: RegimeSpec,
    alphas,
    shift: str = "window",
    convention: str = PLOTTING_POSITION,
) -> RegimeTable:
    """Forward ``est(Z_A, Z_B)`` and reverse ``est(Z_B, Z_A)`` per alpha.

    ``shift="window"`` subtracts each window's own minimum after slicing;
    ``shift="global"`` expects ``returns`` already shifted (or shifts them
    here once over the full series) before slicing.
    """
    if shift not in ("window", "global"):
        raise ValueError("shift must be 'window' or 'global'")
    if shift == "global":
        returns = shift_transform(returns)
    za = _window_values(returns, reg_a, shift)
    zb = _window_values(returns, reg_b, shift)
    alphas = [check_alpha(a) for a in alphas]
    fwd = [estimate_qfcri(za, zb, a, convention) for a in alphas]
    rev = [estimate_qfcri(zb, za, a, convention) for a in alphas]
    return RegimeTable(reg_a.name, reg_b.name, alphas, fwd, rev)


def tables_to_json(tables: list[RegimeTable]) -> str:
    return json.dumps({"pairs": [t.as_dict() for t in tables]}, indent=2)


def plot_data_csv(tables: list[RegimeTable]) -> str:
    """Long-format rows ``pair,direction,alpha,value`` for line charts."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["pair", "direction", "alpha", "value"])
    for t in tables:
        pair = f"{t.a}_vs_{t.b}"
        for name, vals in (("forward", t.forward), ("reverse", t.reverse)):
            for al, v in zip(t.alphas, vals):
                w.writerow([pair, name, f"{al:.12g}", f"{v:.12g}"])
    return buf.getvalue()


def synthetic_two_regime(n: int = 2000, seed: int = 7, start: date = date(2001, 1, 1)):
    """Returns with Exp(1) values in the first window and Exp(2) in the second.

    Gives the series plus the two regime specs; each window's values are
    the exponential draws themselves, so per-window shifting leaves them
    nearly unchanged.
    """
    rng = np.random.default_rng(seed)
    vals = np.concatenate([rng.exponential(1.0, n), rng.exponential(0.5, n)])
    dates = tuple(date.fromordinal(start.toordinal() + i) for i in range(2 * n))
    ra = RegimeSpec("regime_a", dates[0], dates[n - 1])
    rb = RegimeSpec("regime_b", dates[n], dates[-1])
    return ReturnSeries(dates, vals), ra, rb
