"""Credit and liquidity stress indices for the interbank market.

Two daily gauges:

* a panel CDS index that replicates the interbank fixing mechanism: sort
  the banks' 5Y CDS spreads, drop the highest and lowest 15% tails, and
  average what remains;
* a liquidity surplus figure: cash parked at the central bank's deposit
  facility plus current-account holdings in excess of required reserves.

A corridor check verifies the overnight fixing sits between the deposit
facility rate and the marginal lending rate, which standing-facility
arbitrage enforces.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import InsufficientPanelError
from .market_data import EcbSnapshot
from .temporal import Date


@dataclass(frozen=True)
class PanelQuotes:
    """One date's CDS spread per panel bank, as decimal fractions."""

    asof: Date
    spreads: Mapping[str, float]

    def __len__(self) -> int:
        return len(self.spreads)


@dataclass(frozen=True)
class IndexPoint:
    date: Date
    value: float
    contributors: int


def trim_count(n: int, tail_fraction: float) -> int:
    """Quotes removed from each end: round-half-up of tail_fraction * n."""
    return int(math.floor(tail_fraction * n + 0.5))


def trimmed_mean_index(panel: PanelQuotes, tail_fraction: float = 0.15) -> IndexPoint:
    """Fixing-style trimmed mean of a CDS panel.

    Sorts ascending (stable, so tied quotes keep their input order),
    removes round-half-up(tail * N) quotes from each end, and averages the
    rest. Requires at least three quotes and at least one survivor.
    """
    if not 0.0 <= tail_fraction < 0.5:
        raise ValueError(f"tail fraction {tail_fraction} outside [0, 0.5)")
    n = len(panel)
    if n < 3:
        raise InsufficientPanelError(f"panel has {n} quotes, need at least 3")
    k = trim_count(n, tail_fraction)
    retained = sorted(panel.spreads.values())[k:n - k]
    if not retained:
        raise InsufficientPanelError(
            f"trimming {k} from each end of {n} quotes leaves nothing")
    return IndexPoint(date=panel.asof,
                      value=sum(retained) / len(retained),
                      contributors=len(retained))


def liquidity_surplus_index(snapshot: EcbSnapshot) -> IndexPoint:
    """Deposit-facility holdings plus the positive part of excess reserves."""
    excess = max(snapshot.current_account_amount - snapshot.required_reserves, 0.0)
    contributors = 1 + (1 if excess > 0.0 else 0)
    return IndexPoint(date=snapshot.asof,
                      value=snapshot.deposit_facility_amount + excess,
                      contributors=contributors)


@dataclass(frozen=True)
class CorridorResult:
    ok: bool
    detail: str | None = None


def corridor_check(snapshot: EcbSnapshot) -> CorridorResult:
    """Overnight fixing must lie inside [deposit facility, marginal lending]."""
    lo = snapshot.deposit_facility_rate
    hi = snapshot.marginal_lending_rate
    fixing = snapshot.eonia_fixing
    if fixing < lo:
        return CorridorResult(False, f"fixing {fixing:.4%} below deposit facility {lo:.4%}")
    if fixing > hi:
        return CorridorResult(False, f"fixing {fixing:.4%} above marginal lending {hi:.4%}")
    return CorridorResult(True)


def moving_average(series: Sequence[tuple[Date, float]],
                   window: int = 20) -> list[tuple[Date, float]]:
    """Trailing mean over the last `window` observations.

    The first window - 1 dates are omitted; a window longer than the
    series yields an empty list.
    """
    if window < 1:
        raise ValueError(f"window must be at least 1, got {window}")
    out: list[tuple[Date, float]] = []
    running = 0.0
    values = [v for _, v in series]
    for i, (date, _) in enumerate(series):
        running += values[i]
        if i >= window:
            running -= values[i - window]
        if i >= window - 1:
            out.append((date, running / window))
    return out


def index_csv_lines(points: Sequence[IndexPoint], scale: float = 1.0) -> list[str]:
    """`date,value,contributors` rows, value optionally rescaled."""
    lines = ["date,value,contributors"]
    for p in points:
        lines.append(f"{p.date.isoformat()},{p.value * scale:.8g},{p.contributors}")
    return lines
