"""Implied forwards from deposit and OIS strips, and the replication report.

A quoted FRA over [T1, T2] can be replicated from two spot instruments
maturing at T1 and T2: the implied forward F solves

    [1 + R1 * tau(t,T1)] * [1 + F * tau(T1,T2)] = 1 + R2 * tau(t,T2)

with simple ACT/360 deposit or single-coupon OIS rates on both legs.
Comparing the replica against the quoted FRA, index by index, measures the
credit/liquidity premium the unsecured term deposits carry over the
collateralised FRA market: near zero for the overnight index, tens of
basis points for term interbank tenors.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import DateOrderError
from .market_data import Quote, QuoteKind, QuoteSet, parse_fra_key
from .temporal import (
    Conventions, Date, DayCount, EUR_CONVENTIONS, Tenor, TenorUnit,
    add_tenor, year_fraction,
)

BP = 1e-4


def implied_forward_simple(r_short: float, tau_short: float,
                           r_long: float, tau_long: float,
                           tau_fwd: float) -> float:
    """Forward rate from two simple spot rates with pinned year fractions."""
    if tau_fwd <= 0:
        raise DateOrderError("forward accrual must be positive")
    growth = (1.0 + r_long * tau_long) / (1.0 + r_short * tau_short)
    return (growth - 1.0) / tau_fwd


def _implied_forward_from_dates(r_short: float, d1: Date, r_long: float,
                                d2: Date, t: Date, dc: DayCount) -> float:
    if not (t < d1 < d2):
        raise DateOrderError(f"need t < T1 < T2, got {t}, {d1}, {d2}")
    return implied_forward_simple(
        r_short, year_fraction(t, d1, dc),
        r_long, year_fraction(t, d2, dc),
        year_fraction(d1, d2, dc))


def implied_forward_from_deposits(r_short: float, d1: Date, r_long: float,
                                  d2: Date, t: Date,
                                  dc: DayCount = DayCount.ACT_360) -> float:
    """Interbank forward implied by two term deposits (maturities d1, d2)."""
    return _implied_forward_from_dates(r_short, d1, r_long, d2, t, dc)


def implied_forward_from_ois(r_short: float, d1: Date, r_long: float,
                             d2: Date, t: Date,
                             dc: DayCount = DayCount.ACT_360) -> float:
    """Overnight-index forward implied by two single-coupon OIS quotes."""
    return _implied_forward_from_dates(r_short, d1, r_long, d2, t, dc)


# ---------------------------------------------------------------------------
# Replication report
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ReplicationRow:
    key: str                   # FRA period, e.g. "6Mx12M"
    tenor: str                 # underlying index tenor label
    quote: float               # quoted FRA rate, fraction
    replica: float | None = None
    error: str | None = None

    @property
    def diff_bp(self) -> float | None:
        if self.replica is None:
            return None
        return (self.replica - self.quote) / BP


def replication_report(quotes: QuoteSet,
                       conventions: Conventions = EUR_CONVENTIONS) -> list[ReplicationRow]:
    """One row per quoted FRA, with the spot-strip replica alongside.

    Overnight-index FRAs are replicated from the OIS strip, term-index
    FRAs from the deposit strip at the same start/end maturities. FRA
    accrual dates are spot + start months and spot + end months, rolled
    modified-following. Rows missing a leg quote carry an error entry and
    leave the rest of the report intact; ordering is canonical (tenor,
    then start, then end) so quote order never matters.
    """
    spot = conventions.spot(quotes.asof)
    dc = conventions.day_count
    rows: list[ReplicationRow] = []
    fras = sorted(quotes.of_kind(QuoteKind.FRA),
                  key=lambda q: (_tenor_label(q), *parse_fra_key(q.key)))
    for fra in fras:
        start_m, end_m = parse_fra_key(fra.key)
        label = _tenor_label(fra)
        overnight = fra.tenor is not None and fra.tenor.unit in (
            TenorUnit.DAYS, TenorUnit.BUSINESS_DAYS)
        leg_kind = QuoteKind.OIS if overnight else QuoteKind.DEPOSIT
        short = _leg_quote(quotes, leg_kind, start_m)
        long = _leg_quote(quotes, leg_kind, end_m)
        if short is None or long is None:
            missing = f"{start_m}M" if short is None else f"{end_m}M"
            rows.append(ReplicationRow(
                key=fra.key, tenor=label, quote=fra.value,
                error=f"missing {leg_kind.value} {missing} leg quote"))
            continue
        d1 = add_tenor(spot, Tenor(start_m, TenorUnit.MONTHS),
                       conventions.calendar, conventions.adjustment)
        d2 = add_tenor(spot, Tenor(end_m, TenorUnit.MONTHS),
                       conventions.calendar, conventions.adjustment)
        replica = _implied_forward_from_dates(short.value, d1, long.value, d2, spot, dc)
        rows.append(ReplicationRow(key=fra.key, tenor=label,
                                   quote=fra.value, replica=replica))
    return rows


def _tenor_label(quote: Quote) -> str:
    return str(quote.tenor) if quote.tenor else ""


def _leg_quote(quotes: QuoteSet, kind: QuoteKind, months: int) -> Quote | None:
    key = f"{months}M"
    q = quotes.get(kind, key)
    if q is None and kind is QuoteKind.DEPOSIT:
        q = quotes.get(kind, key, Tenor(months, TenorUnit.MONTHS))
    return q


# ---------------------------------------------------------------------------
# Basis time series
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BasisPoint:
    date: Date
    long_key: str
    short_key: str
    spread: float  # long minus short, fraction


@dataclass(frozen=True)
class BasisSeries:
    points: tuple[BasisPoint, ...]
    dropped: int   # dates present on only one axis


def basis_series(long: Mapping[Date, float] | Sequence[tuple[Date, float]],
                 short: Mapping[Date, float] | Sequence[tuple[Date, float]],
                 long_key: str = "long", short_key: str = "short") -> BasisSeries:
    """Pointwise long minus short on the shared date axis.

    Dates present in only one series are dropped and counted, never
    interpolated.
    """
    long_map = dict(long if isinstance(long, Mapping) else dict(long))
    short_map = dict(short if isinstance(short, Mapping) else dict(short))
    shared = sorted(long_map.keys() & short_map.keys())
    dropped = (len(long_map) - len(shared)) + (len(short_map) - len(shared))
    points = tuple(
        BasisPoint(date=d, long_key=long_key, short_key=short_key,
                   spread=long_map[d] - short_map[d])
        for d in shared)
    return BasisSeries(points=points, dropped=dropped)


# ---------------------------------------------------------------------------
# Report CSV
# ---------------------------------------------------------------------------

def report_csv_lines(rows: Iterable[ReplicationRow]) -> list[str]:
    """`key,tenor,quote_pct,replica_pct,diff_bps` rows; spreads print to
    one decimal of a basis point, the table's own precision."""
    lines = ["key,tenor,quote_pct,replica_pct,diff_bps"]
    for row in rows:
        if row.error is not None:
            lines.append(f"{row.key},{row.tenor},{row.quote * 100:.6f},ERROR,{row.error}")
        else:
            lines.append(
                f"{row.key},{row.tenor},{row.quote * 100:.6f},"
                f"{row.replica * 100:.6f},{row.diff_bp:.1f}")
    return lines
