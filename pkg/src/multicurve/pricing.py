"""Swap-leg valuation, par rates, and tenor basis spreads.

Floating legs project each coupon off the forwarding curve of the leg's
index tenor and discount every cash flow on the discounting curve:

    PV = N * sum_i P_d(t, T_i) * F_x(T_{i-1}, T_i) * tau(T_{i-1}, T_i)

Overnight legs pay the compounded index over each (annual) coupon, which
collapses to the forwarding curve's growth factor over the period; when
the same curve both projects and discounts, that leg telescopes to
N * (P_d(start) - P_d(end)), the single-curve shortcut that the multi-curve
market no longer permits for term tenors.

Basis swaps are quoted as the difference between the fixed equilibrium
rates of the two single-tenor swaps; the equivalent formulation as a
spread added to the shorter-tenor leg is kept alongside as a cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .curves import Curve, CurveRole, CurveSet, simple_forward
from .errors import ConfigurationError
from .temporal import (
    Conventions, Date, EUR_CONVENTIONS, Schedule, Tenor, TenorUnit,
    add_months, add_tenor, build_schedule, year_fraction,
)


@dataclass(frozen=True)
class SwapLeg:
    """One leg of a swap: fixed(rate) or floating(index tenor)."""

    schedule: Schedule
    notional: float
    sign: int = 1                      # +1 receive this leg, -1 pay it
    fixed_rate: float | None = None
    float_tenor: Tenor | None = None

    def __post_init__(self):
        if (self.fixed_rate is None) == (self.float_tenor is None):
            raise ConfigurationError("leg must be exactly one of fixed or floating")
        if self.sign not in (-1, 1):
            raise ConfigurationError("sign must be +1 or -1")
        if self.float_tenor is not None and not _is_overnight(self.float_tenor):
            if self.schedule.frequency != self.float_tenor:
                raise ConfigurationError(
                    f"schedule frequency {self.schedule.frequency} must equal "
                    f"floating tenor {self.float_tenor}")

    @property
    def is_fixed(self) -> bool:
        return self.fixed_rate is not None


def _is_overnight(tenor: Tenor) -> bool:
    return tenor.unit in (TenorUnit.DAYS, TenorUnit.BUSINESS_DAYS)


def float_leg_pv(leg: SwapLeg, fwd: Curve, disc: Curve,
                 conventions: Conventions = EUR_CONVENTIONS) -> float:
    """Present value of a floating leg (positive for sign=+1)."""
    if leg.is_fixed:
        raise ConfigurationError("fixed leg passed to float_leg_pv")
    if not disc.role.is_discounting:
        raise ConfigurationError(f"discount curve has role {disc.role}")
    if fwd.role.is_discounting or fwd.role.tenor != leg.float_tenor:
        raise ConfigurationError(
            f"forwarding curve role {fwd.role} does not match leg tenor {leg.float_tenor}")
    dc = conventions.day_count
    total = 0.0
    if _is_overnight(leg.float_tenor):
        # compounded overnight coupon: growth factor minus one
        for start, end in leg.schedule.periods:
            coupon = fwd.compounding_factor(start, end) - 1.0
            total += disc.discount_factor(end) * coupon
    else:
        for start, end in leg.schedule.periods:
            tau = year_fraction(start, end, dc)
            total += (disc.discount_factor(end)
                      * simple_forward(fwd, start, end, dc) * tau)
    return leg.sign * leg.notional * total


def fixed_leg_annuity(leg: SwapLeg, disc: Curve,
                      conventions: Conventions = EUR_CONVENTIONS) -> float:
    """Annuity of a fixed leg: PV per unit of fixed rate."""
    if not leg.is_fixed:
        raise ConfigurationError("floating leg passed to fixed_leg_annuity")
    if not disc.role.is_discounting:
        raise ConfigurationError(f"discount curve has role {disc.role}")
    dc = conventions.day_count
    return leg.notional * sum(
        disc.discount_factor(end) * year_fraction(start, end, dc)
        for start, end in leg.schedule.periods)


def fixed_leg_pv(leg: SwapLeg, disc: Curve,
                 conventions: Conventions = EUR_CONVENTIONS) -> float:
    return leg.sign * leg.fixed_rate * fixed_leg_annuity(leg, disc, conventions)


# ---------------------------------------------------------------------------
# Schedules and par rates
# ---------------------------------------------------------------------------

def _leg_schedules(start: Date, maturity: Tenor, tenor: Tenor,
                   conventions: Conventions) -> tuple[Schedule, Schedule]:
    """Float and fixed schedules from an unadjusted start anchor.

    Overnight legs pay annually, like the fixed leg.
    """
    end_anchor = add_months(start, maturity.months)
    float_freq = conventions.fixed_frequency if _is_overnight(tenor) else tenor
    float_schedule = build_schedule(start, end_anchor, float_freq,
                                    conventions.calendar, conventions.adjustment)
    fixed_schedule = build_schedule(start, end_anchor, conventions.fixed_frequency,
                                    conventions.calendar, conventions.adjustment)
    return float_schedule, fixed_schedule


def swap_par_rate(tenor: Tenor, maturity: Tenor, fwd: Curve, disc: Curve,
                  conventions: Conventions = EUR_CONVENTIONS,
                  start: Date | None = None) -> float:
    """Equilibrium fixed rate of a spot-starting swap against `tenor`.

    EUR layout: annual fixed leg, floating frequency equal to the index
    tenor (annual compounded coupons for the overnight index).
    """
    anchor = start if start is not None else conventions.spot(disc.asof)
    float_schedule, fixed_schedule = _leg_schedules(anchor, maturity, tenor, conventions)
    float_leg = SwapLeg(schedule=float_schedule, notional=1.0, float_tenor=tenor)
    fixed_leg = SwapLeg(schedule=fixed_schedule, notional=1.0, fixed_rate=0.0)
    pv = float_leg_pv(float_leg, fwd, disc, conventions)
    annuity = fixed_leg_annuity(fixed_leg, disc, conventions)
    return pv / annuity


def forward_swap_rate_and_annuity(expiry: Tenor, swap_tenor: Tenor,
                                  index_tenor: Tenor, fwd: Curve, disc: Curve,
                                  conventions: Conventions = EUR_CONVENTIONS
                                  ) -> tuple[float, float]:
    """Par rate and fixed-leg annuity of a swap starting at spot + expiry.

    This is the underlying of an option expiring at that date; the annuity
    is the natural premium numeraire.
    """
    spot = conventions.spot(disc.asof)
    start = add_tenor(spot, expiry, conventions.calendar, conventions.adjustment)
    float_schedule, fixed_schedule = _leg_schedules(start, swap_tenor, index_tenor,
                                                    conventions)
    float_leg = SwapLeg(schedule=float_schedule, notional=1.0, float_tenor=index_tenor)
    fixed_leg = SwapLeg(schedule=fixed_schedule, notional=1.0, fixed_rate=0.0)
    pv = float_leg_pv(float_leg, fwd, disc, conventions)
    annuity = fixed_leg_annuity(fixed_leg, disc, conventions)
    return pv / annuity, annuity


# ---------------------------------------------------------------------------
# Basis swaps
# ---------------------------------------------------------------------------

def basis_swap_spread(short_tenor: Tenor, long_tenor: Tenor, maturity: Tenor,
                      curves: CurveSet,
                      conventions: Conventions = EUR_CONVENTIONS) -> float:
    """Quoted basis: par rate of the long-tenor swap minus the short's."""
    disc = curves.discount
    par_long = swap_par_rate(long_tenor, maturity,
                             _forwarding(curves, long_tenor), disc, conventions)
    par_short = swap_par_rate(short_tenor, maturity,
                              _forwarding(curves, short_tenor), disc, conventions)
    return par_long - par_short


def basis_spread_on_leg(short_tenor: Tenor, long_tenor: Tenor, maturity: Tenor,
                        curves: CurveSet,
                        conventions: Conventions = EUR_CONVENTIONS,
                        annuity_schedule: str = "short") -> float:
    """Spread s that, added to the short-tenor leg, equates the two legs.

    `annuity_schedule` picks where s accrues: "short" uses the short-tenor
    leg's own schedule (the market's added-to-the-short-leg convention);
    "fixed" uses the annual fixed schedule, which reproduces the par-rate
    difference identically.
    """
    disc = curves.discount
    spot = conventions.spot(disc.asof)
    end_anchor = add_months(spot, maturity.months)

    def leg_pv(tenor: Tenor) -> float:
        schedules = _leg_schedules(spot, maturity, tenor, conventions)
        leg = SwapLeg(schedule=schedules[0], notional=1.0, float_tenor=tenor)
        return float_leg_pv(leg, _forwarding(curves, tenor), disc, conventions)

    if annuity_schedule == "short":
        freq = (conventions.fixed_frequency if _is_overnight(short_tenor)
                else short_tenor)
        sched = build_schedule(spot, end_anchor, freq,
                               conventions.calendar, conventions.adjustment)
    elif annuity_schedule == "fixed":
        sched = build_schedule(spot, end_anchor, conventions.fixed_frequency,
                               conventions.calendar, conventions.adjustment)
    else:
        raise ConfigurationError(f"unknown annuity schedule {annuity_schedule!r}")
    annuity = sum(disc.discount_factor(e) * year_fraction(s, e, conventions.day_count)
                  for s, e in sched.periods)
    return (leg_pv(long_tenor) - leg_pv(short_tenor)) / annuity


def _forwarding(curves: CurveSet, tenor: Tenor) -> Curve:
    if _is_overnight(tenor):
        # the overnight index forwards off the discounting (OIS) curve
        label = str(tenor)
        if label in curves.forwards:
            return curves.forwards[label]
        disc = curves.discount
        return Curve(disc.asof, CurveRole.forwarding(tenor),
                     list(disc.pillars), disc.day_count)
    return curves.forward_curve(tenor)


# ---------------------------------------------------------------------------
# Basis matrix export
# ---------------------------------------------------------------------------

def basis_matrix_csv_lines(curves: CurveSet, pairs: Iterable[tuple[Tenor, Tenor]],
                           maturities: Iterable[Tenor],
                           conventions: Conventions = EUR_CONVENTIONS) -> list[str]:
    """Rows are maturities, columns are tenor pairs, cells in basis points."""
    pair_list = list(pairs)
    header = "maturity," + ",".join(f"{a}v{b}" for a, b in pair_list)
    lines = [header]
    for maturity in maturities:
        cells = [f"{maturity}"]
        for short, long in pair_list:
            spread = basis_swap_spread(short, long, maturity, curves, conventions)
            cells.append(f"{spread * 1e4:.2f}")
        lines.append(",".join(cells))
    return lines
