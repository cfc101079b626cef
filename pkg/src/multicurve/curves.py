"""Discount-factor term structures and curve bootstrapping.

Two curve roles coexist: a single discounting curve built from OIS quotes
(the collateral-consistent funding curve) and one forwarding curve per
index tenor, holding pseudo-discount factors so that the same
simple-forward formula

    F(t; T1, T2) = (P(t,T1) / P(t,T2) - 1) / tau(T1, T2)

projects coupon rates on every curve.

Interpolation is log-linear on discount factors (piecewise-constant
instantaneous forwards); beyond the last pillar the final segment's
continuously-compounded forward is held flat. Each bootstrapped curve
carries a unit pillar at the spot date: the two-day settlement lag is
kept at zero rate so that single-coupon instruments invert exactly and
calibration round-trips are sharp.
"""

from __future__ import annotations

import bisect
import csv
import datetime as dt
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence, TextIO

from scipy.optimize import brentq

from .errors import CalibrationError, ConfigurationError, DateOrderError
from .market_data import QuoteKind, QuoteSet, parse_fra_key
from .temporal import (
    Adjustment, Calendar, Conventions, Date, DayCount, EUR_CONVENTIONS,
    Schedule, Tenor, TenorUnit, add_months, add_tenor, build_schedule,
    year_fraction,
)

# Zero-rate bracket for pillar root-finding, widened on demand.
_ZERO_BRACKET = (-0.05, 0.50)
_BRACKET_LIMIT = (-0.99, 20.0)
_ROOT_XTOL = 1e-15


@dataclass(frozen=True)
class CurveRole:
    kind: str                 # "discount" | "forward"
    tenor: Tenor | None = None

    @classmethod
    def discounting(cls) -> "CurveRole":
        return cls("discount")

    @classmethod
    def forwarding(cls, tenor: Tenor) -> "CurveRole":
        return cls("forward", tenor)

    @property
    def is_discounting(self) -> bool:
        return self.kind == "discount"

    def __str__(self) -> str:
        return "discount" if self.is_discounting else f"forward:{self.tenor}"

    @classmethod
    def parse(cls, text: str) -> "CurveRole":
        if text == "discount":
            return cls.discounting()
        if text.startswith("forward:"):
            return cls.forwarding(Tenor.parse(text.split(":", 1)[1]))
        raise ValueError(f"unknown curve role {text!r}")


class Curve:
    """Dated term structure of (pseudo-)discount factors."""

    def __init__(self, asof: Date, role: CurveRole,
                 pillars: Sequence[tuple[Date, float]],
                 day_count: DayCount = DayCount.ACT_360):
        if not pillars:
            raise ValueError("curve needs at least one pillar")
        dates = [d for d, _ in pillars]
        factors = [f for _, f in pillars]
        if any(b <= a for a, b in zip(dates, dates[1:])):
            raise ValueError("pillar dates must be strictly increasing")
        if dates[0] <= asof:
            raise ValueError("pillar dates must follow the as-of date")
        if any(f <= 0 for f in factors):
            raise ValueError("discount factors must be strictly positive")
        self.asof = asof
        self.role = role
        self.dates: tuple[Date, ...] = tuple(dates)
        self.factors: tuple[float, ...] = tuple(factors)
        self.day_count = day_count
        base = asof.toordinal()
        # interpolation abscissa: actual days / 365, affine-equivalent to any ACT axis
        self._times = tuple((d.toordinal() - base) / 365.0 for d in dates)
        self._logs = tuple(math.log(f) for f in factors)

    @property
    def pillars(self) -> tuple[tuple[Date, float], ...]:
        return tuple(zip(self.dates, self.factors))

    def _time(self, d: Date) -> float:
        return (d.toordinal() - self.asof.toordinal()) / 365.0

    def discount_factor(self, d: Date) -> float:
        """P(asof, d): 1 at the as-of date, exact at pillars, log-linear
        between, flat continuously-compounded forward beyond the last."""
        if d < self.asof:
            raise DateOrderError(f"{d} precedes curve date {self.asof}")
        if d == self.asof:
            return 1.0
        t = self._time(d)
        idx = bisect.bisect_left(self.dates, d)
        if idx < len(self.dates) and self.dates[idx] == d:
            return self.factors[idx]
        if idx == 0:
            # between as-of (log df 0) and the first pillar
            w = t / self._times[0]
            return math.exp(w * self._logs[0])
        if idx == len(self.dates):
            if len(self.dates) == 1:
                slope = self._logs[0] / self._times[0]
            else:
                slope = ((self._logs[-1] - self._logs[-2])
                         / (self._times[-1] - self._times[-2]))
            return math.exp(self._logs[-1] + slope * (t - self._times[-1]))
        t0, t1 = self._times[idx - 1], self._times[idx]
        w = (t - t0) / (t1 - t0)
        return math.exp((1.0 - w) * self._logs[idx - 1] + w * self._logs[idx])

    def forward(self, d1: Date, d2: Date, dc: DayCount | None = None) -> float:
        return simple_forward(self, d1, d2, dc or self.day_count)

    def compounding_factor(self, d1: Date, d2: Date) -> float:
        """Growth factor P(d1)/P(d2): daily-compounded index growth for
        overnight legs, used where the forward-times-accrual form would
        need an explicit daily grid."""
        if d2 < d1:
            raise DateOrderError(f"{d1} > {d2}")
        return self.discount_factor(d1) / self.discount_factor(d2)

    def __repr__(self) -> str:
        return (f"Curve({self.role}, asof={self.asof}, "
                f"pillars={len(self.dates)})")


def discount_factor(curve: Curve, d: Date) -> float:
    return curve.discount_factor(d)


def simple_forward(curve: Curve, d1: Date, d2: Date,
                   dc: DayCount = DayCount.ACT_360) -> float:
    """Simply-compounded forward over [d1, d2] implied by the curve.

    Satisfies (1 + F*tau) * P(t,d2) = P(t,d1) exactly.
    """
    if d1 >= d2:
        raise DateOrderError(f"need d1 < d2, got {d1} >= {d2}")
    tau = year_fraction(d1, d2, dc)
    return (curve.discount_factor(d1) / curve.discount_factor(d2) - 1.0) / tau


# ---------------------------------------------------------------------------
# Bootstrap recipes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BootstrapRecipe:
    """Ordered calibration instruments plus the conventions they price under."""

    role: CurveRole
    instruments: tuple[tuple[QuoteKind, str, str], ...]  # QuoteSet identities
    conventions: Conventions = EUR_CONVENTIONS

    def __post_init__(self):
        maturities = [_maturity_months(kind, key) for kind, key, _ in self.instruments]
        if any(b <= a for a, b in zip(maturities, maturities[1:])):
            raise ValueError("recipe instrument maturities must be strictly increasing")

    def required_keys(self) -> tuple[tuple[QuoteKind, str, str], ...]:
        return self.instruments


def _maturity_months(kind: QuoteKind, key: str) -> int:
    if kind is QuoteKind.FRA:
        return parse_fra_key(key)[1]
    return Tenor.parse(key).months


def ois_recipe(maturities: Iterable[str],
               conventions: Conventions = EUR_CONVENTIONS) -> BootstrapRecipe:
    instruments = tuple((QuoteKind.OIS, m, "") for m in maturities)
    return BootstrapRecipe(CurveRole.discounting(), instruments, conventions)


def forward_recipe(tenor: Tenor, fras: Iterable[str] = (), swaps: Iterable[str] = (),
                   conventions: Conventions = EUR_CONVENTIONS) -> BootstrapRecipe:
    """Deposit at the index tenor, then an FRA strip, then swaps."""
    label = str(tenor)
    instruments = [(QuoteKind.DEPOSIT, label, label)]
    instruments += [(QuoteKind.FRA, key, label) for key in fras]
    instruments += [(QuoteKind.SWAP, key, label) for key in swaps]
    return BootstrapRecipe(CurveRole.forwarding(tenor), tuple(instruments), conventions)


# ---------------------------------------------------------------------------
# Root finding on a trial pillar
# ---------------------------------------------------------------------------

def _solve_pillar(residual: Callable[[float], float], instrument: str) -> float:
    """Find the zero rate of a new pillar. Bisection with secant/IQ
    acceleration (Brent) on the standard bracket, widened geometrically
    before giving up."""
    lo, hi = _ZERO_BRACKET
    f_lo, f_hi = residual(lo), residual(hi)
    while f_lo * f_hi > 0:
        widened = False
        if lo > _BRACKET_LIMIT[0]:
            lo = max(_BRACKET_LIMIT[0], lo - (hi - lo))
            f_lo = residual(lo)
            widened = True
        if f_lo * f_hi > 0 and hi < _BRACKET_LIMIT[1]:
            hi = min(_BRACKET_LIMIT[1], hi + (hi - lo))
            f_hi = residual(hi)
            widened = True
        if not widened:
            raise CalibrationError("pillar root not bracketed after expansion",
                                   instrument=instrument)
    return brentq(residual, lo, hi, xtol=_ROOT_XTOL, maxiter=200)


def _df_from_zero(z: float, tau: float) -> float:
    return math.exp(-z * tau)


# ---------------------------------------------------------------------------
# Discount bootstrap (OIS)
# ---------------------------------------------------------------------------

def bootstrap_discount(quotes: QuoteSet, recipe: BootstrapRecipe) -> Curve:
    """Build the discounting curve from an OIS strip.

    Maturities up to one year settle a single coupon and invert in closed
    form, P = 1 / (1 + R * tau). Longer OIS pay annual fixed coupons
    against a floating leg that telescopes to P(spot) - P(end); each new
    pillar is root-found so the instrument sits exactly at par.
    """
    if not recipe.role.is_discounting:
        raise ConfigurationError(f"recipe role {recipe.role} is not discounting")
    conv = recipe.conventions
    spot = conv.spot(quotes.asof)
    pillars: list[tuple[Date, float]] = [(spot, 1.0)]

    for kind, key, tenor_label in recipe.instruments:
        if kind is not QuoteKind.OIS:
            raise ConfigurationError(f"discount recipe only takes OIS, got {kind.value},{key}")
        quote = quotes.get(kind, key, tenor_label or None)
        if quote is None:
            raise CalibrationError("instrument not quoted", instrument=f"OIS {key}")
        maturity_tenor = Tenor.parse(key)
        end = add_tenor(spot, maturity_tenor, conv.calendar, conv.adjustment)
        if maturity_tenor.months <= 12:
            tau = year_fraction(spot, end, conv.day_count)
            pillars.append((end, 1.0 / (1.0 + quote.value * tau)))
            continue
        schedule = build_schedule(spot, add_months(spot, maturity_tenor.months),
                                  conv.fixed_frequency, conv.calendar, conv.adjustment)
        tau_end = year_fraction(quotes.asof, end, conv.day_count)

        def residual(z: float, _sched=schedule, _end=end, _tau=tau_end, _q=quote.value) -> float:
            trial = Curve(quotes.asof, recipe.role,
                          pillars + [(_end, _df_from_zero(z, _tau))], conv.day_count)
            return _ois_par_rate(trial, _sched, conv.day_count) - _q

        z = _solve_pillar(residual, f"OIS {key}")
        pillars.append((end, _df_from_zero(z, tau_end)))

    return Curve(quotes.asof, recipe.role, pillars, conv.day_count)


def _ois_par_rate(curve: Curve, schedule: Schedule, dc: DayCount) -> float:
    floating = curve.discount_factor(schedule.dates[0]) - curve.discount_factor(schedule.dates[-1])
    annuity = sum(curve.discount_factor(e) * year_fraction(s, e, dc)
                  for s, e in schedule.periods)
    return floating / annuity


# ---------------------------------------------------------------------------
# Forwarding bootstrap (deposit + FRA strip + swaps)
# ---------------------------------------------------------------------------

def bootstrap_forward(tenor: Tenor, quotes: QuoteSet, discount: Curve,
                      recipe: BootstrapRecipe) -> Curve:
    """Build the forwarding curve for one index tenor.

    The spot deposit pins the first pseudo-discount pillar, each FRA
    extends the strip in closed form, and each swap quote is matched by
    root-finding the final pillar with coupons discounted on `discount`.
    """
    if recipe.role.is_discounting or recipe.role.tenor != tenor:
        raise ConfigurationError(f"recipe role {recipe.role} does not forward {tenor}")
    if not discount.role.is_discounting:
        raise ConfigurationError("discount curve role must be discounting")
    if discount.asof != quotes.asof:
        raise ConfigurationError(
            f"discount curve as-of {discount.asof} differs from quotes {quotes.asof}")
    conv = recipe.conventions
    spot = conv.spot(quotes.asof)
    label = str(tenor)
    pillars: list[tuple[Date, float]] = [(spot, 1.0)]

    def trial_curve(extra: tuple[Date, float] | None = None) -> Curve:
        pts = pillars + ([extra] if extra else [])
        return Curve(quotes.asof, recipe.role, pts, conv.day_count)

    for kind, key, tenor_label in recipe.instruments:
        quote = quotes.get(kind, key, tenor_label or None)
        if quote is None:
            raise CalibrationError("instrument not quoted",
                                   instrument=f"{kind.value} {key} ({label})")
        if kind is QuoteKind.DEPOSIT:
            end = add_tenor(spot, Tenor.parse(key), conv.calendar, conv.adjustment)
            tau = year_fraction(spot, end, conv.day_count)
            pillars.append((end, 1.0 / (1.0 + quote.value * tau)))
        elif kind is QuoteKind.FRA:
            start_m, end_m = parse_fra_key(key)
            d1 = add_tenor(spot, Tenor(start_m, TenorUnit.MONTHS), conv.calendar, conv.adjustment)
            d2 = add_tenor(spot, Tenor(end_m, TenorUnit.MONTHS), conv.calendar, conv.adjustment)
            if d1 > pillars[-1][0]:
                raise CalibrationError(
                    f"FRA start {d1} beyond the bootstrapped strip ending {pillars[-1][0]}",
                    instrument=f"FRA {key}")
            if d2 <= pillars[-1][0]:
                raise CalibrationError(
                    "FRA overlaps instruments already calibrated",
                    instrument=f"FRA {key}")
            p1 = trial_curve().discount_factor(d1)
            tau = year_fraction(d1, d2, conv.day_count)
            pillars.append((d2, p1 / (1.0 + quote.value * tau)))
        elif kind is QuoteKind.SWAP:
            maturity = Tenor.parse(key)
            end_anchor = add_months(spot, maturity.months)
            end = add_tenor(spot, maturity, conv.calendar, conv.adjustment)
            float_schedule = build_schedule(spot, end_anchor, tenor,
                                            conv.calendar, conv.adjustment)
            fixed_schedule = build_schedule(spot, end_anchor, conv.fixed_frequency,
                                            conv.calendar, conv.adjustment)
            annuity = sum(discount.discount_factor(e) * year_fraction(s, e, conv.day_count)
                          for s, e in fixed_schedule.periods)
            tau_end = year_fraction(quotes.asof, end, conv.day_count)

            def residual(z: float, _fs=float_schedule, _ann=annuity,
                         _end=end, _tau=tau_end, _q=quote.value) -> float:
                fwd = trial_curve((_end, _df_from_zero(z, _tau)))
                floating = sum(
                    discount.discount_factor(e)
                    * simple_forward(fwd, s, e, conv.day_count)
                    * year_fraction(s, e, conv.day_count)
                    for s, e in _fs.periods)
                return floating / _ann - _q

            z = _solve_pillar(residual, f"SWAP {key} ({label})")
            pillars.append((end, _df_from_zero(z, tau_end)))
        else:
            raise ConfigurationError(
                f"forwarding recipe cannot use {kind.value} instruments")

    return Curve(quotes.asof, recipe.role, pillars, conv.day_count)


# ---------------------------------------------------------------------------
# Curve collections
# ---------------------------------------------------------------------------

@dataclass
class CurveSet:
    """A discounting curve plus per-tenor forwarding curves."""

    discount: Curve
    forwards: dict[str, Curve] = field(default_factory=dict)

    def forward_curve(self, tenor: Tenor | str) -> Curve:
        label = str(tenor) if isinstance(tenor, Tenor) else tenor
        try:
            return self.forwards[label]
        except KeyError:
            raise ConfigurationError(f"no forwarding curve for tenor {label}")

    def add(self, curve: Curve) -> None:
        if curve.role.is_discounting:
            self.discount = curve
        else:
            self.forwards[str(curve.role.tenor)] = curve


# ---------------------------------------------------------------------------
# Curve file round trip
# ---------------------------------------------------------------------------

def write_curve_csv(curve: Curve, target: str | TextIO) -> None:
    """Dump pillars as `date,discount_factor` rows with a role comment."""
    if isinstance(target, (str, bytes)):
        with open(target, "w", encoding="utf-8", newline="") as handle:
            write_curve_csv(curve, handle)
            return
    target.write(f"# role={curve.role} asof={curve.asof.isoformat()}\n")
    writer = csv.writer(target, lineterminator="\n")
    writer.writerow(["date", "discount_factor"])
    for d, f in curve.pillars:
        writer.writerow([d.isoformat(), f"{f:.15g}"])


def read_curve_csv(source: str | TextIO,
                   day_count: DayCount = DayCount.ACT_360) -> Curve:
    if isinstance(source, (str, bytes)):
        with open(source, "r", encoding="utf-8", newline="") as handle:
            return read_curve_csv(handle, day_count)
    header = source.readline().strip()
    if not header.startswith("# role="):
        raise ValueError("curve file must start with '# role=<role> asof=<date>'")
    meta = dict(part.split("=", 1) for part in header[2:].split())
    role = CurveRole.parse(meta["role"])
    asof = dt.date.fromisoformat(meta["asof"])
    reader = csv.reader(source)
    rows = [row for row in reader if row]
    if rows and rows[0] == ["date", "discount_factor"]:
        rows = rows[1:]
    pillars = [(dt.date.fromisoformat(d), float(f)) for d, f in rows]
    return Curve(asof, role, pillars, day_count)
