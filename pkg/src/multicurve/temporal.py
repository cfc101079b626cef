"""Calendar, day-count and schedule machinery.

Civil dates are plain ``datetime.date`` objects: they already round-trip
through a serial day number (``toordinal``/``fromordinal``) and carry a
total order. Everything here is pure and immutable once constructed.

EUR money-market defaults live in :data:`EUR_CONVENTIONS`: ACT/360,
TARGET calendar, trade date + 2 business days spot lag, modified-following
rolls.
"""

from __future__ import annotations

import datetime as dt
import re
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache

from .errors import DateOrderError, ScheduleError

Date = dt.date


# ---------------------------------------------------------------------------
# Day counts
# ---------------------------------------------------------------------------

class DayCount(Enum):
    ACT_360 = "ACT/360"
    ACT_365F = "ACT/365F"
    THIRTY_E_360 = "30E/360"

    @classmethod
    def parse(cls, name: str) -> "DayCount":
        key = name.strip().upper().replace("-FIXED", "F").replace(" ", "")
        for dc in cls:
            if dc.value.replace(" ", "") == key:
                return dc
        raise ValueError(f"unknown day count {name!r}")


def year_fraction(d1: Date, d2: Date, dc: DayCount = DayCount.ACT_360) -> float:
    """Accrual fraction between d1 and d2 under the given convention.

    Raises DateOrderError if d1 > d2. ACT conventions are additive:
    yf(a,b) + yf(b,c) == yf(a,c).
    """
    if d1 > d2:
        raise DateOrderError(f"{d1} > {d2}")
    if dc is DayCount.ACT_360:
        return (d2 - d1).days / 360.0
    if dc is DayCount.ACT_365F:
        return (d2 - d1).days / 365.0
    # 30E/360: day-of-month 31 counts as 30 on both legs
    dd1 = min(d1.day, 30)
    dd2 = min(d2.day, 30)
    days = 360 * (d2.year - d1.year) + 30 * (d2.month - d1.month) + (dd2 - dd1)
    return days / 360.0


# ---------------------------------------------------------------------------
# Calendars
# ---------------------------------------------------------------------------

def easter_sunday(year: int) -> Date:
    """Western Easter Sunday via the standard Gregorian computus."""
    a = year % 19
    b, c = divmod(year, 100)
    d, e = divmod(b, 4)
    f = (b + 8) // 25
    g = (b - f + 1) // 3
    h = (19 * a + b - d - g + 15) % 30
    i, k = divmod(c, 4)
    l = (32 + 2 * e + 2 * i - h - k) % 7
    m = (a + 11 * h + 22 * l) // 451
    month, day = divmod(h + l - 7 * m + 114, 31)
    return dt.date(year, month, day + 1)


class Calendar:
    """Business-day calendar: Saturday/Sunday weekends plus a holiday set."""

    def __init__(self, name: str, holidays: frozenset[Date] = frozenset()):
        self.name = name
        self._holidays = frozenset(holidays)

    def is_holiday(self, d: Date) -> bool:
        return d in self._holidays

    def is_business_day(self, d: Date) -> bool:
        return d.weekday() < 5 and not self.is_holiday(d)

    def next_business_day(self, d: Date) -> Date:
        while not self.is_business_day(d):
            d += dt.timedelta(days=1)
        return d

    def previous_business_day(self, d: Date) -> Date:
        while not self.is_business_day(d):
            d -= dt.timedelta(days=1)
        return d

    def add_business_days(self, d: Date, n: int) -> Date:
        step = dt.timedelta(days=1 if n >= 0 else -1)
        remaining = abs(n)
        while remaining > 0:
            d += step
            if self.is_business_day(d):
                remaining -= 1
        return d

    def __repr__(self) -> str:
        return f"Calendar({self.name!r})"


class TargetCalendar(Calendar):
    """TARGET settlement calendar for the euro area.

    Holidays: New Year's Day, Good Friday, Easter Monday, Labour Day,
    Christmas Day, Boxing Day. Easter-linked dates are computed, so any
    year works.
    """

    def __init__(self):
        super().__init__("TARGET")

    @staticmethod
    @lru_cache(maxsize=None)
    def _holidays_for(year: int) -> frozenset[Date]:
        easter = easter_sunday(year)
        return frozenset({
            dt.date(year, 1, 1),
            easter - dt.timedelta(days=2),   # Good Friday
            easter + dt.timedelta(days=1),   # Easter Monday
            dt.date(year, 5, 1),
            dt.date(year, 12, 25),
            dt.date(year, 12, 26),
        })

    def is_holiday(self, d: Date) -> bool:
        return d in self._holidays_for(d.year)


TARGET = TargetCalendar()


# ---------------------------------------------------------------------------
# Tenors and rolls
# ---------------------------------------------------------------------------

class TenorUnit(Enum):
    DAYS = "D"
    BUSINESS_DAYS = "B"
    WEEKS = "W"
    MONTHS = "M"
    YEARS = "Y"


_TENOR_RE = re.compile(r"^(-?\d+)\s*([DBWMY])$", re.IGNORECASE)


@dataclass(frozen=True, order=True)
class Tenor:
    n: int
    unit: TenorUnit = field(compare=False)
    # months attribute drives ordering/comparison for M/Y tenors
    sort_index: int = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "sort_index", self.approx_days())

    @classmethod
    def parse(cls, text: str) -> "Tenor":
        m = _TENOR_RE.match(text.strip())
        if not m:
            raise ValueError(f"cannot parse tenor {text!r}")
        return cls(int(m.group(1)), TenorUnit(m.group(2).upper()))

    @property
    def months(self) -> int:
        if self.unit is TenorUnit.MONTHS:
            return self.n
        if self.unit is TenorUnit.YEARS:
            return 12 * self.n
        raise ValueError(f"{self} has no whole-month equivalent")

    def approx_days(self) -> int:
        scale = {
            TenorUnit.DAYS: 1,
            TenorUnit.BUSINESS_DAYS: 1,
            TenorUnit.WEEKS: 7,
            TenorUnit.MONTHS: 30,
            TenorUnit.YEARS: 365,
        }
        return self.n * scale[self.unit]

    def __str__(self) -> str:
        return f"{self.n}{self.unit.value}"


ON = Tenor(1, TenorUnit.DAYS)  # overnight index tenor


class Adjustment(Enum):
    UNADJUSTED = "unadjusted"
    FOLLOWING = "following"
    MODIFIED_FOLLOWING = "modified-following"

    @classmethod
    def parse(cls, name: str) -> "Adjustment":
        key = name.strip().lower().replace("_", "-")
        for rule in cls:
            if rule.value == key:
                return rule
        raise ValueError(f"unknown adjustment rule {name!r}")


def adjust(d: Date, cal: Calendar, rule: Adjustment) -> Date:
    if rule is Adjustment.UNADJUSTED or cal.is_business_day(d):
        return d
    rolled = cal.next_business_day(d)
    if rule is Adjustment.MODIFIED_FOLLOWING and rolled.month != d.month:
        return cal.previous_business_day(d)
    return rolled


def add_months(d: Date, months: int) -> Date:
    """Calendar-month shift with end-of-month day clamping."""
    total = d.year * 12 + (d.month - 1) + months
    year, month0 = divmod(total, 12)
    month = month0 + 1
    last = _days_in_month(year, month)
    return dt.date(year, month, min(d.day, last))


def _days_in_month(year: int, month: int) -> int:
    if month == 12:
        return 31
    return (dt.date(year, month + 1, 1) - dt.timedelta(days=1)).day


def add_tenor(d: Date, tenor: Tenor, cal: Calendar,
              rule: Adjustment = Adjustment.MODIFIED_FOLLOWING) -> Date:
    """Shift a date by a tenor and roll the result onto a business day.

    Business-day tenors step through the calendar directly and need no
    further adjustment; 0 business days is the identity.
    """
    if tenor.unit is TenorUnit.BUSINESS_DAYS:
        return cal.add_business_days(d, tenor.n)
    if tenor.unit is TenorUnit.DAYS:
        raw = d + dt.timedelta(days=tenor.n)
    elif tenor.unit is TenorUnit.WEEKS:
        raw = d + dt.timedelta(weeks=tenor.n)
    else:
        raw = add_months(d, tenor.months)
    return adjust(raw, cal, rule)


def spot_date(trade_date: Date, cal: Calendar, lag: int = 2) -> Date:
    """Settlement date: trade date plus `lag` business days."""
    return cal.add_business_days(trade_date, lag)


# ---------------------------------------------------------------------------
# Schedules
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Schedule:
    """Adjusted coupon grid; dates[0] is the rolled start date."""

    dates: tuple[Date, ...]
    unadjusted: tuple[Date, ...]
    frequency: Tenor
    rule: Adjustment

    def __post_init__(self):
        if any(b <= a for a, b in zip(self.dates, self.dates[1:])):
            raise ScheduleError(f"schedule dates not strictly increasing: {self.dates}")

    @property
    def periods(self) -> tuple[tuple[Date, Date], ...]:
        return tuple(zip(self.dates[:-1], self.dates[1:]))

    def __len__(self) -> int:
        return len(self.dates)


def build_schedule(start: Date, end: Date, freq: Tenor, cal: Calendar,
                   rule: Adjustment = Adjustment.MODIFIED_FOLLOWING) -> Schedule:
    """Regular schedule from unadjusted anchors.

    The span must be an integer number of frequency periods; anything else
    raises ScheduleError rather than producing a stub.
    """
    if start >= end:
        raise ScheduleError(f"start {start} must precede end {end}")
    step = freq.months  # raises for day/week frequencies, which have no coupon use here
    if step <= 0:
        raise ScheduleError(f"frequency must be positive, got {freq}")
    unadjusted = [start]
    current = start
    k = 0
    while current < end:
        k += 1
        current = add_months(start, k * step)
        unadjusted.append(current)
    if current != end:
        raise ScheduleError(
            f"({start}, {end}) is not an integer multiple of {freq}")
    dates = tuple(adjust(d, cal, rule) for d in unadjusted)
    return Schedule(dates=dates, unadjusted=tuple(unadjusted), frequency=freq, rule=rule)


# ---------------------------------------------------------------------------
# Market conventions bundle
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Conventions:
    day_count: DayCount = DayCount.ACT_360
    calendar: Calendar = TARGET
    spot_lag: int = 2
    adjustment: Adjustment = Adjustment.MODIFIED_FOLLOWING
    fixed_frequency: Tenor = Tenor(12, TenorUnit.MONTHS)

    def spot(self, trade_date: Date) -> Date:
        return spot_date(trade_date, self.calendar, self.spot_lag)


EUR_CONVENTIONS = Conventions()
