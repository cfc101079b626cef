import datetime as dt

import pytest
from hypothesis import given
from hypothesis import strategies as st

from multicurve.errors import DateOrderError, ScheduleError
from multicurve.temporal import (
    Adjustment, Calendar, DayCount, EUR_CONVENTIONS, TARGET, Tenor, TenorUnit,
    add_months, add_tenor, adjust, build_schedule, easter_sunday, spot_date,
    year_fraction,
)

D = dt.date

dates = st.dates(min_value=D(1990, 1, 1), max_value=D(2060, 12, 31))


# ---------------------------------------------------------------------------
# year_fraction
# ---------------------------------------------------------------------------

def test_year_fraction_identity_is_zero():
    d = D(2011, 12, 30)
    for dc in DayCount:
        assert year_fraction(d, d, dc) == 0.0


def test_year_fraction_act360_matches_day_subtraction():
    d1, d2 = D(2012, 1, 3), D(2012, 7, 3)
    assert (d2 - d1).days == 182  # serial-day oracle
    assert year_fraction(d1, d2, DayCount.ACT_360) == pytest.approx(182 / 360)


def test_year_fraction_360_day_span_is_one():
    d1 = D(2012, 1, 3)
    d2 = d1 + dt.timedelta(days=360)
    assert year_fraction(d1, d2, DayCount.ACT_360) == 1.0


def test_year_fraction_30e360_half_year():
    assert year_fraction(D(2012, 1, 30), D(2012, 7, 30), DayCount.THIRTY_E_360) == 0.5


def test_year_fraction_30e360_clips_day_31():
    assert year_fraction(D(2012, 1, 31), D(2012, 3, 31), DayCount.THIRTY_E_360) == \
        pytest.approx(60 / 360)


def test_year_fraction_rejects_reversed_dates():
    with pytest.raises(DateOrderError):
        year_fraction(D(2012, 1, 2), D(2012, 1, 1), DayCount.ACT_360)


@given(dates, dates, dates)
def test_act_conventions_are_additive(a, b, c):
    a, b, c = sorted([a, b, c])
    for dc in (DayCount.ACT_360, DayCount.ACT_365F):
        assert year_fraction(a, b, dc) + year_fraction(b, c, dc) == \
            pytest.approx(year_fraction(a, c, dc), abs=1e-12)


@given(dates, st.integers(min_value=0, max_value=5000),
       st.integers(min_value=-3000, max_value=3000))
def test_act360_translation_consistent(start, span, shift):
    end = start + dt.timedelta(days=span)
    s2 = start + dt.timedelta(days=shift)
    e2 = end + dt.timedelta(days=shift)
    assert year_fraction(start, end, DayCount.ACT_360) == \
        year_fraction(s2, e2, DayCount.ACT_360)


# ---------------------------------------------------------------------------
# Calendar and Easter
# ---------------------------------------------------------------------------

def test_easter_sunday_known_dates():
    known = {2000: D(2000, 4, 23), 2008: D(2008, 3, 23), 2011: D(2011, 4, 24),
             2012: D(2012, 4, 8), 2016: D(2016, 3, 27), 2024: D(2024, 3, 31),
             2038: D(2038, 4, 25)}
    for year, expected in known.items():
        assert easter_sunday(year) == expected


def test_target_holidays_2012():
    assert not TARGET.is_business_day(D(2012, 1, 1))    # New Year (Sunday anyway)
    assert not TARGET.is_business_day(D(2012, 4, 6))    # Good Friday
    assert not TARGET.is_business_day(D(2012, 4, 9))    # Easter Monday
    assert not TARGET.is_business_day(D(2012, 5, 1))    # Labour Day
    assert not TARGET.is_business_day(D(2012, 12, 25))
    assert not TARGET.is_business_day(D(2012, 12, 26))
    assert TARGET.is_business_day(D(2012, 1, 2))        # plain Monday
    assert TARGET.is_business_day(D(2012, 4, 5))        # Maundy Thursday trades


def test_custom_calendar_holiday_set():
    cal = Calendar("ad-hoc", frozenset({D(2012, 1, 4)}))
    assert not cal.is_business_day(D(2012, 1, 4))
    assert cal.is_business_day(D(2012, 1, 5))


# ---------------------------------------------------------------------------
# add_tenor
# ---------------------------------------------------------------------------

def _enumerate_business_days(start, n, cal):
    d = start
    for _ in range(n):
        d += dt.timedelta(days=1)
        while not cal.is_business_day(d):
            d += dt.timedelta(days=1)
    return d


def test_spot_two_business_days_over_year_end():
    # 2011-12-31 Sat, 2012-01-01 Sun/holiday, 2012-01-02 first business day
    oracle = _enumerate_business_days(D(2011, 12, 30), 2, TARGET)
    assert oracle == D(2012, 1, 3)
    assert add_tenor(D(2011, 12, 30), Tenor(2, TenorUnit.BUSINESS_DAYS), TARGET) == oracle
    assert spot_date(D(2011, 12, 30), TARGET) == oracle


def test_zero_business_days_is_identity():
    d = D(2012, 1, 3)
    assert add_tenor(d, Tenor(0, TenorUnit.BUSINESS_DAYS), TARGET) == d


def test_month_end_modified_following_leap():
    assert add_tenor(D(2012, 1, 31), Tenor(1, TenorUnit.MONTHS), TARGET,
                     Adjustment.MODIFIED_FOLLOWING) == D(2012, 2, 29)


def test_modified_following_rolls_back_at_month_end():
    # 2012-05-31 + 1M lands on Saturday 2012-06-30; following would cross into July
    out = add_tenor(D(2012, 5, 31), Tenor(1, TenorUnit.MONTHS), TARGET,
                    Adjustment.MODIFIED_FOLLOWING)
    assert out == D(2012, 6, 29)
    following = add_tenor(D(2012, 5, 31), Tenor(1, TenorUnit.MONTHS), TARGET,
                          Adjustment.FOLLOWING)
    assert following == D(2012, 7, 2)


@given(dates, st.integers(min_value=1, max_value=60))
def test_following_never_precedes_unadjusted(d, months):
    raw = add_months(d, months)
    rolled = add_tenor(d, Tenor(months, TenorUnit.MONTHS), TARGET, Adjustment.FOLLOWING)
    assert rolled >= raw
    assert TARGET.is_business_day(rolled)


@given(dates, st.integers(min_value=1, max_value=60))
def test_modified_following_stays_in_month(d, months):
    raw = add_months(d, months)
    rolled = add_tenor(d, Tenor(months, TenorUnit.MONTHS), TARGET,
                       Adjustment.MODIFIED_FOLLOWING)
    assert (rolled.year, rolled.month) == (raw.year, raw.month)
    assert TARGET.is_business_day(rolled)


@given(dates, st.integers(min_value=0, max_value=500))
def test_business_day_addition_matches_enumeration(d, n):
    assert TARGET.add_business_days(d, n) == _enumerate_business_days(d, n, TARGET)


def test_tenor_parse_round_trip():
    for text in ("1D", "2B", "3W", "6M", "12M", "2Y"):
        assert str(Tenor.parse(text)) == text
    with pytest.raises(ValueError):
        Tenor.parse("6Q")


# ---------------------------------------------------------------------------
# Schedules
# ---------------------------------------------------------------------------

def test_schedule_quarterly_year_has_four_periods():
    spot = D(2012, 1, 3)
    sched = build_schedule(spot, add_months(spot, 12), Tenor(3, TenorUnit.MONTHS), TARGET)
    assert len(sched.periods) == 4
    assert sched.dates[0] == spot


def test_schedule_single_period():
    spot = D(2012, 1, 3)
    sched = build_schedule(spot, add_months(spot, 6), Tenor(6, TenorUnit.MONTHS), TARGET)
    assert len(sched.periods) == 1


def test_schedule_rejects_non_integral_span():
    spot = D(2012, 1, 3)
    with pytest.raises(ScheduleError):
        build_schedule(spot, add_months(spot, 12), Tenor(5, TenorUnit.MONTHS), TARGET)


def test_schedule_unadjusted_dates_step_by_frequency():
    spot = D(2012, 1, 31)
    sched = build_schedule(spot, add_months(spot, 12), Tenor(3, TenorUnit.MONTHS), TARGET)
    for k, d in enumerate(sched.unadjusted):
        assert d == add_months(spot, 3 * k)
    assert all(TARGET.is_business_day(d) for d in sched.dates)


def test_schedule_accruals_sum_to_total_span():
    # ACT additivity makes the telescoped sum exact
    spot = D(2012, 1, 3)
    sched = build_schedule(spot, add_months(spot, 24), Tenor(3, TenorUnit.MONTHS), TARGET)
    total = sum(year_fraction(a, b, DayCount.ACT_360) for a, b in sched.periods)
    assert total == pytest.approx(
        year_fraction(sched.dates[0], sched.dates[-1], DayCount.ACT_360), abs=1e-12)


def test_adjust_unadjusted_returns_input():
    d = D(2012, 1, 1)
    assert adjust(d, TARGET, Adjustment.UNADJUSTED) == d


def test_eur_conventions_defaults():
    assert EUR_CONVENTIONS.day_count is DayCount.ACT_360
    assert EUR_CONVENTIONS.spot_lag == 2
    assert EUR_CONVENTIONS.spot(D(2011, 12, 30)) == D(2012, 1, 3)
