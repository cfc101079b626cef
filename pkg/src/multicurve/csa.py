"""Collateral-account margination and collateral-rate discounting.

Under a perfect cash-collateral agreement the account is re-margined to
the deal's NPV at every margination date and accrues the collateral rate
in between:

    B(T_i) = B(T_{i-1}) * [1 + R_c(T_{i-1}) * dtau_i] + transfer(T_i)
    post-transfer balance = NPV(T_i)

Running that ledger on a single-cash-flow deal shows the no-arbitrage
point directly: the initial amount posted equals the payoff discounted at
the collateral rate, so collateralised cash flows must be discounted on
the collateral (overnight) curve. Without collateral, discounting moves
to the party's own funding curve plus spread, and the two sides of the
same deal stop agreeing on its value.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .curves import Curve
from .errors import AlignmentError, ConfigurationError
from .temporal import Date, DayCount, year_fraction


def margination_step(prev_balance: float, r_c: float, dtau: float,
                     target_npv: float) -> tuple[float, float]:
    """One margination period: accrue the balance, top up to the NPV.

    Returns (accrued balance, margin transfer); the post-transfer balance
    is exactly target_npv.
    """
    if dtau <= 0.0:
        raise ValueError(f"accrual fraction must be positive, got {dtau}")
    accrued = prev_balance * (1.0 + r_c * dtau)
    return accrued, target_npv - accrued


@dataclass(frozen=True)
class LedgerRow:
    date: Date
    rc_fixing: float      # collateral rate observed on this date
    accrued: float        # balance after accrual, before the transfer
    transfer: float
    balance: float        # post-transfer balance == NPV on the date


@dataclass(frozen=True)
class CollateralAccount:
    rows: tuple[LedgerRow, ...]
    day_count: DayCount

    @property
    def initial_posted(self) -> float:
        return self.rows[0].transfer

    @property
    def final_balance(self) -> float:
        return self.rows[-1].balance

    def csv_lines(self) -> list[str]:
        lines = ["date,rc_fixing_pct,accrued,transfer,balance"]
        for row in self.rows:
            lines.append(
                f"{row.date.isoformat()},{row.rc_fixing * 100:.6f},"
                f"{row.accrued:.10f},{row.transfer:.10f},{row.balance:.10f}")
        return lines


def simulate_margination(npv_path: Sequence[tuple[Date, float]],
                         rc_fixings: Sequence[tuple[Date, float]],
                         dc: DayCount = DayCount.ACT_360) -> CollateralAccount:
    """Run the margination ledger over a dated NPV path.

    The fixing series must share the NPV path's date axis; the fixing on
    each date covers the following period (the last one is never used).
    The first date's transfer funds the account from zero.
    """
    if not npv_path:
        raise AlignmentError("empty NPV path")
    npv_dates = [d for d, _ in npv_path]
    fix_dates = [d for d, _ in rc_fixings]
    if npv_dates != fix_dates:
        raise AlignmentError("NPV path and fixing series must share a date axis")
    if any(b <= a for a, b in zip(npv_dates, npv_dates[1:])):
        raise AlignmentError("margination dates must be strictly increasing")
    fixings = [r for _, r in rc_fixings]
    rows: list[LedgerRow] = []
    first_date, first_npv = npv_path[0]
    rows.append(LedgerRow(date=first_date, rc_fixing=fixings[0],
                          accrued=0.0, transfer=first_npv, balance=first_npv))
    balance = first_npv
    for i in range(1, len(npv_path)):
        date, npv = npv_path[i]
        dtau = year_fraction(npv_dates[i - 1], date, dc)
        accrued, transfer = margination_step(balance, fixings[i - 1], dtau, npv)
        balance = npv
        rows.append(LedgerRow(date=date, rc_fixing=fixings[i],
                              accrued=accrued, transfer=transfer, balance=balance))
    return CollateralAccount(rows=tuple(rows), day_count=dc)


def csa_discount_pv(payoff: float, pay_date: Date, rc_curve: Curve) -> float:
    """Value of a collateralised cash flow: discount at the collateral rate."""
    if not rc_curve.role.is_discounting:
        raise ConfigurationError(f"collateral curve has role {rc_curve.role}")
    return rc_curve.discount_factor(pay_date) * payoff


# ---------------------------------------------------------------------------
# Funding without CSA
# ---------------------------------------------------------------------------

class FundingMode(Enum):
    CSA = "csa"
    UNSECURED = "unsecured"


@dataclass(frozen=True)
class FundingSpec:
    mode: FundingMode
    curve: Curve | None = None      # money-market curve for unsecured funding
    spread: float = 0.0             # funding spread over the curve's forwards

    def __post_init__(self):
        if self.mode is FundingMode.UNSECURED and self.curve is None:
            raise ConfigurationError("unsecured funding needs a funding curve")
        if not self.spread == self.spread or self.spread in (float("inf"), float("-inf")):
            raise ConfigurationError("funding spread must be finite")

    @classmethod
    def csa(cls) -> "FundingSpec":
        return cls(mode=FundingMode.CSA)

    @classmethod
    def unsecured(cls, curve: Curve, spread: float = 0.0) -> "FundingSpec":
        return cls(mode=FundingMode.UNSECURED, curve=curve, spread=spread)


def funding_discount_pv(payoff: float, pay_date: Date, funding: FundingSpec,
                        collateral_curve: Curve | None = None,
                        dc: DayCount = DayCount.ACT_360) -> float:
    """Value of the same cash flow funded in the money market.

    The payoff is rolled back through the funding curve's pillar grid,
    each period growing at the period forward plus the funding spread.
    With zero spread and the funding curve equal to the collateral curve
    this reproduces collateral-rate discounting.
    """
    if funding.mode is FundingMode.CSA:
        if collateral_curve is None:
            raise ConfigurationError("CSA funding needs the collateral curve")
        return csa_discount_pv(payoff, pay_date, collateral_curve)
    curve = funding.curve
    grid = [curve.asof] + [d for d in curve.dates if d < pay_date] + [pay_date]
    growth = 1.0
    for start, end in zip(grid, grid[1:]):
        tau = year_fraction(start, end, dc)
        if tau == 0.0:
            continue
        fwd = (curve.discount_factor(start) / curve.discount_factor(end) - 1.0) / tau
        growth *= 1.0 + (fwd + funding.spread) * tau
    return payoff / growth
