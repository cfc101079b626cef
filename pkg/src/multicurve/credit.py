"""Risky-Libor credit model for the FRA/forward basis.

The interbank term rate is modelled as the funding rate of an abstract
average panel bank that may default. With recovery R_x, loss given
default LGD_x = 1 - R_x, and forward default probability Q over the
accrual period, and assuming default is independent of rates, the
defaultable zero-coupon bond is worth

    P_x = P_d * S,        S = 1 - LGD_x * Q,

where P_d is the default-free factor and S the survival-adjusted factor,
bounded in [0, 1]. The risky term rate is the simple rate of that bond,
and the two market FRA styles price as

    std(K) = N * w * [P_d1 / S - P_d2 * (1 + K * tau)]
    mkt(K) = N * w * [P_d1 - P_d2 * (1 + K * tau) * S]  = std(K) * S

Both vanish at the same equilibrium rate

    K* = [(P_d1 / P_d2) / S - 1] / tau  >=  F_d = (P_d1 / P_d2 - 1) / tau,

with equality exactly when LGD * Q = 0: default risk in the fixing pushes
the equilibrium FRA rate above the default-free forward, which is the
post-2007 positive basis in its simplest form.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import MultiCurveError
from .temporal import Date, DayCount, year_fraction


class FraStyle(Enum):
    STANDARD = "standard"   # pays (L - K) * tau at period end
    MARKET = "market"       # pays the discounted difference at period start


@dataclass(frozen=True)
class CreditParams:
    """Average-panel-bank default parameters.

    recovery and forward default probability both live in [0, 1];
    loss given default is their complement by construction.
    """

    recovery: float
    q: float

    def __post_init__(self):
        if not 0.0 <= self.recovery <= 1.0:
            raise ValueError(f"recovery {self.recovery} outside [0, 1]")
        if not 0.0 <= self.q <= 1.0:
            raise ValueError(f"default probability {self.q} outside [0, 1]")

    @classmethod
    def from_lgd(cls, lgd: float, q: float) -> "CreditParams":
        return cls(recovery=1.0 - lgd, q=q)

    @property
    def lgd(self) -> float:
        return 1.0 - self.recovery


@dataclass(frozen=True)
class FraContract:
    fixing: Date
    payment: Date
    rate: float                    # fixed rate K
    notional: float = 1.0
    sign: int = 1                  # +1 payer of fixed, -1 receiver
    style: FraStyle = FraStyle.STANDARD
    day_count: DayCount = DayCount.ACT_360

    def __post_init__(self):
        if self.fixing >= self.payment:
            raise ValueError(f"fixing {self.fixing} must precede payment {self.payment}")
        if self.sign not in (-1, 1):
            raise ValueError("sign must be +1 or -1")

    @property
    def tau(self) -> float:
        return year_fraction(self.fixing, self.payment, self.day_count)


def survival_factor(params: CreditParams) -> float:
    """Survival-adjusted factor 1 - LGD * Q, in [0, 1]; 1 iff riskless."""
    return 1.0 - params.lgd * params.q


def risky_bond_price(p_d: float, params: CreditParams) -> float:
    """Defaultable zero-coupon bond: default-free price times survival factor."""
    if not 0.0 < p_d <= 1.0:
        raise ValueError(f"default-free factor {p_d} outside (0, 1]")
    return p_d * survival_factor(params)


def risky_libor(p_x: float, tau: float) -> float:
    """Simple rate implied by a (risky) discount factor over accrual tau."""
    if p_x <= 0.0:
        raise MultiCurveError(f"discount factor must be positive, got {p_x}")
    if tau <= 0.0:
        raise MultiCurveError(f"accrual must be positive, got {tau}")
    return (1.0 / p_x - 1.0) / tau


def libor_discount_factor(rate: float, tau: float) -> float:
    """Inverse of risky_libor: 1 / (1 + L * tau)."""
    return 1.0 / (1.0 + rate * tau)


def fra_std_price(contract: FraContract, p_d1: float, p_d2: float,
                  params: CreditParams) -> float:
    """Value of the period-end-settled FRA on the risky fixing."""
    s = survival_factor(params)
    if s <= 0.0:
        raise MultiCurveError("survival factor is zero: risky rate undefined")
    tau = contract.tau
    return contract.notional * contract.sign * (
        p_d1 / s - p_d2 * (1.0 + contract.rate * tau))


def fra_mkt_price(contract: FraContract, p_d1: float, p_d2: float,
                  params: CreditParams) -> float:
    """Value of the market FRA, settled discounted at period start.

    Computed from its own expectation; equals the standard price scaled by
    the survival factor, which the tests assert rather than assume.
    """
    s = survival_factor(params)
    tau = contract.tau
    return contract.notional * contract.sign * (
        p_d1 - p_d2 * (1.0 + contract.rate * tau) * s)


def fra_equilibrium_rate(p_d1: float, p_d2: float, params: CreditParams,
                         tau: float) -> float:
    """Rate K* at which both FRA styles price to zero."""
    if p_d1 <= 0.0 or p_d2 <= 0.0:
        raise MultiCurveError("discount factors must be positive")
    if tau <= 0.0:
        raise MultiCurveError(f"accrual must be positive, got {tau}")
    s = survival_factor(params)
    if s <= 0.0:
        raise MultiCurveError("survival factor is zero: equilibrium rate undefined")
    return ((p_d1 / p_d2) / s - 1.0) / tau


def default_free_forward(p_d1: float, p_d2: float, tau: float) -> float:
    return (p_d1 / p_d2 - 1.0) / tau


def basis_over_riskfree(p_d1: float, p_d2: float, params: CreditParams,
                        tau: float) -> float:
    """Equilibrium FRA rate minus the default-free forward.

    Nonnegative for every valid parameter set; zero exactly on the
    LGD * Q = 0 face.
    """
    return (fra_equilibrium_rate(p_d1, p_d2, params, tau)
            - default_free_forward(p_d1, p_d2, tau))


def sweep_csv_lines(lgds, qs, p_d1: float, p_d2: float, tau: float) -> list[str]:
    """Parameter sweep in the export layout
    `LGD,Q,tau,Pd1,Pd2,K_star_pct,Fd_pct,basis_bp`."""
    lines = ["LGD,Q,tau,Pd1,Pd2,K_star_pct,Fd_pct,basis_bp"]
    f_d = default_free_forward(p_d1, p_d2, tau)
    for lgd in lgds:
        for q in qs:
            params = CreditParams.from_lgd(lgd, q)
            k_star = fra_equilibrium_rate(p_d1, p_d2, params, tau)
            lines.append(
                f"{lgd:.4f},{q:.4f},{tau:.6f},{p_d1:.8f},{p_d2:.8f},"
                f"{k_star * 100:.6f},{f_d * 100:.6f},{(k_star - f_d) * 1e4:.4f}")
    return lines
