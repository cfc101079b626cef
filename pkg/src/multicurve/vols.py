"""At-the-money straddle premia and lognormal implied volatility.

Option desks quote ATM swaption straddles either as premia (cents per 100
notional) or as lognormal implied volatilities. Struck at the forward,
payer and receiver are worth the same and the straddle collapses to

    premium = 2 * annuity * forward * (2 * N(vol * sqrt(t) / 2) - 1)

with N the standard normal CDF. The map is strictly increasing in vol
with supremum 2 * annuity * forward, so inversion is a clean bisection.

Forward premia convert to spot premia by discounting to the option
expiry; two desks discounting on different curves book different spot
premia and different implied vols from the same forward premium, yet both
round-trip to the same forward number, which is why the quotation switch
to overnight-curve discounting left traded prices unchanged.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence, TextIO

from .errors import InversionError

_VOL_TOL = 1e-12
_MAX_EXPANSIONS = 200


class QuoteSurface(Enum):
    FORWARD_PREMIUM = "forward_premium"
    SPOT_PREMIUM = "spot_premium"
    IMPLIED_VOL = "implied_vol"


@dataclass(frozen=True)
class SwaptionQuote:
    expiry: str                # option expiry label, e.g. "1Y"
    tenor: str                 # underlying swap tenor label, e.g. "10Y"
    kind: QuoteSurface
    value: float               # cents of notional for premia, fraction for vols

    def __post_init__(self):
        if self.kind is QuoteSurface.IMPLIED_VOL and self.value <= 0:
            raise ValueError("implied volatility quote must be positive")
        if self.kind is not QuoteSurface.IMPLIED_VOL and self.value < 0:
            raise ValueError("premium quote must be nonnegative")


def norm_cdf(x: float) -> float:
    return 0.5 * math.erfc(-x / math.sqrt(2.0))


def black_atm_straddle_premium(forward_rate: float, vol: float,
                               expiry: float, annuity: float) -> float:
    """Price of payer plus receiver struck at the forward."""
    if vol < 0.0:
        raise ValueError(f"volatility must be nonnegative, got {vol}")
    if expiry <= 0.0:
        raise ValueError(f"expiry must be positive, got {expiry}")
    if annuity <= 0.0:
        raise ValueError(f"annuity must be positive, got {annuity}")
    half = 0.5 * vol * math.sqrt(expiry)
    return 2.0 * annuity * forward_rate * (2.0 * norm_cdf(half) - 1.0)


def implied_vol_from_premium(premium: float, forward_rate: float,
                             expiry: float, annuity: float) -> float:
    """Unique vol reproducing an ATM straddle premium, by bisection.

    The premium must sit in [0, 2 * annuity * forward), the attainable
    range; the upper bound is the infinite-vol supremum.
    """
    supremum = 2.0 * annuity * forward_rate
    if premium < 0.0 or premium >= supremum:
        raise InversionError(
            f"premium {premium} outside attainable range [0, {supremum})")
    if premium == 0.0:
        return 0.0
    lo, hi = 0.0, 1.0
    expansions = 0
    while black_atm_straddle_premium(forward_rate, hi, expiry, annuity) < premium:
        hi *= 2.0
        expansions += 1
        if expansions > _MAX_EXPANSIONS:
            raise InversionError("volatility bracket expansion failed")
    while hi - lo > _VOL_TOL:
        mid = 0.5 * (lo + hi)
        if black_atm_straddle_premium(forward_rate, mid, expiry, annuity) < premium:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def spot_from_forward_premium(forward_premium: float,
                              discount_factor_to_expiry: float) -> float:
    """Spot premium: the forward premium discounted to today."""
    if not 0.0 < discount_factor_to_expiry <= 1.0:
        raise ValueError(
            f"discount factor {discount_factor_to_expiry} outside (0, 1]")
    return discount_factor_to_expiry * forward_premium


def forward_from_spot_premium(spot_premium: float,
                              discount_factor_to_expiry: float) -> float:
    if not 0.0 < discount_factor_to_expiry <= 1.0:
        raise ValueError(
            f"discount factor {discount_factor_to_expiry} outside (0, 1]")
    return spot_premium / discount_factor_to_expiry


# ---------------------------------------------------------------------------
# Panel-grid CSV (broker layout: expiries down, tenors across)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QuoteGrid:
    kind: QuoteSurface
    expiries: tuple[str, ...]
    tenors: tuple[str, ...]
    values: tuple[tuple[float, ...], ...]   # row per expiry

    def value(self, expiry: str, tenor: str) -> float:
        return self.values[self.expiries.index(expiry)][self.tenors.index(tenor)]


def write_grid_csv(grid: QuoteGrid, target: str | TextIO) -> None:
    if isinstance(target, (str, bytes)):
        with open(target, "w", encoding="utf-8", newline="") as handle:
            write_grid_csv(grid, handle)
            return
    target.write(f"# kind={grid.kind.value}\n")
    writer = csv.writer(target, lineterminator="\n")
    writer.writerow(["expiry", *grid.tenors])
    for expiry, row in zip(grid.expiries, grid.values):
        writer.writerow([expiry, *(f"{v:.6g}" for v in row)])


def read_grid_csv(source: str | TextIO) -> QuoteGrid:
    if isinstance(source, (str, bytes)):
        with open(source, "r", encoding="utf-8", newline="") as handle:
            return read_grid_csv(handle)
    header = source.readline().strip()
    if not header.startswith("# kind="):
        raise ValueError("grid file must start with '# kind=<surface kind>'")
    kind = QuoteSurface(header.split("=", 1)[1])
    reader = csv.reader(source)
    head = next(reader)
    if not head or head[0] != "expiry":
        raise ValueError("grid header row must start with 'expiry'")
    tenors = tuple(head[1:])
    expiries: list[str] = []
    values: list[tuple[float, ...]] = []
    for row in reader:
        if not row:
            continue
        expiries.append(row[0])
        values.append(tuple(float(v) for v in row[1:]))
    return QuoteGrid(kind=kind, expiries=tuple(expiries), tenors=tenors,
                     values=tuple(values))
