"""Multi-curve EUR fixed-income analytics.

Bootstraps the overnight-index discounting curve and tenor-specific
forwarding curves from market quotes, replicates FRA rates from deposit
and OIS strips, prices multi-tenor swap legs and basis spreads, carries a
simple default-risk model for the FRA/forward basis, simulates collateral
margination, and computes interbank credit and liquidity stress indices.
"""

from .credit import (
    CreditParams, FraContract, FraStyle, basis_over_riskfree,
    default_free_forward, fra_equilibrium_rate, fra_mkt_price, fra_std_price,
    risky_bond_price, risky_libor, survival_factor,
)
from .csa import (
    CollateralAccount, FundingSpec, csa_discount_pv, funding_discount_pv,
    margination_step, simulate_margination,
)
from .curves import (
    BootstrapRecipe, Curve, CurveRole, CurveSet, bootstrap_discount,
    bootstrap_forward, discount_factor, forward_recipe, ois_recipe,
    read_curve_csv, simple_forward, write_curve_csv,
)
from .indices import (
    CorridorResult, IndexPoint, PanelQuotes, corridor_check,
    liquidity_surplus_index, moving_average, trimmed_mean_index,
)
from .market_data import (
    EcbSnapshot, Quote, QuoteKind, QuoteSet, dump_quotes, load_quote_history,
    load_quotes, validate_quotes,
)
from .pricing import (
    SwapLeg, basis_spread_on_leg, basis_swap_spread, fixed_leg_annuity,
    float_leg_pv, swap_par_rate,
)
from .replication import (
    BasisPoint, BasisSeries, ReplicationRow, basis_series,
    implied_forward_from_deposits, implied_forward_from_ois,
    implied_forward_simple, replication_report,
)
from .temporal import (
    Adjustment, Calendar, Conventions, Date, DayCount, EUR_CONVENTIONS,
    Schedule, TARGET, Tenor, TenorUnit, add_tenor, build_schedule,
    spot_date, year_fraction,
)
from .vols import (
    QuoteGrid, SwaptionQuote, black_atm_straddle_premium,
    implied_vol_from_premium, spot_from_forward_premium,
)

__version__ = "0.1.0"
