"""Batch command-line surface.

One executable, one ``--command`` flag, deterministic file outputs:

    multicurve --command replicate-fra --quotes quotes.csv --out results/

Commands: ``bootstrap``, ``replicate-fra``, ``basis-matrix``,
``credit-sweep``, ``csa-sim``, ``indices``, ``vol-convert``.

Runs are configured by an optional JSON file (``--config``) whose keys
mirror the flags plus per-command blocks; flags win over the file. All
output files use dot decimals, a fixed column order and a trailing
newline, and identical inputs always produce byte-identical outputs.

Exit codes: 0 clean, 1 per-row errors (enumerated on stderr), 2 missing
input file, 3 schema violation, 4 calibration failure, 5 bad usage or
configuration.
"""

from __future__ import annotations

import argparse
import datetime as dt
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import credit, indices as idx, pricing, replication, vols
from .csa import simulate_margination
from .curves import (
    BootstrapRecipe, Curve, CurveRole, CurveSet, bootstrap_discount,
    bootstrap_forward, forward_recipe, ois_recipe, write_curve_csv,
)
from .errors import (
    CalibrationError, ConfigurationError, DuplicateQuoteError,
    MultiCurveError, QuoteParseError,
)
from .market_data import (
    EcbSnapshot, QuoteKind, QuoteSet, load_quote_history, load_quotes,
    parse_fra_key,
)
from .temporal import (
    Adjustment, Conventions, Date, DayCount, EUR_CONVENTIONS, Tenor,
    TenorUnit, year_fraction,
)

EXIT_OK = 0
EXIT_ROW_ERRORS = 1
EXIT_MISSING_FILE = 2
EXIT_SCHEMA = 3
EXIT_CALIBRATION = 4
EXIT_USAGE = 5

COMMANDS = ("bootstrap", "replicate-fra", "basis-matrix", "credit-sweep",
            "csa-sim", "indices", "vol-convert")


@dataclass
class RunConfig:
    command: str
    quotes: list[str] = field(default_factory=list)
    asof: Date | None = None
    out: str = "."
    conventions: Conventions = EUR_CONVENTIONS
    extras: dict = field(default_factory=dict)


def _parse_conventions(block: dict) -> Conventions:
    base = EUR_CONVENTIONS
    return Conventions(
        day_count=DayCount.parse(block.get("day_count", base.day_count.value)),
        calendar=base.calendar,
        spot_lag=int(block.get("spot_lag", base.spot_lag)),
        adjustment=Adjustment.parse(block.get("adjustment", base.adjustment.value)),
        fixed_frequency=Tenor.parse(block.get("fixed_frequency", "12M")),
    )


def load_config(path: str | None, args: argparse.Namespace) -> RunConfig:
    raw: dict = {}
    if path is not None:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    command = args.command or raw.get("command")
    if command not in COMMANDS:
        raise ConfigurationError(f"command must be one of {', '.join(COMMANDS)}")
    quotes = list(args.quotes or raw.get("quotes", []))
    asof_text = args.asof or raw.get("asof")
    asof = dt.date.fromisoformat(asof_text) if asof_text else None
    out = args.out or raw.get("out", ".")
    conventions = _parse_conventions(raw.get("conventions", {}))
    extras = {k: v for k, v in raw.items()
              if k not in {"command", "quotes", "asof", "out", "conventions"}}
    return RunConfig(command=command, quotes=quotes, asof=asof, out=out,
                     conventions=conventions, extras=extras)


def _load_single_quoteset(cfg: RunConfig) -> QuoteSet:
    if not cfg.quotes:
        raise ConfigurationError("this command needs at least one --quotes file")
    merged: dict = {}
    asof = None
    for path in cfg.quotes:
        qs = load_quotes(path)
        if asof is None:
            asof = qs.asof
        elif qs.asof != asof:
            raise QuoteParseError(f"{path} dated {qs.asof}, expected {asof}")
        for key, quote in qs.quotes.items():
            if key in merged:
                raise DuplicateQuoteError(f"{key} appears in more than one file")
            merged[key] = quote
    quotes = QuoteSet(asof=asof, quotes=merged)
    if cfg.asof is not None and cfg.asof != quotes.asof:
        raise ConfigurationError(
            f"--asof {cfg.asof} does not match quote files dated {quotes.asof}")
    return quotes


def _write(out_dir: Path, name: str, lines: list[str]) -> Path:
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / name
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


# ---------------------------------------------------------------------------
# Recipe derivation
# ---------------------------------------------------------------------------

def _auto_recipes(quotes: QuoteSet, conventions: Conventions
                  ) -> tuple[BootstrapRecipe, dict[str, BootstrapRecipe]]:
    ois_keys = sorted((q.key for q in quotes.of_kind(QuoteKind.OIS)),
                      key=lambda k: Tenor.parse(k).months)
    discount = ois_recipe(ois_keys, conventions) if ois_keys else None
    tenors = sorted({str(q.tenor) for q in quotes.of_kind(QuoteKind.DEPOSIT)
                     if q.tenor is not None and q.tenor.unit is TenorUnit.MONTHS})
    forwards: dict[str, BootstrapRecipe] = {}
    for label in tenors:
        tenor = Tenor.parse(label)
        fras = sorted((q.key for q in quotes.of_kind(QuoteKind.FRA)
                       if q.tenor == tenor),
                      key=lambda k: parse_fra_key(k)[1])
        fras = _contiguous_fra_strip(tenor, fras)
        swaps = sorted((q.key for q in quotes.of_kind(QuoteKind.SWAP)
                        if q.tenor == tenor),
                       key=lambda k: Tenor.parse(k).months)
        forwards[label] = forward_recipe(tenor, fras, swaps, conventions)
    return discount, forwards


def _contiguous_fra_strip(tenor: Tenor, fra_keys: list[str]) -> list[str]:
    """Keep only FRAs that extend the strip from the deposit maturity."""
    strip = []
    frontier = tenor.months
    for key in fra_keys:
        start, end = parse_fra_key(key)
        if start <= frontier < end:
            strip.append(key)
            frontier = end
    return strip


def _bootstrap_curveset(quotes: QuoteSet, cfg: RunConfig) -> CurveSet:
    discount_recipe, forward_recipes = _auto_recipes(quotes, cfg.conventions)
    if discount_recipe is None:
        raise CalibrationError("no OIS quotes to build the discounting curve")
    disc = bootstrap_discount(quotes, discount_recipe)
    curves = CurveSet(discount=disc)
    for label, recipe in sorted(forward_recipes.items()):
        curves.add(bootstrap_forward(Tenor.parse(label), quotes, disc, recipe))
    return curves


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def _cmd_bootstrap(cfg: RunConfig) -> int:
    quotes = _load_single_quoteset(cfg)
    curves = _bootstrap_curveset(quotes, cfg)
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    write_curve_csv(curves.discount, str(out / "curve_discount.csv"))
    for label in sorted(curves.forwards):
        write_curve_csv(curves.forwards[label], str(out / f"curve_forward_{label}.csv"))
    return EXIT_OK


def _cmd_replicate_fra(cfg: RunConfig) -> int:
    quotes = _load_single_quoteset(cfg)
    rows = replication.replication_report(quotes, cfg.conventions)
    _write(Path(cfg.out), "fra_replication.csv", replication.report_csv_lines(rows))
    errors = [row for row in rows if row.error is not None]
    for row in errors:
        print(f"replicate-fra: {row.key} ({row.tenor}): {row.error}", file=sys.stderr)
    return EXIT_ROW_ERRORS if errors else EXIT_OK


def _cmd_basis_matrix(cfg: RunConfig) -> int:
    quotes = _load_single_quoteset(cfg)
    curves = _bootstrap_curveset(quotes, cfg)
    block = cfg.extras.get("basis", {})
    tenors = [Tenor(1, TenorUnit.DAYS)] + [
        Tenor.parse(t) for t in sorted(curves.forwards,
                                       key=lambda s: Tenor.parse(s).months)]
    pairs = ([(Tenor.parse(a), Tenor.parse(b)) for a, b in block["pairs"]]
             if "pairs" in block
             else [(a, b) for i, a in enumerate(tenors) for b in tenors[i + 1:]])
    maturities = [Tenor.parse(m) for m in block.get("maturities",
                                                    ["1Y", "2Y", "3Y", "4Y", "5Y"])]
    lines = pricing.basis_matrix_csv_lines(curves, pairs, maturities, cfg.conventions)
    _write(Path(cfg.out), "basis_matrix.csv", lines)
    return EXIT_OK


def _cmd_credit_sweep(cfg: RunConfig) -> int:
    block = cfg.extras.get("credit", {})
    lgds = block.get("lgd", [0.0, 0.2, 0.4, 0.6, 0.8, 1.0])
    qs = block.get("q", [0.0, 0.01, 0.02, 0.05, 0.10])
    lines = credit.sweep_csv_lines(lgds, qs,
                                   p_d1=float(block.get("pd1", 0.99)),
                                   p_d2=float(block.get("pd2", 0.97)),
                                   tau=float(block.get("tau", 0.5)))
    _write(Path(cfg.out), "credit_sweep.csv", lines)
    return EXIT_OK


def _cmd_csa_sim(cfg: RunConfig) -> int:
    block = cfg.extras.get("csa", {})
    payoff = float(block.get("payoff", 104.0))
    dc = DayCount.parse(block.get("day_count", "ACT/360"))
    if "dates" in block:
        dates = [dt.date.fromisoformat(d) for d in block["dates"]]
        fixings = [float(r) for r in block["fixings"]]
    else:
        # default deal: one 360-day period at 4 percent
        dates = [dt.date(2011, 1, 3), dt.date(2011, 12, 29)]
        fixings = [0.04, 0.04]
    if len(fixings) != len(dates):
        raise ConfigurationError("csa.fixings must match csa.dates in length")
    # deterministic NPV path: roll the payoff back through the fixings
    npv = [0.0] * len(dates)
    npv[-1] = payoff
    for i in range(len(dates) - 2, -1, -1):
        tau = year_fraction(dates[i], dates[i + 1], dc)
        npv[i] = npv[i + 1] / (1.0 + fixings[i] * tau)
    account = simulate_margination(list(zip(dates, npv)),
                                   list(zip(dates, fixings)), dc)
    _write(Path(cfg.out), "csa_ledger.csv", account.csv_lines())
    return EXIT_OK


def _cmd_indices(cfg: RunConfig) -> int:
    if not cfg.quotes:
        raise ConfigurationError("indices needs at least one --quotes file")
    window = int(cfg.extras.get("indices", {}).get("window", 20))
    history: dict[Date, QuoteSet] = {}
    for path in cfg.quotes:
        for date, qs in load_quote_history(path).items():
            if date in history:
                merged = dict(history[date].quotes)
                merged.update(qs.quotes)
                history[date] = QuoteSet(asof=date, quotes=merged)
            else:
                history[date] = qs
    cds_points = []
    liq_points = []
    corridor_lines = ["date,ok,detail"]
    row_errors: list[str] = []
    for date in sorted(history):
        qs = history[date]
        cds = {q.key: q.value for q in qs.of_kind(QuoteKind.CDS)}
        if cds:
            try:
                cds_points.append(idx.trimmed_mean_index(
                    idx.PanelQuotes(asof=date, spreads=cds)))
            except MultiCurveError as exc:
                row_errors.append(f"{date}: {exc}")
        if qs.of_kind(QuoteKind.ECB):
            try:
                snapshot = EcbSnapshot.from_quotes(qs)
            except (KeyError, ValueError) as exc:
                row_errors.append(f"{date}: {exc}")
                continue
            liq_points.append(idx.liquidity_surplus_index(snapshot))
            check = idx.corridor_check(snapshot)
            corridor_lines.append(
                f"{date.isoformat()},{str(check.ok).lower()},{check.detail or ''}")
    out = Path(cfg.out)
    if cds_points:
        _write(out, "cds_index.csv", idx.index_csv_lines(cds_points, scale=100.0))
    if liq_points:
        _write(out, "liquidity_index.csv", idx.index_csv_lines(liq_points))
        ma = idx.moving_average([(p.date, p.value) for p in liq_points], window)
        ma_lines = ["date,value"] + [f"{d.isoformat()},{v:.8g}" for d, v in ma]
        _write(out, f"liquidity_ma{window}.csv", ma_lines)
    if len(corridor_lines) > 1:
        _write(out, "corridor.csv", corridor_lines)
    for err in row_errors:
        print(f"indices: {err}", file=sys.stderr)
    return EXIT_ROW_ERRORS if row_errors else EXIT_OK


def _cmd_vol_convert(cfg: RunConfig) -> int:
    block = cfg.extras.get("vol", {})
    if "grid" not in block:
        raise ConfigurationError("vol-convert needs vol.grid (forward premium CSV)")
    grid = vols.read_grid_csv(block["grid"])
    if grid.kind is not vols.QuoteSurface.FORWARD_PREMIUM:
        raise ConfigurationError("vol.grid must contain forward premia")
    quotes = _load_single_quoteset(cfg)
    curves = _bootstrap_curveset(quotes, cfg)
    conv = cfg.conventions
    index_tenor = Tenor.parse(block.get("index_tenor", "6M"))
    spot = conv.spot(curves.discount.asof)
    spot_rows = []
    vol_rows = []
    for i, expiry in enumerate(grid.expiries):
        expiry_tenor = Tenor.parse(expiry)
        expiry_date = _expiry_date(spot, expiry_tenor, conv)
        df = curves.discount.discount_factor(expiry_date)
        tau_e = year_fraction(curves.discount.asof, expiry_date, DayCount.ACT_365F)
        spot_row = []
        vol_row = []
        for j, tenor in enumerate(grid.tenors):
            fwd_premium = grid.values[i][j]                # cents per 100 notional
            spot_premium = vols.spot_from_forward_premium(fwd_premium, df)
            spot_row.append(spot_premium)
            par, annuity = pricing.forward_swap_rate_and_annuity(
                expiry_tenor, Tenor.parse(tenor), index_tenor,
                curves.forward_curve(index_tenor), curves.discount, conv)
            vol = vols.implied_vol_from_premium(
                fwd_premium / 10000.0, par, tau_e, annuity)
            vol_row.append(vol * 100.0)
        spot_rows.append(tuple(spot_row))
        vol_rows.append(tuple(vol_row))
    out = Path(cfg.out)
    vols.write_grid_csv(vols.QuoteGrid(vols.QuoteSurface.SPOT_PREMIUM, grid.expiries,
                                       grid.tenors, tuple(spot_rows)),
                        str(out / "spot_premium.csv"))
    vols.write_grid_csv(vols.QuoteGrid(vols.QuoteSurface.IMPLIED_VOL, grid.expiries,
                                       grid.tenors, tuple(vol_rows)),
                        str(out / "implied_vol.csv"))
    return EXIT_OK


def _expiry_date(spot: Date, expiry: Tenor, conv: Conventions) -> Date:
    from .temporal import add_tenor
    return add_tenor(spot, expiry, conv.calendar, conv.adjustment)


_DISPATCH = {
    "bootstrap": _cmd_bootstrap,
    "replicate-fra": _cmd_replicate_fra,
    "basis-matrix": _cmd_basis_matrix,
    "credit-sweep": _cmd_credit_sweep,
    "csa-sim": _cmd_csa_sim,
    "indices": _cmd_indices,
    "vol-convert": _cmd_vol_convert,
}


def run(command: str, cfg: RunConfig) -> int:
    """Execute one batch command; returns the process exit code."""
    if command not in _DISPATCH:
        raise ConfigurationError(f"unknown command {command!r}")
    return _DISPATCH[command](cfg)


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="multicurve",
        description="Multi-curve fixed-income analytics batch runner")
    parser.add_argument("--command", choices=COMMANDS)
    parser.add_argument("--quotes", action="append", default=None,
                        metavar="PATH", help="quote CSV, repeatable")
    parser.add_argument("--config", default=None, metavar="PATH")
    parser.add_argument("--asof", default=None, metavar="YYYY-MM-DD")
    parser.add_argument("--out", default=None, metavar="DIR")
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args.config, args)
    except (ConfigurationError, ValueError, json.JSONDecodeError) as exc:
        print(f"multicurve: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as exc:
        print(f"multicurve: {exc}", file=sys.stderr)
        return EXIT_MISSING_FILE
    try:
        return run(cfg.command, cfg)
    except FileNotFoundError as exc:
        print(f"multicurve: missing file: {exc}", file=sys.stderr)
        return EXIT_MISSING_FILE
    except (QuoteParseError, DuplicateQuoteError) as exc:
        print(f"multicurve: schema violation: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except CalibrationError as exc:
        print(f"multicurve: calibration failure: {exc}", file=sys.stderr)
        return EXIT_CALIBRATION
    except (ConfigurationError, MultiCurveError, ValueError) as exc:
        print(f"multicurve: {exc}", file=sys.stderr)
        return EXIT_USAGE


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
