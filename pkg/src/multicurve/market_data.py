"""Market-quote ingestion and validation.

File schema (``quotes-v1``): UTF-8 CSV with header ``kind,key,value,tenor,asof``.

* ``kind``  one of DEPO, FRA, OIS, SWAP, BASIS, CDS, ECB
* ``key``   instrument key: a maturity tenor such as ``6M`` or ``2Y``, an
  FRA period ``6Mx12M`` (months), a bank identifier for CDS rows, or an
  ECB item name for ECB rows
* ``value`` percent for rates, EUR millions for ECB amounts
* ``tenor`` underlying index tenor for FRA/SWAP/BASIS legs (``1D`` for the
  overnight index), the deposit's own tenor for DEPO, blank otherwise
* ``asof``  ISO date, identical on every row of a file

Rates are held internally as decimal fractions; percent appears only at
the file boundary. One quote per (kind, key, tenor) triple: the same FRA
period can be quoted against several underlying tenors, so the tenor is
part of the identity.

ECB rows feed :class:`EcbSnapshot`. Amount items (EUR millions):
``DEPOSIT_FACILITY``, ``CURRENT_ACCOUNT``, ``REQUIRED_RESERVES``,
``EONIA_VOLUME``. Rate items (percent): ``DEPOSIT_FACILITY_RATE``,
``MARGINAL_LENDING_RATE``, ``EONIA_FIXING``.
"""

from __future__ import annotations

import csv
import datetime as dt
import io
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping, TextIO

from .errors import DuplicateQuoteError, QuoteParseError
from .temporal import Date, Tenor

SCHEMA_ID = "quotes-v1"
_HEADER = ["kind", "key", "value", "tenor", "asof"]

ECB_AMOUNT_ITEMS = {"DEPOSIT_FACILITY", "CURRENT_ACCOUNT", "REQUIRED_RESERVES", "EONIA_VOLUME"}
ECB_RATE_ITEMS = {"DEPOSIT_FACILITY_RATE", "MARGINAL_LENDING_RATE", "EONIA_FIXING"}


class QuoteKind(Enum):
    DEPOSIT = "DEPO"
    FRA = "FRA"
    OIS = "OIS"
    SWAP = "SWAP"
    BASIS_SWAP = "BASIS"
    CDS = "CDS"
    ECB = "ECB"


QuoteKey = tuple[QuoteKind, str, str]  # (kind, instrument key, tenor label or "")


@dataclass(frozen=True)
class Quote:
    kind: QuoteKind
    key: str
    value: float           # decimal fraction for rates, EUR millions for ECB amounts
    asof: Date
    tenor: Tenor | None = None

    def __post_init__(self):
        if not math.isfinite(self.value):
            raise ValueError(f"non-finite value for {self.kind.value},{self.key}")
        if self.kind is QuoteKind.ECB and self.key in ECB_AMOUNT_ITEMS and self.value < 0:
            raise ValueError(f"negative ECB amount for {self.key}")
        if self.kind is QuoteKind.FRA:
            start, end = parse_fra_key(self.key)
            if start >= end:
                raise ValueError(f"FRA key {self.key!r} must have start < end")

    @property
    def identity(self) -> QuoteKey:
        return (self.kind, self.key, str(self.tenor) if self.tenor else "")


def parse_fra_key(key: str) -> tuple[int, int]:
    """Split ``6Mx12M`` into start and end offsets in months."""
    try:
        left, right = key.split("x")
        return Tenor.parse(left).months, Tenor.parse(right).months
    except ValueError as exc:
        raise ValueError(f"bad FRA key {key!r}") from exc


@dataclass(frozen=True)
class QuoteSet:
    asof: Date
    quotes: Mapping[QuoteKey, Quote] = field(default_factory=dict)

    def __post_init__(self):
        for q in self.quotes.values():
            if q.asof != self.asof:
                raise ValueError(f"quote {q.identity} dated {q.asof}, set dated {self.asof}")

    def get(self, kind: QuoteKind, key: str, tenor: Tenor | str | None = None) -> Quote | None:
        label = str(tenor) if tenor else ""
        return self.quotes.get((kind, key, label))

    def rate(self, kind: QuoteKind, key: str, tenor: Tenor | str | None = None) -> float:
        q = self.get(kind, key, tenor)
        if q is None:
            raise KeyError(f"no quote for {kind.value},{key},{tenor or ''}")
        return q.value

    def of_kind(self, kind: QuoteKind) -> list[Quote]:
        return [q for q in self.quotes.values() if q.kind is kind]

    def __len__(self) -> int:
        return len(self.quotes)

    def __eq__(self, other) -> bool:
        return (isinstance(other, QuoteSet) and self.asof == other.asof
                and dict(self.quotes) == dict(other.quotes))


@dataclass(frozen=True)
class EcbSnapshot:
    """Central-bank facility amounts and corridor rates for one date."""

    asof: Date
    deposit_facility_amount: float
    current_account_amount: float
    required_reserves: float
    deposit_facility_rate: float
    marginal_lending_rate: float
    eonia_fixing: float
    eonia_volume: float = 0.0

    def __post_init__(self):
        for name in ("deposit_facility_amount", "current_account_amount",
                     "required_reserves", "eonia_volume"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be nonnegative")
        if self.marginal_lending_rate < self.deposit_facility_rate:
            raise ValueError("marginal lending rate below deposit facility rate")

    @classmethod
    def from_quotes(cls, quotes: QuoteSet) -> "EcbSnapshot":
        def item(key: str, default: float | None = None) -> float:
            q = quotes.get(QuoteKind.ECB, key)
            if q is None:
                if default is None:
                    raise KeyError(f"missing ECB item {key}")
                return default
            return q.value

        return cls(
            asof=quotes.asof,
            deposit_facility_amount=item("DEPOSIT_FACILITY"),
            current_account_amount=item("CURRENT_ACCOUNT"),
            required_reserves=item("REQUIRED_RESERVES"),
            deposit_facility_rate=item("DEPOSIT_FACILITY_RATE"),
            marginal_lending_rate=item("MARGINAL_LENDING_RATE"),
            eonia_fixing=item("EONIA_FIXING"),
            eonia_volume=item("EONIA_VOLUME", 0.0),
        )


# ---------------------------------------------------------------------------
# Loading
# ---------------------------------------------------------------------------

def _parse_row(row: dict[str, str], line: int) -> Quote:
    try:
        kind = QuoteKind(row["kind"].strip().upper())
    except (ValueError, KeyError, AttributeError):
        raise QuoteParseError(f"unknown kind {row.get('kind')!r}", line)
    key = (row.get("key") or "").strip()
    if not key:
        raise QuoteParseError("empty instrument key", line)
    try:
        raw = float(row["value"])
    except (TypeError, ValueError, KeyError):
        raise QuoteParseError(f"bad value {row.get('value')!r}", line)
    try:
        asof = dt.date.fromisoformat((row.get("asof") or "").strip())
    except ValueError:
        raise QuoteParseError(f"bad asof date {row.get('asof')!r}", line)
    tenor_text = (row.get("tenor") or "").strip()
    tenor = None
    if tenor_text:
        try:
            tenor = Tenor.parse(tenor_text)
        except ValueError:
            raise QuoteParseError(f"bad tenor {tenor_text!r}", line)
    is_amount = kind is QuoteKind.ECB and key in ECB_AMOUNT_ITEMS
    value = raw if is_amount else raw / 100.0
    try:
        return Quote(kind=kind, key=key, value=value, asof=asof, tenor=tenor)
    except ValueError as exc:
        raise QuoteParseError(str(exc), line)


def load_quotes(source: str | TextIO, schema: str = SCHEMA_ID) -> QuoteSet:
    """Read a quote file into a QuoteSet.

    Accepts a path or an open text stream. Raises QuoteParseError (naming
    the offending line) on malformed rows and DuplicateQuoteError when two
    rows share an identity.
    """
    if schema != SCHEMA_ID:
        raise QuoteParseError(f"unsupported schema {schema!r}")
    if isinstance(source, (str, bytes)):
        with open(source, "r", encoding="utf-8", newline="") as handle:
            return load_quotes(handle, schema)
    reader = csv.DictReader(source)
    if reader.fieldnames is not None and [f.strip() for f in reader.fieldnames] != _HEADER:
        raise QuoteParseError(f"expected header {','.join(_HEADER)}", 1)
    quotes: dict[QuoteKey, Quote] = {}
    asof: Date | None = None
    for line, row in enumerate(reader, start=2):
        quote = _parse_row(row, line)
        if quote.identity in quotes:
            raise DuplicateQuoteError(
                f"duplicate quote {quote.kind.value},{quote.key} (line {line})")
        if asof is None:
            asof = quote.asof
        elif quote.asof != asof:
            raise QuoteParseError(
                f"asof {quote.asof} differs from {asof}", line)
        quotes[quote.identity] = quote
    if asof is None:
        return QuoteSet(asof=dt.date.min, quotes={})
    return QuoteSet(asof=asof, quotes=quotes)


def load_quote_history(source: str | TextIO) -> dict[Date, QuoteSet]:
    """Group a multi-date quote file into one QuoteSet per as-of date.

    Same schema and row rules as load_quotes, but the as-of may vary; this
    is how index time series are fed in.
    """
    if isinstance(source, (str, bytes)):
        with open(source, "r", encoding="utf-8", newline="") as handle:
            return load_quote_history(handle)
    reader = csv.DictReader(source)
    if reader.fieldnames is not None and [f.strip() for f in reader.fieldnames] != _HEADER:
        raise QuoteParseError(f"expected header {','.join(_HEADER)}", 1)
    per_date: dict[Date, dict[QuoteKey, Quote]] = {}
    for line, row in enumerate(reader, start=2):
        quote = _parse_row(row, line)
        bucket = per_date.setdefault(quote.asof, {})
        if quote.identity in bucket:
            raise DuplicateQuoteError(
                f"duplicate quote {quote.kind.value},{quote.key} on {quote.asof} (line {line})")
        bucket[quote.identity] = quote
    return {d: QuoteSet(asof=d, quotes=qs) for d, qs in sorted(per_date.items())}


def dump_quotes(quotes: QuoteSet, target: str | TextIO) -> None:
    """Write a QuoteSet back to the CSV schema (inverse of load_quotes)."""
    if isinstance(target, (str, bytes)):
        with open(target, "w", encoding="utf-8", newline="") as handle:
            dump_quotes(quotes, handle)
            return
    writer = csv.writer(target, lineterminator="\n")
    writer.writerow(_HEADER)
    for identity in sorted(quotes.quotes, key=lambda k: (k[0].value, k[1], k[2])):
        q = quotes.quotes[identity]
        is_amount = q.kind is QuoteKind.ECB and q.key in ECB_AMOUNT_ITEMS
        value = q.value if is_amount else q.value * 100.0
        writer.writerow([q.kind.value, q.key, f"{value:.10g}",
                         str(q.tenor) if q.tenor else "", q.asof.isoformat()])


def dumps_quotes(quotes: QuoteSet) -> str:
    buf = io.StringIO()
    dump_quotes(quotes, buf)
    return buf.getvalue()


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ValidationFinding:
    severity: str  # "error" | "warning"
    code: str
    message: str


@dataclass(frozen=True)
class ValidationReport:
    findings: tuple[ValidationFinding, ...]

    @property
    def errors(self) -> tuple[ValidationFinding, ...]:
        return tuple(f for f in self.findings if f.severity == "error")

    @property
    def warnings(self) -> tuple[ValidationFinding, ...]:
        return tuple(f for f in self.findings if f.severity == "warning")

    @property
    def ok(self) -> bool:
        return not self.errors


def validate_quotes(quotes: QuoteSet,
                    required: Iterable[QuoteKey] = (),
                    rate_floor: float = -1.0) -> ValidationReport:
    """Sanity screen: range errors, deposit-strip shape warnings, and
    missing instruments against a bootstrap recipe's requirements."""
    findings: list[ValidationFinding] = []
    rate_kinds = {QuoteKind.DEPOSIT, QuoteKind.FRA, QuoteKind.OIS,
                  QuoteKind.SWAP, QuoteKind.BASIS_SWAP, QuoteKind.CDS}
    for q in quotes.quotes.values():
        is_rate = q.kind in rate_kinds or (q.kind is QuoteKind.ECB and q.key in ECB_RATE_ITEMS)
        if is_rate and q.value < rate_floor:
            findings.append(ValidationFinding(
                "error", "rate-below-floor",
                f"{q.kind.value},{q.key}: rate {q.value:.6f} below floor {rate_floor:.4f}"))
    deposits = sorted(
        (q for q in quotes.of_kind(QuoteKind.DEPOSIT) if _is_plain_tenor(q.key)),
        key=lambda q: Tenor.parse(q.key).approx_days())
    for prev, cur in zip(deposits, deposits[1:]):
        if cur.value < prev.value:
            findings.append(ValidationFinding(
                "warning", "deposit-strip-inversion",
                f"deposit {cur.key} at {cur.value:.6f} below {prev.key} at {prev.value:.6f}"))
    for kind, key, tenor in required:
        if (kind, key, tenor) not in quotes.quotes:
            findings.append(ValidationFinding(
                "error", "missing-instrument",
                f"recipe requires {kind.value},{key},{tenor} but it is not quoted"))
    return ValidationReport(findings=tuple(findings))


def _is_plain_tenor(key: str) -> bool:
    try:
        Tenor.parse(key)
        return True
    except ValueError:
        return False
