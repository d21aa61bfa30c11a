"""Compactness, latency, utilization and error-bound metrics per encoding.

All ratios are exact Fractions so that reports reproduce bit for bit.

For digit schemes (unary, positional, unary-positional) the artifact is
treated as one serial line: ``neuron_count`` is 1, ``slot_count`` is the
digit length and ``total`` counts nonzero digits.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction

from .errors import UnknownSchemeError, WidthOverflowError
from .numeral import (
    PositionalNumeral,
    check_unary_base,
    max_error_impact,
    minimal_width,
    positional_decode,
    positional_encode,
    unary_encode,
    unary_length_for,
    unary_positional_decode,
    unary_positional_encode,
)
from .spikes import (
    TemporalRateParams,
    rate_unary_decode,
    rate_unary_encode,
    temporal_positional_decode,
    temporal_positional_encode,
    temporal_rate_decode,
    temporal_rate_encode,
)

MEASURE_SCHEMES = (
    "unary",
    "positional",
    "unary-positional",
    "rate-unary",
    "temporal",
    "temporal-rate",
)

METRICS_COLUMNS = (
    "scheme",
    "value",
    "neuron_count",
    "slot_count",
    "total",
    "utilization",
    "max_single_error_impact",
    "exact",
)
TABLE1_COLUMNS = ("base", "digits", "unary_length")
TABLE1_EXAMPLE_COLUMNS = ("numeral", "value", "unary_digits", "bound")
TRADEOFF_COLUMNS = (
    "scheme",
    "neuron_count",
    "max_latency",
    "total_spikes",
    "max_error_impact",
    "lossless",
)


@dataclass(frozen=True)
class EncodingMetrics:
    scheme: str
    value: int
    neuron_count: int
    slot_count: int
    total: int
    utilization: Fraction
    max_single_error_impact: int
    exact: bool

    def as_row(self) -> dict:
        return {
            "scheme": self.scheme,
            "value": self.value,
            "neuron_count": self.neuron_count,
            "slot_count": self.slot_count,
            "total": self.total,
            "utilization": _frac(self.utilization),
            "max_single_error_impact": self.max_single_error_impact,
            "exact": self.exact,
        }


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _ratio(num, den) -> Fraction:
    return Fraction(num, den) if den else Fraction(0)


def _default(value, fallback):
    return fallback if value is None else value


def measure(v: int, scheme: str, base=None, n=None, k=None, slot_cap=None) -> EncodingMetrics:
    """Encode v and measure the artifact actually produced.

    Omitted widths default to the minimum that represents v.
    """
    if scheme == "rate-unary":
        r = rate_unary_encode(v, _default(slot_cap, v))
        return _spike_metrics(scheme, v, r, rate_unary_decode(r), 1)
    if scheme == "temporal":
        base = _default(base, 2)
        k = _default(k, minimal_width(v, base))
        r = temporal_positional_encode(v, base, k)
        return _spike_metrics(scheme, v, r, temporal_positional_decode(r, base), base ** (k - 1))
    if scheme == "temporal-rate":
        n = _default(n, 8)
        params = TemporalRateParams(n, _default(k, minimal_width(v, n)))
        r = temporal_rate_encode(v, params)
        bound = max_error_impact("unary-positional", n, params.k)
        return _spike_metrics(scheme, v, r, temporal_rate_decode(r, params), bound)
    if scheme == "unary":
        s = unary_encode(v)
        return EncodingMetrics(scheme, v, 1, len(s), len(s), _ratio(len(s), len(s)), 1, True)
    if scheme == "positional":
        base = _default(base, 2)
        numeral = positional_encode(v, base, k)
        w = numeral.width
        if k is not None and w > k:
            raise WidthOverflowError(f"{v} needs more than {k} base-{base} digits")
        nonzero = sum(1 for d in numeral.digits if d)
        bound = (base - 1) * base ** (w - 1)
        exact = positional_decode(numeral) == v
        return EncodingMetrics(scheme, v, 1, w, nonzero, _ratio(nonzero, w), bound, exact)
    if scheme == "unary-positional":
        n = _default(n, 8)
        word = unary_positional_encode(v, n, k)
        length = word.n * word.k
        ones = sum(word.popcounts())
        exact = unary_positional_decode(word) == v
        bound = max_error_impact("unary-positional", n, word.k)
        return EncodingMetrics(scheme, v, 1, length, ones, _ratio(ones, length), bound, exact)
    raise UnknownSchemeError(f"unknown scheme {scheme!r}; expected one of {MEASURE_SCHEMES}")


def _spike_metrics(scheme, v, r, decoded, bound) -> EncodingMetrics:
    spikes = r.total_spikes
    return EncodingMetrics(
        scheme,
        v,
        r.neuron_count,
        r.slot_count,
        spikes,
        _ratio(spikes, r.neuron_count * r.slot_count),
        bound,
        decoded == v,
    )


# -- unary length table -------------------------------------------------

def table1_report(bases, digit_counts) -> list[dict]:
    rows = []
    for base in bases:
        for d in digit_counts:
            rows.append({"base": base, "digits": d, "unary_length": unary_length_for(base, d)})
    return rows


def table1_examples() -> list[dict]:
    """The two worked values: (1101)_2 and (9876)_10 against their bounds."""
    rows = []
    for digits, base in (((1, 1, 0, 1), 2), ((9, 8, 7, 6), 10)):
        numeral = PositionalNumeral(base, digits)
        value = positional_decode(numeral)
        rows.append(
            {
                "numeral": str(numeral),
                "value": value,
                "unary_digits": len(unary_encode(value)),
                "bound": unary_length_for(base, numeral.width),
            }
        )
    return rows


# -- tradeoff table ---------------------------------------------------------

@dataclass(frozen=True)
class SchemeSpec:
    """A scheme tag plus its base, e.g. ``temporal-8`` or ``temporal-rate-8``."""

    tag: str
    base: int | None = None
    k: int | None = None

    @classmethod
    def parse(cls, text: str) -> "SchemeSpec":
        text = text.strip()
        if text in MEASURE_SCHEMES:
            return cls(text)
        head, _, tail = text.rpartition("-")
        if head in MEASURE_SCHEMES and tail.isdigit():
            return cls(head, int(tail))
        raise UnknownSchemeError(f"cannot parse scheme {text!r}")

    @property
    def label(self) -> str:
        return self.tag if self.base is None else f"{self.tag}-{self.base}"

    @property
    def lossless(self) -> bool:
        return not (self.tag == "temporal" and (self.base or 2) > 2)

    def radix(self) -> int | None:
        if self.tag in ("unary", "rate-unary"):
            return None
        if self.tag in ("unary-positional", "temporal-rate"):
            n = self.base or 8
            check_unary_base(n)
            return n
        return self.base or 2


def tradeoff_report(values, schemes) -> list[dict]:
    """One row per scheme over a shared value set, in the order given.

    Widths are fixed per scheme (the minimum covering max(values)) so every
    value in the set is measured under the same bundle.
    """
    values = list(values)
    if not values:
        return []
    top = max(values)
    rows = []
    for spec in schemes:
        if isinstance(spec, str):
            spec = SchemeSpec.parse(spec)
        radix = spec.radix()
        kwargs = {}
        if spec.tag == "rate-unary":
            kwargs["slot_cap"] = top
        elif radix is not None:
            k = spec.k if spec.k is not None else minimal_width(top, radix)
            kwargs["k"] = k
            kwargs["n" if spec.tag in ("unary-positional", "temporal-rate") else "base"] = radix
        measured = [measure(v, spec.tag, **kwargs) for v in values]
        rows.append(
            {
                "scheme": spec.label,
                "neuron_count": measured[0].neuron_count,
                "max_latency": max(m.slot_count for m in measured),
                "total_spikes": sum(m.total for m in measured),
                "max_error_impact": max(m.max_single_error_impact for m in measured),
                "lossless": spec.lossless,
            }
        )
    return rows


# -- emitters ---------------------------------------------------------------

def _cell(x):
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, Fraction):
        return _frac(x)
    return x


def rows_to_csv(rows, columns) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_cell(row[c]) for c in columns])
    return buf.getvalue()


def rows_to_json(rows, columns) -> str:
    """Big integers are written as decimal strings."""
    out = []
    for row in rows:
        rec = {}
        for c in columns:
            x = row[c]
            if isinstance(x, int) and not isinstance(x, bool):
                x = str(x)
            elif isinstance(x, Fraction):
                x = _frac(x)
            rec[c] = x
        out.append(rec)
    return json.dumps(out, indent=2) + "\n"

