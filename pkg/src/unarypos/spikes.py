"""Spike-train codecs: rate-unary, temporal-positional and temporal-rate.

Two decode modes exist for the timing-based schemes:

``fixed``
    neuron i always carries weight base**(k-1-i), whatever its spike time.
``order``
    weights follow first-spike order: the earliest neuron gets base**(k-1),
    the next base**(k-2), and so on. Ties go to the lower neuron index.
    A silent neuron is ranked at the slot where its spike would fire under
    the fixed schedule (slot i for temporal, the last slot of window i for
    temporal-rate) and contributes 0.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import (
    CapacityExceededError,
    CountOverflowError,
    InvalidBaseError,
    InvalidWidthError,
    SchemeMismatchError,
    UnknownSchemeError,
    WidthOverflowError,
    WrongBundleSizeError,
)
from .numeral import check_unary_base, check_value, positional_encode
from .raster import RasterBuilder, SpikeRaster, first_spike_times, spike_counts

SPIKE_SCHEMES = ("rate-unary", "temporal", "temporal-rate")
DECODE_MODES = ("fixed", "order")


class ComparisonOutcome(enum.Enum):
    LESS = "LESS"
    EQUAL = "EQUAL"
    GREATER = "GREATER"
    AMBIGUOUS = "AMBIGUOUS"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class TemporalRateParams:
    n: int
    k: int

    def __post_init__(self):
        check_unary_base(self.n)
        if self.k < 1:
            raise InvalidWidthError(f"k must be >= 1, got {self.k}")

    @property
    def slot_count(self) -> int:
        return self.k * self.n

    @property
    def capacity(self) -> int:
        return self.n**self.k

    def window(self, neuron: int) -> range:
        return range(neuron * self.n, (neuron + 1) * self.n)


def _check_mode(mode):
    if mode not in DECODE_MODES:
        raise UnknownSchemeError(f"decode mode must be one of {DECODE_MODES}, got {mode!r}")


def _check_base(base):
    if base < 2:
        raise InvalidBaseError(f"base must be >= 2, got {base}")


def _order_ranks(r: SpikeRaster, silent_keys) -> list[int]:
    firsts = first_spike_times(r)
    keys = [(t if t is not None else silent_keys[i], i) for i, t in enumerate(firsts)]
    ranks = [0] * r.neuron_count
    for rank, (_, neuron) in enumerate(sorted(keys)):
        ranks[neuron] = rank
    return ranks


# -- rate-unary -------------------------------------------------------------

def rate_unary_encode(v: int, slot_cap: int | None = None) -> SpikeRaster:
    check_value(v)
    if slot_cap is None:
        slot_cap = v
    if v > slot_cap:
        raise CapacityExceededError(f"{v} spikes do not fit in {slot_cap} slots")
    return RasterBuilder(1, slot_cap).add_range(0, 0, v).build()


def rate_unary_decode(r: SpikeRaster) -> int:
    if r.neuron_count != 1:
        raise WrongBundleSizeError(f"rate-unary expects 1 neuron, got {r.neuron_count}")
    return r.total_spikes


# -- temporal-positional ----------------------------------------------------

def temporal_positional_encode(v: int, base: int, k: int) -> SpikeRaster:
    """Neuron i spikes at slot i iff digit i (MSB-first) is nonzero.

    Lossless for base 2; larger bases keep only the nonzero-digit pattern.
    """
    check_value(v)
    _check_base(base)
    if k < 1:
        raise InvalidWidthError(f"k must be >= 1, got {k}")
    if v >= base**k:
        raise WidthOverflowError(f"{v} needs more than {k} base-{base} digits")
    builder = RasterBuilder(k, k)
    for i, d in enumerate(positional_encode(v, base, k).digits):
        if d:
            builder.add(i, i)
    return builder.build()


def temporal_positional_decode(r: SpikeRaster, base: int, mode: str = "fixed") -> int:
    _check_base(base)
    _check_mode(mode)
    k = r.neuron_count
    if mode == "fixed":
        if r.slot_count < k:
            raise SchemeMismatchError(f"fixed schedule needs >= {k} slots, got {r.slot_count}")
        return sum(base ** (k - 1 - i) for i, row in enumerate(r.spikes) if row)
    ranks = _order_ranks(r, list(range(k)))
    return sum(base ** (k - 1 - ranks[i]) for i, row in enumerate(r.spikes) if row)


def temporal_lossy_class(v: int, base: int, k: int) -> str:
    """Nonzero-digit pattern of v, MSB-first; values sharing it encode identically."""
    check_value(v)
    _check_base(base)
    if v >= base**k:
        raise WidthOverflowError(f"{v} needs more than {k} base-{base} digits")
    return "".join("1" if d else "0" for d in positional_encode(v, base, k).digits)


# -- temporal-rate ----------------------------------------------------------

def temporal_rate_encode(v: int, params: TemporalRateParams) -> SpikeRaster:
    """Neuron i fires digit d_(k-1-i) times, packed at the end of window i."""
    check_value(v)
    n, k = params.n, params.k
    if v >= params.capacity:
        raise WidthOverflowError(f"{v} does not fit in {k} base-{n} digits")
    builder = RasterBuilder(k, params.slot_count)
    for i, d in enumerate(positional_encode(v, n, k).digits):
        end = (i + 1) * n
        builder.add_range(i, end - d, end)
    return builder.build()


def temporal_rate_counts(r: SpikeRaster, params: TemporalRateParams, strict: bool = True):
    """Per-neuron digit coefficients; strict raises on counts >= n, lenient clamps."""
    counts = spike_counts(r)
    out = []
    for neuron, c in enumerate(counts):
        if c >= params.n:
            if strict:
                raise CountOverflowError(
                    f"neuron {neuron} fired {c} times; base {params.n} allows at most {params.n - 1}"
                )
            c = params.n - 1
        out.append(c)
    return out


def temporal_rate_decode(
    r: SpikeRaster, params: TemporalRateParams, mode: str = "fixed", strict: bool = True
) -> int:
    _check_mode(mode)
    n, k = params.n, params.k
    if r.neuron_count != k:
        raise SchemeMismatchError(f"expected {k} neurons, got {r.neuron_count}")
    if mode == "fixed" and r.slot_count != params.slot_count:
        raise SchemeMismatchError(f"expected {params.slot_count} slots, got {r.slot_count}")
    counts = temporal_rate_counts(r, params, strict)
    if mode == "fixed":
        ranks = list(range(k))
    else:
        ranks = _order_ranks(r, [(i + 1) * n - 1 for i in range(k)])
    return sum(c * n ** (k - 1 - ranks[i]) for i, c in enumerate(counts))


# -- comparison -------------------------------------------------------------

def _leading_neuron(r: SpikeRaster):
    for i, row in enumerate(r.spikes):
        if row:
            return i
    return None


def _order(a, b) -> ComparisonOutcome:
    if a < b:
        return ComparisonOutcome.LESS
    if a > b:
        return ComparisonOutcome.GREATER
    return ComparisonOutcome.EQUAL


def compare_encoded(a: SpikeRaster, b: SpikeRaster, base: int, scheme: str) -> ComparisonOutcome:
    """Order two encoded values without access to the originals.

    Temporal rasters in base > 2 only reveal the leading digit position, so
    two rasters that lead with the same neuron compare as AMBIGUOUS unless
    the rasters are identical.
    """
    if a.neuron_count != b.neuron_count or a.slot_count != b.slot_count:
        raise SchemeMismatchError(
            f"raster shapes differ: {a.neuron_count}x{a.slot_count} vs {b.neuron_count}x{b.slot_count}"
        )
    if a == b:
        return ComparisonOutcome.EQUAL
    if scheme == "temporal-rate":
        params = TemporalRateParams(base, a.neuron_count)
        return _order(temporal_rate_decode(a, params), temporal_rate_decode(b, params))
    if scheme != "temporal":
        raise UnknownSchemeError(f"compare supports 'temporal' and 'temporal-rate', got {scheme!r}")
    _check_base(base)
    lead_a, lead_b = _leading_neuron(a), _leading_neuron(b)
    if lead_a != lead_b:
        # a silent raster encodes 0; a lower index means a higher weight
        if lead_a is None:
            return ComparisonOutcome.LESS
        if lead_b is None:
            return ComparisonOutcome.GREATER
        return ComparisonOutcome.GREATER if lead_a < lead_b else ComparisonOutcome.LESS
    if base == 2:
        return _order(temporal_positional_decode(a, 2), temporal_positional_decode(b, 2))
    return ComparisonOutcome.AMBIGUOUS
