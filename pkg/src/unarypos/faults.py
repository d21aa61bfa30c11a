"""Fault injection and error-impact sweeps.

Every trial encodes one value, applies exactly one perturbation, decodes and
records the absolute change. Randomness comes from SplitMix64 so that sweep
reports are reproducible byte for byte on any platform.

Seeding contract: work unit ``t`` (the t-th value of the sweep) draws from
``SplitMix64(seed ^ t)``. Units are independent, so a sweep split across
worker processes aggregates to exactly the same report as a serial run.
"""
from __future__ import annotations

import json
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .errors import (
    CountOverflowError,
    InvalidEventError,
    InvalidParamsError,
    UnknownSchemeError,
)
from .numeral import (
    PositionalNumeral,
    UnaryPositionalWord,
    check_unary_base,
    positional_decode,
    positional_encode,
    unary_positional_decode,
    unary_positional_encode,
)
from .raster import SpikeRaster
from .spikes import (
    DECODE_MODES,
    TemporalRateParams,
    rate_unary_decode,
    rate_unary_encode,
    temporal_positional_decode,
    temporal_positional_encode,
    temporal_rate_decode,
    temporal_rate_encode,
)

MASK64 = (1 << 64) - 1
GENERATOR = "splitmix64"


class SplitMix64:
    """Steele, Lea & Flood's SplitMix64.

    state += 0x9E3779B97F4A7C15, then z = state;
    z = (z ^ z >> 30) * 0xBF58476D1CE4E5B9;
    z = (z ^ z >> 27) * 0x94D049BB133111EB;
    output z ^ z >> 31 (all arithmetic mod 2**64).
    """

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """Uniform integer in [0, bound) by bitmask rejection.

        Draws ceil(bits/64) words, concatenated most-significant first, and
        keeps the low ``bound.bit_length()`` bits; retries while >= bound.
        """
        if bound < 1:
            raise ValueError("bound must be >= 1")
        if bound == 1:
            return 0
        bits = (bound - 1).bit_length()
        words = (bits + 63) // 64
        mask = (1 << bits) - 1
        while True:
            x = 0
            for _ in range(words):
                x = x << 64 | self.next_u64()
            x &= mask
            if x < bound:
                return x


# -- events -----------------------------------------------------------------

@dataclass(frozen=True)
class DigitFlip:
    """Flip one digit.

    On a unary-positional word ``stream`` is the weight index (stream i
    weighs n**i) and ``bit`` the character position within that stream. On
    a binary numeral ``stream`` must be 0 and ``bit`` is the significance.
    """

    stream: int
    bit: int


@dataclass(frozen=True)
class SpikeInsert:
    neuron: int
    slot: int


@dataclass(frozen=True)
class SpikeDelete:
    neuron: int
    slot: int


@dataclass(frozen=True)
class SpikeShift:
    neuron: int
    from_slot: int
    delta: int


ErrorEvent = Union[DigitFlip, SpikeInsert, SpikeDelete, SpikeShift]


def _flip(ch: str) -> str:
    return "0" if ch == "1" else "1"


def inject(target, event):
    """Return a copy of ``target`` with exactly one perturbation applied."""
    if isinstance(target, UnaryPositionalWord):
        if not isinstance(event, DigitFlip):
            raise InvalidEventError(f"{type(event).__name__} does not apply to a digit word")
        if not 0 <= event.stream < target.k or not 0 <= event.bit < target.n:
            raise InvalidEventError(f"flip {event} outside a {target.k}x{target.n} word")
        idx = target.k - 1 - event.stream
        s = target.streams[idx]
        streams = list(target.streams)
        streams[idx] = s[: event.bit] + _flip(s[event.bit]) + s[event.bit + 1 :]
        return UnaryPositionalWord(target.n, tuple(streams))

    if isinstance(target, PositionalNumeral):
        if not isinstance(event, DigitFlip):
            raise InvalidEventError(f"{type(event).__name__} does not apply to a numeral")
        if target.base != 2:
            raise InvalidEventError("digit flips are defined on binary numerals only")
        if event.stream != 0 or not 0 <= event.bit < target.width:
            raise InvalidEventError(f"flip {event} outside a {target.width}-bit numeral")
        digits = list(target.digits)
        pos = target.width - 1 - event.bit
        digits[pos] ^= 1
        return PositionalNumeral(2, tuple(digits))

    if isinstance(target, SpikeRaster):
        return _inject_raster(target, event)

    raise InvalidEventError(f"cannot inject into {type(target).__name__}")


def _inject_raster(r: SpikeRaster, event) -> SpikeRaster:
    if isinstance(event, DigitFlip):
        raise InvalidEventError("DigitFlip does not apply to a raster")

    def in_range(neuron, slot):
        return 0 <= neuron < r.neuron_count and 0 <= slot < r.slot_count

    if isinstance(event, SpikeInsert):
        if not in_range(event.neuron, event.slot):
            raise InvalidEventError(f"{event} outside raster")
        if r.has_spike(event.neuron, event.slot):
            raise InvalidEventError(f"{event} targets an occupied slot")
        return r.with_row(event.neuron, r.spikes[event.neuron] + (event.slot,))

    if isinstance(event, SpikeDelete):
        if not in_range(event.neuron, event.slot) or not r.has_spike(event.neuron, event.slot):
            raise InvalidEventError(f"{event} targets a missing spike")
        return r.with_row(event.neuron, (s for s in r.spikes[event.neuron] if s != event.slot))

    if isinstance(event, SpikeShift):
        to_slot = event.from_slot + event.delta
        if not in_range(event.neuron, event.from_slot) or not r.has_spike(
            event.neuron, event.from_slot
        ):
            raise InvalidEventError(f"{event} moves a missing spike")
        if event.delta == 0 or not in_range(event.neuron, to_slot):
            raise InvalidEventError(f"{event} does not land inside the raster")
        if r.has_spike(event.neuron, to_slot):
            raise InvalidEventError(f"{event} lands on an occupied slot")
        row = [s for s in r.spikes[event.neuron] if s != event.from_slot] + [to_slot]
        return r.with_row(event.neuron, row)

    raise InvalidEventError(f"unknown event {event!r}")


def impact(original_value: int, perturbed_decoded: int) -> int:
    return perturbed_decoded - original_value


# -- event spaces -----------------------------------------------------------

ERROR_MODELS = (
    "digit-flip",
    "spike-insert",
    "spike-delete",
    "spike-insert-delete",
    "spike-shift",
    "spike-any",
)

_SPIKE_KINDS = {
    "spike-insert": ("insert",),
    "spike-delete": ("delete",),
    "spike-insert-delete": ("insert", "delete"),
    "spike-shift": ("shift",),
    "spike-any": ("insert", "delete", "shift"),
}


def raster_events(r: SpikeRaster, kinds) -> list:
    """Every valid spike event of the given kinds, in a fixed order."""
    events = []
    if "insert" in kinds:
        for neuron, row in enumerate(r.spikes):
            occupied = set(row)
            events.extend(SpikeInsert(neuron, s) for s in range(r.slot_count) if s not in occupied)
    if "delete" in kinds:
        for neuron, row in enumerate(r.spikes):
            events.extend(SpikeDelete(neuron, s) for s in row)
    if "shift" in kinds:
        for neuron, row in enumerate(r.spikes):
            occupied = set(row)
            for s in row:
                events.extend(
                    SpikeShift(neuron, s, t - s) for t in range(r.slot_count) if t not in occupied
                )
    return events


def word_events(word: UnaryPositionalWord) -> list:
    return [DigitFlip(i, j) for i in range(word.k) for j in range(word.n)]


def numeral_events(numeral: PositionalNumeral) -> list:
    return [DigitFlip(0, i) for i in range(numeral.width)]


# -- sweeps -----------------------------------------------------------------

SWEEP_SCHEMES = ("unary-positional", "positional", "rate-unary", "temporal", "temporal-rate")


@dataclass(frozen=True)
class SweepParams:
    n: int | None = None
    k: int | None = None
    base: int | None = None
    width: int | None = None
    slot_cap: int | None = None
    mode: str = "fixed"

    def as_dict(self) -> dict:
        return {key: val for key, val in self.__dict__.items() if val is not None}


class _Codec:
    """Encode/decode/event-space bundle for one scheme at fixed parameters."""

    def __init__(self, scheme: str, params: SweepParams, error_model: str):
        self.scheme = scheme
        self.params = params
        self.error_model = error_model
        if scheme not in SWEEP_SCHEMES:
            raise UnknownSchemeError(f"unknown sweep scheme {scheme!r}; expected one of {SWEEP_SCHEMES}")
        if params.mode not in DECODE_MODES:
            raise InvalidParamsError(f"mode must be one of {DECODE_MODES}")
        if error_model not in ERROR_MODELS:
            raise InvalidParamsError(f"error model must be one of {ERROR_MODELS}")
        digit_scheme = scheme in ("unary-positional", "positional")
        if digit_scheme != (error_model == "digit-flip"):
            raise InvalidParamsError(f"error model {error_model!r} does not apply to {scheme!r}")
        try:
            self._setup()
        except (TypeError, ValueError) as exc:
            if isinstance(exc, InvalidParamsError):
                raise
            raise InvalidParamsError(f"bad parameters for {scheme}: {exc}") from None

    def _need(self, *names):
        for name in names:
            if getattr(self.params, name) is None:
                raise InvalidParamsError(f"scheme {self.scheme!r} requires --{name.replace('_', '-')}")

    def _setup(self):
        p = self.params
        if self.scheme == "unary-positional":
            self._need("n", "k")
            check_unary_base(p.n)
            if p.k < 1:
                raise InvalidParamsError("k must be >= 1")
            self.limit = p.n**p.k
        elif self.scheme == "positional":
            if (p.base or 2) != 2:
                raise InvalidParamsError("positional sweeps flip bits; base must be 2")
            if p.width is None:
                self._need("n", "k")
                self.width = check_unary_base(p.n) * p.k
            else:
                self.width = p.width
            if self.width < 1:
                raise InvalidParamsError("width must be >= 1")
            self.limit = 2**self.width
        elif self.scheme == "rate-unary":
            self._need("slot_cap")
            if p.slot_cap < 0:
                raise InvalidParamsError("slot_cap must be >= 0")
            self.limit = p.slot_cap + 1
        elif self.scheme == "temporal":
            self._need("base", "k")
            if p.base < 2 or p.k < 1:
                raise InvalidParamsError("temporal needs base >= 2 and k >= 1")
            self.limit = p.base**p.k
        else:
            self._need("n", "k")
            self.tr = TemporalRateParams(p.n, p.k)
            self.limit = self.tr.capacity

    def encode(self, v):
        p = self.params
        if self.scheme == "unary-positional":
            return unary_positional_encode(v, p.n, p.k)
        if self.scheme == "positional":
            return positional_encode(v, 2, self.width)
        if self.scheme == "rate-unary":
            return rate_unary_encode(v, p.slot_cap)
        if self.scheme == "temporal":
            return temporal_positional_encode(v, p.base, p.k)
        return temporal_rate_encode(v, self.tr)

    def decode(self, artifact, strict=True):
        p = self.params
        if self.scheme == "unary-positional":
            return unary_positional_decode(artifact)
        if self.scheme == "positional":
            return positional_decode(artifact)
        if self.scheme == "rate-unary":
            return rate_unary_decode(artifact)
        if self.scheme == "temporal":
            return temporal_positional_decode(artifact, p.base, p.mode)
        return temporal_rate_decode(artifact, self.tr, p.mode, strict=strict)

    def events(self, artifact):
        if self.scheme == "unary-positional":
            return word_events(artifact)
        if self.scheme == "positional":
            return numeral_events(artifact)
        return raster_events(artifact, _SPIKE_KINDS[self.error_model])

    def trial(self, artifact, baseline, event):
        """Return (|delta|, strict_rejected)."""
        perturbed = inject(artifact, event)
        rejected = False
        if self.scheme == "temporal-rate":
            try:
                decoded = self.decode(perturbed, strict=True)
            except CountOverflowError:
                rejected = True
                decoded = self.decode(perturbed, strict=False)
        else:
            decoded = self.decode(perturbed)
        return abs(impact(baseline, decoded)), rejected


@dataclass
class SweepReport:
    scheme: str
    params: dict
    trials: int
    seed: int
    max_abs_impact: int
    mean_abs_impact: Fraction
    histogram: dict
    values: str = "exhaustive"
    error_model: str = "digit-flip"
    events: str = "exhaustive"
    strict_rejections: int = 0
    skipped_values: int = 0
    generator: str = GENERATOR

    def to_dict(self) -> dict:
        mean = self.mean_abs_impact
        return {
            "scheme": self.scheme,
            "params": dict(sorted(self.params.items())),
            "trials": self.trials,
            "seed": self.seed,
            "max_abs_impact": str(self.max_abs_impact),
            "mean_abs_impact": f"{mean.numerator}/{mean.denominator}",
            "histogram": {str(d): c for d, c in sorted(self.histogram.items())},
            "values": self.values,
            "error_model": self.error_model,
            "events": self.events,
            "strict_rejections": self.strict_rejections,
            "skipped_values": self.skipped_values,
            "generator": self.generator,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


@dataclass
class _Partial:
    trials: int = 0
    total: int = 0
    max_abs: int = 0
    histogram: Counter = field(default_factory=Counter)
    rejections: int = 0
    skipped: int = 0

    def merge(self, other: "_Partial"):
        self.trials += other.trials
        self.total += other.total
        self.max_abs = max(self.max_abs, other.max_abs)
        self.histogram.update(other.histogram)
        self.rejections += other.rejections
        self.skipped += other.skipped


def _run_units(scheme, params, error_model, sample_count, sample_events, seed, units) -> _Partial:
    codec = _Codec(scheme, params, error_model)
    part = _Partial()
    for t in units:
        rng = SplitMix64(seed ^ t)
        v = rng.below(codec.limit) if sample_count is not None else t
        artifact = codec.encode(v)
        baseline = codec.decode(artifact)
        events = codec.events(artifact)
        if not events:
            part.skipped += 1
            continue
        if sample_events:
            events = [events[rng.below(len(events))]]
        for event in events:
            delta, rejected = codec.trial(artifact, baseline, event)
            part.trials += 1
            part.total += delta
            part.max_abs = max(part.max_abs, delta)
            part.histogram[delta] += 1
            part.rejections += rejected
    return part


def sweep(
    scheme: str,
    params: SweepParams,
    values="exhaustive",
    error_model: str = "digit-flip",
    events: str = "exhaustive",
    seed: int = 0,
    jobs: int = 1,
) -> SweepReport:
    """Measure single-fault impact over many (value, event) trials.

    ``values`` is ``"exhaustive"`` (every representable value) or a sample
    count. ``events`` is ``"exhaustive"`` (every valid event per value) or
    ``"sample"`` (one uniformly drawn event per value). Impact is measured
    against the decode of the unperturbed artifact.
    """
    codec = _Codec(scheme, params, error_model)
    if events not in ("exhaustive", "sample"):
        raise InvalidParamsError("events must be 'exhaustive' or 'sample'")
    if not 0 <= seed <= MASK64:
        raise InvalidParamsError("seed must be a 64-bit unsigned integer")
    if values == "exhaustive":
        sample_count = None
        n_units = codec.limit
    else:
        sample_count = int(values)
        if sample_count < 0:
            raise InvalidParamsError("sample count must be >= 0")
        n_units = sample_count
    sample_events = events == "sample"
    args = (scheme, params, error_model, sample_count, sample_events, seed)

    total = _Partial()
    if jobs <= 1 or n_units < 2:
        total.merge(_run_units(*args, range(n_units)))
    else:
        chunk = -(-n_units // (jobs * 4))
        chunks = [range(lo, min(lo + chunk, n_units)) for lo in range(0, n_units, chunk)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for part in pool.map(_run_units, *zip(*[args + (c,) for c in chunks])):
                total.merge(part)

    mean = Fraction(total.total, total.trials) if total.trials else Fraction(0)
    return SweepReport(
        scheme=scheme,
        params=params.as_dict(),
        trials=total.trials,
        seed=seed,
        max_abs_impact=total.max_abs,
        mean_abs_impact=mean,
        histogram=dict(total.histogram),
        values="exhaustive" if sample_count is None else f"sample:{sample_count}",
        error_model=error_model,
        events=events,
        strict_rejections=total.rejections,
        skipped_values=total.skipped,
    )


def find_shift_witness(scheme: str = "temporal-rate", n: int = 2, k: int = 3):
    """Smallest (value, event, delta) where one spike shift under order-based
    decode moves the value by more than the shifted neuron's own weight.

    Returns None if no such shift exists.
    """
    base = n
    params = SweepParams(n=n, k=k, base=base, mode="order")
    codec = _Codec(scheme, params, "spike-shift")
    for v in range(codec.limit):
        artifact = codec.encode(v)
        baseline = codec.decode(artifact)
        for event in codec.events(artifact):
            delta = impact(baseline, codec.decode(inject(artifact, event), strict=False))
            if abs(delta) > base ** (k - 1 - event.neuron):
                return v, event, delta
    return None
