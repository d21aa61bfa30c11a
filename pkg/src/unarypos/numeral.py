"""Positional, unary and unary-positional codecs.

Values are plain Python ints (arbitrary precision, nonnegative). Unary
streams are kept as counts and only turned into digit strings on demand.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    DigitOutOfRangeError,
    InvalidBaseError,
    InvalidWidthError,
    LengthMismatchError,
    MalformedInputError,
    MaterializationLimitError,
    UnknownSchemeError,
    WidthOverflowError,
)

DIGIT_CHARS = "0123456789abcdefghijklmnopqrstuvwxyz"
DEFAULT_MATERIALIZE_CAP = 1 << 20


def check_value(v) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise TypeError(f"value must be an int, got {type(v).__name__}")
    if v < 0:
        raise WidthOverflowError(f"value must be nonnegative, got {v}")
    return v


def is_power_of_two(n: int) -> bool:
    return n >= 2 and n & (n - 1) == 0


def check_unary_base(n: int) -> int:
    """Return log2(n); raise InvalidBaseError unless n is a power of two >= 2."""
    if isinstance(n, bool) or not isinstance(n, int) or not is_power_of_two(n):
        raise InvalidBaseError(f"n must be a power of two >= 2, got {n!r}")
    return n.bit_length() - 1


def _check_base(base) -> int:
    if isinstance(base, bool) or not isinstance(base, int) or base < 2:
        raise InvalidBaseError(f"base must be an integer >= 2, got {base!r}")
    return base


@dataclass(frozen=True)
class PositionalNumeral:
    """A digit vector in some base, most-significant digit first."""

    base: int
    digits: tuple[int, ...]

    def __post_init__(self):
        _check_base(self.base)
        object.__setattr__(self, "digits", tuple(self.digits))
        if not self.digits:
            raise InvalidWidthError("a numeral needs at least one digit")
        for pos, d in enumerate(self.digits):
            if not 0 <= d < self.base:
                raise DigitOutOfRangeError(
                    f"digit {d} at position {pos} is outside [0, {self.base})"
                )

    @property
    def width(self) -> int:
        return len(self.digits)

    def digit(self, i: int) -> int:
        """Digit of significance base**i."""
        return self.digits[len(self.digits) - 1 - i]

    def __str__(self) -> str:
        return format_positional(self)


@dataclass(frozen=True)
class UnaryStream:
    ones_count: int

    def __post_init__(self):
        check_value(self.ones_count)

    def __len__(self):
        return self.ones_count

    def materialize(self, cap: int = DEFAULT_MATERIALIZE_CAP) -> str:
        if self.ones_count > cap:
            raise MaterializationLimitError(
                f"unary stream of {self.ones_count} digits exceeds cap {cap}"
            )
        return "1" * self.ones_count


@dataclass(frozen=True)
class UnaryPositionalWord:
    """k unary streams of n binary digits each.

    ``streams`` is in display order: ``streams[0]`` is the highest-weight
    stream (weight n**(k-1)). Use :meth:`stream` for weight-indexed access.
    """

    n: int
    streams: tuple[str, ...]

    def __post_init__(self):
        check_unary_base(self.n)
        object.__setattr__(self, "streams", tuple(self.streams))
        if not self.streams:
            raise InvalidWidthError("a word needs at least one stream")
        for idx, s in enumerate(self.streams):
            if len(s) != self.n:
                raise LengthMismatchError(
                    f"stream {idx} has length {len(s)}, expected {self.n}"
                )
            if s.strip("01"):
                raise MalformedInputError(f"stream {idx} contains non-binary digits: {s!r}")

    @property
    def k(self) -> int:
        return len(self.streams)

    def stream(self, i: int) -> str:
        """Stream carrying weight n**i."""
        return self.streams[self.k - 1 - i]

    def popcounts(self) -> list[int]:
        """Per-stream popcounts, display order."""
        return [s.count("1") for s in self.streams]

    def __str__(self) -> str:
        return format_unary_positional(self)


# -- positional -------------------------------------------------------------

def positional_decode(numeral: PositionalNumeral) -> int:
    value = 0
    for d in numeral.digits:
        if not 0 <= d < numeral.base:
            raise DigitOutOfRangeError(f"digit {d} is outside [0, {numeral.base})")
        value = value * numeral.base + d
    return value


def positional_encode(v: int, base: int, min_width: int | None = None) -> PositionalNumeral:
    check_value(v)
    _check_base(base)
    if min_width is not None and min_width < 1:
        raise InvalidWidthError(f"min_width must be >= 1, got {min_width}")
    digits = []
    while v:
        v, d = divmod(v, base)
        digits.append(d)
    if not digits:
        digits.append(0)
    if min_width is not None and len(digits) < min_width:
        digits.extend([0] * (min_width - len(digits)))
    return PositionalNumeral(base, tuple(reversed(digits)))


def minimal_width(v: int, base: int) -> int:
    """Number of base-`base` digits needed for v (1 for zero)."""
    check_value(v)
    _check_base(base)
    width = 1
    bound = base
    while v >= bound:
        bound *= base
        width += 1
    return width


# -- unary ------------------------------------------------------------------

def unary_encode(v: int) -> UnaryStream:
    return UnaryStream(check_value(v))


def unary_decode(s: UnaryStream) -> int:
    return s.ones_count


def unary_length_for(base: int, digit_count: int) -> int:
    """Unary digits needed to cover every `digit_count`-digit value in `base`."""
    _check_base(base)
    if isinstance(digit_count, bool) or not isinstance(digit_count, int) or digit_count < 1:
        raise InvalidWidthError(f"digit_count must be >= 1, got {digit_count!r}")
    return base**digit_count


# -- unary-positional -------------------------------------------------------

def _fill_stream(group: int, m: int) -> str:
    # reserved zero slot first, then blocks of 2**(m-1) ... 2**0 digits
    parts = ["0"]
    for j in range(m - 1, -1, -1):
        parts.append(("1" if group >> j & 1 else "0") * (1 << j))
    return "".join(parts)


def binary_to_unary_positional(bits: PositionalNumeral, n: int) -> UnaryPositionalWord:
    """Convert a binary numeral by filling each stream in expanding groups.

    The bits are left-padded to a multiple of m = log2(n); every m-bit group
    becomes one stream whose popcount equals the group's value.
    """
    m = check_unary_base(n)
    if bits.base != 2:
        raise InvalidBaseError(f"expected a base-2 numeral, got base {bits.base}")
    digits = list(bits.digits)
    pad = -len(digits) % m
    digits = [0] * pad + digits
    streams = []
    for start in range(0, len(digits), m):
        group = 0
        for d in digits[start : start + m]:
            group = group << 1 | d
        streams.append(_fill_stream(group, m))
    return UnaryPositionalWord(n, tuple(streams))


def unary_positional_decode(word: UnaryPositionalWord) -> int:
    value = 0
    for s in word.streams:
        if len(s) != word.n:
            raise LengthMismatchError(f"stream length {len(s)} != {word.n}")
        value = value * word.n + s.count("1")
    return value


def unary_positional_encode(v: int, n: int, k: int | None = None) -> UnaryPositionalWord:
    """Canonical word for v with k streams (minimal k when omitted)."""
    m = check_unary_base(n)
    check_value(v)
    if k is None:
        k = minimal_width(v, n)
    if k < 1:
        raise InvalidWidthError(f"k must be >= 1, got {k}")
    if v >= n**k:
        raise WidthOverflowError(f"{v} does not fit in {k} streams of base {n}")
    return binary_to_unary_positional(positional_encode(v, 2, k * m), n)


def canonicalize(word: UnaryPositionalWord) -> UnaryPositionalWord:
    m = check_unary_base(word.n)
    streams = []
    for idx, count in enumerate(word.popcounts()):
        if count >= word.n:
            raise WidthOverflowError(
                f"stream {idx} has popcount {count}; no canonical form keeps the reserved slot zero"
            )
        streams.append(_fill_stream(count, m))
    return UnaryPositionalWord(word.n, tuple(streams))


# -- error bounds -----------------------------------------------------------

ERROR_SCHEMES = ("unary-positional", "positional", "unary")


def max_error_impact(scheme: str, n: int, k: int) -> int:
    """Largest value change a single digit flip can cause."""
    m = check_unary_base(n)
    if k < 1:
        raise InvalidWidthError(f"k must be >= 1, got {k}")
    if scheme == "unary-positional":
        return n ** (k - 1)
    if scheme == "positional":
        return 2 ** (m * k - 1)
    if scheme == "unary":
        return 1
    raise UnknownSchemeError(f"unknown scheme {scheme!r}; expected one of {ERROR_SCHEMES}")


# -- text forms -------------------------------------------------------------

def format_positional(numeral: PositionalNumeral) -> str:
    if numeral.base > len(DIGIT_CHARS):
        raise InvalidBaseError(f"text form supports bases up to {len(DIGIT_CHARS)}")
    return "".join(DIGIT_CHARS[d] for d in numeral.digits) + f"_{numeral.base}"


def parse_positional(text: str) -> PositionalNumeral:
    """Parse ``"101100011_2"`` style numerals."""
    body, sep, base_text = text.strip().rpartition("_")
    if not sep or not body or not base_text.isdigit():
        raise MalformedInputError(f"expected '<digits>_<base>', got {text!r}")
    base = int(base_text)
    if not 2 <= base <= len(DIGIT_CHARS):
        raise InvalidBaseError(f"text form supports bases 2..{len(DIGIT_CHARS)}, got {base}")
    digits = []
    for ch in body.lower():
        d = DIGIT_CHARS.find(ch)
        if d < 0:
            raise MalformedInputError(f"bad digit {ch!r} in {text!r}")
        digits.append(d)
    return PositionalNumeral(base, tuple(digits))


def format_unary_positional(word: UnaryPositionalWord) -> str:
    return " ".join(word.streams) + f"_u{word.n}"


def parse_unary_positional(text: str) -> UnaryPositionalWord:
    """Parse ``"01111001 01111000 00000111_u8"``."""
    body, sep, n_text = text.strip().rpartition("_u")
    if not sep or not n_text.isdigit():
        raise MalformedInputError(f"expected '<streams>_u<n>', got {text!r}")
    streams = body.split()
    if not streams:
        raise MalformedInputError(f"no streams in {text!r}")
    return UnaryPositionalWord(int(n_text), tuple(streams))


def format_unary(stream: UnaryStream, cap: int = DEFAULT_MATERIALIZE_CAP) -> str:
    return stream.materialize(cap) + "_u"


def parse_unary(text: str) -> UnaryStream:
    body, sep, tail = text.strip().rpartition("_u")
    if not sep or tail or body.strip("1"):
        raise MalformedInputError(f"expected '<ones>_u', got {text!r}")
    return UnaryStream(len(body))


def parse_value(text: str) -> int:
    """Decimal integer, or a ``<digits>_<base>`` numeral."""
    text = text.strip()
    if "_" in text:
        return positional_decode(parse_positional(text))
    if not text.isdigit():
        raise MalformedInputError(f"not a nonnegative integer: {text!r}")
    return int(text)
