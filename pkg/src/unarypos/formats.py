"""Scheme-aware rendering and parsing of encoded artifacts.

Digit artifacts have a text form (``101100011_2``, ``111_u``,
``01111001 01111000 00000111_u8``) and a JSON form. Rasters use the JSON
schema from :mod:`unarypos.raster`, a CSV spike list, or text rows of 0/1.
"""
from __future__ import annotations

import json

from . import raster as raster_io
from .errors import MalformedInputError, UnknownSchemeError
from .numeral import (
    PositionalNumeral,
    UnaryPositionalWord,
    UnaryStream,
    format_positional,
    format_unary,
    format_unary_positional,
    parse_positional,
    parse_unary,
    parse_unary_positional,
)
from .raster import SpikeRaster

DIGIT_SCHEMES = ("positional", "unary", "unary-positional")
RASTER_SCHEMES = ("rate-unary", "temporal", "temporal-rate")
ALL_SCHEMES = DIGIT_SCHEMES + RASTER_SCHEMES
FORMATS = ("json", "csv", "text")


def render(artifact, fmt: str = "json") -> str:
    if isinstance(artifact, SpikeRaster):
        if fmt == "json":
            return raster_io.dumps(artifact)
        if fmt == "csv":
            return raster_io.to_csv(artifact)
        return "".join(row + "\n" for row in artifact.rows())
    if fmt == "csv":
        raise UnknownSchemeError("CSV output is only defined for spike rasters")
    if isinstance(artifact, PositionalNumeral):
        if fmt == "text":
            return format_positional(artifact) + "\n"
        return json.dumps({"base": artifact.base, "digits": list(artifact.digits)}) + "\n"
    if isinstance(artifact, UnaryStream):
        if fmt == "text":
            return format_unary(artifact) + "\n"
        return json.dumps({"ones_count": str(artifact.ones_count)}) + "\n"
    if isinstance(artifact, UnaryPositionalWord):
        if fmt == "text":
            return format_unary_positional(artifact) + "\n"
        return json.dumps({"n": artifact.n, "streams": list(artifact.streams)}) + "\n"
    raise TypeError(f"cannot render {type(artifact).__name__}")


def _load_json(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInputError(f"invalid JSON: {exc.msg}", line=exc.lineno) from None


def _field(data, key):
    if not isinstance(data, dict) or key not in data:
        raise MalformedInputError("missing key", field=key)
    return data[key]


def parse(text: str, scheme: str):
    """Parse an artifact for ``scheme`` from JSON or its text form."""
    if scheme not in ALL_SCHEMES:
        raise UnknownSchemeError(f"unknown scheme {scheme!r}; expected one of {ALL_SCHEMES}")
    stripped = text.strip()
    is_json = stripped.startswith("{")
    if scheme in RASTER_SCHEMES:
        if is_json:
            return raster_io.loads(stripped)
        rows = stripped.split()
        return SpikeRaster.from_rows(rows)
    if scheme == "positional":
        if not is_json:
            return parse_positional(stripped)
        data = _load_json(stripped)
        base, digits = _field(data, "base"), _field(data, "digits")
        if not isinstance(base, int) or not isinstance(digits, list):
            raise MalformedInputError("expected integer base and digit list")
        return PositionalNumeral(base, tuple(digits))
    if scheme == "unary":
        if not is_json:
            return parse_unary(stripped)
        count = str(_field(_load_json(stripped), "ones_count"))
        if not count.isdigit():
            raise MalformedInputError("ones_count must be a nonnegative integer", field="ones_count")
        return UnaryStream(int(count))
    if not is_json:
        return parse_unary_positional(stripped)
    data = _load_json(stripped)
    n, streams = _field(data, "n"), _field(data, "streams")
    if not isinstance(n, int) or not isinstance(streams, list):
        raise MalformedInputError("expected integer n and stream list")
    return UnaryPositionalWord(n, tuple(str(s) for s in streams))
