"""Command-line front end.

Exit codes: 0 success, 1 I/O failure, 2 validation error.
"""
from __future__ import annotations

import argparse
import os
import re
import sys

from . import formats
from .errors import EncodingError, MalformedInputError
from .faults import (
    ERROR_MODELS,
    SWEEP_SCHEMES,
    DigitFlip,
    SpikeDelete,
    SpikeInsert,
    SpikeShift,
    SweepParams,
    impact,
    inject,
    sweep,
)
from .metrics import (
    MEASURE_SCHEMES,
    METRICS_COLUMNS,
    TABLE1_COLUMNS,
    TABLE1_EXAMPLE_COLUMNS,
    TRADEOFF_COLUMNS,
    measure,
    rows_to_csv,
    rows_to_json,
    table1_examples,
    table1_report,
    tradeoff_report,
)
from .numeral import (
    minimal_width,
    parse_value,
    positional_decode,
    positional_encode,
    unary_decode,
    unary_encode,
    unary_positional_decode,
    unary_positional_encode,
)
from .raster import SpikeRaster
from .spikes import (
    TemporalRateParams,
    compare_encoded,
    rate_unary_decode,
    rate_unary_encode,
    temporal_positional_decode,
    temporal_positional_encode,
    temporal_rate_decode,
    temporal_rate_encode,
)


class UsageError(EncodingError):
    pass


# -- library adapters -------------------------------------------------------

def encode_value(v, scheme, base=None, n=None, k=None, slot_cap=None, width=None):
    if scheme == "positional":
        return positional_encode(v, base or 2, width or k)
    if scheme == "unary":
        return unary_encode(v)
    if scheme == "unary-positional":
        return unary_positional_encode(v, n or 8, k)
    if scheme == "rate-unary":
        return rate_unary_encode(v, slot_cap)
    if scheme == "temporal":
        base = base or 2
        return temporal_positional_encode(v, base, k or minimal_width(v, base))
    if scheme == "temporal-rate":
        n = n or base or 8
        return temporal_rate_encode(v, TemporalRateParams(n, k or minimal_width(v, n)))
    raise UsageError(f"unknown scheme {scheme!r}")


def decode_artifact(artifact, scheme, base=None, n=None, mode="fixed", lenient=False):
    if scheme == "positional":
        return positional_decode(artifact)
    if scheme == "unary":
        return unary_decode(artifact)
    if scheme == "unary-positional":
        return unary_positional_decode(artifact)
    if scheme == "rate-unary":
        return rate_unary_decode(artifact)
    if scheme == "temporal":
        return temporal_positional_decode(artifact, base or 2, mode)
    if scheme == "temporal-rate":
        params = TemporalRateParams(n or base or 8, artifact.neuron_count)
        return temporal_rate_decode(artifact, params, mode, strict=not lenient)
    raise UsageError(f"unknown scheme {scheme!r}")


def parse_event(text: str):
    """``flip:STREAM,BIT``, ``insert:NEURON,SLOT``, ``delete:NEURON,SLOT``
    or ``shift:NEURON,FROM,DELTA``."""
    kind, _, rest = text.partition(":")
    try:
        nums = [int(x) for x in rest.split(",")]
    except ValueError:
        raise UsageError(f"bad event {text!r}") from None
    table = {"flip": (DigitFlip, 2), "insert": (SpikeInsert, 2), "delete": (SpikeDelete, 2),
             "shift": (SpikeShift, 3)}
    if kind not in table or len(nums) != table[kind][1]:
        raise UsageError(f"bad event {text!r}; see --help for the syntax")
    return table[kind][0](*nums)


def parse_int_list(text: str) -> list[int]:
    """``2,10`` or ``1..6`` (inclusive) or a mix: ``1..3,8``."""
    out = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            lo, _, hi = part.partition("..")
            if not (lo.isdigit() and hi.isdigit()):
                raise UsageError(f"bad range {part!r}")
            out.extend(range(int(lo), int(hi) + 1))
        elif part.isdigit():
            out.append(int(part))
        else:
            raise UsageError(f"bad integer {part!r}")
    return out


# -- I/O --------------------------------------------------------------------

def read_input(source) -> str:
    if source is None or source == "-":
        return sys.stdin.read()
    if not os.path.exists(source) and _looks_literal(source):
        return source
    with open(source, encoding="utf-8") as fh:
        return fh.read()


_LITERAL = re.compile(r"\s*(\{.*|[0-9a-zA-Z]+_\d+|[01\s]*_u\d*|[01\s]+)\s*", re.S)


def _looks_literal(text: str) -> bool:
    return _LITERAL.fullmatch(text) is not None


def write_output(text: str, path) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


# -- commands ---------------------------------------------------------------

def cmd_encode(args):
    v = parse_value(args.value)
    artifact = encode_value(v, args.scheme, args.base, args.n, args.k, args.slot_cap, args.width)
    return formats.render(artifact, args.format or "json")


def cmd_decode(args):
    artifact = formats.parse(read_input(args.input), args.scheme)
    value = decode_artifact(artifact, args.scheme, args.base, args.n, args.mode, args.lenient)
    return f"{value}\n"


def cmd_convert(args):
    artifact = formats.parse(read_input(args.input), args.source)
    v = decode_artifact(artifact, args.source, args.from_base, args.from_n, args.mode)
    out = encode_value(v, args.target, args.base, args.n, args.k, args.slot_cap, args.width)
    return formats.render(out, args.format or "json")


def cmd_inject(args):
    artifact = formats.parse(read_input(args.input), args.scheme)
    perturbed = inject(artifact, parse_event(args.event))
    if args.show_impact:
        before = decode_artifact(artifact, args.scheme, args.base, args.n, args.mode, True)
        after = decode_artifact(perturbed, args.scheme, args.base, args.n, args.mode, True)
        print(f"impact: {impact(before, after)}", file=sys.stderr)
    return formats.render(perturbed, args.format or "json")


def cmd_sweep(args):
    sampled = args.values != "exhaustive" or args.events == "sample"
    if sampled and args.seed is None:
        raise UsageError("sampled sweeps require an explicit --seed")
    if args.values != "exhaustive" and not args.values.isdigit():
        raise UsageError("--values must be 'exhaustive' or a sample count")
    errors = args.errors
    if errors is None:
        errors = "digit-flip" if args.scheme in ("unary-positional", "positional") else "spike-insert-delete"
    params = SweepParams(
        n=args.n, k=args.k, base=args.base, width=args.width, slot_cap=args.slot_cap, mode=args.mode
    )
    report = sweep(
        args.scheme,
        params,
        values=args.values,
        error_model=errors,
        events=args.events,
        seed=args.seed or 0,
        jobs=args.jobs,
    )
    if args.format == "csv":
        rows = [{"abs_impact": d, "count": c} for d, c in sorted(report.histogram.items())]
        return rows_to_csv(rows, ("abs_impact", "count"))
    return report.to_json()


def _emit_rows(rows, columns, fmt):
    if fmt == "json":
        return rows_to_json(rows, columns)
    return rows_to_csv(rows, columns)


def cmd_bench(args):
    fmt = args.format or "csv"
    if args.report == "table1":
        if args.examples:
            return _emit_rows(table1_examples(), TABLE1_EXAMPLE_COLUMNS, fmt)
        bases = parse_int_list(args.bases)
        digits = parse_int_list(args.digits)
        return _emit_rows(table1_report(bases, digits), TABLE1_COLUMNS, fmt)
    if args.report == "measure":
        if args.value is None or args.scheme is None:
            raise UsageError("bench measure needs --value and --scheme")
        m = measure(parse_value(args.value), args.scheme, args.base, args.n, args.k, args.slot_cap)
        return _emit_rows([m.as_row()], METRICS_COLUMNS, fmt)
    values = [parse_value(v) for v in args.values.split(",")] if args.values else []
    schemes = [s for s in args.schemes.split(",") if s]
    return _emit_rows(tradeoff_report(values, schemes), TRADEOFF_COLUMNS, fmt)


def _compare_operand(text, args, k):
    if text == "-" or os.path.exists(text):
        return formats.parse(read_input(text), args.scheme)
    return encode_value(parse_value(text), args.scheme, args.base, args.base, k)


def cmd_compare(args):
    base = args.base or (8 if args.scheme == "temporal-rate" else 2)
    args.base = base
    k = args.k
    if k is None:
        # operands given as values share the width needed for the larger one
        literal = [parse_value(x) for x in (args.a, args.b) if not (x == "-" or os.path.exists(x))]
        k = minimal_width(max(literal), base) if literal else None
    a = _compare_operand(args.a, args, k)
    b = _compare_operand(args.b, args, k)
    if not isinstance(a, SpikeRaster) or not isinstance(b, SpikeRaster):
        raise MalformedInputError("compare expects spike rasters")
    return f"{compare_encoded(a, b, base, args.scheme)}\n"


# -- parser -----------------------------------------------------------------

def _common(parser, scheme_choices=None):
    parser.add_argument("--format", choices=formats.FORMATS, default=None)
    parser.add_argument("--output", "-o", default=None, help="output path (default stdout)")
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--jobs", type=int, default=1)
    if scheme_choices is not None:
        parser.add_argument("--scheme", choices=scheme_choices, required=True)
    parser.add_argument("--base", type=int)
    parser.add_argument("--n", type=int, help="unary base / temporal-rate window length")
    parser.add_argument("--k", type=int, help="stream or neuron count")
    parser.add_argument("--slot-cap", type=int)
    parser.add_argument("--width", type=int, help="binary width for positional numerals")
    parser.add_argument("--mode", choices=("fixed", "order"), default="fixed")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="unarypos", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("encode", help="encode a value")
    _common(p, formats.ALL_SCHEMES)
    p.add_argument("--value", required=True, help="decimal or <digits>_<base>")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", help="decode an artifact to a decimal value")
    _common(p, formats.ALL_SCHEMES)
    p.add_argument("input", nargs="?", help="file, '-' for stdin, or a literal")
    p.add_argument("--lenient", action="store_true", help="clamp temporal-rate counts >= n")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("convert", help="re-encode an artifact under another scheme")
    _common(p)
    p.add_argument("input", nargs="?")
    p.add_argument("--from", dest="source", choices=formats.ALL_SCHEMES, required=True)
    p.add_argument("--to", dest="target", choices=formats.ALL_SCHEMES, required=True)
    p.add_argument("--from-base", type=int)
    p.add_argument("--from-n", type=int)
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("inject", help="apply one fault to an artifact")
    _common(p, formats.ALL_SCHEMES)
    p.add_argument("input", nargs="?")
    p.add_argument("--event", required=True,
                   help="flip:STREAM,BIT | insert:N,S | delete:N,S | shift:N,S,DELTA")
    p.add_argument("--show-impact", action="store_true", help="print the value change to stderr")
    p.set_defaults(func=cmd_inject)

    p = sub.add_parser("sweep", help="measure single-fault impact over many trials")
    _common(p, SWEEP_SCHEMES)
    p.add_argument("--values", default="exhaustive", help="'exhaustive' or a sample count")
    p.add_argument("--errors", choices=ERROR_MODELS)
    p.add_argument("--events", choices=("exhaustive", "sample"), default="exhaustive")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("bench", help="unary length table, per-value metrics and tradeoff reports")
    _common(p)
    p.add_argument("report", choices=("table1", "measure", "tradeoff"))
    p.add_argument("--bases", default="2,10")
    p.add_argument("--digits", default="1..20")
    p.add_argument("--examples", action="store_true", help="table1: emit the worked example rows")
    p.add_argument("--scheme", choices=MEASURE_SCHEMES)
    p.add_argument("--value")
    p.add_argument("--values", help="comma-separated values for tradeoff")
    p.add_argument("--schemes", default="rate-unary,temporal-2,temporal-rate-8")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("compare", help="order two encoded values")
    _common(p)
    p.add_argument("--scheme", choices=("temporal", "temporal-rate"), required=True)
    p.add_argument("a", help="raster file, '-', or a value to encode")
    p.add_argument("b")
    p.set_defaults(func=cmd_compare)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out = args.func(args)
        write_output(out, args.output)
    except EncodingError as exc:
        print(f"unarypos {args.command}: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"unarypos {args.command}: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
