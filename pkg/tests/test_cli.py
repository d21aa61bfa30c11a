import json
import subprocess
import sys
from pathlib import Path

import pytest

from unarypos import raster as rio
from unarypos.cli import main
from unarypos.faults import SweepParams, sweep
from unarypos.metrics import TABLE1_COLUMNS, rows_to_csv, table1_report
from unarypos.spikes import TemporalRateParams, temporal_rate_encode

DATA = Path(__file__).parent / "data"


def run(capsys, *argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        import io

        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_encode_temporal_rate_matches_library(capsys):
    code, out, _ = run(capsys, "encode", "--scheme", "temporal-rate", "--n", "8", "--value", "355")
    assert code == 0
    assert out == rio.dumps(temporal_rate_encode(355, TemporalRateParams(8, 3)))
    assert out == (DATA / "fig4_raster.json").read_text()


def test_encode_unary_positional_text(capsys):
    code, out, _ = run(
        capsys, "encode", "--scheme", "unary-positional", "--n", "8", "--value", "355", "--format", "text"
    )
    assert (code, out) == (0, "01111001 01111000 00000111_u8\n")


def test_encode_accepts_subscript_notation(capsys):
    _, a, _ = run(capsys, "encode", "--scheme", "temporal", "--value", "101100011_2")
    _, b, _ = run(capsys, "encode", "--scheme", "temporal", "--value", "355")
    assert a == b


def test_encode_rate_unary_zero(capsys):
    code, out, _ = run(capsys, "encode", "--scheme", "rate-unary", "--value", "0", "--slot-cap", "8")
    assert code == 0
    assert json.loads(out) == {"neuron_count": 1, "slot_count": 8, "spikes": [[]]}


def test_decode_reference_rasters(capsys):
    code, out, _ = run(capsys, "decode", "--scheme", "temporal-rate", "--n", "8", str(DATA / "fig4_raster.json"))
    assert (code, out) == (0, "355\n")
    code, out, _ = run(capsys, "decode", "--scheme", "temporal", "--base", "8", str(DATA / "fig3_raster.json"))
    assert (code, out) == (0, "73\n")


def test_decode_stdin_and_literal(capsys, monkeypatch):
    code, out, _ = run(
        capsys, "decode", "--scheme", "unary-positional", stdin="01111001 01111000 00000111_u8\n",
        monkeypatch=monkeypatch,
    )
    assert out == "355\n"
    _, out, _ = run(capsys, "decode", "--scheme", "positional", "101100011_2")
    assert out == "355\n"


def test_decode_malformed_json_exits_2(capsys, monkeypatch):
    code, out, err = run(capsys, "decode", "--scheme", "temporal", stdin="{oops", monkeypatch=monkeypatch)
    assert code == 2 and out == ""
    assert "invalid JSON" in err


def test_missing_file_exits_1(capsys, tmp_path):
    code, _, err = run(capsys, "decode", "--scheme", "temporal", str(tmp_path / "nope.json"))
    assert code == 1 and "nope.json" in err


def test_validation_error_exits_2(capsys):
    code, _, err = run(capsys, "encode", "--scheme", "temporal-rate", "--n", "6", "--value", "3")
    assert code == 2 and "power of two" in err
    with pytest.raises(SystemExit) as info:
        main(["encode", "--scheme", "bogus", "--value", "1"])
    assert info.value.code == 2


def test_decode_count_overflow_strict_vs_lenient(capsys, tmp_path):
    path = tmp_path / "r.json"
    path.write_text('{"neuron_count": 1, "slot_count": 2, "spikes": [[0, 1]]}')
    code, _, _ = run(capsys, "decode", "--scheme", "temporal-rate", "--n", "2", str(path))
    assert code == 2
    code, out, _ = run(capsys, "decode", "--scheme", "temporal-rate", "--n", "2", "--lenient", str(path))
    assert (code, out) == (0, "1\n")


def test_convert(capsys):
    code, out, _ = run(
        capsys, "convert", "--from", "positional", "--to", "unary-positional", "--n", "8",
        "--format", "text", "101100011_2",
    )
    assert (code, out) == (0, "01111001 01111000 00000111_u8\n")
    code, out, _ = run(
        capsys, "convert", "--from", "temporal-rate", "--from-n", "8", "--to", "positional",
        "--format", "text", str(DATA / "fig4_raster.json"),
    )
    assert out == "101100011_2\n"


def test_inject_reports_impact(capsys):
    code, out, err = run(
        capsys, "inject", "--scheme", "unary-positional", "--event", "flip:2,1", "--format", "text",
        "--show-impact", "01111001 01111000 00000111_u8",
    )
    assert code == 0
    assert out == "00111001 01111000 00000111_u8\n"
    assert "impact: -64" in err


def test_inject_invalid_event(capsys):
    code, _, err = run(capsys, "inject", "--scheme", "positional", "--event", "flip:0,9", "101100011_2")
    assert code == 2
    code, _, _ = run(capsys, "inject", "--scheme", "positional", "--event", "zap:1", "101100011_2")
    assert code == 2


def test_sweep_matches_library(capsys):
    code, out, _ = run(
        capsys, "sweep", "--scheme", "unary-positional", "--n", "8", "--k", "3",
        "--values", "exhaustive", "--errors", "digit-flip",
    )
    assert code == 0
    assert json.loads(out)["max_abs_impact"] == "64"
    assert out == sweep("unary-positional", SweepParams(n=8, k=3)).to_json()


def test_sweep_requires_seed_when_sampling(capsys):
    code, _, err = run(capsys, "sweep", "--scheme", "temporal", "--base", "2", "--k", "4", "--values", "10")
    assert code == 2 and "--seed" in err


def test_sweep_output_file(capsys, tmp_path):
    path = tmp_path / "rep.json"
    code, out, _ = run(
        capsys, "sweep", "--scheme", "rate-unary", "--slot-cap", "10", "--errors", "spike-insert-delete",
        "--output", str(path),
    )
    assert code == 0 and out == ""
    assert json.loads(path.read_text())["histogram"] == {"1": 110}


def test_bench_table1_csv(capsys):
    code, out, _ = run(capsys, "bench", "table1", "--bases", "2,10", "--digits", "1..6")
    assert code == 0
    assert out == rows_to_csv(table1_report([2, 10], range(1, 7)), TABLE1_COLUMNS)
    _, out, _ = run(capsys, "bench", "table1", "--examples")
    assert "1101_2,13,13,16" in out and "9876_10,9876,9876,10000" in out


def test_bench_measure_and_tradeoff(capsys):
    _, out, _ = run(capsys, "bench", "measure", "--scheme", "temporal-rate", "--n", "8", "--value", "355")
    assert out.splitlines()[1] == "temporal-rate,355,3,24,12,1/6,64,true"
    _, out, _ = run(capsys, "bench", "tradeoff", "--values", "355", "--format", "json")
    assert [r["max_latency"] for r in json.loads(out)] == ["355", "9", "24"]


def test_compare(capsys):
    _, out, _ = run(capsys, "compare", "--scheme", "temporal", "--base", "8", "137", "256")
    assert out == "AMBIGUOUS\n"
    _, out, _ = run(capsys, "compare", "--scheme", "temporal", "--base", "8", "7", "73")
    assert out == "LESS\n"
    _, out, _ = run(capsys, "compare", "--scheme", "temporal-rate", "--base", "8", "217", "256")
    assert out == "LESS\n"
    fig4 = str(DATA / "fig4_raster.json")
    _, out, _ = run(capsys, "compare", "--scheme", "temporal-rate", "--base", "8", fig4, fig4)
    assert out == "EQUAL\n"


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "unarypos", "encode", "--scheme", "unary-positional", "--n", "8",
         "--value", "355", "--format", "text"],
        capture_output=True, text=True, check=True,
    )
    assert proc.stdout == "01111001 01111000 00000111_u8\n"
