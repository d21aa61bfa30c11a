import json
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from unarypos import raster as rio
from unarypos.errors import MalformedInputError, OutOfBoundsError
from unarypos.raster import RasterBuilder, SpikeRaster, first_spike_times, spike_counts
from unarypos.spikes import (
    TemporalRateParams,
    rate_unary_encode,
    temporal_positional_encode,
    temporal_rate_encode,
)

DATA = Path(__file__).parent / "data"


@st.composite
def rasters(draw, max_neurons=6, max_slots=40):
    neurons = draw(st.integers(0, max_neurons))
    slots = draw(st.integers(0, max_slots))
    rows = []
    for _ in range(neurons):
        if slots:
            rows.append(tuple(draw(st.sets(st.integers(0, slots - 1), max_size=slots))))
        else:
            rows.append(())
    return SpikeRaster(neurons, slots, tuple(rows))


def test_first_spike_times():
    assert first_spike_times(SpikeRaster.empty(3, 5)) == [None, None, None]
    fig2 = temporal_positional_encode(355, 2, 9)
    assert first_spike_times(fig2)[0] == 0
    r = RasterBuilder(1, 10).add(0, 5).add(0, 2).add(0, 7).build()
    assert first_spike_times(r) == [min({5, 2, 7})]


def test_spike_counts():
    assert spike_counts(rate_unary_encode(355, 355)) == [355]
    assert spike_counts(SpikeRaster.empty(4, 9)) == [0, 0, 0, 0]
    assert spike_counts(temporal_rate_encode(355, TemporalRateParams(8, 3))) == [5, 4, 3]


@given(rasters())
def test_query_invariants(r):
    firsts = first_spike_times(r)
    for neuron, row in enumerate(r.spikes):
        assert (firsts[neuron] is None) == (not row)
        assert all(firsts[neuron] <= s for s in row)
    assert sum(spike_counts(r)) == r.total_spikes


@given(rasters())
def test_json_roundtrip(r):
    text = rio.dumps(r)
    assert rio.loads(text) == r
    assert rio.dumps(rio.loads(text)) == text


@given(rasters())
def test_csv_roundtrip(r):
    assert rio.from_csv(rio.to_csv(r), r.neuron_count, r.slot_count) == r


def test_builder_sorts_and_dedups():
    r = RasterBuilder(2, 6).add(1, 4).add(1, 0).add(1, 4).build()
    assert r.spikes == ((), (0, 4))
    assert json.loads(rio.dumps(r))["spikes"] == [[], [0, 4]]


def test_unsorted_input_is_canonicalized():
    r = rio.loads('{"neuron_count": 1, "slot_count": 8, "spikes": [[5, 1, 3]]}')
    assert r.spikes == ((1, 3, 5),)


def test_fig4_golden_file():
    text = (DATA / "fig4_raster.json").read_text()
    r = rio.loads(text)
    assert r == temporal_rate_encode(355, TemporalRateParams(8, 3))
    assert rio.dumps(r) == text


def test_rows_rendering():
    r = temporal_rate_encode(355, TemporalRateParams(8, 3))
    windows = [row[i * 8 : (i + 1) * 8] for i, row in enumerate(r.rows())]
    assert windows == ["00011111", "00001111", "00000111"]
    assert SpikeRaster.from_rows(r.rows()) == r


@pytest.mark.parametrize(
    "text, exc",
    [
        ('{"neuron_count": 1, "slot_count": 4, "spikes": [[4]]}', OutOfBoundsError),
        ('{"neuron_count": 1, "slot_count": 4, "spikes": [[1, 1]]}', MalformedInputError),
        ('{"neuron_count": 2, "slot_count": 4, "spikes": [[1]]}', MalformedInputError),
        ('{"neuron_count": 1, "slot_count": 4}', MalformedInputError),
        ('{"neuron_count": 1, "slot_count": 4, "spikes": [["a"]]}', MalformedInputError),
        ('{"neuron_count": -1, "slot_count": 4, "spikes": []}', MalformedInputError),
        ("[1, 2]", MalformedInputError),
        ('{"neuron_count": 1,\n "slot_count": }', MalformedInputError),
    ],
)
def test_malformed_json(text, exc):
    with pytest.raises(exc):
        rio.loads(text)


def test_diagnostics_name_the_location():
    with pytest.raises(OutOfBoundsError) as info:
        rio.loads('{"neuron_count": 2, "slot_count": 4, "spikes": [[], [0, 9]]}')
    assert info.value.field == "spikes[1][1]"
    with pytest.raises(MalformedInputError) as info:
        rio.loads('{"neuron_count": 1,\n "slot_count": }')
    assert info.value.line == 2


def test_csv_diagnostics():
    with pytest.raises(MalformedInputError) as info:
        rio.from_csv("neuron,slot\n0,1\n0,x\n", 1, 4)
    assert info.value.line == 3
    with pytest.raises(OutOfBoundsError):
        rio.from_csv("neuron,slot\n3,1\n", 1, 4)
    with pytest.raises(OutOfBoundsError):
        RasterBuilder(1, 4).add(0, 4)
