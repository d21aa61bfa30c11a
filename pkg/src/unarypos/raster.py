"""Discrete-time spike rasters.

A raster is a bundle of neurons over uniform time slots. Spikes are kept
sparse: one ascending tuple of slot indices per neuron. Neuron 0 is the top
row when drawn, which is the highest-weight neuron in the temporal schemes.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass

from .errors import MalformedInputError, OutOfBoundsError


@dataclass(frozen=True)
class SpikeRaster:
    neuron_count: int
    slot_count: int
    spikes: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.neuron_count < 0 or self.slot_count < 0:
            raise MalformedInputError("neuron_count and slot_count must be >= 0")
        rows = tuple(tuple(sorted(row)) for row in self.spikes)
        if len(rows) != self.neuron_count:
            raise MalformedInputError(
                f"expected {self.neuron_count} spike lists, got {len(rows)}"
            )
        for neuron, row in enumerate(rows):
            for slot in row:
                if not 0 <= slot < self.slot_count:
                    raise OutOfBoundsError(
                        f"slot {slot} outside [0, {self.slot_count})", field=f"spikes[{neuron}]"
                    )
            if len(set(row)) != len(row):
                raise MalformedInputError("duplicate spike", field=f"spikes[{neuron}]")
        object.__setattr__(self, "spikes", rows)

    @classmethod
    def empty(cls, neuron_count: int, slot_count: int) -> "SpikeRaster":
        return cls(neuron_count, slot_count, ((),) * neuron_count)

    @classmethod
    def from_rows(cls, rows) -> "SpikeRaster":
        """Build from equal-length 0/1 strings, one per neuron."""
        rows = list(rows)
        width = len(rows[0]) if rows else 0
        spikes = []
        for neuron, row in enumerate(rows):
            if len(row) != width or row.strip("01"):
                raise MalformedInputError("rows must be equal-length 0/1 strings", line=neuron + 1)
            spikes.append(tuple(i for i, ch in enumerate(row) if ch == "1"))
        return cls(len(rows), width, tuple(spikes))

    def has_spike(self, neuron: int, slot: int) -> bool:
        return slot in self.spikes[neuron]

    @property
    def total_spikes(self) -> int:
        return sum(len(row) for row in self.spikes)

    def rows(self) -> list[str]:
        out = []
        for row in self.spikes:
            cells = ["0"] * self.slot_count
            for slot in row:
                cells[slot] = "1"
            out.append("".join(cells))
        return out

    def with_row(self, neuron: int, row) -> "SpikeRaster":
        spikes = list(self.spikes)
        spikes[neuron] = tuple(row)
        return SpikeRaster(self.neuron_count, self.slot_count, tuple(spikes))


class RasterBuilder:
    """Mutable, single-threaded accumulator for a SpikeRaster."""

    def __init__(self, neuron_count: int, slot_count: int):
        self.neuron_count = neuron_count
        self.slot_count = slot_count
        self._rows = [set() for _ in range(neuron_count)]

    def add(self, neuron: int, slot: int) -> "RasterBuilder":
        if not 0 <= neuron < self.neuron_count or not 0 <= slot < self.slot_count:
            raise OutOfBoundsError(f"spike ({neuron}, {slot}) outside raster")
        self._rows[neuron].add(slot)
        return self

    def add_range(self, neuron: int, start: int, stop: int) -> "RasterBuilder":
        for slot in range(start, stop):
            self.add(neuron, slot)
        return self

    def build(self) -> SpikeRaster:
        return SpikeRaster(
            self.neuron_count, self.slot_count, tuple(tuple(sorted(r)) for r in self._rows)
        )


def first_spike_times(r: SpikeRaster) -> list[int | None]:
    """Earliest spike slot per neuron, None for silent neurons."""
    return [row[0] if row else None for row in r.spikes]


def spike_counts(r: SpikeRaster) -> list[int]:
    return [len(row) for row in r.spikes]


# -- serialization ----------------------------------------------------------

def raster_to_dict(r: SpikeRaster) -> dict:
    return {
        "neuron_count": r.neuron_count,
        "slot_count": r.slot_count,
        "spikes": [list(row) for row in r.spikes],
    }


def dumps(r: SpikeRaster) -> str:
    return json.dumps(raster_to_dict(r), separators=(", ", ": ")) + "\n"


def _require_int(obj, field):
    if isinstance(obj, bool) or not isinstance(obj, int):
        raise MalformedInputError(f"expected an integer, got {obj!r}", field=field)
    if obj < 0:
        raise MalformedInputError(f"expected a nonnegative integer, got {obj}", field=field)
    return obj


def raster_from_dict(data) -> SpikeRaster:
    if not isinstance(data, dict):
        raise MalformedInputError("raster must be a JSON object")
    for key in ("neuron_count", "slot_count", "spikes"):
        if key not in data:
            raise MalformedInputError("missing key", field=key)
    neurons = _require_int(data["neuron_count"], "neuron_count")
    slots = _require_int(data["slot_count"], "slot_count")
    spikes = data["spikes"]
    if not isinstance(spikes, list):
        raise MalformedInputError("expected a list of spike lists", field="spikes")
    if len(spikes) != neurons:
        raise MalformedInputError(
            f"expected {neurons} spike lists, got {len(spikes)}", field="spikes"
        )
    rows = []
    for i, row in enumerate(spikes):
        if not isinstance(row, list):
            raise MalformedInputError("expected a list of slots", field=f"spikes[{i}]")
        checked = []
        for j, slot in enumerate(row):
            slot = _require_int(slot, f"spikes[{i}][{j}]")
            if slot >= slots:
                raise OutOfBoundsError(
                    f"slot {slot} outside [0, {slots})", field=f"spikes[{i}][{j}]"
                )
            checked.append(slot)
        rows.append(tuple(checked))
    return SpikeRaster(neurons, slots, tuple(rows))


def loads(text: str) -> SpikeRaster:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInputError(f"invalid JSON: {exc.msg}", line=exc.lineno) from None
    return raster_from_dict(data)


def to_csv(r: SpikeRaster) -> str:
    """One row per spike, columns ``neuron,slot``."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["neuron", "slot"])
    for neuron, row in enumerate(r.spikes):
        for slot in row:
            writer.writerow([neuron, slot])
    return buf.getvalue()


def from_csv(text: str, neuron_count: int, slot_count: int) -> SpikeRaster:
    # the CSV form carries no dimensions, so callers supply them
    builder = RasterBuilder(neuron_count, slot_count)
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header != ["neuron", "slot"]:
        raise MalformedInputError("expected header 'neuron,slot'", line=1)
    for lineno, rec in enumerate(reader, start=2):
        if len(rec) != 2 or not all(f.strip().isdigit() for f in rec):
            raise MalformedInputError(f"bad record {rec!r}", line=lineno)
        neuron, slot = int(rec[0]), int(rec[1])
        if neuron >= neuron_count or slot >= slot_count:
            raise OutOfBoundsError(f"spike ({neuron}, {slot}) outside raster", line=lineno)
        builder.add(neuron, slot)
    return builder.build()
