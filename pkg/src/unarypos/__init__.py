"""Positional, unary, unary-positional and spike-train number encodings,
with fault injection and compactness/latency metrics."""

from .errors import EncodingError
from .numeral import (
    PositionalNumeral,
    UnaryPositionalWord,
    UnaryStream,
    binary_to_unary_positional,
    canonicalize,
    max_error_impact,
    positional_decode,
    positional_encode,
    unary_decode,
    unary_encode,
    unary_length_for,
    unary_positional_decode,
    unary_positional_encode,
)
from .raster import RasterBuilder, SpikeRaster, first_spike_times, spike_counts
from .spikes import (
    ComparisonOutcome,
    TemporalRateParams,
    compare_encoded,
    rate_unary_decode,
    rate_unary_encode,
    temporal_lossy_class,
    temporal_positional_decode,
    temporal_positional_encode,
    temporal_rate_decode,
    temporal_rate_encode,
)

__version__ = "0.1.0"
