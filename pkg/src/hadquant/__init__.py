"""Exact Hadamard-transform quantization: pipeline, proven bounds, and norms."""

from .errors import (
    BoundViolation,
    DimensionError,
    EntryError,
    HadQuantError,
    ParameterError,
    SizeLimitError,
    StructureError,
)
from .hadamard import HadamardMatrix, SignVector, fwht, kronecker, sylvester, validate
from .quantization import QuantizerBank, dq, iq, staircase
from .pipeline import PipelineTrace, RationalVector, dt, it, run, run_batch
from .bounds import BoundReport, bit_width, error_bound_general, full_report
from .norms import excess, max_excess_class, norm_inf_1
from .search import SearchConfig, SearchResult, worst_error, worst_magnitude

__version__ = "0.1.0"
