"""The exact transform/quantize/dequantize/inverse-transform chain.

``x' = H^T IQ(DQ(H x / n))``.  The forward transform output keeps the
unreduced denominator ``n`` so every component prints exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import hadamard as hd
from .errors import DimensionError, SizeLimitError
from .quantization import QuantizerBank, dq_vec, iq_vec

__all__ = [
    "RationalVector",
    "PipelineTrace",
    "dt",
    "it",
    "run",
    "run_batch",
    "register_overflows",
]


@dataclass(frozen=True)
class RationalVector:
    """Component ``i`` is ``numerators[i] / denominator``."""

    numerators: tuple[int, ...]
    denominator: int

    def __post_init__(self):
        if self.denominator < 1:
            raise ValueError("denominator must be a positive integer")
        object.__setattr__(self, "numerators", tuple(int(v) for v in self.numerators))

    def __len__(self):
        return len(self.numerators)

    def __getitem__(self, i) -> Fraction:
        return Fraction(self.numerators[i], self.denominator)

    def values(self) -> list[Fraction]:
        return [Fraction(v, self.denominator) for v in self.numerators]

    def max_abs(self) -> Fraction:
        return Fraction(max((abs(v) for v in self.numerators), default=0), self.denominator)


@dataclass(frozen=True)
class PipelineTrace:
    x: tuple[int, ...]
    t1: RationalVector
    t2: tuple[int, ...]
    t3: tuple[int, ...]
    x_prime: tuple[int, ...]
    err_inf: int
    quant_err: RationalVector

    @property
    def mag_inf(self) -> int:
        return max((abs(v) for v in self.x_prime), default=0)

    @property
    def x_inf(self) -> int:
        return max((abs(v) for v in self.x), default=0)


def _ints(x: Sequence) -> tuple[int, ...]:
    out = []
    for v in x:
        if isinstance(v, (bool, float)) or int(v) != v:
            raise TypeError(f"expected integer components, got {v!r}")
        out.append(int(v))
    return tuple(out)


def dt(h: hd.HadamardMatrix, x: Sequence[int]) -> RationalVector:
    """Forward transform ``(1/n) H x``."""
    x = _ints(x)
    return RationalVector(tuple(hd.apply(h, x)), h.order)


def it(h: hd.HadamardMatrix, z: Sequence) -> list:
    """Inverse transform ``H^T z``; integer in, integer out."""
    return hd.apply_transpose(h, list(z))


def run(h: hd.HadamardMatrix, bank: QuantizerBank, x: Sequence[int]) -> PipelineTrace:
    x = _ints(x)
    n = h.order
    if bank.n != n:
        raise DimensionError(f"bank has {bank.n} channels but the matrix order is {n}")
    if len(x) != n:
        raise DimensionError(f"vector length {len(x)} does not match order {n}")
    t1 = dt(h, x)
    t2 = dq_vec(bank, t1)
    t3 = iq_vec(bank, t2)
    xp = tuple(it(h, t3))
    err = RationalVector(tuple(q * n - y for q, y in zip(t3, t1.numerators)), n)
    return PipelineTrace(
        x=x,
        t1=t1,
        t2=t2,
        t3=t3,
        x_prime=xp,
        err_inf=max(abs(a - b) for a, b in zip(xp, x)),
        quant_err=err,
    )


_INT64_SAFE = 1 << 62


def run_batch(h: hd.HadamardMatrix, bank: QuantizerBank, xs) -> np.ndarray:
    """Vectorised :func:`run` over the rows of ``xs``, returning ``x'`` rows.

    Uses exact int64 arithmetic; raises :class:`SizeLimitError` when the
    inputs could overflow, in which case callers fall back to :func:`run`.
    """
    xs = np.asarray(xs, dtype=np.int64)
    if xs.ndim != 2 or xs.shape[1] != h.order:
        raise DimensionError(f"expected rows of length {h.order}, got shape {xs.shape}")
    if bank.n != h.order:
        raise DimensionError(f"bank has {bank.n} channels but the matrix order is {h.order}")
    n = h.order
    xmax = int(np.abs(xs).max()) if xs.size else 0
    Delta = np.array(bank.Delta, dtype=np.int64)
    Gamma = np.array(bank.Gamma, dtype=np.int64)
    delta = np.array(bank.delta, dtype=np.int64)
    gamma = np.array(bank.gamma, dtype=np.int64)
    qmax = (n * xmax + max(0, max(bank.delta)) * n) // min(bank.Delta) + 1
    zmax = qmax * max(bank.Gamma) + max(abs(g) for g in bank.gamma)
    worst = max(n * n * xmax + n * max(abs(d) for d in bank.delta),
                n * zmax,
                max(bank.Delta) * n)
    if worst >= _INT64_SAFE:
        raise SizeLimitError("batch inputs may overflow int64")
    H = h.entries.astype(np.int64)
    y = xs @ H.T                       # numerators over n
    a = np.abs(y) + delta * n
    q = np.where((a > 0) & (y != 0), a // (Delta * n), 0) * np.sign(y)
    z = np.where(q != 0, np.sign(q) * (Gamma * np.abs(q) + gamma), 0)
    return z @ H


def register_overflows(trace: PipelineTrace, bits: int) -> dict[str, int]:
    """Intermediates whose magnitude does not fit a signed ``bits``-wide register.

    Returns ``{stage: max_abs}`` for each offending stage; ``Hx`` is checked
    before the division by ``n``.
    """
    lo, hi = -(1 << (bits - 1)), (1 << (bits - 1)) - 1
    stages = {
        "Hx": trace.t1.numerators,
        "t2": trace.t2,
        "t3": trace.t3,
        "x_prime": trace.x_prime,
    }
    out = {}
    for name, values in stages.items():
        if any(v < lo or v > hi for v in values):
            out[name] = max(abs(v) for v in values)
    return out
