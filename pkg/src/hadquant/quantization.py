"""Per-channel dead-zone quantizers and their dequantizers.

Channel ``i`` of a :class:`QuantizerBank` quantizes with::

    DQ_i(x) = sign(x) * floor(max(0, |x| + delta_i) / Delta_i)
    IQ_i(q) = sign(q) * (Gamma_i * |q| + gamma_i)

with ``sign(0) = 0``.  Channel indices are 0-based.  Inputs to ``dq`` may be
ints or :class:`fractions.Fraction`; all arithmetic is exact.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, NamedTuple, Sequence

from .errors import DimensionError, ParameterError

__all__ = [
    "QuantizerBank",
    "sign",
    "dq",
    "iq",
    "dq_vec",
    "iq_vec",
    "staircase",
    "ScalarQuantizer",
    "classic_quantizer",
    "CLASSIC_KINDS",
]


def sign(v) -> int:
    return (v > 0) - (v < 0)


@dataclass(frozen=True)
class QuantizerBank:
    """Stepwidths ``Delta``, reconstruction steps ``Gamma`` and integer offsets."""

    Delta: tuple[int, ...]
    Gamma: tuple[int, ...]
    delta: tuple[int, ...]
    gamma: tuple[int, ...]

    def __post_init__(self):
        fields = {}
        for name in ("Delta", "Gamma", "delta", "gamma"):
            values = getattr(self, name)
            try:
                converted = tuple(_as_int(v, name) for v in values)
            except TypeError:
                raise ParameterError(f"{name} must be a sequence of integers") from None
            fields[name] = converted
            object.__setattr__(self, name, converted)
        lengths = {len(v) for v in fields.values()}
        if len(lengths) != 1 or 0 in lengths:
            raise ParameterError(
                "Delta, Gamma, delta and gamma must be non-empty and of equal length"
            )
        for name in ("Delta", "Gamma"):
            for i, v in enumerate(fields[name]):
                if v < 1:
                    raise ParameterError(f"{name}[{i}] = {v}, must be a positive integer")

    @property
    def n(self) -> int:
        return len(self.Delta)

    @classmethod
    def uniform(cls, n: int, Delta: int, Gamma: int, delta: int = 0, gamma: int = 0):
        return cls((Delta,) * n, (Gamma,) * n, (delta,) * n, (gamma,) * n)

    @classmethod
    def from_json(cls, obj) -> "QuantizerBank":
        """Build a bank from the JSON file schema (dict or JSON text).

        Either ``{"n", "Delta", "Gamma", "delta", "gamma"}`` with per-channel
        lists, or ``{"n", "uniform": {...}}`` with scalars.
        """
        if isinstance(obj, (str, bytes)):
            obj = json.loads(obj)
        if not isinstance(obj, dict) or "n" not in obj:
            raise ParameterError('bank JSON must be an object with an "n" field')
        n = _as_int(obj["n"], "n")
        if n < 1:
            raise ParameterError("bank n must be positive")
        if "uniform" in obj:
            u = obj["uniform"]
            try:
                bank = cls.uniform(n, u["Delta"], u["Gamma"], u.get("delta", 0), u.get("gamma", 0))
            except KeyError as exc:
                raise ParameterError(f"uniform bank is missing {exc.args[0]!r}") from None
        else:
            try:
                bank = cls(obj["Delta"], obj["Gamma"], obj["delta"], obj["gamma"])
            except KeyError as exc:
                raise ParameterError(f"bank is missing {exc.args[0]!r}") from None
        if bank.n != n:
            raise ParameterError(f"bank declares n={n} but has {bank.n} channels")
        return bank

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "Delta": list(self.Delta),
            "Gamma": list(self.Gamma),
            "delta": list(self.delta),
            "gamma": list(self.gamma),
        }

    @property
    def equal_steps(self) -> bool:
        return self.Delta == self.Gamma

    def dead_zone_edges(self) -> tuple[int, ...]:
        """``Delta_i - delta_i``: the smallest magnitude with a nonzero index."""
        return tuple(d - o for d, o in zip(self.Delta, self.delta))


def _as_int(v, name: str) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        if isinstance(v, float) and v.is_integer():
            return int(v)
        raise ParameterError(f"{name} values must be integers, got {v!r}")
    return v


def _check_channel(bank: QuantizerBank, i: int) -> None:
    if not 0 <= i < bank.n:
        raise IndexError(f"channel {i} out of range for a bank of {bank.n}")


def _dq_frac(bank: QuantizerBank, i: int, num: int, den: int) -> int:
    # floor(max(0, |num/den| + delta) / Delta) over a common denominator
    a = abs(num) + bank.delta[i] * den
    if a <= 0 or num == 0:
        return 0
    q = a // (bank.Delta[i] * den)
    return q if num > 0 else -q


def dq(bank: QuantizerBank, i: int, x) -> int:
    _check_channel(bank, i)
    x = Fraction(x)
    return _dq_frac(bank, i, x.numerator, x.denominator)


def iq(bank: QuantizerBank, i: int, q: int) -> int:
    _check_channel(bank, i)
    if q == 0:
        return 0
    r = bank.Gamma[i] * abs(q) + bank.gamma[i]
    return r if q > 0 else -r


def dq_vec(bank: QuantizerBank, t) -> tuple[int, ...]:
    """Quantize a vector componentwise.

    ``t`` is a :class:`~hadquant.pipeline.RationalVector` or any sequence of
    exact numbers.
    """
    nums = getattr(t, "numerators", None)
    if nums is not None:
        den = t.denominator
        if len(nums) != bank.n:
            raise DimensionError(f"vector length {len(nums)} does not match bank n={bank.n}")
        return tuple(_dq_frac(bank, i, v, den) for i, v in enumerate(nums))
    if len(t) != bank.n:
        raise DimensionError(f"vector length {len(t)} does not match bank n={bank.n}")
    return tuple(dq(bank, i, v) for i, v in enumerate(t))


def iq_vec(bank: QuantizerBank, q: Sequence[int]) -> tuple[int, ...]:
    if len(q) != bank.n:
        raise DimensionError(f"vector length {len(q)} does not match bank n={bank.n}")
    return tuple(iq(bank, i, v) for i, v in enumerate(q))


def _floor(v: Fraction) -> int:
    return v.numerator // v.denominator


def staircase(bank: QuantizerBank, i: int, y) -> int:
    """Closed form of ``IQ_i(DQ_i(y))`` as a three-branch step function.

    The two outer branches overlap when ``delta_i >= Delta_i`` (no dead zone);
    they are told apart by the sign of ``y`` so the identity with ``iq∘dq``
    holds for every integer parameter choice.
    """
    _check_channel(bank, i)
    y = Fraction(y)
    D, G, d, g = bank.Delta[i], bank.Gamma[i], bank.delta[i], bank.gamma[i]
    if y < 0 and y <= d - D:
        return -_floor((d - y) / D) * G - g
    if y > 0 and y >= D - d:
        return _floor((y + d) / D) * G + g
    return 0


class ScalarQuantizer(NamedTuple):
    kind: str
    quantize: Callable[[Fraction], int]
    dequantize: Callable[[int], Fraction]


CLASSIC_KINDS = ("mid-tread", "mid-riser", "mid-riser-toward-zero", "dead-zone-intro")

_HALF = Fraction(1, 2)


def classic_quantizer(kind: str, Delta: int, delta: int = 0) -> ScalarQuantizer:
    """Textbook scalar quantizers, kept for comparison only.

    ``mid-tread``: ``floor(x/Delta + 1/2)`` / ``Delta*q``.
    ``mid-riser``: ``floor(x/Delta)`` / ``Delta*(q + 1/2)``.
    ``mid-riser-toward-zero``: truncating variant of mid-riser.
    ``dead-zone-intro``: ``sign(x)*max(0, floor((|x| - delta)/Delta) + 1)`` /
    ``sign(q)*(Delta*(|q| - 1/2) + delta)``.
    """
    if Delta < 1:
        raise ParameterError("Delta must be a positive integer")
    if kind == "mid-tread":
        return ScalarQuantizer(
            kind,
            lambda x: _floor(Fraction(x) / Delta + _HALF),
            lambda q: Fraction(Delta * q),
        )
    if kind == "mid-riser":
        return ScalarQuantizer(
            kind,
            lambda x: _floor(Fraction(x) / Delta),
            lambda q: Delta * (q + _HALF),
        )
    if kind == "mid-riser-toward-zero":
        return ScalarQuantizer(
            kind,
            lambda x: sign(x) * _floor(abs(Fraction(x)) / Delta),
            lambda q: sign(q) * Delta * (abs(q) + _HALF),
        )
    if kind == "dead-zone-intro":
        return ScalarQuantizer(
            kind,
            lambda x: sign(x) * max(0, _floor((abs(Fraction(x)) - delta) / Delta) + 1),
            lambda q: sign(q) * (Delta * (abs(q) - _HALF) + delta),
        )
    raise ValueError(f"unknown quantizer kind {kind!r}; expected one of {CLASSIC_KINDS}")
