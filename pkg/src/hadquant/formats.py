"""Text formats: matrix specs, vector input, bank input, exact number rendering.

Matrix specs::

    sylvester:<k>               H_{2^k}
    kron:<spec>x<spec>[x...]    Kronecker product, left to right
    perm:<i0,i1,...>:<spec>     rows of <spec> reordered; row r is row i_r
    <path>                      text file, one row of ±1 per line
"""

from __future__ import annotations

import json
import os
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import hadamard as hd
from .errors import DimensionError
from .quantization import QuantizerBank

__all__ = [
    "parse_matrix_spec",
    "read_matrix_file",
    "parse_vectors",
    "parse_number",
    "render_number",
    "render_vector",
    "load_bank",
]


class SpecError(ValueError):
    """A matrix spec string could not be parsed."""


def read_matrix_file(path: str) -> hd.HadamardMatrix:
    rows = []
    with open(path) as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if line:
                rows.append([int(tok) for tok in line.split()])
    if not rows:
        raise SpecError(f"{path}: no matrix rows")
    if len({len(r) for r in rows}) != 1:
        raise DimensionError(f"{path}: rows have different lengths")
    return hd.validate(np.array(rows), provenance=f"file({os.path.basename(path)})")


def parse_matrix_spec(spec: str) -> hd.HadamardMatrix:
    spec = spec.strip()
    if spec.startswith("sylvester:"):
        arg = spec[len("sylvester:"):]
        if not arg.isdigit():
            raise SpecError(f"bad sylvester order in {spec!r}")
        return hd.sylvester(int(arg))
    if spec.startswith("kron:"):
        return _parse_kron(spec[len("kron:"):], spec)
    if spec.startswith("perm:"):
        try:
            perm_text, inner = spec[len("perm:"):].split(":", 1)
            perm = [int(v) for v in perm_text.split(",")]
        except ValueError:
            raise SpecError(f"bad perm spec {spec!r}") from None
        h = parse_matrix_spec(inner)
        ident = range(h.order)
        ones = hd.SignVector.ones(h.order)
        return hd.equivalence_transform(h, perm, ones, ident, ones)
    if os.path.isfile(spec):
        return read_matrix_file(spec)
    raise SpecError(f"unrecognised matrix spec {spec!r}")


def _parse_kron(body: str, full: str) -> hd.HadamardMatrix:
    # file paths may contain 'x', so try every split point
    for i, ch in enumerate(body):
        if ch != "x":
            continue
        try:
            a = parse_matrix_spec(body[:i])
            rest = body[i + 1:]
            try:
                b = parse_matrix_spec(rest)
            except (SpecError, OSError, ValueError):
                b = _parse_kron(rest, full)
        except (SpecError, OSError, ValueError):
            continue
        return hd.kronecker(a, b)
    raise SpecError(f"bad kron spec {full!r}")


def parse_number(tok) -> Fraction:
    """Parse ``"12"``, ``"-251.875"`` or ``"2073/8"`` exactly."""
    if isinstance(tok, bool):
        raise ValueError("booleans are not numbers")
    if isinstance(tok, int):
        return Fraction(tok)
    if isinstance(tok, float):
        raise ValueError(f"refusing inexact float {tok!r}; pass it as a string")
    return Fraction(str(tok).strip())


def parse_vectors(text: str, integer: bool = True) -> list[list]:
    """Vectors from a JSON array (or array of arrays) or whitespace-separated lines."""
    text = text.strip()
    if not text:
        return []
    if text.startswith("["):
        data = json.loads(text, parse_float=str)
        rows = data if data and isinstance(data[0], list) else [data]
    else:
        rows = [line.split() for line in text.splitlines() if line.strip()]
    out = []
    for row in rows:
        vals = [parse_number(v) for v in row]
        if integer:
            if any(v.denominator != 1 for v in vals):
                raise ValueError("expected integer components")
            vals = [int(v) for v in vals]
        out.append(vals)
    return out


def _is_pow2(d: int) -> bool:
    return d & (d - 1) == 0


def render_number(v) -> str:
    """Exact text: decimal for dyadic rationals, ``p/q`` otherwise."""
    v = Fraction(v)
    if v.denominator == 1:
        return str(v.numerator)
    if not _is_pow2(v.denominator):
        return f"{v.numerator}/{v.denominator}"
    m = v.denominator.bit_length() - 1
    scaled = abs(v.numerator) * 5 ** m
    digits = str(scaled).rjust(m + 1, "0")
    text = f"{digits[:-m]}.{digits[-m:]}".rstrip("0")
    return ("-" if v < 0 else "") + text


def render_vector(values: Sequence) -> list[str]:
    nums = getattr(values, "values", None)
    if callable(nums):
        values = nums()
    return [render_number(v) for v in values]


def load_bank(arg: str) -> QuantizerBank:
    """Bank from inline JSON (starting with ``{``) or a JSON file path."""
    text = arg.strip()
    if not text.startswith("{"):
        with open(arg) as fh:
            text = fh.read()
    return QuantizerBank.from_json(text)
