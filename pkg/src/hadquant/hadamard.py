"""Hadamard matrices: construction, validation, and exact application.

Sylvester matrices are kept implicit: entry ``(i, j)`` of ``H_{2^k}`` is
``(-1) ** popcount(i & j)``, so transforms up to order ``2**20`` run through
the butterfly without ever materialising the dense matrix.  Everything else is
stored as a read-only ``int8`` array.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionError, EntryError, SizeLimitError, StructureError

__all__ = [
    "MAX_TRANSFORM_K",
    "DENSE_ORDER_CAP",
    "HadamardMatrix",
    "SignVector",
    "sylvester",
    "kronecker",
    "validate",
    "fwht",
    "apply",
    "apply_transpose",
    "equivalence_transform",
    "random_equivalence",
    "check_permutation",
]

MAX_TRANSFORM_K = 20
DENSE_ORDER_CAP = 4096


def _sylvester_dense(k: int) -> np.ndarray:
    h = np.ones((1, 1), dtype=np.int8)
    h2 = np.array([[1, 1], [1, -1]], dtype=np.int8)
    for _ in range(k):
        h = np.kron(h2, h)
    return h


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=np.int8, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class HadamardMatrix:
    """A validated ±1 matrix with ``H^T H = n I``.

    Instances come from :func:`sylvester`, :func:`kronecker`, :func:`validate`
    or :func:`equivalence_transform`; the constructor itself does not check
    anything.
    """

    order: int
    provenance: str
    sylvester_k: int | None = None
    _dense: np.ndarray | None = field(default=None, repr=False)

    @cached_property
    def entries(self) -> np.ndarray:
        if self._dense is not None:
            return self._dense
        if self.order > DENSE_ORDER_CAP:
            raise SizeLimitError(
                f"refusing to materialise a dense {self.order}x{self.order} matrix "
                f"(cap {DENSE_ORDER_CAP})"
            )
        return _frozen(_sylvester_dense(self.sylvester_k))

    @cached_property
    def rows(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(int(v) for v in row) for row in self.entries)

    @cached_property
    def columns(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(int(v) for v in col) for col in self.entries.T)

    @property
    def is_sylvester(self) -> bool:
        return self.sylvester_k is not None

    def __eq__(self, other):
        if not isinstance(other, HadamardMatrix):
            return NotImplemented
        if self.order != other.order:
            return False
        if self.is_sylvester and other.is_sylvester:
            return True
        return bool(np.array_equal(self.entries, other.entries))

    def __hash__(self):
        return hash((self.order, self.entries.tobytes()))

    def to_lists(self) -> list[list[int]]:
        return self.entries.astype(int).tolist()


@dataclass(frozen=True)
class SignVector:
    entries: tuple[int, ...]

    def __post_init__(self):
        entries = tuple(int(v) for v in self.entries)
        if not entries:
            raise DimensionError("sign vector must be non-empty")
        for i, v in enumerate(entries):
            if v not in (-1, 1):
                raise EntryError(f"sign vector entry {i} is {v}, expected -1 or +1")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def ones(cls, n: int) -> "SignVector":
        return cls((1,) * n)

    @classmethod
    def parse(cls, text: str) -> "SignVector":
        """Parse ``"+-+-"`` style strings."""
        table = {"+": 1, "-": -1}
        try:
            return cls(tuple(table[c] for c in text.strip()))
        except KeyError as exc:
            raise EntryError(f"bad sign character {exc.args[0]!r}") from None

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __str__(self):
        return "".join("+" if v > 0 else "-" for v in self.entries)


def sylvester(k: int, max_k: int = MAX_TRANSFORM_K) -> HadamardMatrix:
    """Return ``H_{2^k}`` from the doubling ``H_{2^k} = H_2 ⊗ H_{2^{k-1}}``."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k > max_k:
        raise SizeLimitError(f"sylvester({k}) exceeds the cap k <= {max_k}")
    return HadamardMatrix(order=1 << k, provenance=f"sylvester({k})", sylvester_k=k)


def kronecker(
    a: HadamardMatrix,
    b: HadamardMatrix,
    max_order: int = DENSE_ORDER_CAP,
) -> HadamardMatrix:
    """Kronecker product; entry ``(i1*nB + i2, j1*nB + j2)`` is ``a[i1,j1] * b[i2,j2]``."""
    order = a.order * b.order
    provenance = f"kronecker({a.provenance},{b.provenance})"
    if a.is_sylvester and b.is_sylvester:
        # popcount of concatenated indices splits over the two halves
        k = a.sylvester_k + b.sylvester_k
        if k > MAX_TRANSFORM_K:
            raise SizeLimitError(f"kronecker order 2^{k} exceeds 2^{MAX_TRANSFORM_K}")
        return HadamardMatrix(order=order, provenance=provenance, sylvester_k=k)
    if order > max_order:
        raise SizeLimitError(f"kronecker order {order} exceeds cap {max_order}")
    return HadamardMatrix(
        order=order, provenance=provenance, _dense=_frozen(np.kron(a.entries, b.entries))
    )


def _valid_order(n: int) -> bool:
    return n in (1, 2) or n % 4 == 0


def validate(m, provenance: str = "explicit") -> HadamardMatrix:
    """Check that ``m`` is Hadamard and wrap it.

    Raises :class:`EntryError` for a non-±1 entry and :class:`StructureError`
    for a bad order or the first non-orthogonal row pair ``(i, j)``, ``i < j``.
    """
    arr = np.asarray(m)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise DimensionError(f"expected a non-empty square matrix, got shape {arr.shape}")
    n = arr.shape[0]
    bad = np.argwhere((arr != 1) & (arr != -1))
    if len(bad):
        i, j = (int(v) for v in bad[0])
        raise EntryError(f"entry ({i}, {j}) is {arr[i, j]!r}, expected -1 or +1")
    if not _valid_order(n):
        raise StructureError(f"order {n} is not 1, 2, or a multiple of 4")
    a = arr.astype(np.int64)
    gram = a @ a.T
    off = np.argwhere(np.triu(gram, 1) != 0)
    if len(off):
        i, j = (int(v) for v in off[0])
        raise StructureError(
            f"rows {i} and {j} are not orthogonal (dot product {gram[i, j]})", rows=(i, j)
        )
    dense = _frozen(a)
    k = n.bit_length() - 1
    sylvester_k = k if n == 1 << k and np.array_equal(dense, _sylvester_dense(k)) else None
    return HadamardMatrix(order=n, provenance=provenance, sylvester_k=sylvester_k, _dense=dense)


def fwht(x: Sequence) -> list:
    """Sylvester-ordered fast Walsh-Hadamard transform, exact on ints or Fractions.

    Returns ``H_{2^k} x`` using ``n log2 n`` additions and subtractions.
    """
    a = list(x)
    n = len(a)
    if n == 0 or n & (n - 1):
        raise DimensionError(f"fwht length {n} is not a power of two")
    h = 1
    while h < n:
        for start in range(0, n, 2 * h):
            for j in range(start, start + h):
                u, v = a[j], a[j + h]
                a[j] = u + v
                a[j + h] = u - v
        h *= 2
    return a


def _check_len(h: HadamardMatrix, x: Sequence) -> None:
    if len(x) != h.order:
        raise DimensionError(f"vector length {len(x)} does not match order {h.order}")


def apply(h: HadamardMatrix, x: Sequence) -> list:
    """Exact product ``H x``."""
    _check_len(h, x)
    if h.is_sylvester:
        return fwht(x)
    return [sum(c * v for c, v in zip(row, x)) for row in h.rows]


def apply_transpose(h: HadamardMatrix, z: Sequence) -> list:
    """Exact product ``H^T z``; Sylvester matrices are symmetric."""
    _check_len(h, z)
    if h.is_sylvester:
        return fwht(z)
    return [sum(c * v for c, v in zip(col, z)) for col in h.columns]


def check_permutation(p: Iterable[int], n: int) -> tuple[int, ...]:
    p = tuple(int(v) for v in p)
    if len(p) != n:
        raise DimensionError(f"permutation has length {len(p)}, expected {n}")
    if sorted(p) != list(range(n)):
        raise ValueError(f"{p} is not a permutation of 0..{n - 1}")
    return p


def _signs(s, n: int) -> tuple[int, ...]:
    s = s if isinstance(s, SignVector) else SignVector(tuple(s))
    if len(s) != n:
        raise DimensionError(f"sign vector has length {len(s)}, expected {n}")
    return s.entries


def equivalence_transform(
    h: HadamardMatrix,
    row_perm: Iterable[int],
    row_signs,
    col_perm: Iterable[int],
    col_signs,
) -> HadamardMatrix:
    """Return ``P1 D1 H D2 P2``.

    Entry ``(i, j)`` of the result is
    ``row_signs[r] * H[r, c] * col_signs[c]`` with ``r = row_perm[i]`` and
    ``c = col_perm[j]``.
    """
    n = h.order
    rp = np.array(check_permutation(row_perm, n))
    cp = np.array(check_permutation(col_perm, n))
    d1 = np.array(_signs(row_signs, n), dtype=np.int8)
    d2 = np.array(_signs(col_signs, n), dtype=np.int8)
    scaled = d1[:, None] * h.entries * d2[None, :]
    out = _frozen(scaled[np.ix_(rp, cp)])
    k = n.bit_length() - 1
    is_syl = n == 1 << k and np.array_equal(out, _sylvester_dense(k))
    return HadamardMatrix(
        order=n,
        provenance=f"equivalent({h.provenance})",
        sylvester_k=k if is_syl else None,
        _dense=out,
    )


def random_equivalence(h: HadamardMatrix, rng: np.random.Generator) -> HadamardMatrix:
    """Apply a uniformly random row/column permutation and negation."""
    n = h.order
    return equivalence_transform(
        h,
        rng.permutation(n),
        rng.choice((-1, 1), size=n),
        rng.permutation(n),
        rng.choice((-1, 1), size=n),
    )
