"""Vector and matrix norms, the brute-force ``||A||_{inf,1}`` engine, and excess.

``||A||_{inf,1}`` is the maximum of ``||A x||_1`` over sign vectors ``x``.  For
a Hadamard matrix it coincides with the maximal excess of the equivalence
class of ``A``: flipping rows to make every ``(H x)_i`` nonnegative turns
``||H x||_1`` into the entry sum of ``D1 H D2``.

Quantities that are irrational in general (``n^(3/2)``, ``||H||_2``) are
returned as exact squares.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

import numpy as np

from . import hadamard as hd
from .errors import DimensionError, SizeLimitError

__all__ = [
    "NormInf1Result",
    "ExcessReport",
    "vec_norms",
    "matrix_norm_1",
    "matrix_norm_inf",
    "matrix_norm_1_inf",
    "matrix_norm_2_hadamard",
    "spectral_norm_estimate",
    "norm_inf_1",
    "norm_inf_1_naive",
    "norm_inf_1_upper",
    "sylvester_lower",
    "gray_sign_vector",
    "excess",
    "select_sign",
    "sign_selected_excess",
    "max_excess_sign_selection",
    "max_excess_diagonal_oracle",
    "class_maximizer",
    "max_excess_class",
    "binom",
    "best_bounds",
    "best_row_sum_bound",
    "em_p1",
    "em_q1",
    "em_bound_q1",
    "em_p2",
    "em_q2",
    "em_bound_q2",
    "excess_report",
]

DEFAULT_CAP = 28
LONG_RUN_CAP = 64
# below this order the pure-Python walk beats numba's compile latency
COMPILED_MIN_ORDER = 20
PREFIX_BITS = 8


def vec_norms(x: Sequence) -> tuple:
    """``(||x||_1, ||x||_2^2, ||x||_inf)``, exact."""
    l1 = sum(abs(v) for v in x)
    l2sq = sum(v * v for v in x)
    linf = max((abs(v) for v in x), default=0)
    return l1, l2sq, linf


def _as_rows(a) -> list[list]:
    if isinstance(a, hd.HadamardMatrix):
        return [list(r) for r in a.rows]
    if isinstance(a, np.ndarray):
        return [[int(v) for v in r] for r in a]
    return [list(r) for r in a]


def matrix_norm_1(a) -> int | Fraction:
    """Largest absolute column sum."""
    rows = _as_rows(a)
    if not rows:
        return 0
    return max(sum(abs(r[j]) for r in rows) for j in range(len(rows[0])))


def matrix_norm_inf(a) -> int | Fraction:
    """Largest absolute row sum."""
    return max((sum(abs(v) for v in r) for r in _as_rows(a)), default=0)


def matrix_norm_1_inf(a) -> int | Fraction:
    """``||A||_{1,inf}``: the largest absolute entry."""
    return max((abs(v) for r in _as_rows(a) for v in r), default=0)


def matrix_norm_2_hadamard(h) -> int:
    """Square of the spectral norm of a Hadamard matrix, which is ``n``."""
    if not isinstance(h, hd.HadamardMatrix):
        h = hd.validate(h)
    return h.order


def spectral_norm_estimate(a, iters: int = 200, seed: int = 0) -> float:
    """Floating-point power iteration on ``A^T A``; diagnostics only."""
    m = np.asarray(a.entries if isinstance(a, hd.HadamardMatrix) else a, dtype=float)
    v = np.random.default_rng(seed).standard_normal(m.shape[1])
    lam = 0.0
    for _ in range(iters):
        w = m.T @ (m @ v)
        lam = float(np.linalg.norm(w))
        if lam == 0.0:
            return 0.0
        v = w / lam
    return float(np.sqrt(lam))


@dataclass(frozen=True)
class NormInf1Result:
    value: int
    witness: hd.SignVector
    evaluated: int

    def to_json(self) -> dict:
        return {"value": self.value, "witness": str(self.witness), "evaluated": self.evaluated}


def gray_sign_vector(n: int, g: int) -> tuple[int, ...]:
    """Sign vector visited at step ``g`` of the walk (first coordinate fixed +1).

    Bit ``b`` of the reflected Gray code of ``g`` negates coordinate ``b + 1``.
    """
    code = g ^ (g >> 1)
    return (1,) + tuple(-1 if (code >> b) & 1 else 1 for b in range(n - 1))


def _walk_python(rows: list[list[int]]) -> tuple[int, int]:
    n = len(rows)
    cols = [[r[j] for r in rows] for j in range(n)]
    x = [1] * n
    z = [sum(r) for r in rows]
    best = sum(abs(v) for v in z)
    best_g = 0
    for g in range(1, 1 << (n - 1)):
        c = (g & -g).bit_length()
        x[c] = -x[c]
        step = 2 * x[c]
        z = [zi + step * ci for zi, ci in zip(z, cols[c])]
        tot = sum(abs(v) for v in z)
        if tot > best:
            best = tot
            best_g = g
    return best, best_g


def _walk_compiled(rows: list[list[int]]) -> tuple[int, int]:
    from ._gray_kernel import walk_chunks

    n = len(rows)
    a = np.array(rows, dtype=np.int64)
    prefix = min(n - 1, PREFIX_BITS)
    m = n - 1 - prefix
    values, offsets = walk_chunks(a, prefix, m)
    p = int(np.argmax(values))  # first maximal chunk keeps Gray-order tie-break
    return int(values[p]), (p << m) + int(offsets[p])


def _int_rows(a) -> list[list[int]]:
    rows = _as_rows(a)
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise DimensionError("norm_inf_1 expects a non-empty square matrix")
    out = []
    for r in rows:
        ints = []
        for v in r:
            if int(v) != v:
                raise TypeError("norm_inf_1 expects an integer matrix")
            ints.append(int(v))
        out.append(ints)
    return out


def norm_inf_1(
    a,
    cap: int = DEFAULT_CAP,
    long_run: bool = False,
    engine: str = "auto",
) -> NormInf1Result:
    """Exact ``||A||_{inf,1}`` by a Gray-code walk over ``2^(n-1)`` sign vectors.

    ``x`` and ``-x`` give the same norm, so the first coordinate stays +1.
    Each step flips one coordinate and updates ``z = A x`` by one column.
    The witness is the first maximiser in walk order.  Orders above ``cap``
    need ``long_run=True``.  ``engine`` is ``"auto"``, ``"python"`` or
    ``"compiled"``.
    """
    rows = _int_rows(a)
    n = len(rows)
    if n > LONG_RUN_CAP:
        raise SizeLimitError(f"order {n} exceeds the hard cap {LONG_RUN_CAP}")
    if n > cap and not long_run:
        raise SizeLimitError(f"order {n} exceeds cap {cap}; pass long_run=True to proceed")
    amax = max(abs(v) for r in rows for v in r)
    fits = n * n * max(amax, 1) < (1 << 62)
    if engine == "auto":
        engine = "compiled" if n >= COMPILED_MIN_ORDER and fits else "python"
    if engine == "compiled":
        if not fits:
            raise SizeLimitError("matrix entries too large for the int64 kernel")
        value, g = _walk_compiled(rows)
    elif engine == "python":
        value, g = _walk_python(rows)
    else:
        raise ValueError(f"unknown engine {engine!r}")
    return NormInf1Result(value, hd.SignVector(gray_sign_vector(n, g)), 1 << (n - 1))


def norm_inf_1_naive(a) -> NormInf1Result:
    """Reference enumeration over all ``2^n`` sign vectors, no shortcuts."""
    rows = _int_rows(a)
    n = len(rows)
    if n > 20:
        raise SizeLimitError("naive enumeration is limited to n <= 20")
    best, arg = -1, None
    count = 0
    for x in itertools.product((1, -1), repeat=n):
        count += 1
        v = sum(abs(sum(r[j] * x[j] for j in range(n))) for r in rows)
        if v > best:
            best, arg = v, x
    return NormInf1Result(best, hd.SignVector(arg), count)


def norm_inf_1_upper(n: int) -> int:
    """Square of the ``n^(3/2)`` upper bound for Hadamard matrices."""
    return n ** 3


def sylvester_lower(k: int) -> Fraction:
    """Square of the lower bound on ``||H_{2^k}||_{inf,1}`` from the 4x lifting.

    Even ``k`` gives ``8^k`` (i.e. ``8^(k/2)`` squared); odd ``k >= 3`` gives
    ``(25/32) 8^k``, the square of ``20 * 8^((k-3)/2)``; ``k = 1`` gives ``4``.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k % 2 == 0:
        return Fraction(8 ** k)
    if k == 1:
        return Fraction(4)
    return Fraction(25, 32) * 8 ** k


def excess(h) -> int:
    """Sum of all entries."""
    if isinstance(h, hd.HadamardMatrix):
        return int(h.entries.sum(dtype=np.int64))
    return sum(sum(r) for r in _as_rows(h))


def select_sign(v) -> int:
    """``+1`` for ``v >= 0`` and ``-1`` otherwise (zero maps to +1)."""
    return 1 if v >= 0 else -1


def sign_selected_excess(h, x: Sequence[int]) -> int:
    """Excess of ``D1 H D2`` with ``D2 = diag(x)`` and ``D1`` the best row signs."""
    total = 0
    for row in _as_rows(h):
        s = sum(c * v for c, v in zip(row, x))
        total += select_sign(s) * s
    return total


def _all_signs(n: int) -> np.ndarray:
    idx = np.arange(1 << n, dtype=np.int64)
    bits = (idx[:, None] >> np.arange(n)) & 1
    return (1 - 2 * bits).astype(np.int64)


def max_excess_sign_selection(h, cap: int = 20) -> int:
    """Maximise :func:`sign_selected_excess` over all ``x`` (vectorised)."""
    a = np.asarray(h.entries if isinstance(h, hd.HadamardMatrix) else h, dtype=np.int64)
    n = a.shape[0]
    if n > cap:
        raise SizeLimitError(f"sign-selection enumeration limited to n <= {cap}")
    best = 0
    xs = _all_signs(n)
    for start in range(0, len(xs), 1 << 14):
        z = xs[start:start + (1 << 14)] @ a.T
        sel = np.where(z >= 0, 1, -1)
        best = max(best, int((sel * z).sum(axis=1).max()))
    return best


def max_excess_diagonal_oracle(h, cap: int = 8) -> int:
    """``max sigma(D1 H D2)`` over both diagonal sign matrices, exhaustively."""
    a = np.asarray(h.entries if isinstance(h, hd.HadamardMatrix) else h, dtype=np.int64)
    n = a.shape[0]
    if n > cap:
        raise SizeLimitError(f"diagonal oracle limited to n <= {cap}")
    s = _all_signs(n)
    return int((s @ a @ s.T).max())


def class_maximizer(h: hd.HadamardMatrix, witness: Sequence[int]) -> hd.HadamardMatrix:
    """The equivalent matrix ``D1 H D2`` whose excess equals ``||H x||_1``."""
    x = tuple(witness)
    ident = range(h.order)
    row_signs = tuple(select_sign(sum(c * v for c, v in zip(row, x))) for row in h.rows)
    return hd.equivalence_transform(h, ident, row_signs, ident, x)


def max_excess_class(h, cap: int = DEFAULT_CAP, long_run: bool = False) -> int:
    """Maximal excess over the equivalence class, equal to ``||H||_{inf,1}``."""
    if not isinstance(h, hd.HadamardMatrix):
        h = hd.validate(h)
    return norm_inf_1(h, cap=cap, long_run=long_run).value


def binom(a: int, b: int) -> int:
    """Binomial coefficient, zero whenever ``b < 0`` or ``b > a``."""
    if a < 0 or b < 0 or b > a:
        return 0
    return comb(a, b)


def best_bounds(n: int) -> tuple[Fraction, int]:
    """``(lower, upper^2)`` with lower ``n^2 C(n, n/2) / 2^n`` and upper ``n^(3/2)``.

    For ``n = 1`` the central binomial is taken as ``C(1, 0) = 1``.
    """
    return Fraction(n * n * comb(n, n // 2), 1 << n), n ** 3


def best_row_sum_bound(n: int, max_order: int = 64) -> int | None:
    """Largest ``sum s_i`` over even ``s_i`` pairwise congruent mod 4 with ``sum s_i^2 = n^2``.

    Row sums of any Hadamard matrix satisfy these constraints (``s = H 1``
    has ``||s||_2^2 = n^2``), so the result bounds the excess from above.
    Defined for ``n`` divisible by 4.
    """
    if n % 4 or n > max_order:
        return None
    target = n * n
    best = None
    for r in (0, 2):
        values = [v for v in range(-n, n + 1) if v % 4 == r]
        # dp[sumsq] = max sum reachable with the channels placed so far
        dp = {0: 0}
        for _ in range(n):
            nxt = {}
            for sq, tot in dp.items():
                for v in values:
                    s2 = sq + v * v
                    if s2 > target:
                        continue
                    t = tot + v
                    if nxt.get(s2, t - 1) < t:
                        nxt[s2] = t
            dp = nxt
        if target in dp and (best is None or dp[target] > best):
            best = dp[target]
    return best


def _half(v: int) -> int:
    if v % 2:
        raise ValueError("expected an even value")
    return v // 2


def em_p1(n: int, m: int) -> int:
    h = _half(n)
    if m % 2:
        return n * binom(h - 1, (m - 1) // 2) ** 2
    return m * binom(h, m // 2) ** 2 - n * binom(h - 1, m // 2 - 1) ** 2


def em_q1(n: int, m: int) -> Fraction:
    return abs(n - 2 * m) + Fraction(2 * (n - 1) * em_p1(n, m), comb(n, m))


def em_bound_q1(n: int) -> Fraction | None:
    """First Enomoto-Miyamoto lower bound, maximised over ``1 <= m <= n``."""
    if n % 4:
        return None
    return max(em_q1(n, m) for m in range(1, n + 1))


def em_p2(n: int, m: int) -> int:
    if n % 4 or m % 2 == 0:
        raise ValueError("em_p2 needs n divisible by 4 and odd m")
    q = n // 4
    h = (m - 1) // 2
    top = m - q
    first = sum(
        binom(q - 1, h - j) ** 2 * binom(q, j) * binom(q, top - j) for j in range(0, top + 1)
    )
    second = sum(
        binom(q, h - j) ** 2 * binom(q - 1, j) * binom(q - 1, top - j - 1) for j in range(0, top)
    )
    return first + second


def em_q2(n: int, m: int) -> Fraction:
    q = n // 4
    denom = comb(n // 2, q) * binom(n // 2, m - q)
    return abs(2 * n - 4 * m) + Fraction(n * (n - 2) * em_p2(n, m), denom)


def em_bound_q2(n: int) -> Fraction | None:
    """Second Enomoto-Miyamoto lower bound over odd ``m`` in ``[n/4, 3n/4]``."""
    if n % 4:
        return None
    ms = [m for m in range(n // 4, 3 * n // 4 + 1) if m % 2 == 1]
    if not ms:
        return None
    return max(em_q2(n, m) for m in ms)


@dataclass(frozen=True)
class ExcessReport:
    order: int
    sigma: int
    sigma_class: int
    witness: hd.SignVector
    best_lower: Fraction
    best_upper_squared: int
    em_lower_q1: Fraction | None
    em_lower_q2: Fraction | None
    row_sum_bound: int | None
    row_sum_bound_literal: int

    def to_json(self) -> dict:
        def s(v):
            return None if v is None else str(v)

        return {
            "order": self.order,
            "sigma": self.sigma,
            "sigmaClass": self.sigma_class,
            "witness": str(self.witness),
            "bestLower": str(self.best_lower),
            "bestUpperSquared": str(self.best_upper_squared),
            "bestUpperApprox": f"{self.best_upper_squared ** 0.5:.6f}",
            "emLowerQ1": s(self.em_lower_q1),
            "emLowerQ2": s(self.em_lower_q2),
            "rowSumBoundReconstructed": self.row_sum_bound,
            "rowSumBoundAsPrinted": self.row_sum_bound_literal,
        }


def excess_report(h, cap: int = DEFAULT_CAP, long_run: bool = False) -> ExcessReport:
    if not isinstance(h, hd.HadamardMatrix):
        h = hd.validate(h)
    n = h.order
    res = norm_inf_1(h, cap=cap, long_run=long_run)
    lower, upper_sq = best_bounds(n)
    return ExcessReport(
        order=n,
        sigma=excess(h),
        sigma_class=res.value,
        witness=res.witness,
        best_lower=lower,
        best_upper_squared=upper_sq,
        em_lower_q1=em_bound_q1(n),
        em_lower_q2=em_bound_q2(n),
        row_sum_bound=best_row_sum_bound(n),
        row_sum_bound_literal=n * n,
    )
