"""Closed-form error and magnitude bounds, and bit-width planning.

All bounds take a declared bound ``xmax >= ||x||_inf`` instead of a vector,
so they can be evaluated before any data exists.  Results are exact integers
or :class:`~fractions.Fraction` values; irrational factors (``sqrt(n)``) are
handled with integer square roots.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .errors import ParameterError
from .quantization import QuantizerBank, dq, iq

__all__ = [
    "BoundReport",
    "b_value",
    "error_terms",
    "error_bound_general",
    "error_bound_equal_steps",
    "magnitude_via_error",
    "magnitude_theorem2",
    "nonzero_count_bound",
    "theorem2_applicable",
    "bit_width",
    "bit_width_for_scale",
    "relative_error_coefficient",
    "full_report",
]


def b_value(bank: QuantizerBank, i: int, xmax: int) -> Fraction:
    """``max(0, xmax + delta_i) / Delta_i``: how many steps fit below ``xmax``."""
    return Fraction(max(0, xmax + bank.delta[i]), bank.Delta[i])


def _floor_ceil(f: Fraction) -> tuple[int, int]:
    fl = f.numerator // f.denominator
    return fl, -((-f.numerator) // f.denominator)


def error_terms(bank: QuantizerBank, i: int, xmax: int) -> dict[str, int]:
    """The candidate absolute values whose maximum bounds ``|IQ_i(DQ_i(y)) - y|``.

    Keys are ``U(1)``, ``U(floor B)``, ``|Delta-delta|``, ``V(2)``,
    ``V(ceil B)``; the ``U`` terms appear only when ``xmax >= Delta_i - delta_i``
    and the ``V`` terms only when ``xmax > Delta_i - delta_i``.
    """
    D, G, d, g = bank.Delta[i], bank.Gamma[i], bank.delta[i], bank.gamma[i]
    edge = D - d
    fl, ce = _floor_ceil(b_value(bank, i, xmax))

    def U(j):
        return j * (G - D) + g + d

    def V(j):
        return j * (G - D) + g + d - G

    terms = {"|Delta-delta|": abs(edge)}
    if xmax >= edge:
        terms["U(1)"] = abs(U(1))
        terms["U(floor B)"] = abs(U(fl))
    if xmax > edge:
        terms["V(2)"] = abs(V(2))
        terms["V(ceil B)"] = abs(V(ce))
    return terms


def _check_xmax(xmax: int) -> None:
    if xmax < 0:
        raise ParameterError("xmax must be nonnegative")


def error_bound_general(n: int, bank: QuantizerBank, xmax: int) -> int:
    """Upper bound on ``||x' - x||_inf`` for any ``||x||_inf <= xmax``."""
    _check_xmax(xmax)
    return n * max(max(error_terms(bank, i, xmax).values()) for i in range(bank.n))


def error_bound_equal_steps(n: int, bank: QuantizerBank) -> int:
    """The ``Delta == Gamma`` form of the error bound; independent of ``x``."""
    if not bank.equal_steps:
        raise ParameterError("error_bound_equal_steps requires Delta_i == Gamma_i for all i")
    return n * max(
        max(abs(g + d), abs(g + d - D), abs(D - d))
        for D, d, g in zip(bank.Delta, bank.delta, bank.gamma)
    )


def magnitude_via_error(xmax: int, err_bound: int) -> int:
    if xmax < 0 or err_bound < 0:
        raise ParameterError("xmax and err_bound must be nonnegative")
    return xmax + err_bound


def theorem2_applicable(bank: QuantizerBank) -> str | None:
    """Return why the nonzero-count magnitude bound is unusable, or ``None``.

    Needs a dead zone on every channel (``Delta_i - delta_i >= 1``) and
    ``Gamma_i + gamma_i >= 0`` so that ``|IQ_i(q)|`` grows with ``|q|``.
    """
    edges = bank.dead_zone_edges()
    if min(edges) < 1:
        return f"min_i(Delta_i - delta_i) = {min(edges)} < 1"
    for i, (G, g) in enumerate(zip(bank.Gamma, bank.gamma)):
        if G + g < 0:
            return f"Gamma_{i} + gamma_{i} = {G + g} < 0"
    return None


def nonzero_count_bound(n: int, bank: QuantizerBank, xmax: int) -> int:
    """``min(n, floor(sqrt(n) * xmax / min_i(Delta_i - delta_i)))``."""
    _check_xmax(xmax)
    D = min(bank.dead_zone_edges())
    if D < 1:
        raise ParameterError(f"min_i(Delta_i - delta_i) = {D}; the count bound needs it >= 1")
    # floor(a / D) == floor(floor(a) / D) for integer D > 0
    return min(n, isqrt(n * xmax * xmax) // D)


def magnitude_theorem2(n: int, bank: QuantizerBank, xmax: int) -> int:
    """Nonzero-count bound times the largest dequantized value at ``xmax``."""
    reason = theorem2_applicable(bank)
    if reason is not None:
        raise ParameterError(f"magnitude_theorem2 precondition failed: {reason}")
    k = nonzero_count_bound(n, bank, xmax)
    return k * max(iq(bank, i, dq(bank, i, xmax)) for i in range(bank.n))


def bit_width(magnitude_bound) -> int:
    """Smallest ``K`` with ``-2^(K-1) <= -M`` and ``M <= 2^(K-1) - 1``.

    ``M`` may be a Fraction; integer outputs then only need ``ceil(M)``.
    """
    M = Fraction(magnitude_bound)
    if M < 0:
        raise ParameterError("magnitude bound must be nonnegative")
    m = -((-M.numerator) // M.denominator)
    return m.bit_length() + 1


def bit_width_for_scale(scale, k: int) -> int:
    """Bits needed for ``|x'| <= scale * 2^(k-1)`` when inputs are ``k``-bit signed."""
    return bit_width(Fraction(scale) * (1 << (k - 1)))


def relative_error_coefficient(n: int, bank: QuantizerBank) -> Fraction:
    """Leading coefficient ``n * max_i |Gamma_i - Delta_i| / Delta_i``."""
    return n * max(Fraction(abs(G - D), D) for D, G in zip(bank.Delta, bank.Gamma))


@dataclass(frozen=True)
class BoundReport:
    n: int
    xmax_in: int
    err_bound_general: int
    err_bound_equal_steps: int | None
    mag_via_error: int
    mag_theorem2: int | None
    mag_combined: int
    nonzero_bound: int | None
    bit_width: int
    relative_error_coefficient: Fraction
    theorem2_note: str | None = None

    def to_json(self) -> dict:
        def num(v):
            if v is None:
                return None
            if isinstance(v, Fraction):
                return str(v)
            return v if abs(v) < (1 << 53) else str(v)

        return {
            "n": self.n,
            "xmaxIn": num(self.xmax_in),
            "errBoundGeneral": num(self.err_bound_general),
            "errBoundEqualSteps": num(self.err_bound_equal_steps),
            "magViaError": num(self.mag_via_error),
            "magTheorem2": num(self.mag_theorem2),
            "magCombined": num(self.mag_combined),
            "nonzeroBound": num(self.nonzero_bound),
            "bitWidth": self.bit_width,
            "relativeErrorCoefficient": str(self.relative_error_coefficient),
            "theorem2Note": self.theorem2_note,
        }


def full_report(n: int, bank: QuantizerBank, xmax: int) -> BoundReport:
    """Evaluate every bound and keep the better magnitude bound."""
    if bank.n != n:
        raise ParameterError(f"bank has {bank.n} channels, expected {n}")
    err = error_bound_general(n, bank, xmax)
    via_error = magnitude_via_error(xmax, err)
    note = theorem2_applicable(bank)
    if note is None:
        t2 = magnitude_theorem2(n, bank, xmax)
        k = nonzero_count_bound(n, bank, xmax)
        combined = min(via_error, t2)
    else:
        t2 = k = None
        combined = via_error
    return BoundReport(
        n=n,
        xmax_in=xmax,
        err_bound_general=err,
        err_bound_equal_steps=error_bound_equal_steps(n, bank) if bank.equal_steps else None,
        mag_via_error=via_error,
        mag_theorem2=t2,
        mag_combined=combined,
        nonzero_bound=k,
        bit_width=bit_width(combined),
        relative_error_coefficient=relative_error_coefficient(n, bank),
        theorem2_note=note,
    )
