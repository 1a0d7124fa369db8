"""Regression checks binding every published worked example to the code."""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import bounds as bd
from . import hadamard as hd
from . import norms as nm
from . import pipeline as pl
from . import quantization as qz
from . import reference as ref
from .search import SearchConfig, search


@dataclass
class Check:
    name: str
    fn: Callable[[], None]
    long_run: bool = False


@dataclass
class Outcome:
    name: str
    status: str  # "pass", "fail" or "skipped"
    detail: str = ""
    seconds: float = 0.0


def _eq(label, got, want):
    if tuple(got) != tuple(want):
        raise AssertionError(f"{label}: expected {list(want)}, got {list(got)}")


def _is(label, got, want):
    if got != want:
        raise AssertionError(f"{label}: expected {want}, got {got}")


def _display_matrix():
    h = hd.sylvester(4)
    ones = hd.SignVector.ones(16)
    return hd.equivalence_transform(h, ref.DISPLAY_ORDER, ones, range(16), ones)


def check_example1():
    tr = pl.run(hd.sylvester(4), ref.EXAMPLE1_BANK, ref.EXAMPLE1_X)
    _eq("x", tr.x, ref.EXAMPLE1_X)
    _eq("t1", ref.display(tr.t1.values()), ref.EXAMPLE1_T1)
    _eq("t2", ref.display(tr.t2), ref.EXAMPLE1_T2)
    _eq("t3", ref.display(tr.t3), ref.EXAMPLE1_T3)
    _eq("x'", ref.display(tr.x_prime), ref.EXAMPLE1_X_PRIME)
    _is("x'[0]", tr.x_prime[0], 10000)
    _is("errInf", tr.err_inf, ref.EXAMPLE1_ERR_INF)
    reordered = pl.run(_display_matrix(), ref.EXAMPLE1_BANK, ref.EXAMPLE1_X)
    _eq("t1 (row-ordered H)", reordered.t1.values(), ref.EXAMPLE1_T1)
    _eq("t2 (row-ordered H)", reordered.t2, ref.EXAMPLE1_T2)
    _eq("t3 (row-ordered H)", reordered.t3, ref.EXAMPLE1_T3)
    _eq("x' (row-ordered H)", reordered.x_prime, tr.x_prime)


def check_example1_quantizer():
    b = ref.EXAMPLE1_BANK
    _is("DQ(1001)", qz.dq(b, 0, 1001), 1)
    _is("DQ(-999)", qz.dq(b, 0, -999), 0)
    _is("IQ(1)", qz.iq(b, 0, 1), 1000)


def check_example2():
    tr = pl.run(hd.sylvester(4), ref.RZ_BANK, ref.EXAMPLE2_X)
    _eq("t1", ref.display(tr.t1.values()), ref.EXAMPLE2_T1)
    _eq("t2", ref.display(tr.t2), ref.EXAMPLE2_T2)
    _eq("x'", tr.x_prime, ref.EXAMPLE2_X_PRIME)
    _is("||x||", tr.x_inf, ref.EXAMPLE2_X_INF)
    _is("||x'||", tr.mag_inf, ref.EXAMPLE2_X_PRIME_INF)
    if tr.err_inf > 16:
        raise AssertionError(f"errInf {tr.err_inf} exceeds n = 16")
    _is("RZ(-251.875)", qz.dq(ref.RZ_BANK, 1, Fraction("-251.875")), -251)
    reordered = pl.run(_display_matrix(), ref.RZ_BANK, ref.EXAMPLE2_X)
    _eq("t1 (row-ordered H)", reordered.t1.values(), ref.EXAMPLE2_T1)
    _eq("x' (row-ordered H)", reordered.x_prime, ref.EXAMPLE2_X_PRIME)


def check_roundtrip():
    h = hd.sylvester(4)
    for x in (ref.EXAMPLE1_X, ref.EXAMPLE2_X):
        t1 = pl.dt(h, x)
        _eq("IT(DT(x))", pl.it(h, t1.values()), x)


def check_offset_error_bound():
    for xmax in (1800, ref.OFFSET_XMAX, 10 ** 6):
        _is(f"error bound at xmax={xmax}",
            bd.error_bound_general(16, ref.OFFSET_BANK, xmax), ref.OFFSET_ERROR_BOUND)
    _is("equal-steps bound", bd.error_bound_equal_steps(16, ref.OFFSET_BANK),
        ref.OFFSET_ERROR_BOUND)


def check_rz_bounds():
    _is("RZ error bound", bd.error_bound_general(16, ref.RZ_BANK, ref.RZ_XMAX), 16)
    rep = bd.full_report(16, ref.RZ_BANK, ref.RZ_XMAX)
    _is("RZ magnitude via error", rep.mag_via_error, ref.RZ_MAG_VIA_ERROR)


def check_magnitude_bounds():
    rep = bd.full_report(16, ref.OFFSET_BANK, ref.OFFSET_XMAX)
    _is("magnitude via error", rep.mag_via_error, ref.OFFSET_MAG_VIA_ERROR)
    _is("count-based magnitude", rep.mag_theorem2, ref.OFFSET_MAG_COUNT)
    _is("combined", rep.mag_combined, ref.OFFSET_MAG_COUNT)
    _is("nonzero count", rep.nonzero_bound, 4)


def check_bit_width():
    rng = ref.PLANNER_SCALE * 2 ** (ref.PLANNER_INPUT_BITS - 1)
    _is("range", rng, ref.PLANNER_RANGE)
    _is("bits", bd.bit_width_for_scale(ref.PLANNER_SCALE, ref.PLANNER_INPUT_BITS),
        ref.PLANNER_BITS)


def _norm_check(k):
    def fn():
        res = nm.norm_inf_1(hd.sylvester(k), long_run=k >= 5)
        _is(f"||H_{1 << k}||_inf,1", res.value, ref.NORM_TABLE[k])
        witness = hd.apply(hd.sylvester(k), res.witness.entries)
        _is("witness", sum(abs(v) for v in witness), res.value)
    return fn


def check_even_odd_bounds():
    _is("k=4 lower^2", nm.sylvester_lower(4), nm.norm_inf_1_upper(16))
    _is("k=4 value^2", ref.NORM_TABLE[4] ** 2, nm.norm_inf_1_upper(16))
    _is("k=5 lower^2", nm.sylvester_lower(5), ref.NORM_TABLE[5] ** 2)
    if not ref.NORM_TABLE[5] ** 2 <= nm.norm_inf_1_upper(32):
        raise AssertionError("k=5 value above n^(3/2)")


def check_class_excess():
    for k, want in ((2, 8), (3, 20)):
        h = hd.sylvester(k)
        _is(f"sigma([H_{1 << k}])", nm.max_excess_class(h), want)
        _is("sign-selection form", nm.max_excess_sign_selection(h), want)
    _is("diagonal oracle H_4", nm.max_excess_diagonal_oracle(hd.sylvester(2)), 8)


def check_mass_argument():
    v = nm.norm_inf_1(hd.sylvester(4)).value
    if not ref.MASS_COUNT * ref.MASS_COMPONENT > v * ref.MASS_XMAX:
        raise AssertionError("mass argument does not exclude the configuration")


def check_hadamard_norms():
    h = hd.sylvester(4)
    for name, f in (("1", nm.matrix_norm_1), ("inf", nm.matrix_norm_inf)):
        _is(f"||H||_{name}", f(h), 16)
        _is(f"||H^T||_{name}", f(h.entries.T), 16)
    _is("||H||_2^2", nm.matrix_norm_2_hadamard(h), 16)


def check_kronecker_excess():
    import numpy as np

    rng = np.random.default_rng(7)
    for _ in range(5):
        a = hd.random_equivalence(hd.sylvester(int(rng.integers(0, 3))), rng)
        b = hd.random_equivalence(hd.sylvester(int(rng.integers(0, 3))), rng)
        _is("sigma(A x B)", nm.excess(hd.kronecker(a, b)), nm.excess(a) * nm.excess(b))


def check_sylvester_basics():
    _eq("H_1", hd.sylvester(0).to_lists(), [[1]])
    _eq("H_2", hd.sylvester(1).to_lists(), [[1, 1], [1, -1]])
    try:
        hd.validate([[1, 1, 1], [1, -1, 1], [1, 1, -1]])
    except hd.StructureError:
        pass
    else:
        raise AssertionError("order 3 accepted")


def check_recurrence():
    for k in range(0, 4):
        res = nm.norm_inf_1(hd.sylvester(k))
        x = list(res.witness.entries)
        lifted = x + x + [-v for v in x] + x
        big = sum(abs(v) for v in hd.apply(hd.sylvester(k + 2), lifted))
        _is(f"lift k={k}", big, 8 * res.value)


def check_excess_bounds():
    for k in (2, 3, 4):
        n = 1 << k
        sigma = nm.max_excess_class(hd.sylvester(k))
        lower, upper_sq = nm.best_bounds(n)
        lows = [lower, nm.em_bound_q1(n), nm.em_bound_q2(n)]
        if any(v is not None and v > sigma for v in lows) or sigma * sigma > upper_sq:
            raise AssertionError(f"excess bounds violated at n={n}")


def check_search_seeded():
    cfg = SearchConfig(xmax=4016, budget=200, seed=1, strategy="coordinate-ascent",
                       restarts=1, starts=(ref.EXAMPLE1_X,))
    res = search(hd.sylvester(4), ref.EXAMPLE1_BANK, cfg, "error")
    if res.value < ref.EXAMPLE1_ERR_INF:
        raise AssertionError(f"seeded search found only {res.value}")


CHECKS = [
    Check("example1-trace", check_example1),
    Check("example1-quantizer", check_example1_quantizer),
    Check("example2-trace", check_example2),
    Check("transform-roundtrip", check_roundtrip),
    Check("error-bound-offsets", check_offset_error_bound),
    Check("error-bound-rz", check_rz_bounds),
    Check("magnitude-bounds", check_magnitude_bounds),
    Check("bit-width-planner", check_bit_width),
    *[Check(f"norm-inf1-k{k}", _norm_check(k)) for k in range(5)],
    Check("norm-inf1-k5", _norm_check(5), long_run=True),
    Check("norm-even-odd-bounds", check_even_odd_bounds),
    Check("class-excess-small", check_class_excess),
    Check("mass-argument", check_mass_argument),
    Check("hadamard-norms", check_hadamard_norms),
    Check("kronecker-excess", check_kronecker_excess),
    Check("sylvester-basics", check_sylvester_basics),
    Check("sylvester-recurrence", check_recurrence),
    Check("excess-bounds", check_excess_bounds),
    Check("search-seeded-example1", check_search_seeded),
]


def run_checks(long_run: bool = False, checks=None) -> list[Outcome]:
    out = []
    for c in checks if checks is not None else CHECKS:
        if c.long_run and not long_run:
            out.append(Outcome(c.name, "skipped", "long-run"))
            continue
        t0 = time.perf_counter()
        try:
            c.fn()
        except Exception as exc:  # any failure is reported, not raised
            out.append(Outcome(c.name, "fail", f"{type(exc).__name__}: {exc}",
                               time.perf_counter() - t0))
        else:
            out.append(Outcome(c.name, "pass", "", time.perf_counter() - t0))
    return out
