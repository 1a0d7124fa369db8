import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hadquant import hadamard as hd
from hadquant import norms as nm
from hadquant.errors import SizeLimitError
from oracles import p1 as p1_oracle, p2 as p2_oracle, q1 as q1_oracle, q2 as q2_oracle


def test_vec_norms():
    assert nm.vec_norms([3, -4]) == (7, 25, 4)
    assert nm.vec_norms([0, 0, 0]) == (0, 0, 0)


@given(st.lists(st.integers(-10**6, 10**6), min_size=1, max_size=40))
def test_norm_chain(x):
    n = len(x)
    l1, l2sq, linf = nm.vec_norms(x)
    assert linf * linf <= l2sq <= l1 * l1 <= n * l2sq
    assert l1 <= n * linf


def test_hadamard_matrix_norms():
    for k in range(6):
        h = hd.sylvester(k)
        n = h.order
        assert nm.matrix_norm_1(h) == nm.matrix_norm_inf(h) == n
        assert nm.matrix_norm_1(h.entries.T) == nm.matrix_norm_inf(h.entries.T) == n
        assert nm.matrix_norm_1_inf(h) == 1
        assert nm.matrix_norm_2_hadamard(h) == n
    zero = [[0, 0], [0, 0]]
    assert nm.matrix_norm_1(zero) == nm.matrix_norm_inf(zero) == nm.matrix_norm_1_inf(zero) == 0


def test_spectral_estimate():
    assert abs(nm.spectral_norm_estimate(hd.sylvester(3)) - 8 ** 0.5) < 1e-9


@pytest.mark.parametrize("k,value", [(0, 1), (1, 2), (2, 8), (3, 20), (4, 64)])
def test_norm_table(k, value):
    res = nm.norm_inf_1(hd.sylvester(k))
    assert res.value == value
    assert sum(abs(v) for v in hd.apply(hd.sylvester(k), res.witness.entries)) == value
    assert res.value ** 2 <= nm.norm_inf_1_upper(1 << k)


@pytest.mark.long_run
def test_norm_order_32():
    res = nm.norm_inf_1(hd.sylvester(5), long_run=True)
    assert res.value == 160
    assert sum(abs(v) for v in hd.apply(hd.sylvester(5), res.witness.entries)) == 160


def test_cap_gate():
    with pytest.raises(SizeLimitError):
        nm.norm_inf_1(hd.sylvester(5))
    with pytest.raises(SizeLimitError):
        nm.norm_inf_1(np.ones((65, 65), dtype=int), long_run=True)


def brute(a):
    """Independent enumeration over all 2^n sign vectors with numpy."""
    a = np.asarray(a, dtype=np.int64)
    n = a.shape[0]
    xs = np.array(list(itertools.product((1, -1), repeat=n)), dtype=np.int64)
    return int(np.abs(xs @ a.T).sum(axis=1).max())


@given(st.integers(1, 8), st.integers(0, 2**32 - 1), st.booleans())
def test_gray_matches_enumeration(n, seed, signs_only):
    rng = np.random.default_rng(seed)
    a = rng.choice((-1, 1), size=(n, n)) if signs_only else rng.integers(-9, 10, size=(n, n))
    res = nm.norm_inf_1(a)
    assert res.value == brute(a) == nm.norm_inf_1_naive(a).value
    assert sum(abs(v) for v in a @ np.array(res.witness.entries)) == res.value


def test_compiled_engine_matches_python():
    rng = np.random.default_rng(5)
    for n in (9, 12, 14):
        a = rng.integers(-3, 4, size=(n, n))
        py = nm.norm_inf_1(a, engine="python")
        cc = nm.norm_inf_1(a, engine="compiled")
        assert (py.value, py.witness) == (cc.value, cc.witness)


def test_witness_is_first_maximiser():
    # every sign vector ties on H_2; the walk starts at all-plus
    assert nm.norm_inf_1(hd.sylvester(1)).witness.entries == (1, 1)
    h = hd.sylvester(3)
    res = nm.norm_inf_1(h)
    for g in range(1 << 7):
        x = nm.gray_sign_vector(8, g)
        v = sum(abs(t) for t in hd.apply(h, x))
        if v == res.value:
            assert x == res.witness.entries
            break


def test_gray_sign_vector_steps_flip_one_coordinate():
    prev = nm.gray_sign_vector(6, 0)
    assert prev == (1,) * 6
    seen = {prev}
    for g in range(1, 32):
        cur = nm.gray_sign_vector(6, g)
        assert sum(a != b for a, b in zip(prev, cur)) == 1
        seen.add(cur)
        prev = cur
    assert len(seen) == 32


def test_sylvester_lower_and_upper():
    assert nm.sylvester_lower(0) == 1 <= nm.norm_inf_1_upper(1)
    assert nm.sylvester_lower(4) == nm.norm_inf_1_upper(16) == 64 ** 2
    assert nm.sylvester_lower(5) == 160 ** 2
    assert nm.norm_inf_1_upper(32) == 32768
    for k in range(5):
        assert nm.sylvester_lower(k) <= nm.norm_inf_1(hd.sylvester(k)).value ** 2


def test_excess_values():
    for k in range(6):
        assert nm.excess(hd.sylvester(k)) == 1 << k
    assert nm.excess([[1]]) == 1


@pytest.mark.parametrize("k,value", [(2, 8), (3, 20)])
def test_max_excess_class(k, value):
    h = hd.sylvester(k)
    assert nm.max_excess_class(h) == value
    assert nm.max_excess_sign_selection(h) == value


@pytest.mark.parametrize("k", range(3))
def test_diagonal_oracle(k):
    rng = np.random.default_rng(k)
    for _ in range(5):
        h = hd.random_equivalence(hd.sylvester(k), rng)
        assert nm.max_excess_diagonal_oracle(h) == nm.norm_inf_1(h).value


@given(st.integers(0, 3), st.integers(0, 2**32 - 1))
def test_class_maximizer_attains_norm(k, seed):
    h = hd.random_equivalence(hd.sylvester(k), np.random.default_rng(seed))
    res = nm.norm_inf_1(h)
    g = nm.class_maximizer(h, res.witness)
    hd.validate(g.entries)
    assert nm.excess(g) == res.value == nm.max_excess_sign_selection(h)


def test_select_sign_zero_is_plus():
    assert nm.select_sign(0) == 1 and nm.select_sign(-3) == -1


@given(st.integers(1, 4), st.integers(0, 2**32 - 1), st.data())
def test_mass_bound(k, seed, data):
    h = hd.random_equivalence(hd.sylvester(k), np.random.default_rng(seed))
    n = h.order
    x = data.draw(st.lists(st.integers(-10**5, 10**5), min_size=n, max_size=n))
    l1 = sum(abs(v) for v in hd.apply(h, x))
    assert l1 <= nm.norm_inf_1(h).value * max(abs(v) for v in x)


def test_mass_argument_example():
    assert 64 * 1000 < 7 * 10000
    assert nm.norm_inf_1(hd.sylvester(4)).value * 1000 == 64000


def test_binom_convention():
    assert nm.binom(5, -1) == nm.binom(5, 6) == nm.binom(-1, 0) == 0
    assert nm.binom(6, 3) == 20


def test_best_bounds():
    assert nm.best_bounds(4) == (6, 64)
    assert nm.best_bounds(16)[0] == Fraction(12870, 256)
    lower, upper_sq = nm.best_bounds(1)
    assert lower <= 1 and upper_sq == 1


@pytest.mark.parametrize("n", [4, 8, 12, 16, 20, 24])
def test_em_against_oracle(n):
    for m in range(1, n + 1):
        assert nm.em_p1(n, m) == p1_oracle(n, m)
        assert nm.em_q1(n, m) == q1_oracle(n, m)
    for m in range(n // 4, 3 * n // 4 + 1):
        if m % 2:
            assert nm.em_p2(n, m) == p2_oracle(n, m)
            assert nm.em_q2(n, m) == q2_oracle(n, m)


def test_em_undefined_orders():
    assert nm.em_bound_q1(2) is None and nm.em_bound_q2(6) is None


@pytest.mark.parametrize("k", [2, 3, 4])
def test_sandwich(k):
    n = 1 << k
    sigma = nm.norm_inf_1(hd.sylvester(k)).value
    lower, upper_sq = nm.best_bounds(n)
    q1, q2 = nm.em_bound_q1(n), nm.em_bound_q2(n)
    assert lower <= max(q1, q2) <= sigma
    assert sigma * sigma <= upper_sq


def test_em_small_values():
    assert nm.em_bound_q1(4) == 8 and nm.em_bound_q2(4) == 8
    assert nm.em_bound_q1(8) == 20 and nm.em_bound_q2(8) == 20
    assert nm.em_bound_q1(16) == Fraction(708, 13)
    assert nm.em_bound_q2(16) == Fraction(276, 5)


def test_row_sum_bound():
    assert nm.best_row_sum_bound(4) == 8
    assert nm.best_row_sum_bound(16) == 64
    assert nm.best_row_sum_bound(6) is None
    for k in (2, 3, 4):
        assert nm.norm_inf_1(hd.sylvester(k)).value <= nm.best_row_sum_bound(1 << k)


def test_excess_report():
    rep = nm.excess_report(hd.sylvester(2))
    js = rep.to_json()
    assert (js["sigma"], js["sigmaClass"]) == (4, 8)
    assert js["bestLower"] == "6" and js["rowSumBoundAsPrinted"] == 16
    assert set(js["witness"]) <= {"+", "-"}
