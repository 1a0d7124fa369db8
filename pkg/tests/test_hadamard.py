import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hadquant import hadamard as hd
from hadquant.errors import DimensionError, EntryError, SizeLimitError, StructureError
from hadquant.norms import excess, norm_inf_1
from oracles import dense_mul, doubling


def test_sylvester_small_orders():
    assert hd.sylvester(0).to_lists() == [[1]]
    assert hd.sylvester(1).to_lists() == [[1, 1], [1, -1]]


def test_sylvester_8_row_sums():
    h = hd.sylvester(3)
    hd.validate(h.entries)
    assert [sum(r) for r in h.rows] == [8, 0, 0, 0, 0, 0, 0, 0]


@pytest.mark.parametrize("k", range(7))
def test_sylvester_matches_doubling(k):
    assert hd.sylvester(k).to_lists() == doubling(k)


def test_sylvester_cap():
    with pytest.raises(SizeLimitError):
        hd.sylvester(5, max_k=4)
    with pytest.raises(ValueError):
        hd.sylvester(-1)


def test_kronecker_h2_h2_is_h4():
    assert hd.kronecker(hd.sylvester(1), hd.sylvester(1)) == hd.sylvester(2)


def test_kronecker_identity_left():
    rng = np.random.default_rng(3)
    b = hd.random_equivalence(hd.sylvester(3), rng)
    assert hd.kronecker(hd.sylvester(0), b) == b


def test_kronecker_dense_entries():
    rng = np.random.default_rng(4)
    a = hd.random_equivalence(hd.sylvester(1), rng)
    b = hd.random_equivalence(hd.sylvester(2), rng)
    c = hd.kronecker(a, b)
    for i1 in range(2):
        for j1 in range(2):
            for i2 in range(4):
                for j2 in range(4):
                    assert c.entries[i1 * 4 + i2, j1 * 4 + j2] == a.entries[i1, j1] * b.entries[i2, j2]
    hd.validate(c.entries)


@given(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2**32 - 1))
def test_kronecker_excess_multiplicative(ka, kb, seed):
    rng = np.random.default_rng(seed)
    a = hd.random_equivalence(hd.sylvester(ka), rng)
    b = hd.random_equivalence(hd.sylvester(kb), rng)
    assert excess(hd.kronecker(a, b)) == excess(a) * excess(b)


def test_validate_accepts_sylvester_16():
    assert hd.validate(hd.sylvester(4).entries).is_sylvester


def test_validate_rejects_all_ones():
    with pytest.raises(StructureError) as exc:
        hd.validate([[1, 1], [1, 1]])
    assert exc.value.rows == (0, 1)


def test_validate_rejects_order_3():
    with pytest.raises(StructureError):
        hd.validate([[1, 1, 1], [1, -1, 1], [1, 1, -1]])


def test_validate_rejects_bad_entry_and_shape():
    with pytest.raises(EntryError):
        hd.validate([[1, 0], [1, -1]])
    with pytest.raises(DimensionError):
        hd.validate([[1, 1, 1], [1, -1, 1]])


def test_validate_reports_first_bad_pair():
    m = doubling(2)
    m[3] = list(m[2])
    with pytest.raises(StructureError) as exc:
        hd.validate(m)
    assert exc.value.rows == (2, 3)


@pytest.mark.parametrize("k", range(6))
def test_validate_accepts_constructions(k):
    hd.validate(hd.sylvester(k).entries)
    rng = np.random.default_rng(k)
    for _ in range(3):
        hd.validate(hd.random_equivalence(hd.sylvester(k), rng).entries)


def test_fwht_basis_vector():
    assert hd.fwht([1, 0, 0, 0]) == [1, 1, 1, 1]


def test_fwht_rejects_bad_length():
    with pytest.raises(DimensionError):
        hd.fwht([1, 2, 3])


@pytest.mark.parametrize("k", range(6))
def test_fwht_equals_dense_multiply(k):
    rng = np.random.default_rng(100 + k)
    rows = doubling(k)
    for _ in range(200):
        x = [int(v) for v in rng.integers(-2**40, 2**40, 1 << k)]
        assert hd.fwht(x) == dense_mul(rows, x)


def test_apply_h2():
    assert hd.apply(hd.sylvester(1), [1, 1]) == [2, 0]


@given(st.integers(0, 4), st.data())
def test_roundtrip_n_times_x(k, data):
    n = 1 << k
    x = data.draw(st.lists(st.integers(-2**20, 2**20), min_size=n, max_size=n))
    h = hd.random_equivalence(hd.sylvester(k), np.random.default_rng(data.draw(st.integers(0, 99))))
    assert hd.apply_transpose(h, hd.apply(h, x)) == [n * v for v in x]
    hs = hd.sylvester(k)
    assert hd.apply_transpose(hs, hd.apply(hs, x)) == [n * v for v in x]


def test_dense_apply_matches_rows():
    h = hd.random_equivalence(hd.sylvester(3), np.random.default_rng(9))
    x = list(range(-4, 4))
    assert hd.apply(h, x) == dense_mul(h.to_lists(), x)
    assert hd.apply_transpose(h, x) == dense_mul(h.entries.T.tolist(), x)


def test_equivalence_identity():
    h = hd.sylvester(3)
    ones = hd.SignVector.ones(8)
    assert hd.equivalence_transform(h, range(8), ones, range(8), ones) == h


def test_negating_row_changes_excess():
    h = hd.sylvester(3)
    for r in range(8):
        signs = [1] * 8
        signs[r] = -1
        g = hd.equivalence_transform(h, range(8), signs, range(8), hd.SignVector.ones(8))
        assert excess(g) == excess(h) - 2 * sum(h.rows[r])


def test_equivalence_entry_formula():
    h = hd.sylvester(2)
    rp, cp = (2, 0, 3, 1), (1, 3, 0, 2)
    d1, d2 = (1, -1, -1, 1), (-1, 1, 1, 1)
    g = hd.equivalence_transform(h, rp, d1, cp, d2)
    for i in range(4):
        for j in range(4):
            assert g.entries[i, j] == d1[rp[i]] * h.entries[rp[i], cp[j]] * d2[cp[j]]


@given(st.integers(0, 3), st.integers(0, 2**32 - 1))
def test_equivalence_preserves_validity_and_norm(k, seed):
    h = hd.sylvester(k)
    g = hd.random_equivalence(h, np.random.default_rng(seed))
    hd.validate(g.entries)
    assert norm_inf_1(g).value == norm_inf_1(h).value


def test_bad_permutation():
    with pytest.raises(ValueError):
        hd.check_permutation([0, 0, 1], 3)
    with pytest.raises(DimensionError):
        hd.check_permutation([0, 1], 3)


def test_sign_vector_parse_roundtrip():
    s = hd.SignVector.parse("+-++-")
    assert s.entries == (1, -1, 1, 1, -1)
    assert str(s) == "+-++-"
