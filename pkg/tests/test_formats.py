from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hadquant import hadamard as hd
from hadquant.errors import StructureError
from hadquant.formats import (
    SpecError,
    load_bank,
    parse_matrix_spec,
    parse_number,
    parse_vectors,
    render_number,
)


def test_sylvester_and_kron_specs():
    assert parse_matrix_spec("sylvester:3") == hd.sylvester(3)
    assert parse_matrix_spec("kron:sylvester:1xsylvester:2") == hd.sylvester(3)
    assert parse_matrix_spec("kron:sylvester:1xsylvester:1xsylvester:1") == hd.sylvester(3)


def test_perm_spec():
    h = parse_matrix_spec("perm:1,0,3,2:sylvester:2")
    assert h.rows == tuple(hd.sylvester(2).rows[i] for i in (1, 0, 3, 2))


def test_file_spec(tmp_path):
    p = tmp_path / "h4x.txt"  # the 'x' must not confuse kron parsing
    p.write_text("# order 4\n1 1 1 1\n1 -1 1 -1\n1 1 -1 -1\n1 -1 -1 1\n")
    assert parse_matrix_spec(str(p)) == hd.sylvester(2)
    assert parse_matrix_spec(f"kron:{p}xsylvester:1").order == 8
    bad = tmp_path / "bad.txt"
    bad.write_text("1 1\n1 1\n")
    with pytest.raises(StructureError):
        parse_matrix_spec(str(bad))


def test_bad_specs():
    for spec in ("sylvester:x", "hadamard:4", "kron:sylvester:1", "perm:a:sylvester:1"):
        with pytest.raises(SpecError):
            parse_matrix_spec(spec)


def test_parse_number():
    assert parse_number("-251.875") == Fraction(-2015, 8)
    assert parse_number("2073/8") == Fraction(2073, 8)
    assert parse_number(12) == 12
    with pytest.raises(ValueError):
        parse_number(0.5)


def test_parse_vectors_forms():
    assert parse_vectors("[1, -2, 3]") == [[1, -2, 3]]
    assert parse_vectors("[[1, 2], [3, 4]]") == [[1, 2], [3, 4]]
    assert parse_vectors("1 2\n\n3 4\n") == [[1, 2], [3, 4]]
    assert parse_vectors("") == []
    assert parse_vectors("[0.5, 1]", integer=False) == [[Fraction(1, 2), 1]]
    with pytest.raises(ValueError):
        parse_vectors("1.5 2")


def test_render_number():
    assert render_number(Fraction(-4030, 16)) == "-251.875"
    assert render_number(Fraction(1, 3)) == "1/3"
    assert render_number(7) == "7"
    assert render_number(Fraction(-1, 1024)) == "-0.0009765625"


@given(st.integers(-10**9, 10**9), st.integers(0, 30))
def test_render_roundtrip(num, e):
    v = Fraction(num, 1 << e)
    assert parse_number(render_number(v)) == v


def test_load_bank(tmp_path):
    inline = '{"n": 2, "uniform": {"Delta": 3, "Gamma": 4}}'
    p = tmp_path / "bank.json"
    p.write_text(inline)
    assert load_bank(inline) == load_bank(str(p))
