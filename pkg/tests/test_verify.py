import pytest

from hadquant import reference as ref
from hadquant import verify as vf
from hadquant.quantization import QuantizerBank


def outcome(name, long_run=False):
    return {o.name: o for o in vf.run_checks(long_run=long_run)}[name]


def test_all_default_checks_pass():
    results = vf.run_checks()
    assert [o.name for o in results if o.status == "fail"] == []
    assert {o.name for o in results if o.status == "skipped"} == {"norm-inf1-k5"}


@pytest.mark.long_run
def test_long_run_includes_order_32():
    assert outcome("norm-inf1-k5", long_run=True).status == "pass"


@pytest.mark.parametrize("attr,value,check", [
    ("EXAMPLE1_BANK", QuantizerBank.uniform(16, 1000, 999), "example1-trace"),
    ("EXAMPLE1_ERR_INF", 5985, "example1-trace"),
    ("EXAMPLE2_X_PRIME_INF", 4096, "example2-trace"),
    ("OFFSET_BANK", QuantizerBank.uniform(16, 800, 800, -1001, 1400), "error-bound-offsets"),
    ("OFFSET_MAG_COUNT", 8801, "magnitude-bounds"),
    ("PLANNER_BITS", 16, "bit-width-planner"),
    ("NORM_TABLE", {0: 1, 1: 2, 2: 8, 3: 21, 4: 64, 5: 160}, "norm-inf1-k3"),
])
def test_tampering_is_named(monkeypatch, attr, value, check):
    monkeypatch.setattr(ref, attr, value)
    res = outcome(check)
    assert res.status == "fail" and res.detail
