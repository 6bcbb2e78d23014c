from fractions import Fraction

import pytest

from dyshift.completion import (
    SAMPLES,
    GradedSample,
    aplus_power_check,
    current_sample,
    free_sample,
    inverse_limit_consistency,
    mul_trunc,
    project,
    run_appendix,
    torsion_check,
    truncate,
)


def _cell(rep, cell):
    (e,) = [e for e in rep.entries if e.cell == cell]
    return e


def _odd_sample():
    # polynomials in a degree-2 variable y: A_+^2 misses nothing, but A_2 is not A_1 * A_1
    def basis(k):
        return [("y", k // 2)] if k % 2 == 0 else []

    return GradedSample(
        name="odd",
        basis=basis,
        mul_basis=lambda a, b: {("y", a[1] + b[1]): Fraction(1)},
        degree=lambda a: 2 * a[1],
        hbar=None,
        unit=("y", 0),
    )


@pytest.mark.parametrize("make", [free_sample, current_sample])
def test_aplus(make):
    rep = aplus_power_check(make(), 4)
    assert rep.passed
    assert _cell(rep, (0, "all")).ok


def test_aplus_examples():
    cur = aplus_power_check(current_sample(), 3)
    e = _cell(cur, (1, 1))
    assert e.ok and e.info == {"rank": 8, "dim": 8}
    free = aplus_power_check(free_sample(), 3)
    assert _cell(free, (3, 3)).ok and _cell(free, (3, 4)).ok


def test_aplus_negative_control():
    rep = aplus_power_check(_odd_sample(), 3)
    assert not rep.passed
    assert not _cell(rep, (2, 2)).ok


def test_truncation_maps():
    s = free_sample()
    x = {((), 0): Fraction(1), ((1,), 0): Fraction(2), ((1, 2), 0): Fraction(3)}
    assert truncate(s, x, 2) == {((), 0): 1, ((1,), 0): 2}
    assert project(s, truncate(s, x, 3), 2) == truncate(s, x, 2)
    with pytest.raises(ValueError):
        project(s, x, 1)


def test_products_of_degree_one():
    s = free_sample()
    a = {((1,), 0): Fraction(1)}
    b = {((2,), 0): Fraction(1), ((), 1): Fraction(1)}
    hi = mul_trunc(s, a, b, 3)
    assert project(s, hi, 2) == mul_trunc(s, a, b, 2) == {}
    assert hi == {((1, 2), 0): 1, ((1,), 1): 1}


@pytest.mark.parametrize("name", sorted(SAMPLES))
def test_limit_and_torsion(name):
    s = SAMPLES[name]()
    assert inverse_limit_consistency(s, 4, trials=5).passed
    rep = torsion_check(s, 20)
    assert rep.passed
    assert _cell(rep, ("zero",)).ok and _cell(rep, ("unit",)).ok


def test_run_appendix_small():
    rep = run_appendix(n_max=3, trials=10)
    assert rep.passed
    assert {e.cell[0] for e in rep.entries} == {"free", "current"}
