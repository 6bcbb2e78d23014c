from fractions import Fraction

import pytest
import sympy

from dyshift import DOUBLE, FreeAlgebra, build_cartan
from dyshift.dist import (
    Z,
    DistElem,
    box,
    check_dist_oracle,
    d1,
    dist_mul,
    dswap,
    expand_window,
    f,
    leibniz_fold,
    monomial,
    mul_linear,
    window_equal,
)

D = FreeAlgebra(build_cartan("A2"), DOUBLE)
UZ = box(6, ("u", Z))


def _d1_oracle(n, q):
    # d_z^(n)(z^q) / n! is c z^(q-n); read off c at z = 1
    z = sympy.Symbol("z")
    return sympy.diff(z**q, z, n).subs(z, 1) / sympy.factorial(n)


def test_d1_zero_window():
    w = expand_window(d1(0, "u"), UZ)
    for m in range(0, 6):
        assert w[{"u": -m - 1, Z: m}] == 1
    # nothing off the diagonal
    assert all(e[0] == -e[1] - 1 for e in w.table)


@pytest.mark.parametrize("n", range(5))
def test_d1_window_matches_derivative_oracle(n):
    w = expand_window(d1(n, "u"), UZ)
    for q in range(-6, 7):
        if -6 <= -q - 1 <= 6 and -6 <= q - n <= 6:
            assert w[{"u": -q - 1, Z: q - n}] == _d1_oracle(n, q)


def test_d1_one_window():
    w = expand_window(d1(1, "u"), UZ)
    for m in range(1, 6):
        assert w[{"u": -m - 1, Z: m - 1}] == m


def test_d1_errors():
    with pytest.raises(ValueError):
        d1(-1, "u")
    with pytest.raises(ValueError):
        dswap("u", "u")


def test_dist_mul():
    assert dist_mul(d1(1, "u"), d1(0, "v")) == f(1, 0)
    x, y = D.xp(1, 0), D.xm(2, 1)
    prod = dist_mul(d1(0, "u", x), d1(0, "v", y))
    assert prod == f(0, 0, coeff=x * y)
    assert prod != f(0, 0, coeff=y * x)
    with pytest.raises(ValueError):
        dist_mul(d1(0, "u"), d1(0, "u"))


def test_mul_linear_rules():
    assert mul_linear(f(1, 0), "u", "v") == f(0, 0)
    assert mul_linear(d1(0, "u"), "u", Z) == DistElem()
    assert mul_linear(f(0, 0), "u", "v") == DistElem()
    assert mul_linear(f(2, 3), "u", "v") == f(1, 3) - f(2, 2)
    assert mul_linear(d1(3, "u"), Z, "u") == -d1(2, "u")
    with pytest.raises(ValueError):
        mul_linear(f(0, 0), "u", "u")


def test_mul_linear_prefactor():
    big = box(7)
    small = box(6)
    a = dist_mul(monomial({"u": 2}), f(1, 1))
    rule = mul_linear(a, "u", "v")
    from dyshift.dist import window_mul_linear

    raw = window_mul_linear(expand_window(a, big), "u", "v", small)
    assert window_equal(raw, expand_window(rule, small))


def test_leibniz_fold():
    c = D.xp(1, 0)
    assert leibniz_fold(f(0, 0, coeff=c)) == dist_mul(dswap("u", "v"), d1(0, "v")).lmul(c)
    block = f(1, 0) + f(0, 1)
    folded = leibniz_fold(block)
    assert folded == dist_mul(dswap("u", "v"), d1(1, "v"))
    b6 = box(6)
    assert window_equal(expand_window(block, b6), expand_window(folded, b6))
    with pytest.raises(ValueError):
        leibniz_fold(f(1, 0) + f(0, 1, coeff=Fraction(2)))
    with pytest.raises(ValueError):
        leibniz_fold(f(1, 0))


def test_window_identities():
    b8 = box(8)
    assert expand_window(DistElem(), b8).table == {}
    assert window_equal(expand_window(mul_linear(f(1, 0), "u", "v"), b8), expand_window(f(0, 0), b8))
    assert window_equal(expand_window(dist_mul(dswap("u", "v"), d1(0, "v")), b8), expand_window(f(0, 0), b8))


def test_window_negative_control():
    b6 = box(6)
    assert not window_equal(expand_window(f(1, 0), b6), expand_window(f(0, 1), b6))


def test_dist_mul_associative():
    a, b, c = d1(2, "u"), d1(1, "v"), monomial({Z: -1, "w": 2})
    assert dist_mul(dist_mul(a, b), c) == dist_mul(a, dist_mul(b, c))


def test_oracle_small():
    rep = check_dist_oracle(n_max=3, radius=5)
    assert rep.passed
    assert len(rep) == 4 + 16 + 4 + 4
