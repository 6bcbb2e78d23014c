from fractions import Fraction

import pytest
import sympy

from dyshift import DOUBLE, YANGIAN, FreeAlgebra, build_cartan
from dyshift.dist import DistTerm
from dyshift.freealg import degree, relation_template
from dyshift.morphisms import chi, iota, tau_c, tau_z
from dyshift.phi import (
    check_gr_tw,
    check_J_generators,
    check_phi_form,
    check_phi_gamma_identity,
    check_phi_relations,
    check_phi_serre,
    check_phi_xxh,
    check_vertex_consistency,
    phi_c,
    phi_c_gen,
    phi_z_gen,
    phi_z_series,
)

A1 = build_cartan("A1")
A2 = build_cartan("A2")
A2T = build_cartan("A2~")
Y1, D1 = FreeAlgebra(A1, YANGIAN), FreeAlgebra(A1, DOUBLE)
Y2, D2 = FreeAlgebra(A2, YANGIAN), FreeAlgebra(A2, DOUBLE)


def _cell(rep, cell):
    (e,) = [e for e in rep.entries if e.cell == cell]
    return e


def _vertex_oracle(n, depth, sign=1):
    # (-1)^(n+1) d_z^(n) x(-z) with x(u) = sum_p x_p u^(-p-1), by sympy
    z = sympy.Symbol("z")
    out = {}
    for p in range(depth):
        expr = (-1) ** (n + 1) * sympy.diff((-z) ** (-p - 1), z, n) / sympy.factorial(n)
        c = expr.subs(z, 1)
        k = -p - 1 - n
        out[k] = Y1.x(1, p, sign).scale(Fraction(int(c.p), int(c.q)))
    return out


def test_phi_z_cartan():
    h = D2.coroot(1)
    assert phi_z_gen(h).data == {0: Y2.coroot(1)}


def test_phi_z_mode_minus_one():
    img = phi_z_gen(D2.xp(1, -1), depth=6)
    assert not img.exact
    assert img.data == {-p - 1: Y2.xp(1, p).scale((-1) ** p) for p in range(6)}


def test_phi_z_mode_minus_two():
    img = phi_z_gen(D2.xm(2, -2), depth=6)
    assert img.data == {-p - 2: Y2.xm(2, p).scale((-1) ** p * (p + 1)) for p in range(6)}


@pytest.mark.parametrize("n", range(6))
def test_phi_z_matches_vertex_oracle(n):
    assert phi_z_gen(D1.xp(1, -n - 1), depth=8).data == _vertex_oracle(n, 8)


def test_phi_z_nonnegative_is_tau_z():
    for r in range(5):
        img = phi_z_gen(D2.h(1, r) if r else D2.xp(1, r))
        want = tau_z(Y2.h(1, r) if r else Y2.xp(1, r))
        assert img.exact and img.data == want


def test_phi_z_graded():
    # with deg z = 1 the image of a mode-r generator is homogeneous of degree r
    for r in range(-4, 5):
        img = phi_z_gen(D2.xp(1, r), depth=6).data
        assert all(degree(v) + k == r for k, v in img.items())


def test_phi_c_examples():
    assert phi_c_gen(D2.xp(1, -1), 1, 4) == Y2.xp(1, 0) - Y2.xp(1, 1) + Y2.xp(1, 2) - Y2.xp(1, 3)
    assert phi_c_gen(D2.xp(1, -2), 1, 3) == Y2.xp(1, 0) - Y2.xp(1, 1).scale(2) + Y2.xp(1, 2).scale(3)
    for r in range(5):
        assert phi_c_gen(D2.xm(2, r), Fraction(3, 2), 1) == tau_c(Y2.xm(2, r), Fraction(3, 2))
    with pytest.raises(ValueError):
        phi_c_gen(D2.xp(1, 0), 0, 3)


def test_phi_c_on_products_nonnegative():
    e = D2.xp(1, 2) * D2.h(2, 1)
    assert phi_c(e, 2) == tau_c(Y2.xp(1, 2) * Y2.h(2, 1), 2)
    with pytest.raises(ValueError):
        phi_c(D2.xp(1, -1), 1)


def test_series_form():
    ser = phi_z_series(D2, "X", 1, 2, "u")
    assert ser.coefficient(DistTerm((("u", 2),))) == Y2.xp(1, 2)


def test_relations_a1_hh():
    rep = check_phi_relations(A1, "hh", 4)
    assert rep.passed and len(rep) == 25


def test_relations_a1_xx_lowest_cell():
    rep = check_phi_relations(A1, "xx", 2)
    assert rep.passed
    e = _cell(rep, (1, 1, 0, 0))
    t = relation_template("xx", A1, (1, 1, 0, 0), YANGIAN, 1)
    assert e.info["sign+1"] == [(t.label, "1")]


def test_relations_a2_xh_cell():
    rep = check_phi_relations(A2, "xh", 0)
    e = _cell(rep, (1, 2, 0, 0))
    assert e.ok
    assert A2.dij(1, 2) == Fraction(-1, 2)
    t = relation_template("xh", A2, (1, 2, 0, 0), YANGIAN, 1)
    assert e.info["sign+1"] == [(t.label, "1")]


@pytest.mark.parametrize("family", ["hh", "h0x", "xh", "xx"])
def test_relations_b2(family):
    assert check_phi_relations(build_cartan("B2"), family, 1).passed


def test_relations_unknown_family():
    with pytest.raises(ValueError):
        check_phi_relations(A1, "serre", 1)


def test_xxh_off_diagonal_and_cell():
    rep = check_phi_xxh(A2, 2)
    assert rep.passed
    e = _cell(rep, (1, 2, 1, 1))
    assert e.ok
    rep = check_phi_xxh(A1, 3)
    e = _cell(rep, (1, 1, 1, 2))
    t = relation_template("xxh", A1, (1, 1, 1, 2))
    assert e.ok and e.info["certificate"] == [(t.label, "1")]
    assert _cell(rep, ("fold", 1, 1)).info == {"symbolic": True, "window": True}


def test_serre():
    assert len(check_phi_serre(A1, 2)) == 0
    rep = check_phi_serre(A2, 1)
    assert rep.passed
    e = _cell(rep, (1, 2, (0, 0), 0, 1))
    t = relation_template("serre", A2, (1, 2, (0, 0), 0), YANGIAN, 1)
    assert e.info["certificate"] == [(t.label, "1")]
    rep = check_phi_serre(A2T, 1)
    assert rep.passed
    assert _cell(rep, (0, 1, (0, 0), 1, -1)).ok


def test_vertex_consistency():
    rep = check_vertex_consistency(5, depth=10)
    assert rep.passed
    assert _cell(rep, (1, 0, 1)).ok and _cell(rep, (1, 5, -1)).ok


def test_phi_form():
    assert check_phi_form(1, 4).passed
    rep = check_phi_form(1, 0)
    assert rep.passed and _cell(rep, ("series", 0, 1)).ok
    assert check_phi_form(2, 3, datum=A2).passed


def test_gr_tw():
    rep = check_gr_tw(A2, [(1, 1), (2, 1)], 6, mode_bound=3)
    assert rep.passed
    assert _cell(rep, ("2", "1", "X+", 1, -1)).ok
    with pytest.raises(ValueError):
        check_gr_tw(A2, [(0, 1)], 4)


def test_gr_tw_negative_control():
    # (a, c) = (2, 1): Phi_1 = chi_2 o Phi_2 o chi_(1/2); dropping the conjugation fails
    g = D2.xp(1, -1)
    lhs = phi_c(g, 1, 6)
    half = Fraction(1, 2)
    assert lhs == chi(2, phi_c(chi(half, g), 2, 6))
    assert lhs != phi_c(g, 2, 6)
    assert lhs != phi_c(chi(half, g), 2, 6)


def test_phi_gamma_identity():
    for dat in (A1, A2, A2T):
        assert check_phi_gamma_identity(dat).passed
    # negative control: without the inner shift h_{i1} is moved
    assert phi_c(iota(Y2.h(1, 1)), 1) == Y2.h(1, 1) + Y2.h(1, 0)


def test_J_generators():
    rep = check_J_generators(A2, 4, mode_bound=3)
    assert rep.passed and _cell(rep, (1, 0, -1, 1)).ok
    diff = D2.xp(1, 0) - D2.xp(1, -1)
    img = phi_c(diff, 1, 4)
    assert img == Y2.xp(1, 1) - Y2.xp(1, 2) + Y2.xp(1, 3)


def test_J_generators_negative_control():
    # a single generator is not in the ideal: its degree-0 part survives
    from dyshift.freealg import grade

    img = phi_c(D2.xp(1, -1), 1, 4)
    assert grade(img)[0] == Y2.xp(1, 0)
