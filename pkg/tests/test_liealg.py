import itertools
from fractions import Fraction

import numpy as np
import pytest

from dyshift import build_cartan
from dyshift.liealg import (
    LAURENT_T,
    LAURENT_W,
    POLY_T,
    CentralElem,
    LieWord,
    LoopElem,
    UCEElem,
    build_simple,
    check_uce_jacobi,
    dt_coords,
    dv_coords,
    eval_lie_word,
    ev_g,
    kappa,
    model_for,
    mry_psi,
    omega_reduce,
    pi_project,
    random_uce,
    uce_bracket,
    verify_t_relations_in_uce,
)

A2T = build_cartan("A2~")
G = build_simple("A2")


def loop(model, vec, r, s, ring=LAURENT_T):
    return UCEElem.loop_term(model, vec, r, s, ring)


def _cell(rep, cell):
    (e,) = [e for e in rep.entries if e.cell == cell]
    return e


# --- simple Lie algebras ------------------------------------------------------


def test_a1_model():
    g = build_simple("A1")
    assert g.dim == 3
    ad = g.matrix(g.h(1))
    assert sorted(int(x) for x in np.diag(ad)) == [-2, 0, 2]


def test_chevalley_and_theta_form():
    for i in (1, 2):
        assert G.bracket(G.xp(i), G.xm(i)) == G.h(i)
        assert G.form(G.xp(i), G.xm(i)) == 1
    assert G.form(G.x_theta(1), G.x_theta(-1)) == 1
    assert G.bracket(G.x_theta(1), G.x_theta(-1)) == G.h_theta()


def _unit(n, i, j):
    m = sympy_zero(n)
    m[i][j] = Fraction(1)
    return m


def sympy_zero(n):
    return [[Fraction(0)] * n for _ in range(n)]


def _mm(a, b):
    n = len(a)
    return [[sum((a[i][k] * b[k][j] for k in range(n)), Fraction(0)) for j in range(n)] for i in range(n)]


def _comm(a, b):
    p, q = _mm(a, b), _mm(b, a)
    return [[p[i][j] - q[i][j] for j in range(len(a))] for i in range(len(a))]


def _add(a, b, c=1):
    return [[a[i][j] + c * b[i][j] for j in range(len(a))] for i in range(len(a))]


def test_sl3_matrix_realization():
    # send x_i^+ -> E_{i,i+1}, x_i^- -> E_{i+1,i}; build the rest by brackets
    n = 3
    img = {("h", 1): _comm(_unit(n, 0, 1), _unit(n, 1, 0)), ("h", 2): _comm(_unit(n, 1, 2), _unit(n, 2, 1))}
    for i in (1, 2):
        (kp, cp), = G.xp(i).items()
        (km, cm), = G.xm(i).items()
        img[kp] = [[x / cp for x in row] for row in _unit(n, i - 1, i)]
        img[km] = [[x / cm for x in row] for row in _unit(n, i, i - 1)]
    # theta root vectors from the model's own brackets
    for sign in (1, -1):
        a, b = (G.xp(1), G.xp(2)) if sign > 0 else (G.xm(1), G.xm(2))
        (k, c), = G.bracket(a, b).items()
        ma = sum_img(img, a)
        mb = sum_img(img, b)
        img[k] = [[x / c for x in row] for row in _comm(ma, mb)]
    assert len(img) == G.dim
    # homomorphism on every pair of basis vectors
    for x, y in itertools.product(G.basis, G.basis):
        lhs = sum_img(img, G.bracket({x: 1}, {y: 1}))
        assert lhs == _comm(img[x], img[y])
    # the form is the trace form
    for x, y in itertools.product(G.basis, G.basis):
        tr = sum(_mm(img[x], img[y])[i][i] for i in range(n))
        assert G.form({x: 1}, {y: 1}) == tr
    # x_theta^+ is a multiple of the corner matrix unit
    m = sum_img(img, G.x_theta(1))
    nz = [(i, j) for i in range(n) for j in range(n) if m[i][j]]
    assert nz == [(0, 2)]


def sum_img(img, vec):
    out = sympy_zero(3)
    for k, c in vec.items():
        out = _add(out, img[k], c)
    return out


@pytest.mark.parametrize("label", ["A3", "D4", "E6"])
def test_killing_is_multiple_of_form(label):
    g = build_simple(label)
    hv = {"A3": 4, "D4": 6, "E6": 12}[label]
    for x, y in [(g.xp(1), g.xm(1)), (g.h(1), g.h(2)), (g.x_theta(1), g.x_theta(-1))]:
        assert g.killing(x, y) == 2 * hv * g.form(x, y)


def test_form_invariance_random():
    rng = np.random.default_rng(1)
    for _ in range(30):
        x, y, z = ({b: Fraction(int(rng.integers(-3, 4))) for b in G.basis} for _ in range(3))
        assert G.form(G.bracket(x, y), z) == G.form(x, G.bracket(y, z))


def test_non_simply_laced_rejected():
    with pytest.raises(ValueError):
        build_simple("B2")


# --- Kassel model -------------------------------------------------------------


def test_omega_reduce_examples():
    assert omega_reduce(0, 2, 1, 1) == CentralElem(LAURENT_T, {(1, 3): 2})
    assert omega_reduce(-1, -1, 1, 1) == CentralElem(LAURENT_T, {}, 1, 1)
    for ell in range(-3, 4):
        for s in range(-3, 4):
            got = omega_reduce(0, ell, 0, s)
            want = CentralElem(LAURENT_T, {}, 0, s if ell == -s else 0)
            assert got == want


def test_omega_reduce_poly_ring():
    with pytest.raises(ValueError):
        omega_reduce(0, -1, 1, 1, POLY_T)
    with pytest.raises(ValueError):
        CentralElem(POLY_T, {(1, 0): 1})


def test_module_relation():
    # d(v^r t^s) = 0 in z(A)
    for r, s in itertools.product(range(-3, 4), repeat=2):
        tot = dt_coords(r, s - 1).scale(s) + dv_coords(r - 1, s).scale(r)
        assert tot.is_zero()


def test_bracket_central_term():
    x, y = G.xp(1), G.xm(1)
    b = uce_bracket(loop(G, x, 1, 1), loop(G, y, -1, -1), G)
    want = UCEElem(LoopElem(LAURENT_T, {(("h", 1), 0, 0): 1}), CentralElem(LAURENT_T, {}, 1, 1))
    assert b == want
    for a, c in [(G.xp(1), G.xm(2)), (G.h(1), G.h(2)), (G.x_theta(1), G.x_theta(-1))]:
        b = uce_bracket(loop(G, a, 1, 1), loop(G, c, -1, -1), G)
        f = G.form(a, c)
        assert (b.central.cv, b.central.ct, b.central.K) == (f, f, {})


def test_central_annihilated_and_antisymmetry():
    x = loop(G, G.xp(1), 2, -1)
    cv = UCEElem.from_central(CentralElem(LAURENT_T, cv=1))
    assert uce_bracket(x, cv, G).is_zero()
    rng = np.random.default_rng(3)
    for _ in range(10):
        a, b = random_uce(rng, G, LAURENT_T), random_uce(rng, G, LAURENT_T)
        assert (uce_bracket(a, b, G) + uce_bracket(b, a, G)).is_zero()


def test_ring_mismatch():
    with pytest.raises(ValueError):
        uce_bracket(loop(G, G.xp(1), 0, 1), loop(G, G.xm(1), 0, 1, LAURENT_W), G)


def test_jacobi_small():
    rep = check_uce_jacobi(G, trials=10, seed=0)
    assert rep.passed and len(rep) == 60


def test_kappa():
    a, b = G.xp(1), G.xm(1)
    x = LoopElem(LAURENT_T, {(k, 0, 1): c for k, c in a.items()})
    y = LoopElem(LAURENT_T, {(k, 0, -1): c for k, c in b.items()})
    assert kappa(x, y, G) == G.form(a, b) == 1
    x2 = LoopElem(LAURENT_T, {(k, 0, 2): c for k, c in a.items()})
    y3 = LoopElem(LAURENT_T, {(k, 0, 3): c for k, c in b.items()})
    assert kappa(x2, y3, G) == 0
    assert kappa(x, x, G) == 0


def test_kappa_matches_ct_coordinate():
    rng = np.random.default_rng(7)
    for _ in range(30):
        x, y = (random_uce(rng, G, LAURENT_T, central=False) for _ in range(2))
        # restrict to v-degree 0 so the lift lives in g[t^+-1]
        x = LoopElem(LAURENT_T, {k: c for k, c in x.loop.terms.items() if k[1] == 0})
        y = LoopElem(LAURENT_T, {k: c for k, c in y.loop.terms.items() if k[1] == 0})
        b = uce_bracket(UCEElem(x, CentralElem(LAURENT_T)), UCEElem(y, CentralElem(LAURENT_T)), G)
        assert b.central.ct == kappa(x, y, G)
        assert kappa(x, y, G) == -kappa(y, x, G)


# --- MRY ----------------------------------------------------------------------


def test_mry_images():
    for r in range(-3, 4):
        assert mry_psi((1, 1, r), A2T) == loop(G, G.xp(1), 0, r)
        assert mry_psi((1, 0, r), A2T) == loop(G, G.x_theta(-1), 1, r)
        assert mry_psi((-1, 0, r), A2T) == loop(G, G.x_theta(1), -1, r)


def test_mry_node_zero_bracket():
    for r, s in itertools.product(range(-3, 4), repeat=2):
        got = eval_lie_word(LieWord.X(1, 0, r) @ LieWord.X(-1, 0, s), A2T)
        loop_part = LoopElem(LAURENT_T, {(k, 0, r + s): -c for k, c in G.h_theta().items()})
        K = {(0, r + s): r + s} if r + s else {}
        cv, ct = (1, r) if r == -s else (0, 0)
        assert got == UCEElem(loop_part, CentralElem(LAURENT_T, K, cv, ct))


def test_mry_degree():
    for r in range(-3, 4):
        x = mry_psi((-1, 2, r), A2T)
        assert {k[2] for k in x.loop.terms} == {r}


def test_mry_relations():
    rep = verify_t_relations_in_uce(A2T, 2)
    assert rep.passed
    assert _cell(rep, ("HH", 1, 2, 1, -1)).ok
    assert _cell(rep, ("X+X-", 1, 2, 0, 0)).ok
    assert _cell(rep, ("xx+", 0, 0, 1, 0)).ok


def test_mry_relations_negative_control():
    # the central c_t survives before the quotient
    h1 = eval_lie_word(LieWord.X(1, 1, 1) @ LieWord.X(-1, 1, 0), A2T)
    h2 = eval_lie_word(LieWord.X(1, 1, -1) @ LieWord.X(-1, 1, 0), A2T)
    b = uce_bracket(h1, h2, G)
    assert b.central.ct != 0 and b.drop_ct().is_zero()


def test_mry_rejections():
    with pytest.raises(ValueError):
        model_for(build_cartan("A1~"))
    with pytest.raises(ValueError):
        model_for(build_cartan("B2~"))
    with pytest.raises(ValueError):
        model_for(build_cartan("A2"))


def test_pi_and_ev():
    c = UCEElem.from_central(CentralElem(LAURENT_T, cv=1))
    assert pi_project(c).is_zero()
    x = G.xp(1)
    f = LoopElem(LAURENT_T, {(k, 1, 3): c for k, c in x.items()}) + LoopElem(
        LAURENT_T, {(k, 1, 1): c for k, c in x.items()})
    assert ev_g(f) == LoopElem(LAURENT_T, {(k, 1, 0): 2 * c for k, c in x.items()})
    diff = mry_psi((1, 1, 3), A2T) - mry_psi((1, 1, -2), A2T)
    assert ev_g(pi_project(diff)).is_zero()


def test_uce_json_and_text():
    b = uce_bracket(loop(G, G.xp(1), 1, 1), loop(G, G.xm(1), -1, -1), G)
    obj = b.to_json_obj(G)
    assert obj["central"] == {"K": [], "cv": "1", "ct": "1"}
    assert obj["loop"] == [{"i": 0, "basis": "h1", "v": 0, "t": 0, "coeff": "1"}]
    assert str(b) == "h1+c_v+c_t"
