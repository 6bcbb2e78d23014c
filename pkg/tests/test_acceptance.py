"""Acceptance criteria, one test each.  All comparisons are exact.

Run with ``pytest tests/test_acceptance.py -s`` to see the verdict lines.
"""
import time

from dyshift import build_cartan
from dyshift.completion import SAMPLES, aplus_power_check, inverse_limit_consistency, torsion_check
from dyshift.dist import check_dist_oracle
from dyshift.liealg import (
    LAURENT_T,
    LAURENT_W,
    POLY_T,
    CentralElem,
    UCEElem,
    build_simple,
    check_uce_jacobi,
    uce_bracket,
    verify_t_relations_in_uce,
)
from dyshift.limitphi import (
    check_phi_gamma_formulas,
    gr_check,
    injectivity_window,
    kernel_window,
    phi_gamma,
)
from dyshift.phi import (
    check_gr_tw,
    check_J_generators,
    check_phi_form,
    check_phi_gamma_identity,
    check_phi_relations,
    check_phi_serre,
    check_phi_xxh,
    check_vertex_consistency,
)


def verdict(n, ok, detail):
    print(f"\n{'PASS' if ok else 'FAIL'} criterion {n}: {detail}")
    return ok


def summarize(reports):
    cells = sum(len(r) for r in reports)
    bad = sum(len(r.failures) for r in reports)
    return bad == 0, f"{cells - bad}/{cells} cells"


def test_criterion_01_relations():
    t0 = time.perf_counter()
    reports, serre_cells = [], {}
    for label, N in [("A1", 8), ("A2", 6), ("A2~", 4)]:
        d = build_cartan(label)
        reports += [check_phi_relations(d, fam, N) for fam in ("hh", "h0x", "xh", "xx")]
        reports.append(check_phi_xxh(d, N))
        serre = check_phi_serre(d, 3)
        serre_cells[label] = len(serre)
        reports.append(serre)
    dt = time.perf_counter() - t0
    ok, msg = summarize(reports)
    # a single node has no Serre relation; the multi-node data must be covered
    ok = ok and serre_cells["A2"] > 0 and serre_cells["A2~"] > 0 and dt < 300
    assert verdict(1, ok, f"{msg}, serre {serre_cells}, {dt:.1f}s")


def test_criterion_02_vertex_and_form():
    reports = [check_vertex_consistency(8)]
    a2 = build_cartan("A2")
    reports += [check_phi_form(i, 8, datum=a2) for i in a2.index]
    ok, msg = summarize(reports)
    assert verdict(2, ok, msg)


def test_criterion_03_phi_gamma():
    reports = [check_phi_gamma_identity(build_cartan(x)) for x in ("A1", "A2", "A2~")]
    ok, msg = summarize(reports)
    assert verdict(3, ok and all(len(r) for r in reports), msg)


def test_criterion_04_grading_twist():
    reports = [check_gr_tw(build_cartan(x), [(1, 2), (2, 3), (-1, 1)], 10, mode_bound=6)
               for x in ("A1", "A2")]
    ok, msg = summarize(reports)
    assert verdict(4, ok, msg)


def test_criterion_05_J_generators():
    reports = [check_J_generators(build_cartan(x), 8, mode_bound=6) for x in ("A1", "A2~")]
    ok, msg = summarize(reports)
    assert verdict(5, ok, msg)


def test_criterion_06_kassel():
    g = build_simple("A2")
    rep = check_uce_jacobi(g, trials=100, seed=0)
    rings = {e.cell[0] for e in rep.entries}
    central_ok = True
    for a, b in [(g.xp(1), g.xm(1)), (g.h(1), g.h(2)), (g.x_theta(1), g.x_theta(-1)), (g.xp(1), g.xp(2))]:
        x = UCEElem.loop_term(g, a, 1, 1)
        y = UCEElem.loop_term(g, b, -1, -1)
        c = uce_bracket(x, y, g).central
        f = g.form(a, b)
        central_ok = central_ok and c == CentralElem(LAURENT_T, {}, f, f)
    ok = rep.passed and central_ok and len(rings) == 3
    assert verdict(6, ok, f"{len(rep)} jacobi/antisymmetry cells over {sorted(map(str, rings))}, central term {central_ok}")


def test_criterion_07_mry():
    rep = verify_t_relations_in_uce(build_cartan("A2~"), 5)
    node0 = [e for e in rep.entries if 0 in e.cell[1:3]]
    serre0 = [e for e in node0 if e.cell[0].startswith("serre")]
    ok = rep.passed and bool(serre0)
    assert verdict(7, ok, f"{len(rep)} cells, {len(node0)} touching node 0, {len(serre0)} node-0 Serre")


def test_criterion_08_kernel():
    t0 = time.perf_counter()
    cw = phi_gamma(UCEElem.from_central(CentralElem(LAURENT_W, ct=1)), 12)
    kern = kernel_window(4, 4, 12)
    forms = check_phi_gamma_formulas(4, 4, 12)
    dt = time.perf_counter() - t0
    ok = (cw.is_zero() and kern.nullity == 1 and kern.kernel_basis == [{("cw",): 1}]
          and forms.passed and dt < 60)
    assert verdict(8, ok, f"nullity {kern.nullity} rank {kern.rank}/{kern.domain_dim}, "
                          f"{len(forms)} formula cells, {dt:.1f}s")


def test_criterion_09_injectivity():
    rep = injectivity_window(build_cartan("A2~"), 4, 12)
    ok = rep.passed and rep.rank == rep.domain_dim
    assert verdict(9, ok, f"rank {rep.rank}/{rep.domain_dim}")


def test_criterion_10_graded():
    rep = gr_check(build_cartan("A1"), 1, 5, 8)
    ranks = {e.cell[1]: e.info["rank"] for e in rep.entries if e.cell[0] == "rank"}
    ok = rep.passed and ranks == {n: 3 for n in range(6)}
    assert verdict(10, ok, f"ranks {ranks}")


def test_criterion_11_dist_oracle():
    rep = check_dist_oracle(n_max=8, radius=10)
    ok, msg = summarize([rep])
    assert verdict(11, ok, msg)


def test_criterion_12_appendix():
    reports = []
    for make in SAMPLES.values():
        s = make()
        reports += [aplus_power_check(s, 6), inverse_limit_consistency(s, 6), torsion_check(s, 100)]
    ok, msg = summarize(reports)
    assert verdict(12, ok, f"{msg} on {sorted(SAMPLES)}")
