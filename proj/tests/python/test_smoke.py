import math

import pytest

import vecac


def test_potential_roundtrip():
    p = vecac.builtin_potential("scalar_gl")
    assert p.k == 1
    assert p.value([0.0]) == pytest.approx(0.25)
    rep = vecac.validate_hypotheses(p)
    assert rep.h1_ok and rep.h2_ok and rep.h3_ok
    wc = vecac.derive_constants(p)
    assert wc.mu0 == pytest.approx(0.0917517, rel=1e-4)
    assert wc.lambda0 == pytest.approx(2.0)


def test_profile_matches_tanh():
    p = vecac.builtin_potential("scalar_gl")
    prof = vecac.solve_profile_firstorder(p, 1.0, -1.0, 1.0, 10.0, 1024)
    err = max(
        abs(w - math.tanh(s / math.sqrt(2.0))) for s, w in zip(prof.s, prof.w)
    )
    assert err < 1e-8
    c0 = vecac.transition_energy(p, -1.0, 1.0, 1024)
    assert c0 == pytest.approx(2.0 * math.sqrt(2.0) / 3.0, rel=1e-5)


def test_solve_and_identities():
    p = vecac.builtin_potential("vector_gl_decoupled")
    eps = 0.1
    h = eps / 4
    n = round(2.0 / h) + 1
    shape = vecac.Grid2D.make(n, n, 2, h, -1.0, -1.0)
    g = vecac.seed("cross", shape, p, eps)

    cfg = vecac.SolveConfig()
    cfg.eps = eps
    flow = vecac.SolveConfig()
    flow.eps = eps
    flow.tol = cfg.newton_switch_tol * 0.5
    vecac.gradient_flow(g, p, flow)
    rep = vecac.newton_solve(g, p, cfg)
    assert rep.scaled_residual < 1e-8

    poho = vecac.pohozaev_residual(g, p, eps, 0.0, 0.0, 0.5)
    assert poho.pass_
    assert poho.residual < 3e-2

    d = vecac.diagnostics(g, p, eps)
    scan = vecac.radial_scan(d.zeta, 0.0, 0.0, 4 * eps, 0.9, 16)
    mono = vecac.zeta_monotonicity_report(scan, eps)
    assert mono.pass_


def test_interface_extraction():
    p = vecac.builtin_potential("scalar_gl")
    eps = 0.1
    h = eps / 4
    n = round(2.0 / h) + 1
    shape = vecac.Grid2D.make(n, n, 1, h, -1.0, -1.0)
    g = vecac.seed("planar", shape, p, eps)
    cfg = vecac.SolveConfig()
    cfg.eps = eps
    flow = vecac.SolveConfig()
    flow.eps = eps
    flow.tol = cfg.newton_switch_tol * 0.5
    vecac.gradient_flow(g, p, flow)
    vecac.newton_solve(g, p, cfg)

    d = vecac.diagnostics(g, p, eps)
    theta = vecac.density_field(d, 4 * eps)
    eta = 0.5 * max(theta.v)
    graph = vecac.extract_interface(theta, d, eta, 4 * eps)
    assert graph.n_arcs() == 1
    assert graph.n_junctions() == 0
    assert '"arcs"' in graph.to_json()


def test_scenario_run(tmp_path):
    scn = tmp_path / "mini.scn"
    scn.write_text(
        "potential = scalar_gl\n"
        "seed = planar\n"
        "resolve = 4\n"
        "eps = 0.1\n"
        "checks = pohozaev interface\n"
    )
    out = tmp_path / "out"
    assert vecac.run_scenario_file(str(scn), str(out), 1) == 0
    assert (out / "reports_eps0.1.json").exists()
