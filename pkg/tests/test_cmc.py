import numpy as np
import pytest

from isorev import cmc, geometry, intrinsic, minimal
from isorev.cmc import (FrameState, cylinder_point, hopf, integrate_profile,
                        integrate_surface, smyth_residual, solve_rho)
from isorev.errors import NonpositiveInitialRhoError

FIG6 = dict(H=0.5, a=1.0, b=4.2625, rho0=2.0, drho0=2.0)


def kabsch_residual(got, want):
    """Best rigid motion residual between two point clouds."""
    X = got.reshape(-1, 3)
    Y = want.reshape(-1, 3)
    xm, ym = X.mean(0), Y.mean(0)
    U, _, Vt = np.linalg.svd((X - xm).T @ (Y - ym))
    D = np.diag([1.0, 1.0, np.sign(np.linalg.det(U @ Vt))])
    R = (U @ D @ Vt).T
    return float(np.abs((X - xm) @ R.T - (Y - ym)).max())


# ---------------------------------------------------------------- solve_rho

def test_solve_matches_cylinder():
    sol = solve_rho(1.0, 1.0, 0.5, 1.0, 1.0, (0.0, 2.0), tol=1e-10)
    u = np.linspace(0, 2, 81)
    assert np.abs(sol.profile.rho(u) - np.exp(u)).max() < 10 * sol.tol


def test_solve_matches_minimal_closed_form():
    sol = solve_rho(0.0, 1.0, 1.0, 1.0, 2.0, (-1.0, 1.0), tol=1e-10)
    p = minimal.MinimalParams(1.0, 1.0, 1.0)
    u = np.linspace(-1, 1, 81)
    assert np.abs(sol.profile.rho(u) - minimal.rho_minimal(p, u)).max() \
        < 10 * sol.tol


def test_solve_reference_run_residual():
    sol = solve_rho(u_range=(-1.0, 1.0), tol=1e-10, **FIG6)
    assert not sol.truncated
    d = sol.intrinsic_data()
    u = np.linspace(-1, 1, 501)
    assert np.abs(intrinsic.master_ode_residual(d, u)).max() < 100 * sol.tol


def test_solve_rejects_bad_rho0():
    with pytest.raises(NonpositiveInitialRhoError):
        solve_rho(1.0, 1.0, 0.5, -1.0, 0.0, (0.0, 1.0))


def test_solve_blowup_flagged_partial():
    # cylinder-type data decays like e^{2u}: far enough left it undershoots
    # the positivity floor and the run must truncate with a flag
    sol = solve_rho(1.0, 2.0, 0.5, 1.0, 2.0, (-10.0, 0.0), tol=1e-8, u0=0.0)
    assert sol.truncated_low and not sol.truncated_high
    assert sol.interval[0] > -10.0
    assert np.all(sol.rho > 0)


def test_solver_tolerance_scaling():
    # 100x tighter tolerance must win at least 4x accuracy (max_step lifted
    # so the tolerance, not the step cap, controls the error)
    def err(tol):
        sol = solve_rho(1.0, 1.0, 0.5, 1.0, 1.0, (0.0, 2.0), tol=tol,
                        max_step=2.0)
        u = np.linspace(0, 2, 41)
        return np.abs(sol.profile.rho(u) - np.exp(u)).max()
    assert err(1e-6) / err(1e-8) > 4.0


def test_solver_fixed_step_order():
    # with error control off, halving the step should cut the error ~32x;
    # >= 4x certifies order >= 2 with a huge margin
    def err(hstep):
        sol = solve_rho(1.0, 1.0, 0.5, 1.0, 1.0, (0.0, 2.0), tol=1e18,
                        max_step=hstep)
        return abs(float(sol.profile.rho(2.0)) - np.exp(2.0))
    assert err(0.05) / err(0.025) > 16.0


def test_interpolant_reproduces_nodes():
    sol = solve_rho(u_range=(-1.0, 1.0), tol=1e-10, **FIG6)
    assert np.abs(sol.profile.rho(sol.u) - sol.rho).max() < 1e-12
    assert np.abs(sol.profile.drho(sol.u) - sol.drho).max() < 1e-11


# --------------------------------------------------------- profile integrals

def test_profile_matches_minimal_frame():
    p = minimal.MinimalParams(1.0, 1.0, 1.0)
    prof = minimal.metric_profile(p, (-1.5, 1.5))
    s0 = -1.0
    X, Y, N = minimal.frame_closed_form(p, s0)
    init = FrameState(minimal.profile_curve(p, s0), X, Y, N)
    s_eval = np.linspace(-1, 1, 21)
    path = integrate_profile(prof, 0.0, 1.0, 1.0, (s0, 1.0), init,
                             tol=1e-12, s_eval=s_eval)
    Xc, Yc, Nc = minimal.frame_closed_form(p, path.s)
    assert np.abs(path.positions - minimal.profile_curve(p, path.s)).max() < 1e-7
    assert np.abs(path.X - Xc).max() < 1e-7
    assert np.abs(path.N - Nc).max() < 1e-7


def test_profile_keeps_Y_constant():
    rng = np.random.default_rng(12)
    for H, a, b in ((0.0, 1.0, 1.0), (1.0, 1.0, 0.5), (0.5, 1.0, 4.2625)):
        if H == 0.5:
            sol = solve_rho(u_range=(-1.0, 1.0), tol=1e-10, **FIG6)
            src = sol
        elif H == 0.0:
            src = minimal.metric_profile(minimal.MinimalParams(1, 1, 1),
                                         (-1.5, 1.5))
        else:
            src = cmc.cylinder_profile(H, a, b)
        init = FrameState.canonical()
        path = integrate_profile(src, H, a, b, (-0.8, 0.9), init, tol=1e-12,
                                 s_eval=np.linspace(-0.8, 0.9, 18))
        assert np.abs(path.Y - init.Y).max() < 1e-10


def test_profile_curve_planar():
    sol = solve_rho(u_range=(-1.0, 1.0), tol=1e-10, **FIG6)
    init = FrameState.canonical()
    path = integrate_profile(sol, 0.5, 1.0, 4.2625, (-1.0, 1.0), init,
                             tol=1e-12, s_eval=np.linspace(-1, 1, 41))
    # the curve stays in the plane through init.position spanned by X0, N0
    dev = (path.positions - init.position) @ init.Y
    assert np.abs(dev).max() < 1e-9


def test_profile_cylinder_arc():
    H, a, b = 1.0, 1.0, 0.5
    prof = cmc.cylinder_profile(H, a, b)
    init = FrameState.canonical()
    path = integrate_profile(prof, H, a, b, (0.0, 1.5), init, tol=1e-12,
                             s_eval=np.linspace(0, 1.5, 31))
    center = init.position - init.N / H
    r = np.linalg.norm(path.positions - center, axis=1)
    assert np.abs(r - 1.0 / H).max() < 1e-7


def test_profile_orthonormality_drift_without_renorm():
    # diagnostic mode: no per-step renormalization; the drift per unit arc
    # length stays under 1e-9 at tol 1e-10
    H, a, b = 1.0, 1.0, 0.5
    prof = cmc.cylinder_profile(H, a, b)
    init = FrameState.canonical()
    path = integrate_profile(prof, H, a, b, (0.0, 2.0), init, tol=1e-10,
                             renormalize=False)
    M = path.states[-1].reshape(4, 3)[1:]
    defect = np.abs(M @ M.T - np.eye(3)).max()
    arclen = float(np.exp(2.0) - 1.0)  # integral of rho = e^s
    assert defect / arclen < 1e-9


def test_profile_rejects_bad_init_frame():
    init = FrameState(np.zeros(3), np.array([1.0, 0, 0]),
                      np.array([0.9, 0.1, 0]), np.array([0, 0, 1.0]))
    prof = cmc.cylinder_profile(1.0, 1.0, 0.5)
    with pytest.raises(ValueError):
        integrate_profile(prof, 1.0, 1.0, 0.5, (0, 1), init)


# ---------------------------------------------------------- surface meshes

def test_surface_cylinder_lands_on_cylinder():
    H, a, b = 1.0, 1.0, 0.5
    sol = solve_rho(H, a, b, 1.0, 1.0, (0.0, 1.5), tol=1e-10)
    mesh = integrate_surface(sol, H, a, b, (0.0, 1.5), (0.0, 2 * np.pi),
                             24, 72)
    r = np.hypot(mesh.vertices[..., 0], mesh.vertices[..., 1])
    assert np.abs(r - 1.0 / H).max() < 1e-6
    want = cmc.cylinder_map(H, a, b).grid(mesh.u, mesh.v)
    assert kabsch_residual(mesh.vertices, want) < 1e-6


def test_surface_minimal_matches_closed_form():
    p = minimal.MinimalParams(1.0, 1.0, 1.0)
    prof = minimal.metric_profile(p, (-1.0, 1.0))
    mesh = integrate_surface(prof, 0.0, 1.0, 1.0, (-1.0, 1.0),
                             (0.0, 2 * np.pi), 20, 60, anchor=0.0)
    want = minimal.surface_map(p).grid(mesh.u, mesh.v)
    assert kabsch_residual(mesh.vertices, want) < 1e-5


def test_surface_mixed_partial_consistency():
    # u-then-v vs v-then-u transport to the same node
    H, a, b = 0.5, 1.0, 4.2625
    sol = solve_rho(u_range=(-1.0, 1.0), tol=1e-10, **FIG6)
    prof = sol.profile
    u1, v1 = 0.6, 0.9
    init = FrameState.adapted(H)

    path = integrate_profile(sol, H, a, b, (0.0, u1), init, tol=1e-12,
                             s_eval=[u1])
    rows = path.states[-1][None, :]
    rho, drho, lam1, lam2 = cmc._lambda_arrays(prof, H, a, b, np.array([u1]))
    via_u = cmc._transport(rows, rho, drho, lam1, lam2, a,
                           np.array([v1]), 1e-12)[0, 0, 0:3]

    rows0 = init.as_vector()[None, :]
    rho0, drho0, l10, l20 = cmc._lambda_arrays(prof, H, a, b, np.array([0.0]))
    at_v = cmc._transport(rows0, rho0, drho0, l10, l20, a,
                          np.array([v1]), 1e-12)[0, 0]
    # continue along u at fixed v1 with the general u-transport
    from scipy.integrate import solve_ivp

    def rhs(s, y):
        r = float(prof.rho(s))
        dr = float(prof.drho(s))
        dev = b * np.exp(2 * a * s) / r ** 2
        l1, l2 = 0.5 * H + dev, 0.5 * H - dev
        al = a * v1
        s11 = l1 * np.cos(al) ** 2 + l2 * np.sin(al) ** 2
        s12 = (l2 - l1) * np.sin(al) * np.cos(al)
        pos, X, Y, N = y[0:3], y[3:6], y[6:9], y[9:12]
        return np.concatenate([
            r * X, -r * s11 * N, -r * s12 * N, r * (s11 * X + s12 * Y)])

    res = solve_ivp(rhs, (0.0, u1), at_v, rtol=1e-12, atol=1e-12)
    via_v = res.y[0:3, -1]
    assert np.abs(via_u - via_v).max() < 1e-6


def test_surface_reference_run_mean_curvature():
    H, a, b = 0.5, 1.0, 4.2625
    sol = solve_rho(u_range=(-1.2, 1.2), tol=1e-10, **FIG6)
    smap = cmc.surface_map(sol, H, a, b)
    res = geometry.principal_grid(smap, np.linspace(-0.9, 0.9, 7),
                                  np.linspace(0.3, 5.9, 9), h=8e-4)
    dev = np.abs(res["lambda1"] + res["lambda2"] - H).max()
    assert dev < 1e-3


# ------------------------------------------------------------ cylinder map

def test_cylinder_point_identity():
    pt = cylinder_point(1.0, 1.0, 0.5, 0.3, 0.9)
    assert abs(pt[0] ** 2 + pt[1] ** 2 - 1.0) < 1e-15


def test_cylinder_conformal_factor():
    H, a, b = 1.0, 1.0, 0.5
    smap = cmc.cylinder_map(H, a, b)
    fp = geometry.fundamental_forms(smap, 0.3, 0.4, h=1e-5)
    rho2 = 2 * b * np.exp(2 * a * 0.3) / H
    assert abs(fp.E / rho2 - 1) < 1e-7
    assert abs(fp.G / rho2 - 1) < 1e-7
    assert abs(fp.F / rho2) < 1e-7


def test_cylinder_carries_twist():
    H, a, b = 1.0, 1.0, 0.5
    smap = cmc.cylinder_map(H, a, b)
    tf = geometry.fit_twist(smap, np.linspace(-0.3, 0.3, 4),
                            np.linspace(0.0, 1.5, 25), h=1e-4)
    assert abs(tf.a_est - a) < 1e-4


# -------------------------------------------------------- Hopf differential

def test_hopf_at_origin():
    assert hopf(1.0, 0.7, 0.0) == pytest.approx(0.5)


def test_hopf_holomorphic():
    # Cauchy-Riemann by finite differences on a grid
    b, a = 1.3, 0.8
    h = 1e-5
    rng = np.random.default_rng(4)
    for _ in range(20):
        z = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
        dx = (hopf(b, a, z + h) - hopf(b, a, z - h)) / (2 * h)
        dy = (hopf(b, a, z + 1j * h) - hopf(b, a, z - 1j * h)) / (2 * h)
        assert abs(dx + 1j * dy) / abs(dx) < 1e-8  # dy = i dx for holomorphic


def test_hopf_from_forms_chain():
    # Omega = I(S dz, dz) with dz = (e1 - i e2)/2 in the orthonormal frame:
    # (rho^2/4)[(S11 - S22) - 2i S12] must equal (b/2) e^{2az}
    b, a, H = 0.7, 1.1, 0.9
    prof = cmc.cylinder_profile(H, a, b)
    data = intrinsic.IntrinsicData(prof, H, a, b)
    rng = np.random.default_rng(8)
    for _ in range(20):
        u, v = rng.uniform(-1, 1), rng.uniform(0, 2 * np.pi)
        l1, l2 = intrinsic.lambda_pair(data, u)
        al = a * v
        s11 = l1 * np.cos(al) ** 2 + l2 * np.sin(al) ** 2
        s22 = l1 * np.sin(al) ** 2 + l2 * np.cos(al) ** 2
        s12 = (l2 - l1) * np.sin(al) * np.cos(al)
        rho2 = float(prof.rho(u)) ** 2
        om = (rho2 / 4.0) * ((s11 - s22) - 2j * s12)
        want = hopf(b, a, complex(u, v))
        assert abs(om - want) < 1e-10 * max(1.0, abs(want))


# ----------------------------------------------------------- sinh reduction

def test_smyth_sign_resolution_symbolic():
    """One-time sign oracle: substituting rho = e^{phi/2},
    phi = F + sigma*2au + log b into the H = 2 metric ODE must reduce to
    F'' = -4 b e^{sigma*2au} sinh F; only sigma = +1 closes the identity."""
    import sympy as sp
    u = sp.symbols("u", real=True)
    a, b = sp.symbols("a b", positive=True)
    F = sp.Function("F")
    residuals = {}
    for sigma in (+1, -1):
        phi = F(u) + sigma * 2 * a * u + sp.log(b)
        rho = sp.exp(phi / 2)
        master = (sp.diff(rho, u) ** 2 - rho * sp.diff(rho, u, 2)
                  - (sp.Rational(1, 4) * 4 * rho ** 4
                     - b ** 2 * sp.exp(4 * a * u)))
        target = -(b * sp.exp(sigma * 2 * a * u + F(u)) / 2) \
            * (sp.diff(F(u), u, 2)
               + 4 * b * sp.exp(sigma * 2 * a * u) * sp.sinh(F(u)))
        diff = sp.simplify((master - target).rewrite(sp.exp))
        residuals[sigma] = sp.simplify(sp.expand(diff))
    assert residuals[+1] == 0
    assert residuals[-1] != 0
    assert cmc.SINH_EXPONENT_SIGN == +1


def test_smyth_residual_cylinder():
    H, a, b = 2.0, 1.0, 0.8
    prof = cmc.cylinder_profile(H, a, b)
    u = np.linspace(-1, 1, 33)
    assert np.abs(smyth_residual(prof, a, b, u)).max() < 1e-8


def test_smyth_residual_numeric_solution():
    a, b = 1.0, 1.0
    sol = solve_rho(2.0, a, b, 1.0, 0.0, (-0.6, 0.6), tol=1e-10)
    u = np.linspace(-0.5, 0.5, 41)
    assert np.abs(smyth_residual(sol, a, b, u)).max() < 1e-5


def test_smyth_needs_positive_b():
    prof = cmc.cylinder_profile(2.0, 1.0, 0.5)
    with pytest.raises(ValueError):
        smyth_residual(prof, 1.0, 0.0, 0.3)


def test_smyth_form_accessors():
    H, a, b = 2.0, 0.9, 1.7
    form = cmc.smyth_form(cmc.cylinder_profile(H, a, b), a, b)
    u = np.linspace(-1, 1, 9)
    assert np.abs(np.exp(form.phi(u) / 2.0)
                  - form.profile.rho(u)).max() < 1e-12
    assert np.abs(form.mu(u) - b * np.exp(2 * a * u)).max() < 1e-12
    # cylinder at H = 2: F vanishes identically
    assert np.abs(form.F(u)).max() < 1e-12
