import numpy as np
import pytest

from isorev import geometry, minimal
from isorev.errors import RadicandError
from isorev.intrinsic import MetricProfile, enneper_quarter_profile
from isorev.revolve import (build_revolve, min_admissible_c, revolve_map,
                            revolve_mesh, revolve_point, untwisted_lambdas,
                            untwisted_residuals)


def closed_form_h(u):
    """Arclength-completing height for the quarter-normalized profile at
    speed-up 3: (1/36)(2 sqrt(3) asinh(sqrt(3/2) e^u) + 3 e^u sqrt(2+3e^{2u}))."""
    eu = np.exp(np.asarray(u, dtype=float))
    return (2 * np.sqrt(3) * np.arcsinh(np.sqrt(1.5) * eu)
            + 3 * eu * np.sqrt(2 + 3 * eu ** 2)) / 36.0


# ------------------------------------------------------ principal curvatures

def test_untwisted_lambdas_quarter_profile_at_zero():
    prof = enneper_quarter_profile()
    l1, l2 = untwisted_lambdas(prof, 3.0, 0.0)
    # rho = 1/2, rho' = 1, radicand = 9/4 - 1 = 5/4
    assert l2 == pytest.approx(-2 * np.sqrt(5), rel=1e-14)
    assert l1 == pytest.approx(2 / np.sqrt(5), rel=1e-12)


def test_untwisted_lambdas_constant_profile():
    prof = MetricProfile.constant(1.0)
    l1, l2 = untwisted_lambdas(prof, 1.0, 0.3)
    assert l1 == pytest.approx(0.0, abs=1e-15)
    assert l2 == pytest.approx(-1.0, rel=1e-15)


def test_untwisted_lambdas_inadmissible_raises():
    with pytest.raises(RadicandError):
        untwisted_lambdas(enneper_quarter_profile(), 1.0, 0.0)


def test_untwisted_residuals_vanish_for_smooth_profiles():
    # identity check with an exactly differentiable synthetic profile
    prof = MetricProfile(
        rho=lambda u: 1.5 + 0.3 * np.sin(np.asarray(u, dtype=float)),
        drho=lambda u: 0.3 * np.cos(np.asarray(u, dtype=float)),
        ddrho=lambda u: -0.3 * np.sin(np.asarray(u, dtype=float)),
        interval=(-3, 3))
    u = np.linspace(-2, 2, 41)
    g, c = untwisted_residuals(prof, 1.2, u)
    assert np.abs(g).max() < 1e-9
    assert np.abs(c).max() < 1e-9


# --------------------------------------------------------- admissibility

def test_min_admissible_c_quarter_profile():
    prof = enneper_quarter_profile()
    c = min_admissible_c(prof, (-5.0, 5.0))
    # sup of rho'/rho = (1 + 3 e^{2u}) / (1 + e^{2u}) -> 3 from below
    assert abs(c - 3.0) < 1e-3
    assert c < 3.0


def test_min_admissible_c_constant():
    assert min_admissible_c(MetricProfile.constant(2.5), (-3, 3)) == 0.0


def test_min_admissible_c_exponential():
    prof = MetricProfile.exponential(1.7)
    assert min_admissible_c(prof, (-2, 2)) == pytest.approx(1.7, rel=1e-12)


def test_min_admissible_c_monotone_in_range():
    prof = enneper_quarter_profile()
    c_small = min_admissible_c(prof, (-1.0, 1.0))
    c_big = min_admissible_c(prof, (-1.0, 3.0))
    assert c_big >= c_small


# ------------------------------------------------------------ construction

def test_build_revolve_g_closed_form():
    rp = build_revolve(enneper_quarter_profile(), 3.0, (-1.0, 1.0))
    u = np.linspace(-1, 1, 33)
    want = np.exp(2 * u) * (np.exp(-u) + np.exp(u)) / 12.0
    assert np.abs(rp.g(u) - want).max() < 1e-14


def test_build_revolve_h_closed_form():
    rp = build_revolve(enneper_quarter_profile(), 3.0, (-1.0, 1.0), n_quad=64)
    u = np.linspace(-1, 1, 41)
    want = closed_form_h(u) - closed_form_h(-1.0)
    assert np.abs(rp.h(u) - want).max() < 1e-8


def test_build_revolve_rejects_c_one():
    with pytest.raises(RadicandError) as err:
        build_revolve(enneper_quarter_profile(), 1.0, (-1.0, 1.0))
    assert "radicand" in str(err.value)


def test_arclength_identity():
    rp = build_revolve(enneper_quarter_profile(), 3.0, (-1.0, 1.0))
    u = np.linspace(-1, 1, 65)
    lhs = rp.dg(u) ** 2 + rp.dh(u) ** 2
    rho2 = rp.profile.rho(u) ** 2
    assert np.abs(lhs - rho2).max() < 1e-10 * max(1.0, rho2.max())


# -------------------------------------------------------------- the surface

def test_revolve_point_and_map_agree():
    rp = build_revolve(enneper_quarter_profile(), 3.0, (-1.0, 1.0))
    got = revolve_point(rp, 0.3, 0.5)
    want = revolve_map(rp).point(0.3, 0.5)
    assert np.allclose(got, want, atol=1e-15)


def test_revolve_mesh_metric_and_twist():
    rp = build_revolve(enneper_quarter_profile(), 3.0, (-1.0, 1.0))
    smap = revolve_map(rp)
    u = np.linspace(-0.9, 0.9, 5)
    v = np.linspace(0.0, 2.0, 9)
    g = geometry.grid_forms(smap, u, v, h=3e-4)
    rho2 = np.asarray(rp.profile.rho(u))[:, None] ** 2
    assert np.abs(g["E"] / rho2 - 1).max() < 1e-6
    assert np.abs(g["G"] / rho2 - 1).max() < 1e-6
    assert np.abs(g["F"] / rho2).max() < 1e-6
    tf = geometry.fit_twist(smap, u, np.linspace(0, 1.2, 13), h=3e-4)
    assert abs(tf.a_est) < 1e-6


def test_revolve_mesh_eigenvalues_match_closed_form():
    rp = build_revolve(enneper_quarter_profile(), 3.0, (-1.0, 1.0))
    smap = revolve_map(rp)
    u = np.linspace(-0.8, 0.8, 7)
    v = np.linspace(0.1, 1.9, 5)
    res = geometry.principal_grid(smap, u, v, h=3e-4)
    lc1, lc2 = untwisted_lambdas(rp.profile, rp.c, u)
    got = np.sort(np.stack([res["lambda1"], res["lambda2"]]), axis=0)
    want = np.sort(np.stack([np.broadcast_to(lc1[:, None], res["lambda1"].shape),
                             np.broadcast_to(lc2[:, None], res["lambda1"].shape)]),
                   axis=0)
    assert np.abs(got - want).max() < 1e-5


def test_revolve_surface_passes_zero_twist_residuals():
    rng = np.random.default_rng(6)
    prof = MetricProfile(
        rho=lambda u: 2.0 + 0.4 * np.cos(np.asarray(u, dtype=float)),
        drho=lambda u: -0.4 * np.sin(np.asarray(u, dtype=float)),
        ddrho=lambda u: -0.4 * np.cos(np.asarray(u, dtype=float)),
        interval=(-3, 3))
    c = min_admissible_c(prof, (-2, 2)) + 0.5
    u = rng.uniform(-2, 2, size=25)
    g, cz = untwisted_residuals(prof, c, u)
    assert np.abs(g).max() < 1e-9
    assert np.abs(cz).max() < 1e-9


def test_isometric_to_one_third_of_minimal_surface():
    # the c = 3 surface over v in [0, 2pi/3) carries the quarter-normalized
    # metric; the order-1 minimal surface carries the half-normalized one:
    # E and G agree after scaling by 4 (rho differs by the global factor 2)
    rp = build_revolve(enneper_quarter_profile(), 3.0, (-0.8, 0.8))
    rev = revolve_map(rp)
    mini = minimal.surface_map(minimal.MinimalParams(1.0, 1.0, 1.0))
    u = np.linspace(-0.5, 0.5, 5)
    g_rev = geometry.grid_forms(rev, u, np.linspace(0, 2 * np.pi / 3, 7),
                                h=2e-4)
    g_min = geometry.grid_forms(mini, u, np.linspace(0, 2 * np.pi, 7), h=2e-4)
    ratio_E = g_min["E"].mean(axis=1) / g_rev["E"].mean(axis=1)
    assert np.abs(ratio_E - 4.0).max() < 1e-4
    # and both are conformal: E = G, F = 0
    assert np.abs(g_rev["E"] - g_rev["G"]).max() < 1e-6
    assert np.abs(g_min["F"]).max() < 1e-6


def test_revolve_mesh_helper():
    rp = build_revolve(enneper_quarter_profile(), 3.0, (-1.0, 1.0))
    mesh = revolve_mesh(rp, 8, 12, (0.0, 2 * np.pi / 3))
    mesh.validate()
    r = np.hypot(mesh.vertices[..., 0], mesh.vertices[..., 1])
    assert np.abs(r - np.asarray(rp.g(mesh.u))[:, None]).max() < 1e-12
