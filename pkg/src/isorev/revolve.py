"""Zero-twist data realized as honest surfaces of revolution.

With twist 0 the shape operator is diagonal, and a conformal factor rho
determines the principal curvatures up to one constant c (the rotational
speed-up):

    lambda1 = (rho rho'' - rho'^2) / (rho^2 sqrt(c^2 rho^2 - rho'^2))
    lambda2 = - sqrt(c^2 rho^2 - rho'^2) / rho^2

Whenever the radicand stays positive, f(u, v) = (g cos(cv), g sin(cv), h)
realizes the data with g = rho/c and h' = sqrt(c^2 rho^2 - rho'^2)/c, so the
admissibility threshold for c is sup |rho'|/rho over the interval.
"""
from dataclasses import dataclass
from typing import Tuple

import numpy as np
from scipy.optimize import minimize_scalar

from ._quad import cumulative_integral
from .errors import RadicandError
from .geometry import Mesh, SurfaceMap
from .intrinsic import MetricProfile


def _radicand(profile, c, u):
    u = np.asarray(u, dtype=float)
    return c * c * profile.rho(u) ** 2 - profile.drho(u) ** 2


def untwisted_lambdas(profile: MetricProfile, c, u):
    """Principal curvature pair of the zero-twist data at speed-up c.

    Raises RadicandError where c^2 rho^2 - rho'^2 <= 0 (no real surface of
    revolution carries the data there).
    """
    u = np.asarray(u, dtype=float)
    rad = _radicand(profile, c, u)
    if np.any(rad <= 0):
        bad = np.atleast_1d(u)[np.atleast_1d(rad) <= 0]
        raise RadicandError(
            f"c^2 rho^2 - rho'^2 <= 0 at u = {float(bad.ravel()[0])}",
            u=float(bad.ravel()[0]))
    root = np.sqrt(rad)
    rho = profile.rho(u)
    lam1 = (rho * profile.ddrho(u) - profile.drho(u) ** 2) / (rho ** 2 * root)
    lam2 = -root / rho ** 2
    return lam1, lam2


def untwisted_residuals(profile: MetricProfile, c, u):
    """Signed compatibility residuals of the zero-twist data:

    gauss   = lambda1 lambda2 - (rho'^2 - rho rho'')/rho^4
    codazzi = (rho'/rho)(lambda1 - lambda2) - lambda2'

    Both vanish identically for the closed-form lambdas; evaluating them
    numerically certifies an implementation, and they double as the
    verification suite for generated revolution meshes.
    """
    u = np.asarray(u, dtype=float)
    lam1, lam2 = untwisted_lambdas(profile, c, u)
    rho = profile.rho(u)
    drho = profile.drho(u)
    ddrho = profile.ddrho(u)
    gauss = lam1 * lam2 - (drho ** 2 - rho * ddrho) / rho ** 4
    rad = _radicand(profile, c, u)
    droot = (c * c * rho * drho - drho * ddrho) / np.sqrt(rad)
    dlam2 = -(droot * rho ** 2 - np.sqrt(rad) * 2 * rho * drho) / rho ** 4
    codazzi = (drho / rho) * (lam1 - lam2) - dlam2
    return gauss, codazzi


def min_admissible_c(profile: MetricProfile, u_range, n_samples=2048):
    """Supremum of |rho'|/rho over the closed range, located by dense
    sampling plus bounded local refinement; any c above the returned value
    keeps the radicand positive on the whole range."""
    lo, hi = float(u_range[0]), float(u_range[1])
    u = np.linspace(lo, hi, n_samples)
    ratio = np.abs(profile.drho(u)) / profile.rho(u)
    k = int(np.argmax(ratio))
    best = float(ratio[k])

    a = u[max(k - 1, 0)]
    b = u[min(k + 1, n_samples - 1)]
    if b > a:
        res = minimize_scalar(
            lambda x: -np.abs(profile.drho(x)) / profile.rho(x),
            bounds=(a, b), method="bounded",
            options={"xatol": 1e-12 * max(1.0, abs(hi - lo))})
        best = max(best, float(-res.fun))
    return best


@dataclass
class RevolveProfile:
    """Realization data: g = rho/c pointwise and h by cumulative quadrature
    of h' = sqrt(c^2 rho^2 - rho'^2)/c anchored at h(u_range[0]) = 0.

    The quadrature grid carries a small guard extension past each end (when
    the radicand allows) so finite-difference probes at the range endpoints
    stay evaluable.
    """
    c: float
    profile: MetricProfile
    u_range: Tuple[float, float]
    n_quad: int
    _grid: np.ndarray
    _h_prefix: np.ndarray

    def g(self, u):
        return self.profile.rho(u) / self.c

    def dg(self, u):
        return self.profile.drho(u) / self.c

    def dh(self, u):
        rad = _radicand(self.profile, self.c, u)
        if np.any(rad <= 0):
            raise RadicandError("radicand nonpositive inside range")
        return np.sqrt(rad) / self.c

    def h(self, u):
        """Piecewise quadrature: prefix sums at the panel grid plus one
        Gauss-Legendre panel for the partial cell."""
        u = np.asarray(u, dtype=float)
        scalar = u.ndim == 0
        uu = np.atleast_1d(np.asarray(u, dtype=float))
        if np.any(uu < self._grid[0]) or np.any(uu > self._grid[-1]):
            raise ValueError("u outside the realized range")
        idx = np.clip(np.searchsorted(self._grid, uu, side="right") - 1,
                      0, len(self._grid) - 2)
        out = np.empty(uu.shape)
        x, w = np.polynomial.legendre.leggauss(8)
        for i, (ui, ki) in enumerate(zip(uu, idx)):
            a = self._grid[ki]
            mid, half = 0.5 * (a + ui), 0.5 * (ui - a)
            if half > 0:
                pts = mid + half * x
                out[i] = self._h_prefix[ki] + half * np.sum(w * self.dh(pts))
            else:
                out[i] = self._h_prefix[ki]
        return float(out[0]) if scalar else out


def build_revolve(profile: MetricProfile, c, u_range, n_quad=64) -> RevolveProfile:
    """Construct the revolution data for an admissible speed-up.

    Validates the radicand on a grid four times denser than the quadrature
    panels and reports the offending u when c is inadmissible.
    """
    lo, hi = float(u_range[0]), float(u_range[1])
    if hi <= lo:
        raise ValueError("empty u range")
    dense = np.linspace(lo, hi, max(4 * n_quad + 1, 257))
    rad = _radicand(profile, c, dense)
    if np.any(rad <= 0):
        bad = dense[rad <= 0]
        raise RadicandError(
            f"radicand negative: c = {c} is inadmissible at u = {bad[0]:.6g}"
            f" (and {bad.size - 1} more sample points)", u=float(bad[0]))

    guard = 0.01 * (hi - lo)
    glo, ghi = lo, hi
    for cand in (lo - guard, lo - 0.1 * guard):
        if cand >= profile.interval[0] and np.all(_radicand(profile, c, [cand]) > 0):
            glo = cand
            break
    for cand in (hi + guard, hi + 0.1 * guard):
        if cand <= profile.interval[1] and np.all(_radicand(profile, c, [cand]) > 0):
            ghi = cand
            break
    grid = np.concatenate([[glo] if glo < lo else [],
                           np.linspace(lo, hi, n_quad + 1),
                           [ghi] if ghi > hi else []])
    prefix = cumulative_integral(
        lambda x: np.sqrt(_radicand(profile, c, x)) / c, grid)
    # anchor h = 0 at the requested left end, not the guard node
    anchor = prefix[1] if glo < lo else prefix[0]
    prefix = prefix - anchor
    return RevolveProfile(c=float(c), profile=profile, u_range=(lo, hi),
                          n_quad=n_quad, _grid=grid, _h_prefix=prefix)


def revolve_point(rp: RevolveProfile, u, v):
    g = rp.g(u)
    return np.array([g * np.cos(rp.c * v), g * np.sin(rp.c * v), rp.h(u)])


def revolve_map(rp: RevolveProfile) -> SurfaceMap:
    def grid_fn(u, v):
        u = np.asarray(u, dtype=float)
        v = np.asarray(v, dtype=float)
        g = rp.g(u)[:, None]
        h = rp.h(u)[:, None]
        cv = np.cos(rp.c * v)[None, :]
        sv = np.sin(rp.c * v)[None, :]
        out = np.empty((u.size, v.size, 3))
        out[..., 0] = g * cv
        out[..., 1] = g * sv
        out[..., 2] = np.broadcast_to(h, (u.size, v.size))
        return out

    return SurfaceMap(grid_fn=grid_fn,
                      domain=((rp._grid[0], rp._grid[-1]), (-np.inf, np.inf)),
                      name=f"revolve(c={rp.c})")


def revolve_mesh(rp: RevolveProfile, nu, nv, v_range, u_range=None) -> Mesh:
    from .geometry import sample_mesh
    u_range = u_range or rp.u_range
    return sample_mesh(revolve_map(rp), nu, nv, u_range, v_range)
