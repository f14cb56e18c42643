"""Finite-difference differential-geometry oracle.

Given any sufficiently smooth immersion (u, v) -> R^3 this module recovers
first/second fundamental forms, the shape operator, principal curvatures and
directions, and the twist rate of the principal-direction field -- all from
position samples alone, so it can referee surfaces produced by any other
module without sharing code paths with them.

Sign conventions, used consistently across the toolkit:

* the unit normal is n = (f_u x f_v) / |f_u x f_v|;
* the second fundamental form is II(X, Y) = <d_X n, Y> = -<f_XY, n>, so the
  shape operator S = I^{-1} II is the derivative of the Gauss map expressed
  in the tangent basis.  With this sign a unit sphere with outward normal has
  S = +id, and a cylinder of radius 1/H carries eigenvalues {H, 0};
* mean curvature is the SUM of the principal curvatures, H = lambda1 + lambda2;
* the principal angle theta lies in [0, pi) (directions are lines), measured
  in the orthonormalized frame (U, V) = (f_u/|f_u|, Gram-Schmidt of f_v);
* the fitted twist rate is positive when the principal directions rotate
  clockwise in the (U, V) frame as v increases, i.e. a_est = -d theta/dv.
"""
from dataclasses import dataclass, field
from typing import Callable, Optional, Tuple

import numpy as np

from .errors import (DegenerateImmersionError, SingularMetricError,
                     UmbilicSampleError, UnwrapAmbiguityError)

IMMERSION_TOL = 1e-12
DEFAULT_STEP_REL = 1e-4


class SurfaceMap:
    """A parametrized surface patch.

    grid_fn(u, v) evaluates the immersion on the tensor grid of two 1-D
    arrays and returns (len(u), len(v), 3).  The map must be C^2 on the open
    domain; an infinite domain is expressed with +-inf bounds.
    """

    def __init__(self, grid_fn: Callable, domain, name: str = ""):
        self.grid_fn = grid_fn
        (u1, u2), (v1, v2) = domain
        self.domain = ((float(u1), float(u2)), (float(v1), float(v2)))
        self.name = name

    @classmethod
    def from_point_fn(cls, fn, domain, name: str = ""):
        """Wrap a scalar (u, v) -> (3,) callable (convenient in tests)."""
        def grid_fn(u, v):
            u = np.atleast_1d(np.asarray(u, dtype=float))
            v = np.atleast_1d(np.asarray(v, dtype=float))
            out = np.empty((u.size, v.size, 3))
            for i, uu in enumerate(u):
                for j, vv in enumerate(v):
                    out[i, j] = fn(uu, vv)
            return out
        return cls(grid_fn, domain, name)

    def grid(self, u, v):
        u = np.atleast_1d(np.asarray(u, dtype=float))
        v = np.atleast_1d(np.asarray(v, dtype=float))
        pts = np.asarray(self.grid_fn(u, v), dtype=float)
        if pts.shape != (u.size, v.size, 3):
            raise ValueError(f"grid_fn returned shape {pts.shape}, "
                             f"expected {(u.size, v.size, 3)}")
        return pts

    def point(self, u, v):
        return self.grid([u], [v])[0, 0]

    def default_step(self, u_extent=None, v_extent=None):
        """FD step: DEFAULT_STEP_REL times the domain diameter, with the
        requested sample extent standing in when the domain is unbounded."""
        (u1, u2), (v1, v2) = self.domain
        du = u2 - u1
        dv = v2 - v1
        if not np.isfinite(du):
            du = (u_extent[1] - u_extent[0]) if u_extent is not None else 1.0
        if not np.isfinite(dv):
            dv = (v_extent[1] - v_extent[0]) if v_extent is not None else 1.0
        diam = float(np.hypot(du, dv))
        return DEFAULT_STEP_REL * (diam if diam > 0 else 1.0)


@dataclass
class Mesh:
    """Structured sample grid of a surface with per-vertex unit normals."""
    u: np.ndarray
    v: np.ndarray
    vertices: np.ndarray   # (nu, nv, 3)
    normals: np.ndarray    # (nu, nv, 3)

    @property
    def nu(self):
        return len(self.u)

    @property
    def nv(self):
        return len(self.v)

    def validate(self, tol=1e-12):
        if not (np.all(np.diff(self.u) > 0) and np.all(np.diff(self.v) > 0)):
            raise ValueError("grid not strictly monotone")
        norms = np.linalg.norm(self.normals, axis=-1)
        if not np.all(np.abs(norms - 1.0) <= tol):
            raise ValueError("normals not unit length")
        return self


@dataclass
class FormPair:
    """First and second fundamental forms at a point (II in the Gauss-map
    derivative convention described in the module docstring)."""
    E: float
    F: float
    G: float
    L: float
    M: float
    N: float

    @property
    def first(self):
        return np.array([[self.E, self.F], [self.F, self.G]])

    @property
    def second(self):
        return np.array([[self.L, self.M], [self.M, self.N]])

    def validate(self):
        if not (self.E > 0 and self.E * self.G - self.F ** 2 > 0):
            raise SingularMetricError(
                f"I not positive definite: E={self.E}, EG-F^2="
                f"{self.E * self.G - self.F ** 2}")
        return self


@dataclass
class PrincipalData:
    """Ordered principal curvatures and the principal angle.

    theta is None at umbilic points (gap below the tolerance); umbilic is the
    corresponding flag, not an error state.
    """
    lambda1: float
    lambda2: float
    theta: Optional[float]
    umbilic: bool


@dataclass
class TwistFit:
    a_est: float
    max_dev: float
    slope: float = field(repr=False, default=0.0)


def _check_domain(smap, u, v, margin):
    (u1, u2), (v1, v2) = smap.domain
    u = np.asarray(u)
    v = np.asarray(v)
    if np.any(u - margin <= u1) or np.any(u + margin >= u2) \
            or np.any(v - margin <= v1) or np.any(v + margin >= v2):
        raise ValueError(
            f"sample point closer than {margin} to the domain boundary")


def grid_stencil(smap, u, v, h):
    """Evaluate the 3x3 central-difference stencil around every (u_i, v_j)
    with one tensor-grid call; returns (3*nu, 3*nv, 3)."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    ue = (u[:, None] + np.array([-h, 0.0, h])[None, :]).ravel()
    ve = (v[:, None] + np.array([-h, 0.0, h])[None, :]).ravel()
    return smap.grid(ue, ve)


def grid_forms(smap, u, v, h=None):
    """Fundamental-form ingredients on a sample grid.

    Returns a dict of (nu, nv) arrays E, F, G, L, M, N plus the unit normals
    (nu, nv, 3).  Raises DegenerateImmersionError where |f_u x f_v| falls
    below IMMERSION_TOL.
    """
    u = np.atleast_1d(np.asarray(u, dtype=float))
    v = np.atleast_1d(np.asarray(v, dtype=float))
    if h is None:
        h = smap.default_step((u.min(), u.max()), (v.min(), v.max()))
    _check_domain(smap, u, v, 2.0 * h)
    P = grid_stencil(smap, u, v, h)

    c = P[1::3, 1::3]
    fu = (P[2::3, 1::3] - P[0::3, 1::3]) / (2 * h)
    fv = (P[1::3, 2::3] - P[1::3, 0::3]) / (2 * h)
    fuu = (P[2::3, 1::3] - 2 * c + P[0::3, 1::3]) / h ** 2
    fvv = (P[1::3, 2::3] - 2 * c + P[1::3, 0::3]) / h ** 2
    fuv = (P[2::3, 2::3] - P[2::3, 0::3] - P[0::3, 2::3] + P[0::3, 0::3]) \
        / (4 * h ** 2)

    cross = np.cross(fu, fv)
    cn = np.linalg.norm(cross, axis=-1)
    if np.any(cn < IMMERSION_TOL):
        i, j = np.unravel_index(int(np.argmin(cn)), cn.shape)
        raise DegenerateImmersionError(
            f"|f_u x f_v| = {cn[i, j]:.3e} at (u, v) = ({u[i]}, {v[j]})")
    n = cross / cn[..., None]

    return {
        "E": np.sum(fu * fu, axis=-1),
        "F": np.sum(fu * fv, axis=-1),
        "G": np.sum(fv * fv, axis=-1),
        "L": -np.sum(fuu * n, axis=-1),
        "M": -np.sum(fuv * n, axis=-1),
        "N": -np.sum(fvv * n, axis=-1),
        "normals": n,
        "h": h,
    }


def fundamental_forms(smap, u, v, h=None):
    """First and second fundamental forms at one point by central
    differences of order h^2."""
    g = grid_forms(smap, [u], [v], h)
    return FormPair(E=float(g["E"][0, 0]), F=float(g["F"][0, 0]),
                    G=float(g["G"][0, 0]), L=float(g["L"][0, 0]),
                    M=float(g["M"][0, 0]), N=float(g["N"][0, 0])).validate()


def sample_mesh(smap, nu, nv, u_range=None, v_range=None, h=None):
    """Sample the map on a uniform tensor grid; normals are the normalized
    cross products of central-difference tangents."""
    if nu < 2 or nv < 2:
        raise ValueError("nu and nv must be >= 2")
    (du, dv) = smap.domain
    u_range = u_range if u_range is not None else du
    v_range = v_range if v_range is not None else dv
    if not all(np.isfinite(x) for x in (*u_range, *v_range)):
        raise ValueError("mesh needs a finite u/v range")
    u = np.linspace(u_range[0], u_range[1], nu)
    v = np.linspace(v_range[0], v_range[1], nv)
    if h is None:
        h = smap.default_step(u_range, v_range)

    vertices = smap.grid(u, v)
    ue = (u[:, None] + np.array([-h, h])[None, :]).ravel()
    ve = (v[:, None] + np.array([-h, h])[None, :]).ravel()
    Pu = smap.grid(ue, v)
    Pv = smap.grid(u, ve)
    fu = (Pu[1::2] - Pu[0::2]) / (2 * h)
    fv = (Pv[:, 1::2] - Pv[:, 0::2]) / (2 * h)
    cross = np.cross(fu, fv)
    cn = np.linalg.norm(cross, axis=-1)
    if np.any(cn < IMMERSION_TOL):
        i, j = np.unravel_index(int(np.argmin(cn)), cn.shape)
        raise DegenerateImmersionError(
            f"|f_u x f_v| = {cn[i, j]:.3e} at grid node ({u[i]}, {v[j]})")
    normals = cross / cn[..., None]
    return Mesh(u=u, v=v, vertices=vertices, normals=normals).validate()


def shape_from_forms(fp: FormPair):
    """Shape operator S = I^{-1} II in the coordinate basis."""
    fp.validate()
    return np.linalg.solve(fp.first, fp.second)


def self_adjoint_defect(S, fp: FormPair):
    IS = fp.first @ S
    return float(np.abs(IS - IS.T).max())


def _principal_arrays(E, F, G, L, M, N, gap_tol=None):
    """Vectorized eigen-decomposition of S in the orthonormalized frame.

    Returns ordered eigenvalues and the angle of the lambda1 eigendirection
    (nan where the gap is below the umbilic tolerance).
    """
    s = np.sqrt(G - F ** 2 / E)
    sqE = np.sqrt(E)
    # S in the (U, V) frame: P^{-1} (I^{-1} II) P with P = [[1/sqE, -F/(E s)],
    # [0, 1/s]].  Worked out directly to stay vectorized.
    det = E * G - F ** 2
    s11 = (G * L - F * M) / det
    s12 = (G * M - F * N) / det
    s21 = (E * M - F * L) / det
    s22 = (E * N - F * M) / det
    p11, p12, p22 = 1.0 / sqE, -F / (E * s), 1.0 / s
    # A = P^{-1} S P with P upper triangular, expanded by hand.
    inv11 = 1.0 / p11
    inv12 = -p12 / (p11 * p22)
    inv22 = 1.0 / p22
    b11 = s11 * p11
    b21 = s21 * p11
    b12 = s11 * p12 + s12 * p22
    b22 = s21 * p12 + s22 * p22
    a11 = inv11 * b11 + inv12 * b21
    a12 = inv11 * b12 + inv12 * b22
    a21 = inv22 * b21
    a22 = inv22 * b22
    sym = 0.5 * (a12 + a21)
    mean = 0.5 * (a11 + a22)
    rad = np.hypot(0.5 * (a11 - a22), sym)
    lam1 = mean + rad
    lam2 = mean - rad
    if gap_tol is None:
        gap_tol = 1e-9 * np.maximum(np.maximum(np.abs(lam1), np.abs(lam2)), 1.0)
    theta = 0.5 * np.arctan2(2.0 * sym, a11 - a22)
    theta = np.mod(theta, np.pi)
    umb = (lam1 - lam2) < gap_tol
    theta = np.where(umb, np.nan, theta)
    return lam1, lam2, theta, umb


def principal_data(S, fp: FormPair, gap_tol=None):
    """Principal curvatures/angle from a shape operator and its forms.

    The operator must be self-adjoint with respect to I (symmetric after
    conjugating into the orthonormal frame); gap_tol controls the umbilic
    flag and defaults to 1e-9 * max(|lambda1|, |lambda2|, 1).
    """
    fp.validate()
    II = fp.first @ np.asarray(S, dtype=float)
    fp2 = FormPair(fp.E, fp.F, fp.G,
                   float(II[0, 0]), float(0.5 * (II[0, 1] + II[1, 0])),
                   float(II[1, 1]))
    defect = self_adjoint_defect(S, fp)
    scale = max(1.0, float(np.abs(II).max()))
    if defect > 1e-6 * scale:
        raise ValueError(f"S is not I-self-adjoint (defect {defect:.3e})")
    gt = None if gap_tol is None else np.asarray(gap_tol, dtype=float)
    l1, l2, th, umb = _principal_arrays(
        np.array([fp2.E]), np.array([fp2.F]), np.array([fp2.G]),
        np.array([fp2.L]), np.array([fp2.M]), np.array([fp2.N]), gt)
    theta = None if umb[0] else float(th[0])
    return PrincipalData(float(l1[0]), float(l2[0]), theta, bool(umb[0]))


def principal_grid(smap, u, v, h=None, gap_tol=None):
    """lambda1, lambda2, theta arrays over a sample grid (oracle pipeline:
    stencil -> forms -> shape operator -> eigen data)."""
    g = grid_forms(smap, u, v, h)
    lam1, lam2, theta, umb = _principal_arrays(
        g["E"], g["F"], g["G"], g["L"], g["M"], g["N"], gap_tol)
    return {"lambda1": lam1, "lambda2": lam2, "theta": theta, "umbilic": umb,
            "E": g["E"], "F": g["F"], "G": g["G"],
            "L": g["L"], "M": g["M"], "N": g["N"], "h": g["h"]}


def _unwrap_mod_pi(theta, max_jump=0.25 * np.pi):
    """Unwrap a sequence of line angles (defined mod pi) continuously.

    Nearest-representative unwrapping is only trustworthy when the true angle
    step stays well under pi/2 (beyond that the step aliases with one of the
    opposite sign).  A wrapped difference can never exceed pi/2, so the guard
    rejects measured steps above pi/4: a fit that legitimately needs bigger
    steps needs denser v-sampling anyway.
    """
    out = np.array(theta, dtype=float)
    for j in range(1, len(out)):
        d = out[j] - out[j - 1]
        d = (d + np.pi / 2) % np.pi - np.pi / 2
        if abs(d) > max_jump:
            raise UnwrapAmbiguityError(
                f"principal angle jump {d:.3f} rad between consecutive "
                "v-samples; sample v more densely")
        out[j] = out[j - 1] + d
    return out


def fit_twist(smap, u_samples, v_samples, h=None, gap_tol=None):
    """Least-squares twist rate of the principal-direction field.

    theta(u, v) is read modulo pi on the probe grid, unwrapped continuously
    along v, and fitted with a common slope and per-u intercepts.  Returns
    TwistFit(a_est, max_dev) with a_est = -slope (clockwise-positive
    convention) and max_dev the worst deviation from the linear fit.
    """
    u_samples = np.atleast_1d(np.asarray(u_samples, dtype=float))
    v_samples = np.atleast_1d(np.asarray(v_samples, dtype=float))
    if len(v_samples) < 2:
        raise ValueError("need at least two v samples")
    res = principal_grid(smap, u_samples, v_samples, h)
    if gap_tol is None:
        # probes come from finite differences, so near-umbilic gaps below the
        # FD noise floor must be flagged rather than trusted
        scale = np.maximum(np.maximum(np.abs(res["lambda1"]),
                                      np.abs(res["lambda2"])), 1.0)
        gap_tol = 1e-6 * scale
    res["umbilic"] = (res["lambda1"] - res["lambda2"]) < gap_tol
    res["theta"] = np.where(res["umbilic"], np.nan, res["theta"])
    if np.any(res["umbilic"]):
        i, j = np.argwhere(res["umbilic"])[0]
        raise UmbilicSampleError(
            f"umbilic probe at (u, v) = ({u_samples[i]}, {v_samples[j]})")
    theta = np.vstack([_unwrap_mod_pi(row) for row in res["theta"]])

    # common slope, per-row intercepts: the row means absorb the intercepts,
    # leaving an ordinary regression on the centered angles
    vbar = v_samples.mean()
    dv = v_samples - vbar
    slope = float(np.sum(dv[None, :] * (theta - theta.mean(axis=1, keepdims=True)))
                  / (theta.shape[0] * np.sum(dv ** 2)))
    intercepts = theta.mean(axis=1, keepdims=True) - slope * vbar
    fitted = slope * v_samples[None, :] + intercepts
    max_dev = float(np.abs(theta - fitted).max())
    return TwistFit(a_est=-slope, max_dev=max_dev, slope=slope)
