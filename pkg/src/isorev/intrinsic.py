"""Intrinsic data of a conformally-parametrized surface of revolution and the
residual functions that certify it.

The metric is rho(u)^2 (du^2 + dv^2) with rho > 0.  Together with a constant
mean curvature H (sum convention), a linear twist rate a, and the integration
constant b of the off-diagonal curvature equation, the principal curvatures
are

    lambda_{1,2}(u) = H/2 +- b e^{2au} / rho(u)^2,

and compatibility of the whole package reduces to one scalar ODE for rho:

    rho'^2 - rho rho'' = (H^2/4) rho^4 - b^2 e^{4au}.

The residual functions below return signed left-minus-right values so tests
can check convergence order and sign patterns, not just magnitudes.
"""
from dataclasses import dataclass, field
from typing import Callable, Tuple

import numpy as np
from scipy.interpolate import make_interp_spline


@dataclass(frozen=True)
class MetricProfile:
    """The conformal factor rho(u) with first and second derivative
    evaluators (closed-form or interpolation-backed; the derivative
    evaluators belong to the profile so residuals never re-difference)."""
    rho: Callable
    drho: Callable
    ddrho: Callable
    interval: Tuple[float, float]
    label: str = ""

    def __call__(self, u):
        return self.rho(u)

    def contains(self, u):
        u = np.asarray(u)
        return bool(np.all(u >= self.interval[0]) and np.all(u <= self.interval[1]))

    @classmethod
    def from_samples(cls, u, rho_values, label="sampled"):
        """Quintic-spline profile through (u, rho) samples; derivatives come
        from the spline so they are C^1-consistent with the values."""
        u = np.asarray(u, dtype=float)
        rho_values = np.asarray(rho_values, dtype=float)
        if np.any(rho_values <= 0):
            raise ValueError("rho samples must be positive")
        spl = make_interp_spline(u, rho_values, k=5)
        d1 = spl.derivative(1)
        d2 = spl.derivative(2)
        return cls(rho=spl, drho=d1, ddrho=d2,
                   interval=(float(u[0]), float(u[-1])), label=label)

    @classmethod
    def constant(cls, value=1.0, interval=(-10.0, 10.0)):
        return cls(rho=lambda u: np.full_like(np.asarray(u, dtype=float), value),
                   drho=lambda u: np.zeros_like(np.asarray(u, dtype=float)),
                   ddrho=lambda u: np.zeros_like(np.asarray(u, dtype=float)),
                   interval=interval, label=f"constant {value}")

    @classmethod
    def exponential(cls, k, scale=1.0, interval=(-10.0, 10.0)):
        return cls(rho=lambda u: scale * np.exp(k * np.asarray(u, dtype=float)),
                   drho=lambda u: scale * k * np.exp(k * np.asarray(u, dtype=float)),
                   ddrho=lambda u: scale * k * k * np.exp(k * np.asarray(u, dtype=float)),
                   interval=interval, label=f"{scale}*exp({k}u)")

    def scaled(self, factor):
        """rho -> factor * rho (e.g. to reconcile normalization conventions)."""
        return MetricProfile(
            rho=lambda u: factor * self.rho(u),
            drho=lambda u: factor * self.drho(u),
            ddrho=lambda u: factor * self.ddrho(u),
            interval=self.interval, label=f"{factor}*({self.label})")


def enneper_quarter_profile(interval=(-10.0, 10.0)):
    """rho(u) = (e^u + e^{3u})/4, the quarter-normalized one-parameter
    profile used by the surface-of-revolution example; it is half of the
    standard minimal-family profile at (a, A, B) = (1, 1, 1)."""
    def rho(u):
        u = np.asarray(u, dtype=float)
        return 0.25 * (np.exp(u) + np.exp(3 * u))

    def drho(u):
        u = np.asarray(u, dtype=float)
        return 0.25 * (np.exp(u) + 3 * np.exp(3 * u))

    def ddrho(u):
        u = np.asarray(u, dtype=float)
        return 0.25 * (np.exp(u) + 9 * np.exp(3 * u))

    return MetricProfile(rho, drho, ddrho, interval, "enneper/4")


@dataclass(frozen=True)
class IntrinsicData:
    """(rho, H, a, b): everything needed to evaluate curvatures and the
    compatibility residuals.  H is the sum of the principal curvatures."""
    profile: MetricProfile
    H: float
    a: float
    b: float

    def replace(self, **kw):
        from dataclasses import replace as _replace
        return _replace(self, **kw)


def lambda_pair(data: IntrinsicData, u):
    """Principal curvatures lambda1 >= lambda2 when b >= 0; the pair always
    sums to H exactly."""
    u = np.asarray(u, dtype=float)
    dev = data.b * np.exp(2 * data.a * u) / data.profile.rho(u) ** 2
    return 0.5 * data.H + dev, 0.5 * data.H - dev


def lambda_pair_derivative(data: IntrinsicData, u):
    """d/du of lambda_pair, differentiated in closed form."""
    u = np.asarray(u, dtype=float)
    rho = data.profile.rho(u)
    drho = data.profile.drho(u)
    d = 2 * data.b * np.exp(2 * data.a * u) * (data.a * rho - drho) / rho ** 3
    return d, -d


def gauss_residual(data: IntrinsicData, u):
    """lambda1*lambda2 minus the intrinsic curvature
    (rho'^2 - rho rho'')/rho^4 (signed)."""
    u = np.asarray(u, dtype=float)
    l1, l2 = lambda_pair(data, u)
    rho = data.profile.rho(u)
    K = (data.profile.drho(u) ** 2 - rho * data.profile.ddrho(u)) / rho ** 4
    return l1 * l2 - K


def codazzi_residuals(data: IntrinsicData, u, v):
    """The two off-diagonal compatibility residuals at (u, v):

    r1 = (lambda1' + lambda2') sin(av) cos(av)
    r2 = (lambda1 - lambda2)(rho' - a rho)/rho
         - (-lambda1' sin^2(av) + lambda2' cos^2(av))

    With the closed-form lambdas both vanish identically (constant H makes
    r1 zero and the b e^{2au}/rho^2 deviation solves r2), so these certify
    the construction; the metric ODE residual is what pins rho itself.
    """
    u = np.asarray(u, dtype=float)
    al = data.a * np.asarray(v, dtype=float)
    l1, l2 = lambda_pair(data, u)
    d1, d2 = lambda_pair_derivative(data, u)
    rho = data.profile.rho(u)
    drho = data.profile.drho(u)
    r1 = (d1 + d2) * np.sin(al) * np.cos(al)
    r2 = (l1 - l2) * (drho - rho * data.a) / rho \
        - (-d1 * np.sin(al) ** 2 + d2 * np.cos(al) ** 2)
    return r1, r2


def master_ode_residual(data: IntrinsicData, u):
    """Signed residual of the governing metric ODE
    rho'^2 - rho rho'' - (H^2/4) rho^4 + b^2 e^{4au}."""
    u = np.asarray(u, dtype=float)
    rho = data.profile.rho(u)
    return (data.profile.drho(u) ** 2 - rho * data.profile.ddrho(u)
            - 0.25 * data.H ** 2 * rho ** 4
            + data.b ** 2 * np.exp(4 * data.a * u))


def residual_maxima(data: IntrinsicData, u_range=None, n=100, v_probe=0.35):
    """Max absolute residuals on an n-point grid (used by reports)."""
    if u_range is None:
        u_range = data.profile.interval
    u = np.linspace(u_range[0], u_range[1], n)
    r1, r2 = codazzi_residuals(data, u, v_probe)
    return {
        "gauss": float(np.abs(gauss_residual(data, u)).max()),
        "codazzi": float(np.maximum(np.abs(r1), np.abs(r2)).max()),
        "master_ode": float(np.abs(master_ode_residual(data, u)).max()),
    }
