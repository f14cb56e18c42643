"""The two-parameter family of twisted minimal surfaces.

For H = 0, twist rate a > 0 and (after scaling) b = 1, every admissible
conformal factor has the closed form

    rho(u) = e^{2au} (A e^{Bu} + e^{-Bu}/A) / (2B),    A, B > 0,

and the immersion integrates in closed form as well.  The family carries
Weierstrass data G(z) = (1/A) e^{-Bz}, dh = -(1/B) e^{2az} dz in the chart
z = u + iv, which this module also integrates numerically as a cross-check,
along with the holomorphic-extension (Bjorling) construction anchored on the
planar core curve v = 0.

At B = 2a the generic antiderivative degenerates (a resonant denominator)
and the immersion picks up a term linear in v, making the surface periodic:
evaluation switches to the limit formulas there.
"""
import cmath
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from . import _kernels
from ._quad import segment_integral
from .errors import PlaneDegeneracyError, UnknownPresetError
from .geometry import SurfaceMap
from .intrinsic import IntrinsicData, MetricProfile


@dataclass(frozen=True)
class MinimalParams:
    """Twist rate a and the two shape parameters of the family (b = 1)."""
    a: float
    A: float
    B: float

    def __post_init__(self):
        if not (self.a > 0 and self.A > 0 and self.B > 0):
            raise ValueError(f"parameters must be positive, got {self}")

    @property
    def resonant(self):
        return _kernels.is_resonant(self.a, self.B)


def require_nonplanar(b):
    """The b = 0 case forces lambda1 = lambda2 = 0, i.e. a plane; the family
    normalizes b to 1 by scaling and rejects the degenerate case outright."""
    if b == 0:
        raise PlaneDegeneracyError(
            "b = 0 gives an umbilic plane; the minimal family excludes it")
    return 1.0


def rho_minimal(p: MinimalParams, u):
    u = np.asarray(u, dtype=float)
    return np.exp(2 * p.a * u) * (p.A * np.exp(p.B * u)
                                  + np.exp(-p.B * u) / p.A) / (2 * p.B)


def drho_minimal(p: MinimalParams, u):
    u = np.asarray(u, dtype=float)
    return np.exp(2 * p.a * u) * ((2 * p.a + p.B) * p.A * np.exp(p.B * u)
                                  + (2 * p.a - p.B) * np.exp(-p.B * u) / p.A) \
        / (2 * p.B)


def ddrho_minimal(p: MinimalParams, u):
    u = np.asarray(u, dtype=float)
    return np.exp(2 * p.a * u) * ((2 * p.a + p.B) ** 2 * p.A * np.exp(p.B * u)
                                  + (2 * p.a - p.B) ** 2 * np.exp(-p.B * u) / p.A) \
        / (2 * p.B)


def metric_profile(p: MinimalParams, interval=(-np.inf, np.inf)):
    return MetricProfile(rho=lambda u: rho_minimal(p, u),
                         drho=lambda u: drho_minimal(p, u),
                         ddrho=lambda u: ddrho_minimal(p, u),
                         interval=interval,
                         label=f"minimal(a={p.a}, A={p.A}, B={p.B})")


def intrinsic_data(p: MinimalParams, b=1.0):
    """The (H = 0, a, b) package for the residual suite; b defaults to the
    normalized value and may be overridden for negative controls."""
    return IntrinsicData(profile=metric_profile(p), H=0.0, a=p.a, b=b)


def recover_AB(sigma, dsigma, u, a):
    """Invert (rho(u), rho'(u)) -> (A, B) at one point.

    B comes from  B = sqrt(e^{4au} + (rho' - 2a rho)^2) / rho;  A from the
    explicit form A = e^{-(B+2a)u} (rho' - 2a rho + B rho), which covers both
    signs of rho' - 2a rho (the intermediate radicand
    B^2 e^{-4au} rho^2 - 1 = ((rho'-2a rho) e^{-2au})^2 is nonnegative by
    construction; asserted, not branched on).
    """
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    s = dsigma - 2 * a * sigma
    B = np.sqrt(np.exp(4 * a * u) + s ** 2) / sigma
    radicand = B ** 2 * np.exp(-4 * a * u) * sigma ** 2 - 1.0
    assert radicand >= -1e-12 * max(1.0, B ** 2 * sigma ** 2)
    A = np.exp(-(B + 2 * a) * u) * (s + B * sigma)
    return MinimalParams(a=a, A=float(A), B=float(B))


def minimal_point(p: MinimalParams, u, v):
    """Closed-form immersion at one parameter point."""
    return _kernels.minimal_grid(p.a, p.A, p.B, [float(u)], [float(v)])[0, 0]


def surface_map(p: MinimalParams, name: Optional[str] = None) -> SurfaceMap:
    return SurfaceMap(
        grid_fn=lambda u, v: _kernels.minimal_grid(p.a, p.A, p.B, u, v),
        domain=((-np.inf, np.inf), (-np.inf, np.inf)),
        name=name or f"minimal(a={p.a}, A={p.A}, B={p.B})")


def period_vector(p: MinimalParams):
    """Translation period of the resonant (B = 2a) surfaces.

    The y-component of the immersion carries the linear term v/(4aA); a shift
    v -> v + pi/a leaves every trigonometric term invariant and translates the
    surface by (0, pi/(4 a^2 A), 0).  Non-resonant parameters return None.
    """
    if not p.resonant:
        return None
    return np.array([0.0, np.pi / (4 * p.a ** 2 * p.A), 0.0])


def frame_closed_form(p: MinimalParams, s):
    """The orthonormal frame (X, Y, N) along the planar core curve v = 0,
    normalized so that s -> -inf gives X = (1,0,0), N = (0,0,1)."""
    s = np.asarray(s, dtype=float)
    t = p.A * np.exp(p.B * s)
    d = 1.0 + t ** 2
    X = np.stack([(1 - t ** 2) / d, np.zeros_like(t), -2 * t / d], axis=-1)
    Y = np.broadcast_to(np.array([0.0, 1.0, 0.0]), X.shape).copy()
    N = np.stack([2 * t / d, np.zeros_like(t), (1 - t ** 2) / d], axis=-1)
    return X, Y, N


def profile_curve(p: MinimalParams, s):
    """The core curve f(s, 0); equals the full immersion restricted to v = 0
    and lies in the y = 0 plane."""
    s = np.asarray(s, dtype=float)
    e2 = np.exp(2 * p.a * s)
    if p.resonant:
        a = p.a
        x = s / (4 * a * p.A) - e2 ** 2 * p.A / (16 * a ** 2)
        z = -e2 / (4 * a ** 2)
        return np.stack([x, np.zeros_like(s), z], axis=-1)
    x = -(e2 / (2 * p.B)) * (p.A * np.exp(p.B * s) / (p.B + 2 * p.a)
                             + np.exp(-p.B * s) / (p.A * (p.B - 2 * p.a)))
    z = -(e2 / (2 * p.B)) / p.a
    return np.stack([x, np.zeros_like(s), z], axis=-1)


def profile_curve_derivative(p: MinimalParams, s):
    """Tangent of the core curve: c'(s) = -(e^{2as}/2B)(A e^{Bs} - e^{-Bs}/A, 0, 2)."""
    s = np.asarray(s, dtype=float)
    e2 = np.exp(2 * p.a * s)
    x = -(e2 / (2 * p.B)) * (p.A * np.exp(p.B * s) - np.exp(-p.B * s) / p.A)
    z = -(e2 / (2 * p.B)) * 2.0
    return np.stack([x, np.zeros_like(s), z], axis=-1)


@dataclass(frozen=True)
class WeierstrassData:
    """Gauss map G and height differential density dh/dz in the z-chart.
    G never hits 0 or infinity, so the family has no umbilics."""
    G: Callable
    dh_density: Callable


def weierstrass_data(p: MinimalParams) -> WeierstrassData:
    def G(z):
        return np.exp(-p.B * np.asarray(z, dtype=complex)) / p.A

    def dh(z):
        return -np.exp(2 * p.a * np.asarray(z, dtype=complex)) / p.B

    return WeierstrassData(G=G, dh_density=dh)


def weierstrass_integrand(p: MinimalParams, z):
    """(phi1, phi2, phi3)(z): the null-curve derivative whose real primitive
    is the immersion."""
    z = np.asarray(z, dtype=complex)
    g = np.exp(-p.B * z) / p.A
    dh = -np.exp(2 * p.a * z) / p.B
    return np.stack([0.5 * (1.0 / g - g) * dh,
                     0.5j * (1.0 / g + g) * dh,
                     dh], axis=-1)


def weierstrass_integrate(p: MinimalParams, z0, z1, n_steps):
    """Real part of the Weierstrass integral along the straight segment
    z0 -> z1 (composite Gauss-Legendre, 8 nodes per panel).

    The integrand is entire in the z-chart, so the value only depends on the
    endpoints -- except that a path whose endpoints differ by the period
    2 pi i with resonant parameters picks up the translation period.
    Returns the displacement f(z1) - f(z0).
    """
    if n_steps < 1:
        raise ValueError("n_steps must be >= 1")
    val = segment_integral(lambda z: weierstrass_integrand(p, z),
                           complex(z0), complex(z1), n_steps)
    return np.real(val)


def gauss_map_normal(p: MinimalParams, u, v):
    """Unit normal via stereographic projection of the Gauss map,
    sigma(G) = (2 Re G, 2 Im G, |G|^2 - 1) / (|G|^2 + 1)."""
    g = np.exp(-p.B * (np.asarray(u, dtype=complex) + 1j * np.asarray(v))) / p.A
    den = np.abs(g) ** 2 + 1.0
    return np.stack([2 * g.real / den, 2 * g.imag / den,
                     (np.abs(g) ** 2 - 1.0) / den], axis=-1)


def _core_curve_cplx(p: MinimalParams, z):
    z = np.asarray(z, dtype=complex)
    e2 = np.exp(2 * p.a * z)
    if p.resonant:
        a = p.a
        x = z / (4 * a * p.A) - np.exp(4 * a * z) * p.A / (16 * a ** 2)
        z3 = -e2 / (4 * a ** 2)
    else:
        x = -(e2 / (2 * p.B)) * (p.A * np.exp(p.B * z) / (p.B + 2 * p.a)
                                 + np.exp(-p.B * z) / (p.A * (p.B - 2 * p.a)))
        z3 = -(e2 / (2 * p.B)) / p.a
    return np.stack([x, np.zeros_like(z), z3], axis=-1)


def _core_tangent_cplx(p: MinimalParams, z):
    z = np.asarray(z, dtype=complex)
    e2 = np.exp(2 * p.a * z)
    x = -(e2 / (2 * p.B)) * (p.A * np.exp(p.B * z) - np.exp(-p.B * z) / p.A)
    return np.stack([x, np.zeros_like(z), -(e2 / p.B)], axis=-1)


def _core_normal_cplx(p: MinimalParams, z):
    z = np.asarray(z, dtype=complex)
    t = p.A * np.exp(p.B * z)
    d = 1.0 + t ** 2
    return np.stack([2 * t / d, np.zeros_like(z), (1 - t ** 2) / d], axis=-1)


def bjorling_point(p: MinimalParams, u, v, n_steps):
    """Evaluate the minimal surface through the core curve with its normal
    field by holomorphic extension:

        f(z) = Re( c(z) - i * integral_u^z N(w) x c'(w) dw ),  z = u + iv,

    with c and N extended from their closed forms.  The integration path runs
    vertically from the core curve, so v = 0 returns the curve exactly.  The
    extension has poles where 1 + A^2 e^{2Bz} = 0; keep |v| below pi/(2B)
    near u = -ln(A)/B.
    """
    z = complex(u, v)

    def integrand(w):
        n = _core_normal_cplx(p, w)
        t = _core_tangent_cplx(p, w)
        return np.cross(n, t)

    if v == 0:
        return profile_curve(p, u)
    integral = segment_integral(integrand, complex(u, 0.0), z, max(1, n_steps))
    val = _core_curve_cplx(p, z) - 1j * integral
    return np.real(val)


_PRESETS = {
    "enneper": lambda n: MinimalParams(a=(n + 1) / 2.0, A=1.0, B=float(n)),
    "planar-enneper": lambda n: MinimalParams(a=n / 2.0, A=1.0, B=float(n + 1)),
    "translation-invariant": lambda n: MinimalParams(a=0.5, A=1.0, B=1.0),
}

PRESET_NAMES = tuple(sorted(_PRESETS))


def preset(name, n=1):
    """Named parameter choices:

    * enneper(n): B = n, a = (n+1)/2 -- cyclic symmetry of order n + 1;
      n = 1 is the classical surface.
    * planar-enneper(n): B = n + 1, a = n/2 -- one flat end.
    * translation-invariant: B = 1, a = 1/2 -- the resonant, periodic case.
    """
    if name not in _PRESETS:
        raise UnknownPresetError(
            f"unknown preset {name!r}; choose from {PRESET_NAMES}")
    if name != "translation-invariant" and (int(n) != n or n < 1):
        raise ValueError("preset order n must be a positive integer")
    return _PRESETS[name](int(n))
