"""Hot-kernel backend selection.

The compiled extension is preferred when it imported cleanly; the numpy
reference implements the identical stepping rules.  Set ISOR_FORCE_PY_KERNELS
to any nonempty value to force the reference backend (used by the benchmark
and the parity tests).
"""
import os

import numpy as np

from . import _reference

if os.environ.get("ISOR_FORCE_PY_KERNELS"):
    _impl = _reference
    BACKEND = "python"
else:
    try:
        from . import _fastcore as _impl  # type: ignore[attr-defined]
        BACKEND = "compiled"
    except ImportError:
        _impl = _reference
        BACKEND = "python"

RESONANCE_RTOL = _reference.RESONANCE_RTOL
is_resonant = _reference.is_resonant


def minimal_grid(a, A, B, u, v):
    return _impl.minimal_grid(float(a), float(A), float(B),
                              np.ascontiguousarray(u, dtype=float),
                              np.ascontiguousarray(v, dtype=float))


def cylinder_grid(H, a, b, u, v):
    return _impl.cylinder_grid(float(H), float(a), float(b),
                               np.ascontiguousarray(u, dtype=float),
                               np.ascontiguousarray(v, dtype=float))


def transport_v(state0, rho, drho, lam1, lam2, a, v0, v_out, h_max):
    return _impl.transport_v(np.ascontiguousarray(state0, dtype=float),
                             np.ascontiguousarray(rho, dtype=float),
                             np.ascontiguousarray(drho, dtype=float),
                             np.ascontiguousarray(lam1, dtype=float),
                             np.ascontiguousarray(lam2, dtype=float),
                             float(a), float(v0),
                             np.ascontiguousarray(v_out, dtype=float),
                             float(h_max))


def transport_step_bound(rho, drho, lam1, lam2, span, err_target=1e-12):
    """Substep length for the RK4 transport: local error ~ (omega*h)^5/120 per
    step accumulated over span/h steps, solved for h at the requested total
    error.  omega bounds the rotation generator plus the position speed."""
    rho = np.asarray(rho, dtype=float)
    omega = rho * (np.abs(lam1) + np.abs(lam2)) + np.abs(drho) / rho + rho
    w = max(1e-3, float(np.max(omega)))
    span = max(float(span), 1e-12)
    h = (120.0 * err_target / (span * w ** 5)) ** 0.25
    return float(min(max(h, 1e-6), 0.05))
