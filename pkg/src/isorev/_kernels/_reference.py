"""Pure-numpy reference implementations of the hot kernels.

The compiled module (_fastcore) implements the same three entry points with
identical stepping rules, so either backend produces matching output.
"""
import numpy as np

RESONANCE_RTOL = 1e-9


def is_resonant(a, B):
    return abs(B - 2.0 * a) < RESONANCE_RTOL * max(B, 2.0 * a)


def minimal_grid(a, A, B, u, v):
    """Closed-form minimal immersion on the tensor grid u x v -> (nu, nv, 3).

    Uses the two-exponential form for B != 2a and the resonant limit form
    (linear-in-u/v terms) when B ~ 2a, where the generic denominators vanish.
    """
    u = np.asarray(u, dtype=float)[:, None]
    v = np.asarray(v, dtype=float)[None, :]
    out = np.empty((u.shape[0], v.shape[1], 3))
    if is_resonant(a, B):
        q = 1.0 / (4.0 * a * a)
        e4 = np.exp(4.0 * a * u)
        e2 = np.exp(2.0 * a * u)
        out[..., 0] = q * (a * u / A - 0.25 * A * e4 * np.cos(4.0 * a * v))
        out[..., 1] = q * (a * v / A + 0.25 * A * e4 * np.sin(4.0 * a * v))
        out[..., 2] = -q * e2 * np.cos(2.0 * a * v)
    else:
        p = np.exp(2.0 * a * u) / (2.0 * B)
        em = np.exp(-B * u) / (A * (2.0 * a - B))
        ep = A * np.exp(B * u) / (2.0 * a + B)
        wm = (2.0 * a - B) * v
        wp = (2.0 * a + B) * v
        out[..., 0] = p * (em * np.cos(wm) - ep * np.cos(wp))
        out[..., 1] = p * (em * np.sin(wm) + ep * np.sin(wp))
        out[..., 2] = -p * np.cos(2.0 * a * v) / a
    return out


def cylinder_grid(H, a, b, u, v):
    """Geodesic-polar cylinder immersion on the tensor grid -> (nu, nv, 3)."""
    u = np.asarray(u, dtype=float)[:, None]
    v = np.asarray(v, dtype=float)[None, :]
    r = np.sqrt(2.0 * b * H) * np.exp(a * u) / a
    w = r * np.cos(a * v)
    t = r * np.sin(a * v)
    out = np.empty((u.shape[0], v.shape[1], 3))
    out[..., 0] = np.cos(w) / H
    out[..., 1] = np.sin(w) / H
    out[..., 2] = t / H
    return out


def _renormalize(X, Y, N):
    X /= np.linalg.norm(X, axis=-1, keepdims=True)
    Y -= np.sum(Y * X, axis=-1, keepdims=True) * X
    Y /= np.linalg.norm(Y, axis=-1, keepdims=True)
    N -= np.sum(N * X, axis=-1, keepdims=True) * X
    N -= np.sum(N * Y, axis=-1, keepdims=True) * Y
    N /= np.linalg.norm(N, axis=-1, keepdims=True)


def _deriv(v, a, pos, X, Y, N, rho, drho, lam1, lam2):
    al = a * v
    sa, ca = np.sin(al), np.cos(al)
    s12 = (lam2 - lam1) * sa * ca
    s22 = lam1 * sa * sa + lam2 * ca * ca
    rr = (drho / rho)[:, None]
    rs12 = (rho * s12)[:, None]
    rs22 = (rho * s22)[:, None]
    dpos = rho[:, None] * Y
    dX = rr * Y - rs12 * N
    dY = -rr * X - rs22 * N
    dN = rs12 * X + rs22 * Y
    return dpos, dX, dY, dN


def transport_v(state0, rho, drho, lam1, lam2, a, v0, v_out, h_max):
    """Transport frame states along v with classical RK4 plus modified
    Gram-Schmidt re-orthonormalization after every substep.

    state0 : (n, 12) rows [position, X, Y, N]; the per-row coefficients
    rho/drho/lam1/lam2 are constants of the transport.  v_out must be
    monotone away from v0 (either direction).  Returns (n, len(v_out), 12).
    """
    state0 = np.asarray(state0, dtype=float)
    n = state0.shape[0]
    v_out = np.asarray(v_out, dtype=float)
    out = np.empty((n, v_out.size, 12))

    pos = state0[:, 0:3].copy()
    X = state0[:, 3:6].copy()
    Y = state0[:, 6:9].copy()
    N = state0[:, 9:12].copy()
    rho = np.asarray(rho, dtype=float)
    drho = np.asarray(drho, dtype=float)
    lam1 = np.asarray(lam1, dtype=float)
    lam2 = np.asarray(lam2, dtype=float)

    v = v0
    for j, vt in enumerate(v_out):
        dv = vt - v
        nsub = max(1, int(np.ceil(abs(dv) / h_max)))
        h = dv / nsub
        for _ in range(nsub):
            k1 = _deriv(v, a, pos, X, Y, N, rho, drho, lam1, lam2)
            s2 = (pos + 0.5 * h * k1[0], X + 0.5 * h * k1[1],
                  Y + 0.5 * h * k1[2], N + 0.5 * h * k1[3])
            k2 = _deriv(v + 0.5 * h, a, *s2, rho, drho, lam1, lam2)
            s3 = (pos + 0.5 * h * k2[0], X + 0.5 * h * k2[1],
                  Y + 0.5 * h * k2[2], N + 0.5 * h * k2[3])
            k3 = _deriv(v + 0.5 * h, a, *s3, rho, drho, lam1, lam2)
            s4 = (pos + h * k3[0], X + h * k3[1], Y + h * k3[2], N + h * k3[3])
            k4 = _deriv(v + h, a, *s4, rho, drho, lam1, lam2)
            pos = pos + (h / 6.0) * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0])
            X = X + (h / 6.0) * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1])
            Y = Y + (h / 6.0) * (k1[2] + 2 * k2[2] + 2 * k3[2] + k4[2])
            N = N + (h / 6.0) * (k1[3] + 2 * k2[3] + 2 * k3[3] + k4[3])
            _renormalize(X, Y, N)
            v += h
        v = vt
        out[:, j, 0:3] = pos
        out[:, j, 3:6] = X
        out[:, j, 6:9] = Y
        out[:, j, 9:12] = N
    return out
