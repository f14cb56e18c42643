"""Adaptive Dormand-Prince 5(4) integrator with per-step hooks.

scipy's solve_ivp covers the plain use case, but the frame integrations here
need two things it does not expose: a re-orthonormalization hook applied after
every accepted step, and rejected-step counts for the solver statistics.  The
integrator also lands exactly on requested output abscissae so downstream code
never interpolates frame states.
"""
import numpy as np

# Dormand-Prince tableau (FSAL).
_C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
_A = [
    np.array([]),
    np.array([1 / 5]),
    np.array([3 / 40, 9 / 40]),
    np.array([44 / 45, -56 / 15, 32 / 9]),
    np.array([19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729]),
    np.array([9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656]),
    np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84]),
]
_B5 = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0])
_B4 = np.array([5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200,
                187 / 2100, 1 / 40])
_E = _B5 - _B4

_SAFETY = 0.9
_MIN_FACTOR = 0.2
_MAX_FACTOR = 5.0


class OdeResult:
    def __init__(self, t, y, f, truncated, stats):
        self.t = np.asarray(t)
        self.y = np.asarray(y)
        self.f = np.asarray(f)
        self.truncated = truncated
        self.stats = stats


def _initial_step(fun, t0, y0, f0, direction, rtol, atol, max_step):
    scale = atol + np.abs(y0) * rtol
    d0 = np.sqrt(np.mean((y0 / scale) ** 2))
    d1 = np.sqrt(np.mean((f0 / scale) ** 2))
    h0 = 0.01 * d0 / d1 if (d0 > 1e-5 and d1 > 1e-5) else 1e-6
    y1 = y0 + h0 * direction * f0
    f1 = fun(t0 + h0 * direction, y1)
    d2 = np.sqrt(np.mean(((f1 - f0) / scale) ** 2)) / h0
    if d1 <= 1e-15 and d2 <= 1e-15:
        h1 = max(1e-6, h0 * 1e-3)
    else:
        h1 = (0.01 / max(d1, d2)) ** 0.2
    return min(100 * h0, h1, max_step)


def solve_dp45(fun, t_span, y0, rtol=1e-10, atol=1e-10, max_step=np.inf,
               t_eval=None, postprocess=None, stop=None, max_steps=1_000_000):
    """Integrate y' = fun(t, y) from t_span[0] to t_span[1].

    t_eval : abscissae that must appear exactly among the accepted nodes
        (monotone in the direction of integration).
    postprocess : called as postprocess(t, y) -> y after every accepted step.
    stop : predicate stop(t, y) -> bool; a True result truncates the
        integration at the last accepted node and sets ``truncated``.

    Returns an OdeResult holding every accepted node, the state there, and the
    state derivative (for Hermite reconstruction).
    """
    t0, t1 = float(t_span[0]), float(t_span[1])
    direction = 1.0 if t1 >= t0 else -1.0
    y = np.asarray(y0, dtype=float).copy()
    t = t0
    f = np.asarray(fun(t, y), dtype=float)
    nfev = 1

    targets = []
    if t_eval is not None:
        targets = [float(v) for v in t_eval
                   if direction * (v - t0) > 1e-14 and direction * (t1 - v) > -1e-14]
        # keep the NEAREST pending target at the list tail (popped first)
        targets.sort(reverse=(direction > 0))

    ts, ys, fs = [t], [y.copy()], [f.copy()]
    naccept = nreject = 0
    truncated = False

    h = _initial_step(fun, t0, y, f, direction, rtol, atol, max_step)
    nfev += 1
    span = abs(t1 - t0)
    if span == 0.0:
        return OdeResult(ts, ys, fs, False,
                         {"naccept": 0, "nreject": 0, "nfev": nfev})

    k = np.empty((7,) + y.shape)
    while direction * (t1 - t) > 1e-14 * max(1.0, abs(t)):
        h = min(h, max_step, span)
        # land exactly on the next forced output / the endpoint
        t_next_forced = targets[-1] if targets else t1
        remaining = direction * (t_next_forced - t)
        if h >= remaining:
            h = remaining
        hd = h * direction

        k[0] = f
        for i in range(1, 7):
            dy = hd * (k[:i].T @ _A[i])
            k[i] = fun(t + _C[i] * hd, y + dy)
        nfev += 6
        y_new = y + hd * (k.T @ _B5)
        err_vec = hd * (k.T @ _E)
        scale = atol + np.maximum(np.abs(y), np.abs(y_new)) * rtol
        err = np.sqrt(np.mean((err_vec / scale) ** 2))

        if err <= 1.0:
            t = t + hd
            y = y_new
            if postprocess is not None:
                y = postprocess(t, y)
                f = np.asarray(fun(t, y), dtype=float)  # hook may move y off k[6]
                nfev += 1
            else:
                f = k[6].copy()
            naccept += 1
            if targets and abs(t - targets[-1]) <= 1e-12 * max(1.0, abs(t)):
                targets.pop()
            ts.append(t)
            ys.append(y.copy())
            fs.append(f.copy())
            if stop is not None and stop(t, y):
                truncated = True
                break
            factor = _MAX_FACTOR if err == 0.0 else min(
                _MAX_FACTOR, _SAFETY * err ** -0.2)
            h = abs(h) * max(factor, 0.1)
        else:
            nreject += 1
            h = abs(h) * max(_MIN_FACTOR, _SAFETY * err ** -0.2)
        if naccept + nreject >= max_steps:
            raise RuntimeError("dp45: step budget exhausted")

    stats = {"naccept": naccept, "nreject": nreject, "nfev": nfev}
    return OdeResult(ts, ys, fs, truncated, stats)


class HermiteInterpolant:
    """Piecewise two-point Hermite interpolation from node values plus the
    first m derivatives (m = 2 gives quintics, m = 3 septics).

    Built once from arrays; evaluates the polynomial or any derivative of it.
    The polynomial reproduces the supplied node data exactly, so consistency
    with the generating ODE solution holds at the nodes by construction.
    """

    def __init__(self, t, values, derivatives):
        t = np.asarray(t, dtype=float)
        order = np.argsort(t)
        self.t = t[order]
        data = [np.asarray(values, dtype=float)[order]]
        data += [np.asarray(d, dtype=float)[order] for d in derivatives]
        m = len(data) - 1
        deg = 2 * m + 1
        n = len(self.t) - 1
        if n < 1:
            raise ValueError("need at least two nodes")
        self.h = np.diff(self.t)

        # p(t) = sum c_k t^k on [0,1]; low coefficients come from the left
        # endpoint, the rest solve a constant linear system from the right one.
        rows = []
        for d in range(m + 1):
            row = np.zeros(deg + 1)
            for kk in range(m + 1, deg + 1):
                fall = 1.0
                for j in range(d):
                    fall *= (kk - j)
                row[kk] = fall
            rows.append(row)
        M = np.array([r[m + 1:] for r in rows])
        self._Minv = np.linalg.inv(M)

        c = np.zeros((n, deg + 1))
        fact = 1.0
        for d in range(m + 1):
            if d > 0:
                fact *= d
            c[:, d] = data[d][:-1] * self.h ** d / fact
        rhs = np.empty((n, m + 1))
        for d in range(m + 1):
            scaled = data[d][1:] * self.h ** d
            # subtract the contribution of the known low-order coefficients
            acc = np.zeros(n)
            for kk in range(d, m + 1):
                fall = 1.0
                for j in range(d):
                    fall *= (kk - j)
                acc += fall * c[:, kk]
            rhs[:, d] = scaled - acc
        c[:, m + 1:] = rhs @ self._Minv.T
        self.coeff = c
        self.degree = deg

    def __call__(self, u, nu=0):
        u = np.asarray(u, dtype=float)
        scalar = u.ndim == 0
        uu = np.atleast_1d(u)
        idx = np.clip(np.searchsorted(self.t, uu, side="right") - 1,
                      0, len(self.h) - 1)
        hloc = self.h[idx]
        s = (uu - self.t[idx]) / hloc
        c = self.coeff[idx]
        if nu > 0:
            c = c[:, nu:].copy()
            for d in range(1, nu + 1):
                c *= np.arange(d, c.shape[1] + d)[None, :]
        out = np.zeros_like(s)
        for kk in range(c.shape[1] - 1, -1, -1):
            out = out * s + c[:, kk]
        out /= hloc ** nu
        return float(out[0]) if scalar else out
