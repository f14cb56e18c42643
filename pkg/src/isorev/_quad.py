"""Composite Gauss-Legendre quadrature on straight segments.

Works for real or complex integrands; nodes/weights come from
numpy.polynomial.legendre.leggauss.
"""
import numpy as np

DEFAULT_ORDER = 8


def _panel_nodes(n_panels, order):
    x, w = np.polynomial.legendre.leggauss(order)
    edges = np.linspace(0.0, 1.0, n_panels + 1)
    mid = 0.5 * (edges[:-1] + edges[1:])
    half = 0.5 * (edges[1:] - edges[:-1])
    t = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    wt = (half[:, None] * w[None, :]).ravel()
    return t, wt


def segment_integral(f, z0, z1, n_panels, order=DEFAULT_ORDER):
    """Integrate a vectorized integrand along the straight segment z0 -> z1.

    ``f`` receives an array of points and must return an array whose leading
    axis matches; trailing axes are summed panel-wise (so vector-valued
    integrands work).
    """
    if n_panels < 1:
        raise ValueError("n_panels must be >= 1")
    t, wt = _panel_nodes(n_panels, order)
    dz = z1 - z0
    pts = z0 + t * dz
    vals = np.asarray(f(pts))
    wshape = (len(t),) + (1,) * (vals.ndim - 1)
    return dz * np.sum(vals * wt.reshape(wshape), axis=0)


def cumulative_integral(f, grid, order=DEFAULT_ORDER):
    """Prefix integrals of ``f`` over a 1-D grid: returns F with F[0] = 0 and
    F[k] = integral from grid[0] to grid[k], each cell integrated with one
    Gauss-Legendre panel."""
    grid = np.asarray(grid, dtype=float)
    x, w = np.polynomial.legendre.leggauss(order)
    mid = 0.5 * (grid[:-1] + grid[1:])
    half = 0.5 * np.diff(grid)
    pts = mid[:, None] + half[:, None] * x[None, :]
    vals = f(pts.ravel()).reshape(pts.shape)
    cell = half * (vals * w[None, :]).sum(axis=1)
    out = np.empty(len(grid))
    out[0] = 0.0
    np.cumsum(cell, out=out[1:])
    return out
