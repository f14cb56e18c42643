import numpy as np
import pytest

from isorev.geometry import SurfaceMap


def classical_twisted_point(u, v):
    """The order-1 twisted minimal surface in its conformal polar form
    f(u,v) = (e^u/6)(3cos v - e^{2u}cos 3v, -3sin v - e^{2u}sin 3v,
    3e^u cos 2v); used as an oracle fixture independent of the package's
    closed forms (the package normalization differs by the rigid motion
    (x, y, z) -> (x, -y, -z))."""
    return (np.exp(u) / 6.0) * np.array([
        3 * np.cos(v) - np.exp(2 * u) * np.cos(3 * v),
        -3 * np.sin(v) - np.exp(2 * u) * np.sin(3 * v),
        3 * np.exp(u) * np.cos(2 * v)])


@pytest.fixture(scope="session")
def classical_twisted_map():
    def grid_fn(u, v):
        u = np.asarray(u, dtype=float)[:, None]
        v = np.asarray(v, dtype=float)[None, :]
        eu = np.exp(u)
        e2u = np.exp(2 * u)
        out = np.empty((u.shape[0], v.shape[1], 3))
        out[..., 0] = (eu / 6) * (3 * np.cos(v) - e2u * np.cos(3 * v))
        out[..., 1] = (eu / 6) * (-3 * np.sin(v) - e2u * np.sin(3 * v))
        out[..., 2] = (eu / 6) * (3 * eu * np.cos(2 * v))
        return out
    return SurfaceMap(grid_fn, ((-np.inf, np.inf), (-np.inf, np.inf)),
                      name="classical twisted order 1")


@pytest.fixture(scope="session")
def plane_map():
    def grid_fn(u, v):
        u = np.asarray(u, dtype=float)[:, None]
        v = np.asarray(v, dtype=float)[None, :]
        out = np.zeros((u.shape[0], v.shape[1], 3))
        out[..., 0] = u + 0 * v
        out[..., 1] = 0 * u + v
        return out
    return SurfaceMap(grid_fn, ((-10, 10), (-10, 10)), name="plane")


@pytest.fixture(scope="session")
def sphere_map():
    """Unit sphere patch with outward f_u x f_v normal."""
    def grid_fn(u, v):
        u = np.asarray(u, dtype=float)[:, None]
        v = np.asarray(v, dtype=float)[None, :]
        out = np.empty((u.shape[0], v.shape[1], 3))
        out[..., 0] = np.cos(v) * np.cos(u)
        out[..., 1] = np.cos(v) * np.sin(u)
        out[..., 2] = np.sin(v) + 0 * u
        return out
    return SurfaceMap(grid_fn, ((-np.pi, np.pi), (-1.2, 1.2)), name="sphere")


@pytest.fixture(scope="session")
def unit_cylinder_map():
    """Plain surface of revolution (cos v, sin v, u): twist 0 reference."""
    def grid_fn(u, v):
        u = np.asarray(u, dtype=float)[:, None]
        v = np.asarray(v, dtype=float)[None, :]
        out = np.empty((u.shape[0], v.shape[1], 3))
        out[..., 0] = np.cos(v) + 0 * u
        out[..., 1] = np.sin(v) + 0 * u
        out[..., 2] = u + 0 * v
        return out
    return SurfaceMap(grid_fn, ((-10, 10), (-np.inf, np.inf)),
                      name="unit cylinder")
