# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: closed-form grid evaluation and the RK4 frame
transport.  Stepping rules match _reference.py exactly so both backends
produce the same output."""
import numpy as np
cimport numpy as cnp
from libc.math cimport ceil, cos, exp, fabs, sin, sqrt

cnp.import_array()

RESONANCE_RTOL = 1e-9


cdef inline bint _resonant(double a, double B) nogil:
    cdef double m = B if B > 2.0 * a else 2.0 * a
    return fabs(B - 2.0 * a) < 1e-9 * m


def minimal_grid(double a, double A, double B,
                 double[::1] u, double[::1] v):
    cdef Py_ssize_t nu = u.shape[0], nv = v.shape[0]
    out_arr = np.empty((nu, nv, 3))
    cdef double[:, :, ::1] out = out_arr
    cdef Py_ssize_t i, j
    cdef double p, em, ep, wm, wp, q, e4, e2, ui, vj
    cdef bint res = _resonant(a, B)
    with nogil:
        for i in range(nu):
            ui = u[i]
            if res:
                q = 1.0 / (4.0 * a * a)
                e4 = exp(4.0 * a * ui)
                e2 = exp(2.0 * a * ui)
                for j in range(nv):
                    vj = v[j]
                    out[i, j, 0] = q * (a * ui / A - 0.25 * A * e4 * cos(4.0 * a * vj))
                    out[i, j, 1] = q * (a * vj / A + 0.25 * A * e4 * sin(4.0 * a * vj))
                    out[i, j, 2] = -q * e2 * cos(2.0 * a * vj)
            else:
                p = exp(2.0 * a * ui) / (2.0 * B)
                em = exp(-B * ui) / (A * (2.0 * a - B))
                ep = A * exp(B * ui) / (2.0 * a + B)
                for j in range(nv):
                    vj = v[j]
                    wm = (2.0 * a - B) * vj
                    wp = (2.0 * a + B) * vj
                    out[i, j, 0] = p * (em * cos(wm) - ep * cos(wp))
                    out[i, j, 1] = p * (em * sin(wm) + ep * sin(wp))
                    out[i, j, 2] = -p * cos(2.0 * a * vj) / a
    return out_arr


def cylinder_grid(double H, double a, double b,
                  double[::1] u, double[::1] v):
    cdef Py_ssize_t nu = u.shape[0], nv = v.shape[0]
    out_arr = np.empty((nu, nv, 3))
    cdef double[:, :, ::1] out = out_arr
    cdef Py_ssize_t i, j
    cdef double r, w, t
    with nogil:
        for i in range(nu):
            r = sqrt(2.0 * b * H) * exp(a * u[i]) / a
            for j in range(nv):
                w = r * cos(a * v[j])
                t = r * sin(a * v[j])
                out[i, j, 0] = cos(w) / H
                out[i, j, 1] = sin(w) / H
                out[i, j, 2] = t / H
    return out_arr


cdef inline void _deriv(double v, double a, double rho, double drho,
                        double lam1, double lam2, double* y,
                        double* dy) nogil:
    cdef double al = a * v
    cdef double sa = sin(al), ca = cos(al)
    cdef double s12 = (lam2 - lam1) * sa * ca
    cdef double s22 = lam1 * sa * sa + lam2 * ca * ca
    cdef double rr = drho / rho
    cdef double rs12 = rho * s12
    cdef double rs22 = rho * s22
    cdef int k
    for k in range(3):
        dy[k] = rho * y[6 + k]                                   # position
        dy[3 + k] = rr * y[6 + k] - rs12 * y[9 + k]              # X
        dy[6 + k] = -rr * y[3 + k] - rs22 * y[9 + k]             # Y
        dy[9 + k] = rs12 * y[3 + k] + rs22 * y[6 + k]            # N


cdef inline void _renorm(double* y) nogil:
    # modified Gram-Schmidt on (X, Y, N), matching _reference._renormalize
    cdef double nx = 0.0, dyx = 0.0, ny = 0.0, dnx = 0.0, dny = 0.0, nn = 0.0
    cdef int k
    for k in range(3):
        nx += y[3 + k] * y[3 + k]
    nx = sqrt(nx)
    for k in range(3):
        y[3 + k] /= nx
    for k in range(3):
        dyx += y[6 + k] * y[3 + k]
    for k in range(3):
        y[6 + k] -= dyx * y[3 + k]
    for k in range(3):
        ny += y[6 + k] * y[6 + k]
    ny = sqrt(ny)
    for k in range(3):
        y[6 + k] /= ny
    for k in range(3):
        dnx += y[9 + k] * y[3 + k]
    for k in range(3):
        y[9 + k] -= dnx * y[3 + k]
    for k in range(3):
        dny += y[9 + k] * y[6 + k]
    for k in range(3):
        y[9 + k] -= dny * y[6 + k]
    for k in range(3):
        nn += y[9 + k] * y[9 + k]
    nn = sqrt(nn)
    for k in range(3):
        y[9 + k] /= nn


def transport_v(double[:, ::1] state0, double[::1] rho, double[::1] drho,
                double[::1] lam1, double[::1] lam2, double a, double v0,
                double[::1] v_out, double h_max):
    cdef Py_ssize_t n = state0.shape[0], m = v_out.shape[0]
    out_arr = np.empty((n, m, 12))
    cdef double[:, :, ::1] out = out_arr
    cdef Py_ssize_t i, j
    cdef long nsub, s
    cdef int k
    cdef double v, vt, dv, h, r, dr, l1, l2
    cdef double y[12]
    cdef double k1[12]
    cdef double k2[12]
    cdef double k3[12]
    cdef double k4[12]
    cdef double tmp[12]
    with nogil:
        for i in range(n):
            for k in range(12):
                y[k] = state0[i, k]
            r = rho[i]; dr = drho[i]; l1 = lam1[i]; l2 = lam2[i]
            v = v0
            for j in range(m):
                vt = v_out[j]
                dv = vt - v
                nsub = <long>ceil(fabs(dv) / h_max)
                if nsub < 1:
                    nsub = 1
                h = dv / nsub
                for s in range(nsub):
                    _deriv(v, a, r, dr, l1, l2, y, k1)
                    for k in range(12):
                        tmp[k] = y[k] + 0.5 * h * k1[k]
                    _deriv(v + 0.5 * h, a, r, dr, l1, l2, tmp, k2)
                    for k in range(12):
                        tmp[k] = y[k] + 0.5 * h * k2[k]
                    _deriv(v + 0.5 * h, a, r, dr, l1, l2, tmp, k3)
                    for k in range(12):
                        tmp[k] = y[k] + h * k3[k]
                    _deriv(v + h, a, r, dr, l1, l2, tmp, k4)
                    for k in range(12):
                        y[k] = y[k] + (h / 6.0) * (k1[k] + 2.0 * k2[k]
                                                   + 2.0 * k3[k] + k4[k])
                    _renorm(y)
                    v += h
                v = vt
                for k in range(12):
                    out[i, j, k] = y[k]
    return out_arr
