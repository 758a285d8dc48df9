# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops; see ``_pykernels`` for the reference semantics."""
import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, exp, log, cos, sin

cnp.import_array()


cdef inline double complex _poly2(const double complex[:, ::1] F, double complex e1,
                                  double complex e2) noexcept nogil:
    cdef Py_ssize_t P = F.shape[0], Q = F.shape[1], p, q
    cdef double complex out = 0, inner
    for p in range(P - 1, -1, -1):
        inner = 0
        for q in range(Q - 1, -1, -1):
            inner = inner * e2 + F[p, q]
        out = out * e1 + inner
    return out


def poly2_eval(F, e1, e2):
    cdef const double complex[:, ::1] Fv = np.ascontiguousarray(F, dtype=np.complex128)
    e1a = np.ascontiguousarray(e1, dtype=np.complex128).ravel()
    e2a = np.ascontiguousarray(np.broadcast_to(e2, np.shape(e1)), dtype=np.complex128).ravel()
    cdef const double complex[::1] v1 = e1a
    cdef const double complex[::1] v2 = e2a
    out = np.empty(e1a.shape[0], dtype=np.complex128)
    cdef double complex[::1] ov = out
    cdef Py_ssize_t i
    with nogil:
        for i in range(v1.shape[0]):
            ov[i] = _poly2(Fv, v1[i], v2[i])
    return out.reshape(np.shape(e1))


def mc_accumulate(W, a, double complex delta_a, b, tau, int r, double complex p, F):
    cdef const double[:, ::1] Wv = np.ascontiguousarray(W, dtype=np.float64)
    cdef const double complex[::1] av = np.ascontiguousarray(a, dtype=np.complex128)
    cdef const double complex[::1] bv = np.ascontiguousarray(b, dtype=np.complex128)
    cdef const double[::1] tv = np.ascontiguousarray(tau, dtype=np.float64)
    cdef const double complex[:, ::1] Fv = np.ascontiguousarray(F, dtype=np.complex128)
    cdef Py_ssize_t N = Wv.shape[0], n = Wv.shape[1] // 2, i, j
    cdef double s2, xr, xi, trr, tri, wwr, wwi, dr, di, dw2, q, t1sq, h, lh, mag, ph
    cdef double sum_re = 0, sum_im = 0, sum_sq = 0
    cdef long accepted = 0
    cdef double complex e1, e2, ex, f, hp
    with nogil:
        for i in range(N):
            s2 = 0
            trr = 0
            tri = 0
            wwr = 0
            wwi = 0
            for j in range(n):
                xr = Wv[i, j]
                xi = Wv[i, n + j]
                s2 += xr * xr + xi * xi
                if r == 2:
                    trr += tv[j] * xr
                    tri += tv[j] * xi
                    wwr += xr * xr - xi * xi
                    wwi += 2 * xr * xi
            if r == 1:
                dr = 0
                di = 0
                dw2 = 0
                t1sq = s2
                h = 1.0 - s2
            else:
                dr = 0.5 * (trr * trr - tri * tri - wwr)
                di = 0.5 * (2 * trr * tri - wwi)
                dw2 = dr * dr + di * di
                q = 0.5 * s2
                t1sq = q * q - dw2
                t1sq = q + sqrt(t1sq if t1sq > 0 else 0.0)
                h = 1.0 - s2 + dw2
            if t1sq >= 1.0:
                continue
            accepted += 1
            e1 = 0
            ex = 0
            for j in range(n):
                xr = Wv[i, j]
                xi = Wv[i, n + j]
                e1 = e1 + av[j] * (xr - 1j * xi)
                ex = ex + bv[j] * xr
            if r == 2:
                e2 = delta_a * (dr - 1j * di)
            else:
                e2 = 0
            lh = log(h if h > 1e-300 else 1e-300)
            mag = exp(p.real * lh + ex.real)
            ph = p.imag * lh + ex.imag
            f = _poly2(Fv, e1, e2) * mag * (cos(ph) + 1j * sin(ph))
            sum_re += f.real
            sum_im += f.imag
            sum_sq += f.real * f.real + f.imag * f.imag
    return sum_re, sum_im, sum_sq, accepted
