# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner-loop kernels; same signatures as ``_pykernels``."""

import numpy as np
cimport numpy as cnp
from libc.math cimport sinh, fabs

cnp.import_array()

cdef double SINH_SERIES_CUTOFF = 5e-5


def lorentz_rho(const double[::1] strength, const double[::1] omega_k,
                const double[::1] gamma_k, w):
    cdef const double[::1] wv = np.ascontiguousarray(w, dtype=np.float64).ravel()
    cdef Py_ssize_t n = wv.shape[0], m = strength.shape[0], i, k
    out = np.empty(n, dtype=np.complex128)
    cdef double complex[::1] ov = out
    cdef double complex acc
    cdef double x, wk2
    for i in range(n):
        x = wv[i]
        acc = 0
        for k in range(m):
            wk2 = omega_k[k] * omega_k[k]
            acc = acc + strength[k] * wk2 / (wk2 - x * x - 1j * gamma_k[k] * x)
        ov[i] = acc
    return out


def lorentz_surface(const double[::1] strength, const double[::1] omega_k,
                    const double[::1] gamma_k, w):
    cdef const double[::1] wv = np.ascontiguousarray(w, dtype=np.float64).ravel()
    cdef Py_ssize_t n = wv.shape[0], m = strength.shape[0], i, k
    out = np.empty(n, dtype=np.complex128)
    cdef double complex[::1] ov = out
    cdef double complex acc
    cdef double x, wk2
    for i in range(n):
        x = wv[i]
        acc = 0
        for k in range(m):
            wk2 = omega_k[k] * omega_k[k]
            acc = acc + strength[k] * wk2 / (wk2 - x * x - 1j * gamma_k[k] * x)
        ov[i] = 3.0 * acc / (acc + 2.0)
    return out


cdef inline double complex _drude_eps(double wp, double gp, double a, double w0,
                                      double g0, bint rem, double x):
    cdef double complex eps = 1.0 - wp * wp / (x * (x + 1j * gp))
    cdef double complex drho
    if rem:
        drho = 1.0 - a + a * w0 * w0 / (w0 * w0 - 1j * g0 * x - x * x)
        eps = eps + (1.0 + 2.0 * drho) / (1.0 - drho)
    return eps


def drude_eps(double wp, double gp, double rem_a, double rem_w0, double rem_g0,
              bint has_remainder, w):
    cdef const double[::1] wv = np.ascontiguousarray(w, dtype=np.float64).ravel()
    cdef Py_ssize_t n = wv.shape[0], i
    out = np.empty(n, dtype=np.complex128)
    cdef double complex[::1] ov = out
    for i in range(n):
        ov[i] = _drude_eps(wp, gp, rem_a, rem_w0, rem_g0, has_remainder, wv[i])
    return out


def drude_surface(double wp, double gp, double rem_a, double rem_w0, double rem_g0,
                  bint has_remainder, w):
    cdef const double[::1] wv = np.ascontiguousarray(w, dtype=np.float64).ravel()
    cdef Py_ssize_t n = wv.shape[0], i
    out = np.empty(n, dtype=np.complex128)
    cdef double complex[::1] ov = out
    cdef double complex eps
    for i in range(n):
        eps = _drude_eps(wp, gp, rem_a, rem_w0, rem_g0, has_remainder, wv[i])
        ov[i] = 1.0 - 2.0 / (eps + 1.0)
    return out


def oscillator_alpha(const double[::1] f, const double[::1] energy,
                     const double[::1] width, w):
    cdef const double[::1] wv = np.ascontiguousarray(w, dtype=np.float64).ravel()
    cdef Py_ssize_t n = wv.shape[0], m = f.shape[0], i, k
    out = np.empty(n, dtype=np.complex128)
    cdef double complex[::1] ov = out
    cdef double complex acc
    cdef double x
    for i in range(n):
        x = wv[i]
        acc = 0
        for k in range(m):
            acc = acc + f[k] / (energy[k] * energy[k] - x * x - 1j * width[k] * x)
        ov[i] = acc
    return out


def static_alpha(const double[::1] f, const double[::1] energy, w):
    cdef const double[::1] wv = np.ascontiguousarray(w, dtype=np.float64).ravel()
    cdef Py_ssize_t n = wv.shape[0], m = f.shape[0], i, k
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] ov = out
    cdef double acc, x
    for i in range(n):
        x = wv[i]
        acc = 0
        for k in range(m):
            acc += f[k] / (energy[k] * energy[k] - x * x)
        ov[i] = acc
    return out


def inv_sinh2_half(double beta, w):
    cdef const double[::1] wv = np.ascontiguousarray(w, dtype=np.float64).ravel()
    cdef Py_ssize_t n = wv.shape[0], i
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] ov = out
    cdef double x, s
    for i in range(n):
        x = 0.5 * beta * wv[i]
        if fabs(x) < SINH_SERIES_CUTOFF:
            s = x * (1.0 + x * x / 6.0)
        else:
            s = sinh(x)
        ov[i] = 1.0 / (s * s)
    return out
