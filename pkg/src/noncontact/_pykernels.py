"""Pure numpy implementations of the inner-loop kernels.

Signatures mirror ``_ckernels``.  All array arguments are 1-D float64; the
frequency argument ``w`` is evaluated elementwise.
"""

import numpy as np

# below this value of x = beta*w/2 the series form of 1/sinh(x)**2 is used
SINH_SERIES_CUTOFF = 5e-5


def lorentz_rho(strength, omega_k, gamma_k, w):
    w = np.asarray(w, dtype=np.float64)
    wk2 = omega_k[:, None] ** 2
    terms = strength[:, None] * wk2 / (wk2 - 1j * gamma_k[:, None] * w[None, :] - w[None, :] ** 2)
    return terms.sum(axis=0) if len(strength) else np.zeros(w.shape, dtype=np.complex128)


def lorentz_surface(strength, omega_k, gamma_k, w):
    rho = lorentz_rho(strength, omega_k, gamma_k, w)
    return 3.0 * rho / (rho + 2.0)


def drude_eps(wp, gp, rem_a, rem_w0, rem_g0, has_remainder, w):
    w = np.asarray(w, dtype=np.float64)
    eps = 1.0 - wp**2 / (w * (w + 1j * gp))
    if has_remainder:
        drho = 1.0 - rem_a + rem_a * rem_w0**2 / (rem_w0**2 - 1j * rem_g0 * w - w**2)
        eps = eps + (1.0 + 2.0 * drho) / (1.0 - drho)
    return eps


def drude_surface(wp, gp, rem_a, rem_w0, rem_g0, has_remainder, w):
    eps = drude_eps(wp, gp, rem_a, rem_w0, rem_g0, has_remainder, w)
    # 1 - 2/(eps+1) keeps Im exact when |eps| is large
    return 1.0 - 2.0 / (eps + 1.0)


def oscillator_alpha(f, energy, width, w):
    w = np.asarray(w, dtype=np.float64)
    denom = energy[:, None] ** 2 - 1j * width[:, None] * w[None, :] - w[None, :] ** 2
    return (f[:, None] / denom).sum(axis=0)


def static_alpha(f, energy, w):
    w = np.asarray(w, dtype=np.float64)
    return (f[:, None] / (energy[:, None] ** 2 - w[None, :] ** 2)).sum(axis=0)


def inv_sinh2_half(beta, w):
    x = 0.5 * beta * np.asarray(w, dtype=np.float64)
    out = np.empty_like(x)
    small = np.abs(x) < SINH_SERIES_CUTOFF
    xs = x[small]
    with np.errstate(divide="ignore"):
        out[small] = 1.0 / (xs * xs * (1.0 + xs * xs / 6.0) ** 2)
    xl = x[~small]
    with np.errstate(over="ignore"):
        out[~small] = 1.0 / np.sinh(xl) ** 2
    return out
