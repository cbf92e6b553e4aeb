"""Zero-temperature (quantum) friction on an atom moving parallel to a conductor.

For small velocities the atom formula obtained from the plate-plate result by
dilute-gas matching reduces to a closed form with a v^3 / Z^7 law:

    F_x = -(45 / (64 pi^2)) (Gamma_1 / E_10^2) (v^3 / Z^7) (alpha_0 / sigma(0))

The integral forms are evaluated by nested adaptive quadrature so the closed
form can be checked against them.
"""

from dataclasses import dataclass
import math

import numpy as np

from . import atoms as _atoms
from .errors import RegimeError
from .materials import DrudeMaterial, LorentzFitMaterial, im_surface_response
from .quadrature import QuadratureResult, integrate
from .units import EPS0_AU

#: v_x / (Z E_10) must stay below this
VELOCITY_RATIO = 0.01
#: outer wave-vector cutoff: exp(-2 k Z) below this is dropped
EXP_CUTOFF = 1e-16


@dataclass(frozen=True)
class ZeroTempInputs:
    gamma1: float
    e10: float
    alpha0: float
    sigma0: float
    v_x: float
    z: float

    def __post_init__(self):
        for name in ("gamma1", "e10", "alpha0", "sigma0", "v_x", "z"):
            value = getattr(self, name)
            if not value > 0:
                raise RegimeError(f"{name} must be positive, got {value!r}")
        if self.v_x >= VELOCITY_RATIO * self.z * self.e10:
            raise RegimeError(
                f"velocity {self.v_x:g} not small against Z*E10 = {self.z * self.e10:g}"
            )


def zero_temp_inputs(atom, material, v_x, z):
    """Closed-form inputs sharing their physics with the integral evaluation.

    E_10 and Gamma_1 come from the lowest oscillator; alpha_0 is defined through
    the low-frequency Im alpha slope, so Gamma_1 w alpha_0 / E_10^2 reproduces
    it exactly even with several broadened lines.  sigma(0) = eps0 w_p^2 / gamma_p.
    """
    first = min(atom.oscillators, key=lambda o: o.energy)
    if first.width <= 0:
        raise RegimeError(f"{atom.name}: lowest oscillator has zero width")
    alpha0 = first.energy**2 / first.width * _atoms.lowfreq_im_alpha_slope(atom)
    return ZeroTempInputs(first.width, first.energy, alpha0, material.dc_conductivity(), v_x, z)


def zero_temp_force_closed(inp):
    """Drag force in atomic units (negative for positive v_x)."""
    return (
        -(45.0 / (2**6 * math.pi**2))
        * (inp.gamma1 / inp.e10**2)
        * (inp.v_x**3 / inp.z**7)
        * (inp.alpha0 / inp.sigma0)
    )


def _k_cutoff(z):
    return -math.log(EXP_CUTOFF) / (2.0 * z)


def _combine(outer, inner_results):
    ok = outer.converged and all(r.converged for r in inner_results)
    evals = outer.evaluations + sum(r.evaluations for r in inner_results)
    return ok, evals


def _nested_force(z, v_x, omega_integral, k_weight, rel_tol, collect):
    """int_0^kmax dk_par k_par * [k_perp integral](k_par) * [omega integral](k_par)."""
    kmax = _k_cutoff(z)

    def outer(kpar):
        out = np.empty_like(kpar)
        for i, kp in enumerate(kpar):
            top = math.sqrt(max(kmax * kmax - kp * kp, 0.0))
            kperp = integrate(lambda q, kp=kp: k_weight(kp, q), 0.0, top, rel_tol=rel_tol)
            omg = omega_integral(kp)
            collect.extend((kperp, omg))
            out[i] = kp * 2.0 * kperp.value * omg.value
        return out

    return integrate(outer, 0.0, kmax, rel_tol=rel_tol)


def zero_temp_force_integral(atom, material, v_x, z, rel_tol=1e-6):
    """Matched atom-surface friction force by nested quadrature (atomic units).

    Im alpha is the width-induced low-frequency form; the surface response is
    the full Drude model.  The k_perp integral over the real line is folded to
    twice the half line.  Returns a QuadratureResult.
    """
    if not isinstance(material, DrudeMaterial):
        raise TypeError("zero-temperature friction needs a Drude material")
    if v_x == 0:
        return QuadratureResult(0.0, 0.0, 0, True)
    if not v_x < VELOCITY_RATIO * z * atom.first_resonance:
        raise RegimeError("velocity outside the small-velocity regime v_x << Z E_10")
    slope = _atoms.lowfreq_im_alpha_slope(atom)

    def omega_integral(kp):
        top = kp * v_x
        if top == 0:
            return QuadratureResult(0.0, 0.0, 0, True)
        return integrate(
            lambda w: slope * w * im_surface_response(material, top - w),
            0.0, top, rel_tol=rel_tol,
        )

    def k_weight(kp, q):
        k = np.sqrt(kp * kp + q * q)
        return k * np.exp(-2.0 * k * z)

    inner = []
    outer = _nested_force(z, v_x, omega_integral, k_weight, rel_tol, inner)
    prefactor = -1.0 / (math.pi**3 * EPS0_AU)
    ok, evals = _combine(outer, inner)
    return QuadratureResult(prefactor * outer.value, abs(prefactor) * outer.error_estimate, evals, ok)


def _regime_frequency(material):
    if isinstance(material, DrudeMaterial):
        return material.omega_p
    return float(min(t.omega for t in material.terms))


def plate_plate_force(material1, material2, v_x, z, area=1.0, rel_tol=1e-6, temperature=None):
    """Zero-temperature friction between two half-spaces, atomic units.

    Plate geometry: k_perp runs over [0, inf) and
    the overall sign is positive.
    """
    if v_x == 0:
        return QuadratureResult(0.0, 0.0, 0, True)
    for m in (material1, material2):
        if isinstance(m, LorentzFitMaterial) and not m.terms:
            return QuadratureResult(0.0, 0.0, 0, True)
    limit = VELOCITY_RATIO * z * min(_regime_frequency(material1), _regime_frequency(material2))
    if not v_x < limit:
        raise RegimeError("velocity outside the small-velocity regime")

    def omega_integral(kp):
        top = kp * v_x
        if top == 0:
            return QuadratureResult(0.0, 0.0, 0, True)
        return integrate(
            lambda w: im_surface_response(material1, w, temperature)
            * im_surface_response(material2, top - w, temperature),
            0.0, top, rel_tol=rel_tol,
        )

    def k_weight(kp, q):
        return np.exp(-2.0 * np.sqrt(kp * kp + q * q) * z)

    inner = []
    # _nested_force folds k_perp with a factor 2; the plate formula has none
    outer = _nested_force(z, v_x, omega_integral, k_weight, rel_tol, inner)
    prefactor = area / math.pi**3 / 2.0
    ok, evals = _combine(outer, inner)
    return QuadratureResult(prefactor * outer.value, abs(prefactor) * outer.error_estimate, evals, ok)
