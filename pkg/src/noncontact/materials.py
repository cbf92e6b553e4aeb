"""Dielectric response of the substrate materials.

Two model families are supported.  Dielectrics (alpha-quartz, CaF2) are fitted
in the Clausius-Mossotti variable rho = (eps-1)/(eps+2) as a sum of damped
oscillators; gold uses a Drude term plus a remainder that is itself fitted in
the rho variable.  All frequencies are in atomic units (E_h / hbar).
"""

from dataclasses import dataclass
import math
from typing import Optional, Union

import numpy as np
from scipy.optimize import brentq

from ._backend import kernels
from .errors import DomainError, SingularityError, TemperatureRangeError

#: Temperatures over which the built-in material models are considered valid, K.
SUPPORTED_T_RANGE = (250.0, 350.0)


@dataclass(frozen=True)
class OscillatorTerm:
    strength: float
    omega: float
    gamma: float

    def __post_init__(self):
        for name in ("strength", "omega", "gamma"):
            value = getattr(self, name)
            if not (value > 0 and math.isfinite(value)):
                raise DomainError(f"oscillator {name} must be positive, got {value!r}")


@dataclass(frozen=True)
class WidthShift:
    """Linear temperature dependence gamma_k(T) = gamma_k + slope*(T - t_ref)."""

    term_index: int
    slope: float
    t_ref: float = 300.0


@dataclass(frozen=True)
class LorentzFitMaterial:
    name: str
    terms: tuple = ()
    width_shift: Optional[WidthShift] = None

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))
        total = sum(t.strength for t in self.terms)
        if total >= 1.0:
            raise DomainError(
                f"{self.name}: oscillator strengths sum to {total:.6g}; must be < 1"
            )
        ws = self.width_shift
        if ws is not None:
            if not 0 <= ws.term_index < len(self.terms):
                raise DomainError(
                    f"{self.name}: width_shift.term_index {ws.term_index} out of range"
                )
            base = self.terms[ws.term_index].gamma
            for t in SUPPORTED_T_RANGE:
                if base + ws.slope * (t - ws.t_ref) <= 0:
                    raise DomainError(
                        f"{self.name}: width_shift makes gamma non-positive at {t} K"
                    )
        self._arrays()  # cache

    @property
    def t_ref(self):
        return self.width_shift.t_ref if self.width_shift else 300.0

    def _arrays(self):
        cached = self.__dict__.get("_cache")
        if cached is None:
            cached = (
                np.array([t.strength for t in self.terms], dtype=np.float64),
                np.array([t.omega for t in self.terms], dtype=np.float64),
                np.array([t.gamma for t in self.terms], dtype=np.float64),
            )
            object.__setattr__(self, "_cache", cached)
        return cached

    def parameters(self, temperature=None):
        """(strength, omega, gamma) arrays with the width shift applied at ``temperature``."""
        strength, omega, gamma = self._arrays()
        ws = self.width_shift
        if ws is None:
            return strength, omega, gamma
        if temperature is None:
            temperature = ws.t_ref
        lo, hi = SUPPORTED_T_RANGE
        if not lo <= temperature <= hi:
            raise TemperatureRangeError(
                f"{self.name}: temperature {temperature} K outside supported range [{lo}, {hi}] K"
            )
        if temperature == ws.t_ref:
            return strength, omega, gamma
        gamma = gamma.copy()
        gamma[ws.term_index] += ws.slope * (temperature - ws.t_ref)
        return strength, omega, gamma

    def without_width_shift(self):
        return LorentzFitMaterial(self.name, self.terms, None)

    def characteristic_frequencies(self):
        """Bulk resonances and surface-mode frequencies (where rho = -2 undamped).

        Used to seed quadrature panels: the surface response peaks sharply at
        both kinds of points.
        """
        _, omega, _ = self._arrays()
        if not len(omega):
            return np.array([])
        strength = self._arrays()[0]
        res = np.unique(omega)

        def rho_real(w):
            return float(np.sum(strength * omega**2 / (omega**2 - w * w))) + 2.0

        modes = []
        uppers = list(res[1:]) + [res[-1] * 1e3]
        for lo, hi in zip(res, uppers):
            a = lo * (1 + 1e-12)
            b = hi * (1 - 1e-12)
            try:
                fa, fb = rho_real(a), rho_real(b)
            except ZeroDivisionError:
                continue
            if fa < 0 < fb or fb < 0 < fa:
                modes.append(brentq(rho_real, a, b, xtol=1e-14 * hi, rtol=1e-13))
        return np.sort(np.concatenate([res, modes]))


@dataclass(frozen=True)
class DrudeRemainder:
    a: float
    omega0: float
    gamma0: float

    def __post_init__(self):
        if not self.gamma0 > 0:
            raise DomainError(f"remainder gamma0 must be positive, got {self.gamma0!r}")
        if not self.omega0 > 0:
            raise DomainError(f"remainder omega0 must be positive, got {self.omega0!r}")


@dataclass(frozen=True)
class DrudeMaterial:
    name: str
    omega_p: float
    gamma_p: float
    remainder: Optional[DrudeRemainder] = None

    def __post_init__(self):
        if not self.omega_p > 0:
            raise DomainError(f"{self.name}: omega_p must be positive")
        if not self.gamma_p > 0:
            raise DomainError(f"{self.name}: gamma_p must be positive")

    def _args(self):
        r = self.remainder
        if r is None:
            return (self.omega_p, self.gamma_p, 0.0, 1.0, 1.0, False)
        return (self.omega_p, self.gamma_p, r.a, r.omega0, r.gamma0, True)

    def without_remainder(self):
        return DrudeMaterial(self.name, self.omega_p, self.gamma_p, None)

    def dc_conductivity(self):
        """sigma(0) = eps0 * omega_p**2 / gamma_p in atomic units."""
        return self.omega_p**2 / (4.0 * math.pi * self.gamma_p)

    def characteristic_frequencies(self):
        return np.array([self.gamma_p, self.omega_p / math.sqrt(2.0)])


MaterialModel = Union[LorentzFitMaterial, DrudeMaterial]

VACUUM = LorentzFitMaterial("vacuum", ())


def _as_omega(omega):
    w = np.asarray(omega, dtype=np.float64)
    return w, w.ndim == 0


def _check_lorentz_omega(w):
    if np.any(w < 0) or not np.all(np.isfinite(w)):
        raise DomainError("frequency must be finite and >= 0")


def _check_drude_omega(w):
    if np.any(w <= 0) or not np.all(np.isfinite(w)):
        raise DomainError("Drude permittivity has a pole at omega = 0; frequency must be > 0")


def _finish(values, scalar):
    return complex(values.reshape(-1)[0]) if scalar else values


def rho(material, omega, temperature=None):
    """Clausius-Mossotti function sum_k a_k w_k^2 / (w_k^2 - i g_k w - w^2)."""
    if not isinstance(material, LorentzFitMaterial):
        raise TypeError("rho is defined only for oscillator-fit materials")
    w, scalar = _as_omega(omega)
    _check_lorentz_omega(w)
    strength, om, gm = material.parameters(temperature)
    out = kernels.lorentz_rho(strength, om, gm, w.ravel()).reshape(w.shape)
    return _finish(out, scalar)


def permittivity(material, omega, temperature=None):
    """Complex relative permittivity eps(omega)."""
    w, scalar = _as_omega(omega)
    if isinstance(material, LorentzFitMaterial):
        r = np.asarray(rho(material, w, temperature))
        denom = 1.0 - r
        if np.any(denom == 0):
            raise SingularityError(f"{material.name}: rho = 1, permittivity diverges")
        out = (1.0 + 2.0 * r) / denom
    elif isinstance(material, DrudeMaterial):
        _check_drude_omega(w)
        out = kernels.drude_eps(*material._args(), w.ravel()).reshape(w.shape)
    else:
        raise TypeError(f"unsupported material model {type(material).__name__}")
    return _finish(np.asarray(out), scalar)


def surface_response(material, omega, temperature=None):
    """Image-charge factor (eps-1)/(eps+1).

    For oscillator fits this is evaluated as 3 rho/(rho+2), which stays finite
    where eps itself has a pole.
    """
    w, scalar = _as_omega(omega)
    if isinstance(material, LorentzFitMaterial):
        _check_lorentz_omega(w)
        strength, om, gm = material.parameters(temperature)
        r = kernels.lorentz_rho(strength, om, gm, w.ravel())
        if np.any(r + 2.0 == 0):
            raise SingularityError(f"{material.name}: rho = -2, surface response diverges")
        out = (3.0 * r / (r + 2.0)).reshape(w.shape)
    elif isinstance(material, DrudeMaterial):
        _check_drude_omega(w)
        args = material._args()
        eps = kernels.drude_eps(*args, w.ravel())
        if np.any(eps + 1.0 == 0):
            raise SingularityError(f"{material.name}: eps = -1, surface response diverges")
        out = kernels.drude_surface(*args, w.ravel()).reshape(w.shape)
    else:
        raise TypeError(f"unsupported material model {type(material).__name__}")
    return _finish(out, scalar)


def im_surface_response(material, omega, temperature=None):
    """Imaginary part of (eps-1)/(eps+1) on an array of positive frequencies.

    Thin fast path for quadrature integrands: no scalar handling.
    """
    w = np.asarray(omega, dtype=np.float64)
    if isinstance(material, LorentzFitMaterial):
        strength, om, gm = material.parameters(temperature)
        return kernels.lorentz_surface(strength, om, gm, w).imag
    return kernels.drude_surface(*material._args(), w).imag


def drude_remainder_rho(material, omega):
    """Remainder function Delta rho(omega) of a Drude material."""
    r = material.remainder
    if r is None:
        raise DomainError(f"{material.name} has no remainder term")
    w = np.asarray(omega, dtype=np.float64)
    return 1.0 - r.a + r.a * r.omega0**2 / (r.omega0**2 - 1j * r.gamma0 * w - w**2)


def conductor_low_frequency_im_response(material, omega):
    """Small-omega asymptote 2 omega gamma_p / omega_p**2 of Im[(eps-1)/(eps+1)]."""
    return 2.0 * np.asarray(omega) * material.gamma_p / material.omega_p**2


def check_temperature(temperature):
    lo, hi = SUPPORTED_T_RANGE
    if not lo <= temperature <= hi:
        raise TemperatureRangeError(
            f"temperature {temperature} K outside supported range [{lo:g}, {hi:g}] K"
        )
