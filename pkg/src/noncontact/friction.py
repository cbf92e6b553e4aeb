"""Normalized friction coefficients of an atom above a polarizable surface.

In atomic units at a distance of one Bohr radius the two contributions are

    eta1 = 3 beta / (8 pi)   int dw Im alpha(w) Im r(w) / sinh^2(beta w / 2)
    eta2 = 9 beta / (256 pi) int dw alpha(w)^2 [Im r(w)]^2 / sinh^2(beta w / 2)

with r = (eps - 1)/(eps + 1).  eta1 (direct, Z^-5) uses the one-loop Im alpha;
eta2 (backaction, Z^-8) uses the width-free real polarizability.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
import math

import numpy as np

from . import atoms as _atoms
from .materials import LorentzFitMaterial, check_temperature, im_surface_response
from .quadrature import QuadratureResult, QuadratureSettings, integrate_thermal
from .units import EPS0_AU, FRICTION_AU_SI, thermal_beta_au
from .errors import DomainError

#: default (eta_z1 / eta_x1, eta_z2 / eta_x2)
Z_DIRECTION_FACTORS = (2.0, 7.0)

# keep the width-free polarizability away from its first pole
_RESONANCE_MARGIN = 0.9


def eta1_prefactor(beta):
    """3 beta hbar^2 / (32 pi^2 eps0) with hbar = 1, eps0 = 1/(4 pi)."""
    return 3.0 * beta / (32.0 * math.pi**2 * EPS0_AU)


def eta2_prefactor(beta):
    """9 beta hbar^2 / (4096 pi^3 eps0^2) with hbar = 1, eps0 = 1/(4 pi)."""
    return 9.0 * beta / (4096.0 * math.pi**3 * EPS0_AU**2)


@dataclass(frozen=True)
class FrictionRequest:
    atom: _atoms.AtomModel
    material: object
    temperature: float
    settings: QuadratureSettings = field(default_factory=QuadratureSettings)

    def __post_init__(self):
        check_temperature(self.temperature)


@dataclass(frozen=True)
class FrictionResult:
    atom: str
    material: str
    temperature: float
    eta1_x0: float
    eta2_x0: float
    err1: float
    err2: float
    converged: bool = True

    def as_row(self):
        return {
            "atom": self.atom,
            "material": self.material,
            "T_K": self.temperature,
            "eta1_x0_au": self.eta1_x0,
            "eta2_x0_au": self.eta2_x0,
            "err1": self.err1,
            "err2": self.err2,
        }


def _is_vacuum(material):
    return isinstance(material, LorentzFitMaterial) and not material.terms


def _integration_window(req):
    beta = thermal_beta_au(req.temperature)
    omega_max = _RESONANCE_MARGIN * req.atom.first_resonance
    seeds = req.material.characteristic_frequencies()
    return beta, omega_max, seeds


def eta1_integrand(req):
    """Numerator of the eta1 integral as a vectorized function of omega."""
    atom, material, t = req.atom, req.material, req.temperature

    def f(w):
        return _atoms.im_alpha_one_loop(atom, w) * im_surface_response(material, w, t)

    return f


def eta2_integrand(req):
    atom, material, t = req.atom, req.material, req.temperature

    def f(w):
        a = _atoms.alpha_real(atom, w)
        r = im_surface_response(material, w, t)
        return a * a * r * r

    return f


def eta1_x0(req):
    """Direct friction coefficient at Z = a0, atomic units. Returns a QuadratureResult."""
    return _eta(req, eta1_integrand(req), eta1_prefactor)


def eta2_x0(req):
    """Backaction friction coefficient at Z = a0, atomic units. Returns a QuadratureResult."""
    return _eta(req, eta2_integrand(req), eta2_prefactor)


def _eta(req, integrand, prefactor):
    if _is_vacuum(req.material):
        return QuadratureResult(0.0, 0.0, 0, True)
    beta, omega_max, seeds = _integration_window(req)
    res = integrate_thermal(integrand, beta, req.settings, breakpoints=seeds, omega_max=omega_max)
    c = prefactor(beta)
    return QuadratureResult(c * res.value, c * res.error_estimate, res.evaluations, res.converged)


def compute_friction(req):
    r1 = eta1_x0(req)
    r2 = eta2_x0(req)
    return FrictionResult(
        atom=req.atom.name,
        material=req.material.name,
        temperature=req.temperature,
        eta1_x0=r1.value,
        eta2_x0=r2.value,
        err1=r1.error_estimate,
        err2=r2.error_estimate,
        converged=r1.converged and r2.converged,
    )


def compute_many(requests, max_workers=None):
    """Evaluate a list of requests, optionally in parallel; output order follows input."""
    requests = list(requests)
    if max_workers in (None, 1) or len(requests) < 2:
        return [compute_friction(r) for r in requests]
    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        return list(pool.map(compute_friction, requests))


def eta_z_components(eta1_x0, eta2_x0, factors=Z_DIRECTION_FACTORS):
    """Friction for motion normal to the surface, as multiples of the lateral values."""
    if eta1_x0 < 0 or eta2_x0 < 0:
        raise DomainError("friction coefficients must be non-negative")
    c1, c2 = factors
    return c1 * eta1_x0, c2 * eta2_x0


def _check_distance(z):
    z = np.asarray(z, dtype=np.float64)
    if np.any(z <= 0) or not np.all(np.isfinite(z)):
        raise DomainError("distance Z must be positive (in units of a0)")
    return z


def eta_si(eta1_x0, eta2_x0, z):
    """SI friction coefficients (kg/s) at distance ``z`` (in Bohr radii).

    Returns (eta1, eta2, total).
    """
    z = _check_distance(z)
    e1 = eta1_x0 * z**-5.0 * FRICTION_AU_SI
    e2 = eta2_x0 * z**-8.0 * FRICTION_AU_SI
    if z.ndim == 0:
        e1, e2 = float(e1), float(e2)
    return e1, e2, e1 + e2


@dataclass(frozen=True)
class Attenuation:
    gamma: float
    tau: float
    gamma1: float
    gamma2: float


def attenuation(mass_kg, eta1_x0, eta2_x0, z):
    """Velocity damping rate gamma = eta(Z)/m in 1/s and its inverse tau in s."""
    if not mass_kg > 0:
        raise DomainError("mass must be positive")
    e1, e2, _ = eta_si(eta1_x0, eta2_x0, z)
    g1 = e1 / mass_kg
    g2 = e2 / mass_kg
    gamma = g1 + g2
    tau = math.inf if gamma == 0 else 1.0 / gamma
    return Attenuation(gamma=gamma, tau=tau, gamma1=g1, gamma2=g2)


def image_green_prefactor_check(z):
    """3 / (16 pi eps0 Z^5): sum over l of d^2/dx dx' of the image Green tensor per unit Im r."""
    if not z > 0:
        raise DomainError("Z must be positive")
    return 3.0 / (16.0 * math.pi * EPS0_AU * z**5)
