"""Physical constants and atomic-unit conversions.

Everything inside the package is computed in Hartree atomic units
(hbar = e = m_e = 1, eps0 = 1/(4 pi), c = 1/alpha).  SI only appears at the
public boundary through the helpers below.
"""

from dataclasses import dataclass
import math

from scipy import constants as _sc

from .errors import DomainError


@dataclass(frozen=True)
class PhysicalConstants:
    fine_structure: float
    elementary_charge_C: float
    bohr_radius_m: float
    hartree_J: float
    atomic_force_N: float
    atomic_friction_kg_s: float
    atomic_angular_freq_rad_s: float
    atomic_freq_Hz: float
    boltzmann_au: float


def _build_constants():
    alpha = _sc.fine_structure
    e = _sc.elementary_charge
    a0 = _sc.physical_constants["Bohr radius"][0]
    hartree = _sc.physical_constants["Hartree energy"][0]
    force = e**2 / (4 * math.pi * _sc.epsilon_0 * a0**2)
    return PhysicalConstants(
        fine_structure=alpha,
        elementary_charge_C=e,
        bohr_radius_m=a0,
        hartree_J=hartree,
        atomic_force_N=force,
        atomic_friction_kg_s=force / (alpha * _sc.c),
        atomic_angular_freq_rad_s=hartree / _sc.hbar,
        atomic_freq_Hz=hartree / _sc.h,
        boltzmann_au=_sc.k / hartree,
    )


CONSTANTS = _build_constants()

#: Sommerfeld fine-structure constant; c = 1/ALPHA_FS in atomic units.
ALPHA_FS = CONSTANTS.fine_structure
#: Vacuum permittivity in atomic units.
EPS0_AU = 1.0 / (4.0 * math.pi)
#: Atomic unit of the friction coefficient, kg/s.
FRICTION_AU_SI = CONSTANTS.atomic_friction_kg_s
BOHR_M = CONSTANTS.bohr_radius_m


def thermal_beta_au(temperature):
    """Inverse temperature 1/(k_B T) in inverse Hartree."""
    if not temperature > 0 or not math.isfinite(temperature):
        raise DomainError(f"temperature must be positive and finite, got {temperature!r} K")
    return 1.0 / (CONSTANTS.boltzmann_au * temperature)


def friction_au_to_si(eta_au):
    return eta_au * FRICTION_AU_SI


def friction_si_to_au(eta_si):
    return eta_si / FRICTION_AU_SI


def angular_freq_au_to_si(omega_au):
    return omega_au * CONSTANTS.atomic_angular_freq_rad_s


def angular_freq_si_to_au(omega_rad_s):
    return omega_rad_s / CONSTANTS.atomic_angular_freq_rad_s


def length_au_to_si(length_au):
    return length_au * BOHR_M


def length_si_to_au(length_m):
    return length_m / BOHR_M


def force_au_to_si(force_au):
    return force_au * CONSTANTS.atomic_force_N


def force_si_to_au(force_n):
    return force_n / CONSTANTS.atomic_force_N
