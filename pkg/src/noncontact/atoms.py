"""Dynamic dipole polarizability of the atoms as a sum over oscillators.

alpha(w) = sum_n f_n / (E_n^2 - i Gamma_n w - w^2), atomic units throughout.
"""

from dataclasses import dataclass
import math

import numpy as np

from ._backend import kernels
from .errors import DomainError, RegimeError, SingularityError
from .units import ALPHA_FS

#: maximum Gamma/E accepted for a single oscillator
MAX_WIDTH_RATIO = 0.1
#: im_alpha_lowfreq_resonant requires omega / E_first below this
LOWFREQ_RATIO = 0.1

STATIC_ALPHA_RTOL = 2e-2
TRK_RTOL = 5e-2


@dataclass(frozen=True)
class AtomOscillator:
    f: float
    energy: float
    width: float = 0.0

    def __post_init__(self):
        if not (self.f > 0 and math.isfinite(self.f)):
            raise DomainError(f"oscillator strength must be positive, got {self.f!r}")
        if not (self.energy > 0 and math.isfinite(self.energy)):
            raise DomainError(f"excitation energy must be positive, got {self.energy!r}")
        if not self.width >= 0:
            raise DomainError(f"width must be >= 0, got {self.width!r}")
        if self.width >= MAX_WIDTH_RATIO * self.energy:
            raise DomainError(
                f"width {self.width!r} not small against excitation energy {self.energy!r}"
            )


@dataclass(frozen=True)
class AtomModel:
    """Oscillator model of one atomic state.

    ``reference_static_alpha`` is the literature static polarizability the
    oscillator set must reproduce; ``electrons`` feeds the Thomas-Reiche-Kuhn
    check, which effective few-level models can opt out of with ``skip_trk``.
    """

    name: str
    mass_kg: float
    oscillators: tuple
    reference_static_alpha: float
    electrons: int = 1
    skip_trk: bool = False

    def __post_init__(self):
        object.__setattr__(self, "oscillators", tuple(self.oscillators))
        if not self.oscillators:
            raise DomainError(f"{self.name}: at least one oscillator required")
        if not self.mass_kg > 0:
            raise DomainError(f"{self.name}: mass_kg must be positive")
        static = self.static_alpha()
        ref = self.reference_static_alpha
        if abs(static - ref) > STATIC_ALPHA_RTOL * abs(ref):
            raise DomainError(
                f"{self.name}: oscillators give static alpha {static:.6g}, "
                f"reference_static_alpha is {ref:.6g}"
            )
        if not self.skip_trk:
            fsum = self.oscillator_strength_sum()
            if abs(fsum - self.electrons) > TRK_RTOL * self.electrons:
                raise DomainError(
                    f"{self.name}: oscillator strengths sum to {fsum:.6g}, "
                    f"expected {self.electrons} (TRK sum rule)"
                )

    def _arrays(self):
        cached = self.__dict__.get("_cache")
        if cached is None:
            cached = (
                np.array([o.f for o in self.oscillators]),
                np.array([o.energy for o in self.oscillators]),
                np.array([o.width for o in self.oscillators]),
            )
            object.__setattr__(self, "_cache", cached)
        return cached

    @property
    def first_resonance(self):
        return min(o.energy for o in self.oscillators)

    def static_alpha(self):
        return math.fsum(o.f / o.energy**2 for o in self.oscillators)

    def oscillator_strength_sum(self):
        return math.fsum(o.f for o in self.oscillators)

    def scaled(self, factor):
        """Copy with every oscillator strength multiplied by ``factor``."""
        return AtomModel(
            name=f"{self.name}*{factor:g}",
            mass_kg=self.mass_kg,
            oscillators=tuple(AtomOscillator(o.f * factor, o.energy, o.width) for o in self.oscillators),
            reference_static_alpha=self.reference_static_alpha * factor,
            electrons=self.electrons,
            skip_trk=True,
        )


def _omega(omega):
    w = np.asarray(omega, dtype=np.float64)
    if np.any(w < 0) or not np.all(np.isfinite(w)):
        raise DomainError("frequency must be finite and >= 0")
    return w


def alpha(atom, omega):
    """Complex polarizability including the oscillator widths."""
    w = _omega(omega)
    f, energy, width = atom._arrays()
    zero_width = width == 0
    if np.any(zero_width):
        hit = np.isin(w, energy[zero_width])
        if np.any(hit):
            raise SingularityError(f"{atom.name}: omega on a zero-width resonance")
    out = kernels.oscillator_alpha(f, energy, width, w.ravel()).reshape(w.shape)
    return complex(out.reshape(-1)[0]) if w.ndim == 0 else out


def alpha_real(atom, omega):
    """Width-free polarizability sum_n f_n / (E_n^2 - w^2), real below resonance."""
    w = np.asarray(omega, dtype=np.float64)
    f, energy, _ = atom._arrays()
    out = kernels.static_alpha(f, energy, w.ravel()).reshape(w.shape)
    return float(out) if w.ndim == 0 else out


def im_alpha_one_loop(atom, omega):
    """Off-resonant imaginary part (2 alpha^3 / 3) w^3 alpha(w)^2.

    The resonant (tree-level) part is a sum of delta peaks and vanishes below
    the first excitation, which is the only regime accepted here.
    """
    w = _omega(omega)
    if np.any(w >= atom.first_resonance):
        raise RegimeError(
            f"{atom.name}: one-loop Im alpha only valid below the first resonance "
            f"({atom.first_resonance:g} a.u.); use a resonant lineshape model above it"
        )
    a = np.asarray(alpha_real(atom, w))
    out = (2.0 * ALPHA_FS**3 / 3.0) * w**3 * a * a
    return float(out) if w.ndim == 0 else out


def im_alpha_lowfreq_resonant(atom, omega):
    """Width-induced imaginary part w * sum_n f_n Gamma_n / E_n^4 for w << E_1."""
    w = _omega(omega)
    if np.any(w > LOWFREQ_RATIO * atom.first_resonance):
        raise RegimeError(
            f"{atom.name}: low-frequency Im alpha requires omega < "
            f"{LOWFREQ_RATIO} * first resonance"
        )
    f, energy, width = atom._arrays()
    slope = float(np.sum(f * width / energy**4))
    out = w * slope
    return float(out) if w.ndim == 0 else out


def lowfreq_im_alpha_slope(atom):
    f, energy, width = atom._arrays()
    return float(np.sum(f * width / energy**4))
