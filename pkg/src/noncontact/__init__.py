"""Noncontact friction of hydrogen and helium atoms near dielectric and metal surfaces."""

from ._backend import BACKEND
from .atoms import AtomModel, AtomOscillator, alpha, alpha_real, im_alpha_lowfreq_resonant, im_alpha_one_loop
from .data_io import load_atom, load_builtin_dataset, load_material, write_csv
from .friction import (
    FrictionRequest,
    FrictionResult,
    attenuation,
    compute_friction,
    eta1_x0,
    eta2_x0,
    eta_si,
    eta_z_components,
    image_green_prefactor_check,
)
from .materials import (
    DrudeMaterial,
    DrudeRemainder,
    LorentzFitMaterial,
    OscillatorTerm,
    WidthShift,
    permittivity,
    rho,
    surface_response,
)
from .quadrature import QuadratureResult, QuadratureSettings, integrate, integrate_thermal
from .units import CONSTANTS, friction_au_to_si, thermal_beta_au
from .zero_temp import (
    ZeroTempInputs,
    plate_plate_force,
    zero_temp_force_closed,
    zero_temp_force_integral,
    zero_temp_inputs,
)

__version__ = "0.1.0"
