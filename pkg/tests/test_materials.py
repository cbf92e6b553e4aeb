import numpy as np
import pytest

from noncontact import materials as mat
from noncontact.errors import DomainError, SingularityError, TemperatureRangeError
from noncontact.materials import (
    VACUUM,
    DrudeMaterial,
    LorentzFitMaterial,
    OscillatorTerm,
    permittivity,
    rho,
    surface_response,
)
from helpers import approx

# ordinary-axis fit strengths
SIO2_ORDINARY_STRENGTHS = [
    1.04e-2, 8.53e-2, 0.16e-2, 1.06e-2, 5.52e-2, 4.55e-2,
    1.05e-2, 4.71e-2, 4.98e-2, 1.06e-1, 1.12e-1,
]
OMEGA_GRID = np.geomspace(1e-6, 2.0, 1000)


def test_rho_static_sum(sio2_o):
    expected = sum(SIO2_ORDINARY_STRENGTHS)
    assert expected == approx(0.5340, abs=5e-5)
    value = rho(sio2_o, 0.0)
    assert value.imag == 0.0
    assert value.real == approx(expected, rel=1e-12)


def test_rho_empty_terms_is_zero():
    assert rho(VACUUM, 0.37) == 0


def test_caf2_on_resonance_imaginary_part(caf2):
    value = rho(caf2, 1.74e-3, 300.0)
    assert value.imag == approx(0.425 * 1.74e-3 / 1.49e-4, rel=1e-3)
    assert value.imag == approx(4.96, abs=0.01)


def test_static_permittivity(sio2_o):
    eps = permittivity(sio2_o, 0.0)
    assert eps.real == approx((1 + 2 * 0.534) / (1 - 0.534), rel=1e-12)
    assert eps.real == approx(4.437, rel=5e-3)


def test_vacuum_is_exactly_unity():
    assert permittivity(VACUUM, 0.1) == 1.0
    assert surface_response(VACUUM, 0.1) == 0.0


def test_gold_permittivity_matches_direct_formula(gold):
    w = 0.01
    drho = 1 - 1.5373 + 1.5373 * 1.462**2 / (1.462**2 - 1j * 4.550 * w - w**2)
    expected = 1 - 0.3330**2 / (w * (w + 1j * 1.164e-3)) + (1 + 2 * drho) / (1 - drho)
    assert permittivity(gold, w) == approx(expected, rel=1e-13)


def test_gold_low_frequency_response(gold):
    w = 1e-5
    asym = 2 * w * 1.164e-3 / 0.3330**2
    assert asym == approx(2.10e-7, rel=2e-3)
    eps = permittivity(gold, w)
    full = (eps - 1) / (eps + 1)
    value = surface_response(gold, w)
    assert value.imag == approx(full.imag, rel=1e-10)
    assert value.imag == approx(asym, rel=1e-2)


def test_sio2_static_surface_response(sio2_o):
    assert surface_response(sio2_o, 0.0).real == approx(3 * 0.534 / 2.534, rel=1e-12)
    assert surface_response(sio2_o, 0.0).real == approx(0.6322, abs=1e-4)


def test_drude_rejects_zero_frequency(gold):
    with pytest.raises(DomainError):
        permittivity(gold, 0.0)
    with pytest.raises(DomainError):
        surface_response(gold, np.array([0.1, 0.0]))


def test_negative_frequency_rejected(sio2_o):
    with pytest.raises(DomainError):
        rho(sio2_o, -1e-3)


def test_permittivity_pole_flagged():
    # a single undamped-looking strong term: rho(0) = 1 is excluded by validation
    with pytest.raises(DomainError):
        LorentzFitMaterial("bad", [OscillatorTerm(1.0, 1.0, 0.1)])


def test_surface_response_singularity_flagged(monkeypatch):
    m = LorentzFitMaterial("x", [OscillatorTerm(0.5, 1.0, 0.1)])
    monkeypatch.setattr(mat.kernels, "lorentz_rho", lambda *a: np.array([-2.0 + 0j]), raising=False)
    with pytest.raises(SingularityError):
        surface_response(m, 0.3)


@pytest.mark.parametrize("name", ["sio2_ordinary", "sio2_extraordinary", "au", "caf2"])
@pytest.mark.parametrize("temperature", [250.0, 273.0, 300.0, 350.0])
def test_passivity(dataset, name, temperature):
    m = dataset.materials[name]
    eps = permittivity(m, OMEGA_GRID, temperature)
    resp = surface_response(m, OMEGA_GRID, temperature)
    assert np.all(eps.imag > 0)
    assert np.all(resp.imag > 0)


@pytest.mark.parametrize("name", ["sio2_ordinary", "sio2_extraordinary", "caf2"])
def test_lorentz_routes_agree(dataset, name):
    m = dataset.materials[name]
    eps = permittivity(m, OMEGA_GRID, 300.0)
    via_eps = (eps - 1) / (eps + 1)
    direct = surface_response(m, OMEGA_GRID, 300.0)
    assert np.max(np.abs(via_eps - direct) / np.abs(direct)) < 1e-12


def test_drude_remainder_asymptotics(gold):
    w = 1e-6
    r = gold.remainder
    value = mat.drude_remainder_rho(gold, w)
    leading = 1 + 1j * r.a * r.gamma0 * w / r.omega0**2
    assert value.real == approx(leading.real, rel=1e-3)
    assert value.imag == approx(leading.imag, rel=1e-3)


def test_caf2_width_shift_neutral_at_reference(caf2):
    w = np.geomspace(1e-5, 1.0, 200)
    shifted = surface_response(caf2, w, 300.0)
    plain = surface_response(caf2.without_width_shift(), w, 300.0)
    assert np.array_equal(shifted, plain)


def test_caf2_width_shift_changes_first_width(caf2):
    _, _, g273 = caf2.parameters(273.0)
    assert g273[0] == approx(1.49e-4 + 4.97e-7 * (273 - 300), rel=1e-14)
    assert g273[1:].tolist() == [1.98e-2, 1.72e-1, 5.58e-1]


@pytest.mark.parametrize("t", [249.0, 351.0])
def test_caf2_temperature_range(caf2, t):
    with pytest.raises(TemperatureRangeError):
        rho(caf2, 1e-3, t)


def test_sio2_is_temperature_independent(sio2_o):
    assert rho(sio2_o, 2e-3, 250.0) == rho(sio2_o, 2e-3, 350.0)


def _isolated_terms(material):
    terms = material.terms
    out = []
    for i, t in enumerate(terms):
        others = [abs(t.omega - u.omega) for j, u in enumerate(terms) if j != i]
        if min(others) > 20 * t.gamma:
            out.append(t)
    return out


@pytest.mark.parametrize("name", ["sio2_ordinary", "sio2_extraordinary", "caf2"])
def test_re_rho_falls_through_isolated_resonances(dataset, name):
    m = dataset.materials[name]
    isolated = _isolated_terms(m)
    assert isolated
    for t in isolated:
        h = 1e-3 * t.gamma

        def slope(w):
            return (rho(m, w + h).real - rho(m, w - h).real) / (2 * h)

        assert slope(t.omega - 5 * t.gamma) > 0
        assert slope(t.omega) < 0
        assert slope(t.omega + 5 * t.gamma) > 0


def test_characteristic_frequencies_include_surface_modes(sio2_o):
    freqs = sio2_o.characteristic_frequencies()
    strength, omega, _ = sio2_o.parameters()
    for w in freqs:
        if np.any(np.isclose(w, omega, rtol=1e-12)):
            continue
        undamped = np.sum(strength * omega**2 / (omega**2 - w**2))
        assert undamped == approx(-2.0, abs=1e-8)
    assert len(freqs) == 2 * len(omega)


def test_dc_conductivity(gold):
    assert gold.dc_conductivity() == approx(0.3330**2 / (4 * np.pi * 1.164e-3), rel=1e-14)


def test_drude_without_remainder(gold):
    bare = gold.without_remainder()
    w = 0.02
    assert permittivity(bare, w) == approx(1 - 0.3330**2 / (w * (w + 1j * 1.164e-3)), rel=1e-14)


def test_invalid_drude_parameters():
    with pytest.raises(DomainError):
        DrudeMaterial("x", -1.0, 1e-3)
    with pytest.raises(DomainError):
        DrudeMaterial("x", 1.0, 0.0)


def test_scalar_and_array_inputs_agree(sio2_o):
    w = np.array([1e-3, 2e-3])
    arr = surface_response(sio2_o, w)
    assert arr.shape == (2,)
    assert surface_response(sio2_o, 2e-3) == arr[1]
