import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from noncontact import _pykernels as py
from helpers import approx

try:
    from noncontact import _ckernels as cy
except ImportError:  # pragma: no cover
    cy = None

needs_ext = pytest.mark.skipif(cy is None, reason="compiled extension not built")

positive = st.floats(1e-6, 2.0, allow_nan=False)
freqs = arrays(np.float64, st.integers(1, 40), elements=st.floats(1e-7, 3.0))


def _terms(draw, n):
    a = np.array([draw(st.floats(1e-4, 0.9 / n)) for _ in range(n)])
    w = np.array([draw(positive) for _ in range(n)])
    g = np.array([draw(st.floats(1e-6, 0.5)) for _ in range(n)]) * w
    return a, w, g


@st.composite
def lorentz_case(draw):
    n = draw(st.integers(1, 12))
    return (*_terms(draw, n), draw(freqs))


@needs_ext
@settings(max_examples=60, deadline=None)
@given(lorentz_case())
def test_lorentz_backends_agree(case):
    a, w, g, x = case
    for name in ("lorentz_rho", "lorentz_surface"):
        ref = getattr(py, name)(a, w, g, x)
        got = getattr(cy, name)(a, w, g, x)
        np.testing.assert_allclose(got, ref, rtol=1e-12, atol=1e-300)


@needs_ext
@settings(max_examples=60, deadline=None)
@given(
    wp=st.floats(0.01, 1.0),
    gp=st.floats(1e-5, 1e-1),
    rem=st.booleans(),
    x=freqs,
)
def test_drude_backends_agree(wp, gp, rem, x):
    args = (wp, gp, 1.5373, 1.462, 4.55, rem, x)
    np.testing.assert_allclose(cy.drude_eps(*args), py.drude_eps(*args), rtol=1e-12)
    np.testing.assert_allclose(cy.drude_surface(*args), py.drude_surface(*args), rtol=1e-11)


@needs_ext
@settings(max_examples=60, deadline=None)
@given(lorentz_case())
def test_alpha_backends_agree(case):
    f, energy, width, x = case
    np.testing.assert_allclose(
        cy.oscillator_alpha(f, energy, width, x), py.oscillator_alpha(f, energy, width, x), rtol=1e-12
    )
    below = x[x < 0.9 * energy.min()]
    if below.size:
        np.testing.assert_allclose(
            cy.static_alpha(f, energy, below), py.static_alpha(f, energy, below), rtol=1e-12
        )


@needs_ext
@settings(max_examples=60, deadline=None)
@given(beta=st.floats(10.0, 1e4), x=arrays(np.float64, st.integers(1, 40), elements=st.floats(0.0, 0.05)))
def test_sinh_backends_agree(beta, x):
    x = x[x * beta < 60]
    np.testing.assert_allclose(cy.inv_sinh2_half(beta, x), py.inv_sinh2_half(beta, x), rtol=1e-12)


@pytest.mark.parametrize("mod", [py, cy] if cy is not None else [py], ids=lambda m: m.__name__)
def test_inv_sinh2_series_matches_direct(mod):
    beta = 1000.0
    w = np.array([1e-9, 4.9e-8, 5.1e-8, 1e-7])
    x = 0.5 * beta * w
    direct = 1.0 / np.sinh(x) ** 2
    np.testing.assert_allclose(mod.inv_sinh2_half(beta, w), direct, rtol=1e-9)
    assert np.isinf(mod.inv_sinh2_half(beta, np.array([0.0]))[0]) or mod.inv_sinh2_half(beta, np.array([0.0]))[0] > 1e300


def test_pure_python_backend_can_be_forced():
    env = dict(os.environ, NONCONTACT_PURE_PYTHON="1")
    code = "import noncontact; print(noncontact.BACKEND)"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_pure_python_backend_reproduces_friction():
    env = dict(os.environ, NONCONTACT_PURE_PYTHON="1")
    code = (
        "from noncontact import data_io, friction\n"
        "a = data_io.load_atom('h_1s'); m = data_io.load_material('sio2_ordinary')\n"
        "r = friction.compute_friction(friction.FrictionRequest(a, m, 298.0))\n"
        "print(repr(r.eta1_x0), repr(r.eta2_x0))"
    )
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    e1, e2 = map(float, out.stdout.split())
    from noncontact import data_io, friction

    r = friction.compute_friction(
        friction.FrictionRequest(data_io.load_atom("h_1s"), data_io.load_material("sio2_ordinary"), 298.0)
    )
    assert e1 == approx(r.eta1_x0, rel=1e-9)
    assert e2 == approx(r.eta2_x0, rel=1e-9)
