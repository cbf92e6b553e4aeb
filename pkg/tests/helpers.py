import pytest


def approx(expected, rel=1e-6, abs=0.0):
    """pytest.approx without the silent 1e-12 absolute floor.

    Friction coefficients live near 1e-15 a.u. and 1e-30 kg/s, where the
    default floor would make every comparison pass.
    """
    return pytest.approx(expected, rel=rel, abs=abs)
