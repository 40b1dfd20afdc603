import pytest

from cohstate import PhysicalParams


@pytest.fixture
def osc():
    """Oscillator units hbar = m = omega = 1."""
    return PhysicalParams()


@pytest.fixture(
    params=[PhysicalParams(), PhysicalParams(m=2.0, omega=3.0, hbar=0.5)],
    ids=["osc-units", "mixed-units"],
)
def any_units(request):
    return request.param
