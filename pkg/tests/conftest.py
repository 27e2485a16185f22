import pytest

from artinlab.algebra import from_ideal, from_inverse_system
from artinlab.dualpoly import parse_polynomial
from artinlab.linalg import PrimeField

P = 101


def dual(text, variables):
    return parse_polynomial(text, variables, P)


def inverse_system_ring(text, variables):
    return from_inverse_system(P, [dual(text, variables)])


@pytest.fixture(scope="session")
def field():
    return PrimeField(P)


@pytest.fixture(scope="session")
def ring_almost_stretched():
    """alg(Y1^2*Y2 + Y3^2): l=7, h=(1,3,2,1), Gorenstein, mu(m^2)=2."""
    return inverse_system_ring("Y1^2*Y2 + Y3^2", ["Y1", "Y2", "Y3"])


@pytest.fixture(scope="session")
def ring_stretched3():
    """alg(Y1^3 + Y2^2 + Y3^2): l=6, h=(1,3,1,1), Gorenstein, mu(m^2)=1."""
    return inverse_system_ring("Y1^3 + Y2^2 + Y3^2", ["Y1", "Y2", "Y3"])


@pytest.fixture(scope="session")
def ring_fermat_cubic():
    """alg(Y1^3 + Y2^3 + Y3^3): l=8, h=(1,3,3,1), mu(I)=5."""
    return inverse_system_ring("Y1^3 + Y2^3 + Y3^3", ["Y1", "Y2", "Y3"])


@pytest.fixture(scope="session")
def ring_quadrics():
    """alg(Y1^2 + Y2^2 + Y3^2): compressed Gorenstein, l=5, h=(1,3,1)."""
    return inverse_system_ring("Y1^2 + Y2^2 + Y3^2", ["Y1", "Y2", "Y3"])


@pytest.fixture(scope="session")
def ring_sally():
    """k[x,y]/(x^3, xy, y^2): stretched, type 2 = edim, Golod."""
    return from_ideal(P, ["x", "y"], ["x^3", "x*y", "y^2"])


@pytest.fixture(scope="session")
def ring_fat_point():
    """k[x,y]/(x^2, xy, y^2): m^2 = 0, socle dimension 2."""
    return from_ideal(P, ["x", "y"], ["x^2", "x*y", "y^2"])


@pytest.fixture(scope="session")
def chain_ring():
    """k[x]/(x^4)."""
    return from_ideal(P, ["x"], ["x^4"])
