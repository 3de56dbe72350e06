import random
from fractions import Fraction

import pytest

from ncprod import JacobiData

F = Fraction


def random_jacobi(rng: random.Random, terms: int = 4, centered: bool = False) -> JacobiData:
    """Deterministic random Jacobi data with strictly positive gammas."""
    beta = tuple(
        F(0) if centered else F(rng.randint(-2, 2), rng.randint(1, 3)) for _ in range(terms)
    )
    gamma = tuple(F(rng.randint(1, 3), rng.randint(1, 3)) for _ in range(terms))
    return JacobiData(beta=beta, gamma=gamma)


def random_pair(seed: int, centered: bool = False) -> tuple[JacobiData, JacobiData]:
    rng = random.Random(seed)
    return random_jacobi(rng, centered=centered), random_jacobi(rng, centered=centered)


# a fixed pair with every beta and gamma nonzero, used for distinctness-style
# checks where degenerate coefficients would hide differences
GENERIC_J1 = JacobiData(beta=(F(1, 2), F(-1, 3), F(1, 4)), gamma=(F(1), F(2, 3), F(3, 5)))
GENERIC_J2 = JacobiData(beta=(F(-1, 2), F(2, 5), F(1, 3)), gamma=(F(3, 2), F(1, 2), F(5, 7)))


@pytest.fixture
def generic_pair() -> tuple[JacobiData, JacobiData]:
    return GENERIC_J1, GENERIC_J2
