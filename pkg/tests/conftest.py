import numpy as np
import pytest
from hypothesis import strategies as st

from tvsplit.state import GasParams


@pytest.fixture
def gas():
    return GasParams(gamma=1.4)


def random_states(rng: np.random.Generator, n: int, ncomp: int, gamma: float = 1.4) -> np.ndarray:
    """Batch of valid conserved states, shape (ncomp, n)."""
    rho = rng.uniform(0.1, 10.0, n)
    u = rng.uniform(-5.0, 5.0, n)
    v = rng.uniform(-5.0, 5.0, n) if ncomp == 4 else 0.0
    p = rng.uniform(0.05, 20.0, n)
    E = p / (gamma - 1.0) + 0.5 * rho * (u * u + np.asarray(v) ** 2)
    if ncomp == 3:
        return np.stack([rho, rho * u, E])
    return np.stack([rho, rho * u, rho * v, E])


finite = dict(allow_nan=False, allow_infinity=False)
rho_st = st.floats(min_value=0.1, max_value=10.0, **finite)
vel_st = st.floats(min_value=-5.0, max_value=5.0, **finite)
p_st = st.floats(min_value=0.05, max_value=20.0, **finite)
