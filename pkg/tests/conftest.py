import numpy as np
import pytest

from ptlind.operators import build_model
from ptlind.steadystate import solve_steady_state


@pytest.fixture(scope="session")
def spin4_store():
    """Lazily computed S=4 direct steady states, shared across criteria.

    The 6561-dimensional least-squares solve takes ~1 min, so every test
    needing an S=4 state at some Gamma/g goes through this cache.
    """
    cache: dict[float, tuple] = {}

    def get(ratio: float):
        if ratio not in cache:
            model = build_model("spin", 4.0, 1.0, ratio)
            cache[ratio] = (model, solve_steady_state(model, "direct"))
        return cache[ratio]

    return get
