import time

import pytest

from toposurge.dynamics import SystemParams
from toposurge.integrate import integrate

PARAMS_A = SystemParams(3.0, 3.0, 3.0)
PARAMS_B = SystemParams(2.9851, 3.0, 3.0)

# the published simulation setups: four moving starts per regime plus the
# steady centre (1, 1, 1) of the B/A = 1 case
ICS_A = ((1.0, 1.59, 0.81), (1.0, 1.3, 0.89), (1.0, 1.18, 0.95), (1.0, 1.08, 0.98))
ICS_B = ((1.1075, 1.0, 1.0), (1.0, 1.0, 0.95), (1.0, 1.0, 0.9), (1.0, 1.0, 1.0))

T_END_A = 200.0
T_END_B = 2000.0


@pytest.fixture(scope="session")
def reference_orbits():
    """All nine orbits of the two published IC sets, timed once."""
    t0 = time.perf_counter()
    runs_a = {ic: integrate(PARAMS_A, ic, T_END_A) for ic in ICS_A}
    stationary = integrate(PARAMS_A, (1.0, 1.0, 1.0), T_END_A)
    runs_b = {ic: integrate(PARAMS_B, ic, T_END_B) for ic in ICS_B}
    elapsed = time.perf_counter() - t0
    return {"a": runs_a, "stationary": stationary, "b": runs_b, "elapsed": elapsed}


@pytest.fixture(scope="session")
def cycle_b():
    from toposurge.orbits import detect_limit_cycle

    return detect_limit_cycle(PARAMS_B, (1.0, 1.0, 1.0))
