import numpy as np
import pytest

from triwitness import build_table, canonical_w1_scenario, canonical_w2_scenario


@pytest.fixture(scope="session")
def grid101():
    return np.linspace(0.0, np.pi, 101)


@pytest.fixture(scope="session")
def w1_tables(grid101):
    scn = canonical_w1_scenario()
    return {float(e): build_table(scn, float(e)) for e in grid101}


@pytest.fixture(scope="session")
def w2_tables(grid101):
    scn = canonical_w2_scenario()
    return {float(e): build_table(scn, float(e)) for e in grid101}
