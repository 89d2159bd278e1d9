import functools
import math

import pytest

from necklace_nls import GraphParams, assemble_profile, shoot_homoclinic
from necklace_nls.dmap import Symmetry


@functools.lru_cache(maxsize=None)
def cached_orbit(eps: float, L: float, symmetry: Symmetry):
    return shoot_homoclinic(eps, GraphParams(L=L), symmetry)


@functools.lru_cache(maxsize=None)
def cached_bound_state(eps: float, L: float, symmetry: Symmetry):
    return assemble_profile(cached_orbit(eps, L, symmetry))


@pytest.fixture(scope="session")
def params_half():
    return GraphParams(L=math.pi / 2)


@pytest.fixture(scope="session")
def params_pi():
    return GraphParams(L=math.pi)
