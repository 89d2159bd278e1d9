import math

import numpy as np
import pytest

from necklace_nls import (GraphParams, MapState, band_edge_curvature, jacobian,
                          link_step, period_map, sech_approximation,
                          shoot_homoclinic, unstable_direction)
from necklace_nls.dmap import Symmetry
from necklace_nls.errors import DomainError, NumericalError

from conftest import cached_orbit

L_HALF = math.pi / 2
EPS = 0.04


@pytest.fixture(scope="module", params=["link", "ring"])
def orbit(request):
    sym = (Symmetry.LINK_CENTERED if request.param == "link"
           else Symmetry.RING_CENTERED)
    return cached_orbit(EPS, L_HALF, sym)


def test_unstable_direction_slope_near_mu(params_half):
    eps = 0.02
    v = unstable_direction(eps, params_half)
    slope = (v[1] / eps ** 2) / (v[0] / eps)
    mu = math.sqrt((params_half.L + 2 * math.pi) / (params_half.L + math.pi / 2))
    assert slope == pytest.approx(mu, abs=5.0 * eps)


def test_unstable_direction_rejects_bad_eps(params_half):
    with pytest.raises(DomainError):
        unstable_direction(0.0, params_half)


def test_shoot_rejects_large_eps(params_half):
    with pytest.raises(DomainError):
        shoot_homoclinic(0.5, params_half, Symmetry.LINK_CENTERED)


def test_orbit_is_a_genuine_map_orbit(orbit):
    # the glued sequence (including the reflected left half) is mapped
    # forward consistently by the period map
    p, eps = orbit.params, orbit.eps
    for n in (-3, -1, 0, 1, 5):
        nxt = period_map(orbit.state(n), eps, p, tol=1e-12)
        ref = orbit.state(n + 1)
        assert nxt.a == pytest.approx(ref.a, abs=1e-9)
        assert nxt.b == pytest.approx(ref.b, abs=1e-9)


def test_mid_states_consistent_with_link_step(orbit):
    p, eps = orbit.params, orbit.eps
    for n in (-2, 0, 3):
        mid = link_step(orbit.state(n), eps, p, tol=1e-12)
        ref = orbit.mid_state(n)
        assert mid.a == pytest.approx(ref.a, abs=1e-10)
        assert mid.b == pytest.approx(ref.b, abs=1e-10)


def test_reflection_relations(orbit):
    # link family: a_{-n} = c_n, b_{-n} = -2 d_n;
    # ring family: a_{-n} = c_{n+1}, b_{-n} = -2 d_{n+1}
    shift = 0 if orbit.symmetry is Symmetry.LINK_CENTERED else 1
    for n in (1, 2, 5):
        neg = orbit.state(-n)
        mid = orbit.mid_state(n + shift)
        assert neg.a == pytest.approx(mid.a, abs=1e-12)
        assert neg.b == pytest.approx(-2.0 * mid.b, abs=1e-12)


def test_decay_symmetry(orbit):
    # the scaled amplitudes decay symmetrically on both sides
    alpha = orbit.alpha
    ns = orbit.n
    left = alpha[ns < 0][::-1]
    right = alpha[ns > 1]
    k = min(len(left), len(right), 10)
    assert np.all(left[:k] < alpha[ns == 0][0] + 1e-12)
    assert np.all(right[:k] < alpha[ns == 0][0] + 1e-12)


def test_diagnostics_positivity_and_monotone_tail(orbit):
    d = orbit.diagnostics
    assert d.all_positive
    assert d.monotone_tail_index <= 2
    assert 0.0 < d.tail_decay_ratio < 1.0


def test_tail_ratio_matches_contracting_eigenvalue(orbit):
    lam_minus = float(np.min(np.linalg.eigvals(
        jacobian(MapState(0.0, 0.0), orbit.eps, orbit.params)).real))
    assert abs(orbit.diagnostics.tail_decay_ratio - lam_minus) < 1e-3


def test_sech_proximity(orbit):
    d = orbit.diagnostics
    assert d.l2_distance_to_sech < 0.5 * orbit.eps
    alpha0 = float(orbit.alpha[orbit.n.tolist().index(0)])
    assert 0.9 < alpha0 < 1.1


def test_families_are_distinct():
    link = cached_orbit(EPS, L_HALF, Symmetry.LINK_CENTERED)
    ring = cached_orbit(EPS, L_HALF, Symmetry.RING_CENTERED)
    a_link = float(link.alpha[link.n.tolist().index(0)])
    a_ring = float(ring.alpha[ring.n.tolist().index(0)])
    assert abs(a_link - a_ring) > 1e-4
    assert link.seed_parameter != ring.seed_parameter


def test_symmetry_defect_vanishes_at_center(orbit):
    from necklace_nls.homoclinic import _defect
    d = _defect(orbit.state(0), orbit.eps, orbit.params, orbit.symmetry)
    assert abs(d) < 1e-11


def test_sech_approximation_values(params_half):
    eps = 0.04
    nu = math.sqrt(band_edge_curvature(params_half))
    s = sech_approximation(eps, 0.0, 0, params_half)
    assert s.alpha == pytest.approx(1.0 / math.cosh(nu * eps / 2), rel=1e-12)
    far = sech_approximation(eps, 0.0, 200, params_half)
    assert far.alpha < 1e-10


def test_continuation_smoothness(params_half):
    # the seed parameter varies smoothly (here: monotonically) in eps
    seeds = [cached_orbit(e, L_HALF, Symmetry.LINK_CENTERED).seed_parameter
             for e in (0.04, 0.02)]
    assert seeds[0] > seeds[1] > 0.0
