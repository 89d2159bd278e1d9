import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from necklace_nls import (CurveMode, GraphParams, MapState, ScaledState,
                          Symmetry, band_edge_curvature, inverse_period_map,
                          jacobian, link_step, period_map, ring_step,
                          scaled_map_truncated, symmetry_curve,
                          symmetry_defect_link, symmetry_defect_ring,
                          trace_hyperbolic)
from necklace_nls.dmap import asymptotic_symmetry_beta
from necklace_nls.errors import DomainError


def test_origin_is_fixed(params_half):
    out = period_map(MapState(0.0, 0.0), 0.05, params_half)
    assert abs(out.a) < 1e-12 and abs(out.b) < 1e-12


def test_constant_state_is_fixed(params_half):
    eps = 0.05
    c = eps / math.sqrt(2.0)
    out = period_map(MapState(c, 0.0), eps, params_half)
    assert abs(out.a - c) < 1e-10 and abs(out.b) < 1e-10


def test_link_and_ring_steps_compose_to_period_map(params_half):
    eps = 0.05
    st0 = MapState(0.4 * eps, -0.1 * eps ** 2)
    assert period_map(st0, eps, params_half) == ring_step(
        link_step(st0, eps, params_half), eps, params_half)


@settings(deadline=None, max_examples=10)
@given(a=st.floats(-0.3, 0.3), b=st.floats(-0.05, 0.05),
       eps=st.floats(0.02, 0.3))
def test_inverse_map_roundtrip(a, b, eps):
    p = GraphParams(L=math.pi / 2)
    st0 = MapState(a * eps, b * eps)
    fwd = period_map(st0, eps, p, tol=1e-12)
    back = inverse_period_map(fwd, eps, p, tol=1e-12)
    assert back.a == pytest.approx(st0.a, abs=1e-10)
    assert back.b == pytest.approx(st0.b, abs=1e-10)
    # and the other composition order
    again = period_map(inverse_period_map(st0, eps, p, tol=1e-12), eps, p,
                       tol=1e-12)
    assert again.a == pytest.approx(st0.a, abs=1e-10)
    assert again.b == pytest.approx(st0.b, abs=1e-10)


def test_area_preservation_at_sample_points(params_half):
    eps = 0.05
    pts = [MapState(0.0, 0.0), MapState(0.5 * eps, 0.0),
           MapState(0.0, 0.3 * eps ** 2), MapState(eps, -eps ** 2),
           MapState(-0.4 * eps, 0.2 * eps ** 2)]
    for pt in pts:
        det = np.linalg.det(jacobian(pt, eps, params_half, h=1e-6 * eps))
        assert det == pytest.approx(1.0, abs=1e-6)


def test_origin_jacobian_trace_and_eigenvalues(params_half):
    nu = math.sqrt(band_edge_curvature(params_half))
    cs = []
    for eps in (0.04, 0.02, 0.01):
        jac = jacobian(MapState(0.0, 0.0), eps, params_half)
        assert np.trace(jac) == pytest.approx(
            trace_hyperbolic(eps, params_half), abs=1e-6)
        evals = np.sort(np.linalg.eigvals(jac).real)
        cs.append(max(abs(evals[1] - (1 + eps * nu)),
                      abs(evals[0] - (1 - eps * nu))) / eps ** 2)
    # |lambda_pm - (1 pm eps nu)| = O(eps**2) with a stable constant
    assert max(cs) < 2.0 * min(cs)


def test_scaling_roundtrip_of_states():
    st0 = ScaledState(0.7, -0.2)
    back = st0.unscaled(0.03).scaled(0.03)
    assert back.alpha == pytest.approx(0.7) and back.beta == pytest.approx(-0.2)


def test_truncated_map_remainder_orders(params_half):
    # alpha-update truncated after eps**3 (remainder eps**4), beta-update
    # after eps**2 (remainder eps**3); verified by eps-halving
    pt = ScaledState(0.4, -0.2)
    errs = []
    for eps in (0.04, 0.02):
        full = period_map(pt.unscaled(eps), eps, params_half, tol=1e-12).scaled(eps)
        trunc = scaled_map_truncated(pt, eps, params_half)
        errs.append((abs(full.alpha - trunc.alpha), abs(full.beta - trunc.beta)))
    assert math.log2(errs[0][0] / errs[1][0]) > 3.5
    assert math.log2(errs[0][1] / errs[1][1]) > 2.5


def test_symmetry_defect_vanishes_on_exact_curve(params_half):
    eps = 0.03
    for which, defect in ((Symmetry.LINK_CENTERED, symmetry_defect_link),):
        alpha = 0.8
        beta = symmetry_curve(alpha, eps, params_half, which, CurveMode.EXACT)
        st0 = ScaledState(alpha, beta).unscaled(eps)
        assert abs(defect(st0, eps, params_half)) < 1e-11


def test_ring_symmetry_defect_vanishes_on_exact_curve(params_half):
    eps = 0.03
    alpha = 0.8
    beta = symmetry_curve(alpha, eps, params_half, Symmetry.RING_CENTERED,
                          CurveMode.EXACT)
    mid = link_step(ScaledState(alpha, beta).unscaled(eps), eps, params_half)
    assert abs(symmetry_defect_ring(mid, eps, params_half)) < 1e-11


def test_asymptotic_curve_close_to_exact(params_half):
    eps = 0.02
    for which in (Symmetry.LINK_CENTERED, Symmetry.RING_CENTERED):
        b_asym = symmetry_curve(1.0, eps, params_half, which,
                                CurveMode.ASYMPTOTIC)
        b_exact = symmetry_curve(1.0, eps, params_half, which, CurveMode.EXACT)
        assert abs(b_asym - b_exact) < 10.0 * eps ** 2


def test_asymptotic_curve_reference_value(params_half):
    # link family at alpha = 1: beta = -(eps L / 2)(1 - 2) = eps L / 2
    eps = 0.02
    b = asymptotic_symmetry_beta(1.0, eps, params_half, Symmetry.LINK_CENTERED)
    assert b == pytest.approx(eps * params_half.L / 2.0, rel=1e-12)
    assert b == pytest.approx(0.0157, abs=1e-4)


def test_jacobian_rejects_bad_step(params_half):
    with pytest.raises(DomainError):
        jacobian(MapState(0.0, 0.0), 0.05, params_half, h=0.0)
