import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from necklace_nls import first_invariant, integrate_ivp, small_amplitude_expansion
from necklace_nls.errors import DomainError
from necklace_nls.ode import propagate


def test_sech_solution_oracle():
    # psi = eps * sech(eps x) solves psi'' = eps**2 psi - 2 psi**3 exactly
    eps = 0.1
    sol = integrate_ivp(eps, 0.0, eps, 40.0, tol=1e-10)
    exact = eps / np.cosh(eps * sol.x)
    assert np.max(np.abs(sol.psi - exact)) < 1e-8
    dexact = -eps ** 2 * np.tanh(eps * sol.x) / np.cosh(eps * sol.x)
    assert np.max(np.abs(sol.dpsi - dexact)) < 1e-8
    assert sol.invariant_drift < 1e-12


def test_constant_solution_oracle():
    eps = 0.2
    c = eps / math.sqrt(2.0)
    v, d = propagate(c, 0.0, eps, 25.0)
    assert abs(v - c) < 1e-10
    assert abs(d) < 1e-10


@settings(deadline=None, max_examples=30)
@given(a=st.floats(-0.5, 0.5), b=st.floats(-0.2, 0.2),
       eps=st.floats(0.01, 0.5), x_end=st.floats(0.5, 8.0))
def test_invariant_conserved_along_trajectories(a, b, eps, x_end):
    sol = integrate_ivp(a, b, eps, x_end, tol=1e-10)
    e0 = first_invariant(a, b, eps)
    e_end = first_invariant(*sol.end_state, eps)
    assert abs(e_end - e0) < 1e-10 * max(1.0, abs(e0))


@settings(deadline=None, max_examples=20)
@given(a=st.floats(-0.3, 0.3), b=st.floats(-0.1, 0.1), eps=st.floats(0.05, 0.3))
def test_reversal_consistency(a, b, eps):
    # integrating to x_end and back with flipped derivative returns the data
    x_end = 3.0
    v, d = propagate(a, b, eps, x_end, tol=1e-12)
    v2, d2 = propagate(v, -d, eps, x_end, tol=1e-12)
    assert v2 == pytest.approx(a, abs=1e-9)
    assert -d2 == pytest.approx(b, abs=1e-9)


def test_even_symmetry_from_flat_data():
    # data (a, 0) generates an even solution: marching to +x and reflecting
    # lands back on the initial data with the derivative sign flipped
    eps, a, x = 0.15, 0.12, 2.0
    v, d = propagate(a, 0.0, eps, x, tol=1e-12)
    v2, d2 = propagate(v, -d, eps, x, tol=1e-12)
    assert v2 == pytest.approx(a, abs=1e-10)
    assert d2 == pytest.approx(0.0, abs=1e-10)


def test_small_amplitude_expansion_order():
    # remainder of the quartic expansion scales like eps**5 on fixed intervals
    alpha, beta, x = 0.7, -0.3, 1.5
    errs = []
    for eps in (0.08, 0.04):
        psi_e, _ = small_amplitude_expansion(alpha, beta, eps, x)
        v, _ = propagate(eps * alpha, eps ** 2 * beta, eps, x, tol=1e-12)
        errs.append(abs(psi_e - v))
    order = math.log2(errs[0] / errs[1])
    assert order > 4.4


def test_sample_positions_are_honored():
    xs = np.linspace(0.0, 2.0, 33)
    sol = integrate_ivp(0.1, 0.05, 0.2, 2.0, x_eval=xs)
    assert np.allclose(sol.x, xs)


def test_domain_errors():
    with pytest.raises(DomainError):
        integrate_ivp(0.1, 0.0, 0.1, -1.0)
    with pytest.raises(DomainError):
        integrate_ivp(0.1, 0.0, 0.1, 1.0, tol=0.0)
    with pytest.raises(DomainError):
        integrate_ivp(0.1, 0.0, 0.1, 1.0, x_eval=[-0.5])
