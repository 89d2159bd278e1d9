import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from necklace_nls import (Band, FlatBandLocation, GraphParams,
                          band_edge_curvature, classify_flat_band, find_bands,
                          flat_band_eigenfunction, monodromy_matrix, trace,
                          trace_hyperbolic)
from necklace_nls.errors import DomainError, GridError
from necklace_nls.spectral import lowest_band_dispersion

L_HALF = math.pi / 2

# reference band edges for L = pi/2 on [0, 6]: sin(omega*pi)*sin(omega*L)
# vanishes at even omega and the remaining edges solve the trace equation
REF_EDGES_HALF = [
    (0.0, 0.535441), (0.783653, 1.216347), (1.464559, 2.0),
    (2.0, 2.535441), (2.783653, 3.216347), (3.464559, 4.0),
    (4.0, 4.535441), (4.783653, 5.216347), (5.464559, 6.0),
]


@given(omega=st.floats(0.01, 20.0), L=st.floats(0.1, 6.0))
def test_monodromy_determinant_is_one(omega, L):
    m = monodromy_matrix(omega, GraphParams(L=L))
    assert m.det == pytest.approx(1.0, abs=1e-12)


@given(omega=st.floats(0.01, 20.0), L=st.floats(0.1, 6.0))
def test_trace_formula_matches_matrix(omega, L):
    p = GraphParams(L=L)
    assert trace(omega, p) == pytest.approx(monodromy_matrix(omega, p).trace,
                                            abs=1e-12)


def test_trace_at_zero_frequency_is_two():
    assert trace(0.0, GraphParams(L=L_HALF)) == 2.0


def test_monodromy_rejects_nonpositive_omega():
    with pytest.raises(DomainError):
        monodromy_matrix(0.0, GraphParams(L=1.0))


@given(eps=st.floats(0.001, 1.0), L=st.floats(0.1, 6.0))
def test_hyperbolic_trace_exceeds_two(eps, L):
    # below the spectrum the trace continuation is strictly hyperbolic
    assert trace_hyperbolic(eps, GraphParams(L=L)) > 2.0


@given(L=st.floats(0.1, 10.0))
def test_band_edge_curvature_identity(L):
    # (L + pi/2)(L + 2 pi) = pi**2 + L**2 + (5/2) pi L
    p = GraphParams(L=L)
    expected = math.pi ** 2 + L ** 2 + 2.5 * math.pi * L
    assert band_edge_curvature(p) == pytest.approx(expected, rel=1e-14)


def test_find_bands_reference_edges_L_half(params_half):
    bands = find_bands(params_half, 6.0, 4000)
    assert len(bands) == len(REF_EDGES_HALF)
    for band, (lo, hi) in zip(bands, REF_EDGES_HALF):
        assert band.omega_lo == pytest.approx(lo, abs=1e-6)
        assert band.omega_hi == pytest.approx(hi, abs=1e-6)
    assert bands[0].omega_lo == 0.0


def test_band_lambda_endpoints():
    b = Band(0.5, 1.5)
    assert b.lambda_lo == 0.25 and b.lambda_hi == 2.25
    assert b.contains_omega(1.0) and not b.contains_omega(2.0)


@settings(deadline=None, max_examples=15)
@given(L=st.floats(0.3, 5.0))
def test_bands_sorted_and_disjoint(L):
    bands = find_bands(GraphParams(L=L), 5.0, 1200)
    for prev, cur in zip(bands[:-1], bands[1:]):
        assert prev.omega_lo < prev.omega_hi
        assert cur.omega_lo >= prev.omega_hi - 1e-8


@settings(deadline=None, max_examples=15)
@given(L=st.floats(0.3, 5.0))
def test_trace_within_two_inside_every_band(L):
    p = GraphParams(L=L)
    for band in find_bands(p, 5.0, 1200):
        for w in np.linspace(band.omega_lo, band.omega_hi, 17)[1:-1]:
            assert abs(trace(w, p)) <= 2.0 + 1e-9


def test_flat_band_classification_L_half(params_half):
    bands = find_bands(params_half, 6.0, 4000)
    expected = {1: FlatBandLocation.INTERIOR, 2: FlatBandLocation.EDGE,
                3: FlatBandLocation.INTERIOR, 4: FlatBandLocation.EDGE,
                5: FlatBandLocation.INTERIOR}
    for m, loc in expected.items():
        fb = classify_flat_band(m, params_half, bands)
        assert fb.location is loc
        assert fb.lam == m ** 2
    assert classify_flat_band(1, params_half, bands).host_band_index == 2


@settings(deadline=None, max_examples=10)
@given(L=st.floats(0.3, 4.0), m=st.integers(1, 4))
def test_flat_eigenvalue_always_inside_band_union(L, m):
    p = GraphParams(L=L)
    bands = find_bands(p, m + 1.0, 1500)
    assert any(b.contains_omega(float(m), tol=1e-6) for b in bands)


def test_flat_band_eigenfunction_structure(params_half):
    m = 2
    prof = flat_band_eigenfunction(m, 0, params_half)
    assert not prof.symmetric_ring_flag
    for cell in prof.cells:
        assert np.all(cell.link_phi == 0.0)
        if cell.cell != 0:
            assert np.all(cell.ring_phi == 0.0)
    ring = prof.cells[[c.cell for c in prof.cells].index(0)]
    # Dirichlet zeros at both ring vertices
    assert ring.ring_phi[0] == pytest.approx(0.0, abs=1e-12)
    assert ring.ring_phi[-1] == pytest.approx(0.0, abs=1e-12)
    # satisfies -phi'' = m**2 phi along the semicircle (second differences)
    x, y = ring.ring_x, ring.ring_phi
    h = x[1] - x[0]
    d2 = (y[2:] - 2 * y[1:-1] + y[:-2]) / h ** 2
    assert np.max(np.abs(d2 + m ** 2 * y[1:-1])) < 1e-2 * m ** 2


def test_classify_flat_band_rejects_bad_m(params_half):
    with pytest.raises(DomainError):
        classify_flat_band(0, params_half)


def test_find_bands_rejects_bad_grid(params_half):
    with pytest.raises(DomainError):
        find_bands(params_half, 6.0, 10)
    with pytest.raises(DomainError):
        find_bands(params_half, -1.0, 4000)


@pytest.mark.parametrize("L", [L_HALF, math.pi])
def test_lowest_band_dispersion_quadratic(L):
    p = GraphParams(L=L)
    for theta in (0.05, 0.1, 0.2):
        lam = lowest_band_dispersion(p, theta)
        assert lam == pytest.approx(theta ** 2 / band_edge_curvature(p),
                                    rel=5e-3)


def test_lowest_band_dispersion_solves_trace_equation(params_half):
    theta = 0.3
    lam = lowest_band_dispersion(params_half, theta)
    omega = math.sqrt(lam)
    assert trace(omega, params_half) == pytest.approx(2.0 * math.cos(theta),
                                                      abs=1e-10)
