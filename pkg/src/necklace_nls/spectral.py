"""Linear spectral theory of the Laplacian on the necklace graph.

The symmetric-reduction transfer across one cell is encoded by a 2x2
monodromy matrix M(omega); bands are the omega-intervals with |tr M| <= 2.
On top of the bands sits a sequence of flat eigenvalues m**2 of infinite
multiplicity carried by ring-supported antisymmetric eigenfunctions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from .errors import DomainError, GridError
from .graph import CellIndex, CellSamples, GraphParams, PiecewiseProfile

#: |T| - 2 tolerance used when classifying band-edge membership.
EDGE_TOL = 1e-9
#: omega tolerance for band-edge refinement.
OMEGA_TOL = 1e-10


@dataclass(frozen=True)
class Matrix2:
    """Real 2x2 matrix with trace/determinant accessors."""

    m11: float
    m12: float
    m21: float
    m22: float

    @property
    def trace(self) -> float:
        return self.m11 + self.m22

    @property
    def det(self) -> float:
        return self.m11 * self.m22 - self.m12 * self.m21

    def as_array(self) -> np.ndarray:
        return np.array([[self.m11, self.m12], [self.m21, self.m22]])

    @staticmethod
    def from_array(a) -> "Matrix2":
        return Matrix2(float(a[0][0]), float(a[0][1]), float(a[1][0]), float(a[1][1]))


@dataclass(frozen=True)
class Band:
    """One spectral band [omega_lo, omega_hi], with lambda = omega**2 endpoints."""

    omega_lo: float
    omega_hi: float

    @property
    def lambda_lo(self) -> float:
        return self.omega_lo ** 2

    @property
    def lambda_hi(self) -> float:
        return self.omega_hi ** 2

    def contains_omega(self, omega: float, tol: float = 1e-8) -> bool:
        return self.omega_lo - tol <= omega <= self.omega_hi + tol


class FlatBandLocation(Enum):
    EDGE = "edge"
    INTERIOR = "interior"


@dataclass(frozen=True)
class FlatBand:
    """Flat eigenvalue lambda = m**2 of infinite multiplicity and its location."""

    m: int
    location: FlatBandLocation
    host_band_index: int

    @property
    def lam(self) -> float:
        return float(self.m ** 2)


def monodromy_matrix(omega: float, params: GraphParams) -> Matrix2:
    """Transfer matrix of (value, derivative) vertex data across one cell.

    Product of the ring factor (fluxes doubled out of the ring) and the link
    factor (fluxes halved into the ring).  det = 1 identically.
    """
    if omega <= 0:
        raise DomainError("monodromy_matrix requires omega > 0; the omega -> 0 limit is the identity")
    cp, sp_ = math.cos(omega * math.pi), math.sin(omega * math.pi)
    cl, sl = math.cos(omega * params.L), math.sin(omega * params.L)
    ring = np.array([[cp, sp_], [-2.0 * sp_, 2.0 * cp]])
    link = np.array([[cl, sl], [-0.5 * sl, 0.5 * cl]])
    return Matrix2.from_array(ring @ link)


def trace(omega: float, params: GraphParams) -> float:
    """Closed-form monodromy trace T(omega)."""
    if omega < 0:
        raise DomainError("trace requires omega >= 0")
    return 2.0 * math.cos(omega * math.pi) * math.cos(omega * params.L) \
        - 2.5 * math.sin(omega * math.pi) * math.sin(omega * params.L)


def trace_hyperbolic(eps: float, params: GraphParams) -> float:
    """Monodromy trace continued to omega = i*eps (frequency below the spectrum)."""
    return 2.0 * math.cosh(eps * math.pi) * math.cosh(eps * params.L) \
        + 2.5 * math.sinh(eps * math.pi) * math.sinh(eps * params.L)


def band_edge_curvature(params: GraphParams) -> float:
    """Curvature constant nu**2 = (L + pi/2)(L + 2*pi) of the lowest band edge."""
    return (params.L + math.pi / 2.0) * (params.L + 2.0 * math.pi)


def _split_at_touchings(params, lo, hi, grid):
    """Interior cut intervals of [lo, hi] where |T| reaches or exceeds 2.

    A tangential touching (|T| = 2 exactly) yields a zero-width cut; a local
    extremum slightly beyond 2 is a narrow gap the coarse scan missed, and
    yields the interval between its two |T| = 2 crossings.  Returns a sorted
    list of (w_left, w_right) pairs.
    """
    omegas = np.linspace(lo, hi, max(grid, 16))
    tvals = np.array([trace(w, params) for w in omegas])
    cuts = []
    for sign in (+1.0, -1.0):
        # local extrema of sign*T approaching +2 from below
        g = sign * tvals
        for i in range(1, len(omegas) - 1):
            if g[i] >= g[i - 1] and g[i] >= g[i + 1] and g[i] > 2.0 - 1e-3:
                res = minimize_scalar(
                    lambda w: -sign * trace(w, params),
                    bracket=(omegas[i - 1], omegas[i], omegas[i + 1]),
                    method="brent",
                    options={"xtol": OMEGA_TOL},
                )
                w_star = float(res.x)
                peak = -res.fun
                if not lo + OMEGA_TOL < w_star < hi - OMEGA_TOL:
                    continue
                if abs(peak - 2.0) <= EDGE_TOL:
                    cuts.append((w_star, w_star))
                elif peak > 2.0:
                    # narrow gap: bracket the two crossings around the extremum
                    # between grid samples that are strictly inside the band
                    f = lambda w: sign * trace(w, params) - 2.0
                    jl, jr = i - 1, i + 1
                    while jl > 0 and g[jl] >= 2.0:
                        jl -= 1
                    while jr < len(omegas) - 1 and g[jr] >= 2.0:
                        jr += 1
                    if g[jl] >= 2.0 or g[jr] >= 2.0:
                        continue
                    w_l = brentq(f, omegas[jl], w_star, xtol=OMEGA_TOL)
                    w_r = brentq(f, w_star, omegas[jr], xtol=OMEGA_TOL)
                    cuts.append((w_l, w_r))
    return sorted(cuts)


def find_bands(params: GraphParams, omega_max: float, grid_points: int = 4000) -> list[Band]:
    """Spectral bands on [0, omega_max] from the condition |T(omega)| <= 2.

    Scans T on a uniform grid, refines the |T| = 2 crossings by bisection to
    1e-10 in omega, and splits bands at interior tangential touchings
    (zero-width gaps) so that touching bands are reported separately.
    """
    if omega_max <= 0:
        raise DomainError("omega_max must be positive")
    if grid_points < 100:
        raise DomainError("grid_points must be >= 100")

    omegas = np.linspace(0.0, omega_max, grid_points)
    tvals = np.array([trace(w, params) for w in omegas])
    inside = np.abs(tvals) <= 2.0

    def refine(w_out, w_in):
        # band boundary between an outside sample and an inside sample
        target = 2.0 if trace(w_out, params) > 2.0 else -2.0
        a, b = (w_out, w_in) if w_out < w_in else (w_in, w_out)
        return brentq(lambda w: trace(w, params) - target, a, b, xtol=OMEGA_TOL)

    raw: list[tuple[float, float]] = []
    i = 0
    n = len(omegas)
    while i < n:
        if not inside[i]:
            i += 1
            continue
        j = i
        while j + 1 < n and inside[j + 1]:
            j += 1
        lo = omegas[i] if i == 0 else refine(omegas[i - 1], omegas[i])
        hi = omegas[j] if j == n - 1 else refine(omegas[j + 1], omegas[j])
        if hi - lo > 10 * OMEGA_TOL:
            raw.append((lo, hi))
        i = j + 1

    if not raw:
        raise GridError("no bands found; the grid may be too coarse, try more grid_points")

    bands: list[Band] = []
    for lo, hi in raw:
        local_grid = max(64, int(grid_points * (hi - lo) / omega_max))
        cuts = _split_at_touchings(params, lo, hi, local_grid)
        start = lo
        for w_l, w_r in cuts:
            if w_l - start > 10 * OMEGA_TOL:
                bands.append(Band(start, w_l))
            start = w_r
        if hi - start > 10 * OMEGA_TOL:
            bands.append(Band(start, hi))

    for prev, cur in zip(bands[:-1], bands[1:]):
        if cur.omega_lo < prev.omega_hi - 10 * OMEGA_TOL:
            raise GridError("overlapping bands detected; increase grid_points")
    return bands


def classify_flat_band(m: int, params: GraphParams, bands: list[Band] | None = None,
                       omega_max: float | None = None) -> FlatBand:
    """Locate the flat eigenvalue m**2 relative to the band structure.

    |cos(mL)| = 1 puts it at a band edge, |cos(mL)| < 1 in a band interior;
    the host band is found by membership of omega = m in the band list.
    """
    if m < 1:
        raise DomainError("flat-band index m must be a positive integer")
    c = abs(math.cos(m * params.L))
    location = FlatBandLocation.EDGE if abs(c - 1.0) <= 1e-9 else FlatBandLocation.INTERIOR
    if bands is None:
        bands = find_bands(params, omega_max if omega_max is not None else m + 1.0)
    host = -1
    for k, band in enumerate(bands):
        if band.contains_omega(float(m)):
            host = k + 1  # 1-based, matching "second spectral band" phrasing
            break
    if host < 0:
        raise GridError(f"omega = {m} not inside any band of the supplied list")
    return FlatBand(m=m, location=location, host_band_index=host)


def flat_band_eigenfunction(m: int, k: CellIndex, params: GraphParams,
                            n_cells: int = 3, samples_per_edge: int = 64) -> PiecewiseProfile:
    """Compactly supported eigenfunction for lambda = m**2 on the k-th ring.

    Zero on every link; +-sin(m * s) on the two semicircles of ring k, where s
    is the local coordinate from the ring's left vertex, so both Dirichlet
    endpoints vanish for every L.  The stored semicircle is the upper one.
    """
    if m < 1:
        raise DomainError("flat-band index m must be a positive integer")
    half = max(1, n_cells // 2)
    cells = []
    for n in range(k - half, k + half + 1):
        x0 = n * params.P
        lx = np.linspace(x0, x0 + params.L, samples_per_edge)
        rx = np.linspace(x0 + params.L, (n + 1) * params.P, samples_per_edge)
        if n == k:
            s = rx - (x0 + params.L)
            rphi = np.sin(m * s)
            rdphi = m * np.cos(m * s)
        else:
            rphi = np.zeros_like(rx)
            rdphi = np.zeros_like(rx)
        cells.append(CellSamples(
            cell=n,
            link_x=lx, link_phi=np.zeros_like(lx), link_dphi=np.zeros_like(lx),
            ring_x=rx, ring_phi=rphi, ring_dphi=rdphi,
        ))
    return PiecewiseProfile(params=params, eps=0.0, cells=tuple(cells),
                            symmetric_ring_flag=False)


def lowest_band_dispersion(params: GraphParams, theta: float) -> float:
    """lambda(theta) on the lowest band: smallest omega with T(omega) = 2*cos(theta)."""
    if not 0 < theta <= math.pi:
        raise DomainError("theta must lie in (0, pi]")
    target = 2.0 * math.cos(theta)
    # T decreases from 2 at omega = 0; bracket the first crossing
    w_hi = theta / math.sqrt(band_edge_curvature(params))
    while trace(w_hi, params) > target:
        w_hi *= 1.5
    omega = brentq(lambda w: trace(w, params) - target, 0.0, w_hi, xtol=1e-14)
    return omega ** 2
