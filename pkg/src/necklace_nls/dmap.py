"""The nonlinear period map on vertex data and its reversibility structure.

One cell of the graph transfers (value, derivative) data at a cell-start
vertex through the link (fluxes halved into the two symmetric semicircles)
and through the ring (fluxes doubled back into the link).  The composition
is a two-dimensional area-preserving map whose reversible homoclinic orbits
encode the bound states.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.optimize import brentq

from .errors import BracketingError, DomainError
from .graph import GraphParams
from .ode import DEFAULT_TOL, derivative_at, propagate


@dataclass(frozen=True)
class MapState:
    """Vertex data (a, b) = (phi, phi') at a cell-start vertex (or mid-cell pair (c, d))."""

    a: float
    b: float

    def scaled(self, eps: float) -> "ScaledState":
        return ScaledState(self.a / eps, self.b / eps ** 2)

    @property
    def norm(self) -> float:
        return math.hypot(self.a, self.b)


@dataclass(frozen=True)
class ScaledState:
    """Amplitude-scaled vertex data (alpha, beta) = (a/eps, b/eps**2)."""

    alpha: float
    beta: float

    def unscaled(self, eps: float) -> MapState:
        return MapState(eps * self.alpha, eps ** 2 * self.beta)

    @property
    def norm(self) -> float:
        return math.hypot(self.alpha, self.beta)


class Symmetry(Enum):
    LINK_CENTERED = "link"
    RING_CENTERED = "ring"


class CurveMode(Enum):
    ASYMPTOTIC = "asymptotic"
    EXACT = "exact"


def link_step(state: MapState, eps: float, params: GraphParams,
              tol: float = DEFAULT_TOL) -> MapState:
    """Transfer across one link: (a, b) -> (c, d) with the flux halved into the ring."""
    c, dpsi = propagate(state.a, state.b, eps, params.L, tol)
    return MapState(c, 0.5 * dpsi)


def ring_step(state: MapState, eps: float, params: GraphParams,
              tol: float = DEFAULT_TOL) -> MapState:
    """Transfer across one semicircle: (c, d) -> (a', b') with the flux doubled into the link."""
    a2, dpsi = propagate(state.a, state.b, eps, math.pi, tol)
    return MapState(a2, 2.0 * dpsi)


def period_map(state: MapState, eps: float, params: GraphParams,
               tol: float = DEFAULT_TOL) -> MapState:
    """One full cell: ring_step after link_step."""
    return ring_step(link_step(state, eps, params, tol), eps, params, tol)


def inverse_period_map(state: MapState, eps: float, params: GraphParams,
                       tol: float = DEFAULT_TOL) -> MapState:
    """Inverse cell transfer, realized by reversed-direction edge integration."""
    # undo the ring: data at the ring's right endpoint is (a', b'/2)
    c, mdpsi = propagate(state.a, -0.5 * state.b, eps, math.pi, tol)
    # undo the link: its right-endpoint derivative is 2*d with d = -mdpsi
    a, mb = propagate(c, 2.0 * mdpsi, eps, params.L, tol)
    return MapState(a, -mb)


def scaled_map_truncated(state: ScaledState, eps: float, params: GraphParams) -> ScaledState:
    """Polynomial truncation of the scaled period map.

    Keeps terms through eps**3 in the alpha-update and eps**2 in the
    beta-update; the dropped remainders are O(eps**4) and O(eps**3).  The
    eps**2 beta coefficient is the one produced by composing the link and
    ring connection formulas, (1/2)(L**2 + 4*pi*L + pi**2).
    """
    L, p = params.L, math.pi
    al, be = state.alpha, state.beta
    one_m2a2 = 1.0 - 2.0 * al ** 2
    one_m6a2 = 1.0 - 6.0 * al ** 2
    alpha_next = (al
                  + eps * (L + p / 2.0) * be
                  + 0.5 * eps ** 2 * (L ** 2 + p * L + p ** 2) * one_m2a2 * al
                  + eps ** 3 / 12.0 * (2 * L ** 3 + 3 * L ** 2 * p + 6 * L * p ** 2 + p ** 3)
                  * one_m6a2 * be)
    beta_next = (be
                 + eps * (L + 2.0 * p) * one_m2a2 * al
                 + 0.5 * eps ** 2 * (L ** 2 + 4 * L * p + p ** 2) * one_m6a2 * be)
    return ScaledState(alpha_next, beta_next)


def jacobian(point: MapState, eps: float, params: GraphParams,
             h: float | None = None, tol: float = 1e-12) -> np.ndarray:
    """Central finite-difference Jacobian of the period map at a point."""
    if h is None:
        h = 1e-6 * max(1.0, point.norm)
    if h <= 0:
        raise DomainError("finite-difference step h must be positive")
    cols = []
    for da, db in ((h, 0.0), (0.0, h)):
        plus = period_map(MapState(point.a + da, point.b + db), eps, params, tol)
        minus = period_map(MapState(point.a - da, point.b - db), eps, params, tol)
        cols.append([(plus.a - minus.a) / (2 * h), (plus.b - minus.b) / (2 * h)])
    return np.array(cols).T


def symmetry_defect_link(state: MapState, eps: float, params: GraphParams,
                         tol: float = DEFAULT_TOL) -> float:
    """phi'(L/2) along the orbit through cell-start data; zero iff link-symmetric."""
    return derivative_at(state.a, state.b, eps, params.L / 2.0, tol)


def symmetry_defect_ring(mid_state: MapState, eps: float, params: GraphParams,
                         tol: float = DEFAULT_TOL) -> float:
    """phi'(pi/2) on the ring from mid-cell data (c, d); zero iff ring-symmetric."""
    return derivative_at(mid_state.a, mid_state.b, eps, math.pi / 2.0, tol)


def asymptotic_symmetry_beta(alpha: float, eps: float, params: GraphParams,
                             which: Symmetry) -> float:
    """Leading-order reversibility curve beta(alpha) in scaled coordinates.

    Link-centered: beta = -(eps*L/2)(1 - 2 alpha**2) alpha.
    Ring-centered (expressed at the cell start): beta = -eps(L + pi)(1 - 2 alpha**2) alpha.
    """
    factor = params.L / 2.0 if which is Symmetry.LINK_CENTERED else params.L + math.pi
    return -eps * factor * (1.0 - 2.0 * alpha ** 2) * alpha


def _scaled_defect(alpha: float, beta: float, eps: float, params: GraphParams,
                   which: Symmetry, tol: float) -> float:
    state = ScaledState(alpha, beta).unscaled(eps)
    if which is Symmetry.LINK_CENTERED:
        return symmetry_defect_link(state, eps, params, tol)
    return symmetry_defect_ring(link_step(state, eps, params, tol), eps, params, tol)


def symmetry_curve(alpha: float, eps: float, params: GraphParams,
                   which: Symmetry = Symmetry.LINK_CENTERED,
                   mode: CurveMode = CurveMode.ASYMPTOTIC,
                   tol: float = DEFAULT_TOL) -> float:
    """beta on the reversibility curve at a given scaled alpha.

    Asymptotic mode evaluates the leading-order formula; exact mode
    root-finds the true symmetry defect in beta, seeded at the asymptotic
    value with a bracket that widens geometrically up to |beta| <= 1.
    """
    beta0 = asymptotic_symmetry_beta(alpha, eps, params, which)
    if mode is CurveMode.ASYMPTOTIC:
        return beta0

    def defect(beta):
        return _scaled_defect(alpha, beta, eps, params, which, tol)

    half = max(5.0 * eps ** 3, 1e-12)
    while half <= 1.0:
        lo, hi = beta0 - half, beta0 + half
        flo, fhi = defect(lo), defect(hi)
        if flo == 0.0:
            return lo
        if fhi == 0.0:
            return hi
        if flo * fhi < 0:
            return brentq(defect, lo, hi, xtol=1e-14)
        half *= 4.0
    raise BracketingError("exact symmetry curve: no defect sign change within |beta| <= 1")
