"""Reversible homoclinic orbits of the period map.

The origin is a hyperbolic fixed point with eigenvalues 1 +- eps*nu + O(eps**2).
A homoclinic orbit is found by seeding on the one-dimensional unstable
direction, iterating the map until the symmetry defect (phi' at the link or
ring midpoint) changes sign, and bisecting the seed arclength so the defect
vanishes at a designated step.  The left half then follows from the
reversibility relations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from .dmap import (MapState, ScaledState, Symmetry, link_step, period_map,
                   jacobian, symmetry_defect_link, symmetry_defect_ring)
from .errors import DomainError, NoCrossingError, NumericalError
from .graph import GraphParams
from .spectral import band_edge_curvature

#: Map tolerance used throughout orbit construction.
MAP_TOL = 1e-12
#: Scaled norm below which the tail is truncated.
TAIL_CUTOFF = 1e-8
#: Scaled norm above which the manifold sweep is abandoned.
MAX_SCALED_NORM = 5.0


@dataclass(frozen=True)
class OrbitDiagnostics:
    """Observable conclusions about a homoclinic orbit."""

    all_positive: bool
    monotone_tail_index: int
    tail_decay_ratio: float
    #: sqrt(eps)-weighted l2 distance of (alpha, beta) to the fitted sech
    #: profile, i.e. the continuum L2 norm in the slow variable X = eps*n.
    l2_distance_to_sech: float
    sech_shift: float
    max_state_norm: float


@dataclass(frozen=True)
class Orbit:
    """A reversible homoclinic orbit: vertex data and mid-cell data per cell.

    Index arrays run over a contiguous cell range with the symmetry center in
    cell 0 (link midpoint or ring midpoint).  (a, b) are cell-start vertex
    data, (c, d) the post-link mid-cell data of the same cell.
    """

    eps: float
    params: GraphParams
    symmetry: Symmetry
    n: np.ndarray
    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    d: np.ndarray
    seed_parameter: float
    diagnostics: OrbitDiagnostics

    @property
    def alpha(self) -> np.ndarray:
        return self.a / self.eps

    @property
    def beta(self) -> np.ndarray:
        return self.b / self.eps ** 2

    @property
    def gamma(self) -> np.ndarray:
        return self.c / self.eps

    @property
    def delta(self) -> np.ndarray:
        return self.d / self.eps ** 2

    def state(self, n: int) -> MapState:
        i = int(n - self.n[0])
        return MapState(float(self.a[i]), float(self.b[i]))

    def mid_state(self, n: int) -> MapState:
        i = int(n - self.n[0])
        return MapState(float(self.c[i]), float(self.d[i]))


def unstable_direction(eps: float, params: GraphParams, h: float = 1e-7) -> np.ndarray:
    """Unit eigenvector of the origin Jacobian for the eigenvalue > 1.

    Oriented into the first quadrant of scaled (alpha, beta) coordinates.
    """
    if eps <= 0:
        raise DomainError("eps must be positive")
    jac = jacobian(MapState(0.0, 0.0), eps, params, h=h)
    evals, evecs = np.linalg.eig(jac)
    if abs(evals[0] - evals[1]) < 10 * h:
        raise NumericalError("origin is not hyperbolic within resolution (eps too small?)")
    idx = int(np.argmax(evals.real))
    if evals[idx].real <= 1.0:
        raise NumericalError("no unstable eigenvalue found at the origin")
    v = evecs[:, idx].real
    v = v / np.linalg.norm(v)
    if v[0] < 0:
        v = -v
    return v


def sech_approximation(eps: float, X0: float, n: int, params: GraphParams) -> ScaledState:
    """Continuum sech profile sampled at cell n with shift X0.

    alpha = sech(nu*(eps*n - eps/2 + X0)), beta = -mu*tanh*sech at the same
    argument, with mu**2 = (L + 2*pi)/(L + pi/2).
    """
    nu = math.sqrt(band_edge_curvature(params))
    mu = math.sqrt((params.L + 2.0 * math.pi) / (params.L + math.pi / 2.0))
    X = eps * n - eps / 2.0 + X0
    sech = 1.0 / math.cosh(nu * X)
    return ScaledState(sech, -mu * math.tanh(nu * X) * sech)


def _sech_pair(eps: float, X0: float, n: np.ndarray, params: GraphParams):
    nu = math.sqrt(band_edge_curvature(params))
    mu = math.sqrt((params.L + 2.0 * math.pi) / (params.L + math.pi / 2.0))
    X = eps * n - eps / 2.0 + X0
    sech = 1.0 / np.cosh(nu * X)
    return sech, -mu * np.tanh(nu * X) * sech


def _defect(state: MapState, eps: float, params: GraphParams, symmetry: Symmetry) -> float:
    if symmetry is Symmetry.LINK_CENTERED:
        return symmetry_defect_link(state, eps, params, MAP_TOL)
    return symmetry_defect_ring(link_step(state, eps, params, MAP_TOL), eps, params, MAP_TOL)


def _sweep_to_crossing(seed: MapState, eps: float, params: GraphParams,
                       symmetry: Symmetry, max_steps: int) -> int:
    """First map-iterate index at which the symmetry defect changes sign."""
    state = seed
    sign0 = math.copysign(1.0, _defect(state, eps, params, symmetry))
    for m in range(1, max_steps + 1):
        state = period_map(state, eps, params, MAP_TOL)
        if state.scaled(eps).norm > MAX_SCALED_NORM:
            raise NoCrossingError("manifold sweep left the bounded region before a defect sign change")
        if math.copysign(1.0, _defect(state, eps, params, symmetry)) != sign0:
            return m
    raise NoCrossingError(f"no symmetry-defect sign change within {max_steps} map steps")


def _defect_at_step(s: float, direction: np.ndarray, m: int, eps: float,
                    params: GraphParams, symmetry: Symmetry) -> float:
    state = MapState(s * direction[0], s * direction[1])
    for _ in range(m):
        state = period_map(state, eps, params, MAP_TOL)
    return _defect(state, eps, params, symmetry)


def shoot_homoclinic(eps: float, params: GraphParams, symmetry: Symmetry,
                     s_rel_tol: float = 1e-15, max_steps: int = 5000) -> Orbit:
    """Construct the reversible homoclinic orbit for one symmetry family.

    Seeds on the unstable direction with unscaled norm 1e-3*eps, locates the
    first symmetry-defect sign change along the orbit, and bisects the seed
    arclength until the defect vanishes at that step.  The symmetric cell is
    re-indexed to n = 0 and the left half is completed by the reversibility
    relations.
    """
    if not 0 < eps <= 0.1:
        raise DomainError("shoot_homoclinic is validated for 0 < eps <= 0.1")
    direction = unstable_direction(eps, params)
    nu = math.sqrt(band_edge_curvature(params))
    lam_plus = 1.0 + eps * nu

    s0 = 1e-3 * eps
    m = _sweep_to_crossing(MapState(s0 * direction[0], s0 * direction[1]),
                          eps, params, symmetry, max_steps)

    def g(s):
        return _defect_at_step(s, direction, m, eps, params, symmetry)

    g_hi = g(s0)
    s_lo, s_hi = s0, s0
    for _ in range(8):
        s_lo = s_hi / lam_plus
        g_lo = g(s_lo)
        if g_lo * g_hi < 0:
            break
        s_hi, g_hi = s_lo, g_lo
    else:
        raise NoCrossingError("could not bracket the symmetry crossing in the seed parameter")

    s_star = brentq(g, s_lo, s_hi, rtol=max(s_rel_tol, 9e-16), xtol=1e-300)

    # symmetric cell state
    state0 = MapState(s_star * direction[0], s_star * direction[1])
    for _ in range(m):
        state0 = period_map(state0, eps, params, MAP_TOL)

    # forward tail: stop at the cutoff, at the step cap, or where the local
    # decay ratio degrades past the linear rate (seed round-off re-growing)
    lam_minus = float(np.min(np.linalg.eigvals(
        jacobian(MapState(0.0, 0.0), eps, params)).real))
    cap = math.ceil(40.0 / (eps * nu))
    fwd = [state0]
    while len(fwd) - 1 < cap + 1:
        nxt = period_map(fwd[-1], eps, params, MAP_TOL)
        prev_norm = fwd[-1].scaled(eps).norm
        nxt_norm = nxt.scaled(eps).norm
        if len(fwd) >= 3 and prev_norm < 0.05 and nxt_norm > prev_norm * (lam_minus + 1e-3):
            break
        fwd.append(nxt)
        if nxt_norm < TAIL_CUTOFF and len(fwd) >= 3:
            break
    mids_fwd = [link_step(st, eps, params, MAP_TOL) for st in fwd]
    N = len(fwd) - 2  # states available for n = 0..N+1

    # left half by the reversibility relations
    if symmetry is Symmetry.LINK_CENTERED:
        # a_{-n} = c_n, b_{-n} = -2 d_n
        neg = [MapState(mids_fwd[k].a, -2.0 * mids_fwd[k].b) for k in range(1, N + 1)]
    else:
        # a_{-n} = c_{n+1}, b_{-n} = -2 d_{n+1}
        neg = [MapState(mids_fwd[k + 1].a, -2.0 * mids_fwd[k + 1].b) for k in range(1, N + 1)]
    mids_neg = [link_step(st, eps, params, MAP_TOL) for st in neg]

    ns = np.arange(-N, N + 2)
    states = list(reversed(neg)) + fwd
    mids = list(reversed(mids_neg)) + mids_fwd
    a = np.array([st.a for st in states])
    b = np.array([st.b for st in states])
    c = np.array([st.a for st in mids])
    d = np.array([st.b for st in mids])

    orbit = Orbit(eps=eps, params=params, symmetry=symmetry, n=ns,
                  a=a, b=b, c=c, d=d, seed_parameter=s_star,
                  diagnostics=_EMPTY_DIAGNOSTICS)
    diags = orbit_diagnostics(orbit)
    return Orbit(eps=eps, params=params, symmetry=symmetry, n=ns,
                 a=a, b=b, c=c, d=d, seed_parameter=s_star, diagnostics=diags)


_EMPTY_DIAGNOSTICS = OrbitDiagnostics(False, -1, math.nan, math.nan, math.nan, math.nan)


def orbit_diagnostics(orbit: Orbit, mono_slack: float = 1e-9) -> OrbitDiagnostics:
    """Positivity, tail monotonicity, decay ratio, and sech proximity of an orbit."""
    alpha, beta = orbit.alpha, orbit.beta
    ns = orbit.n
    all_positive = bool(np.all(alpha > 0))

    # smallest N with alpha decreasing for n >= N and increasing for n <= -N
    n_fwd = 0
    for i in range(len(ns) - 1):
        if ns[i] >= 0 and alpha[i + 1] > alpha[i] + mono_slack:
            n_fwd = max(n_fwd, int(ns[i + 1]))
    n_bwd = 0
    for i in range(len(ns) - 1):
        if ns[i + 1] <= 0 and alpha[i] > alpha[i + 1] + mono_slack:
            n_bwd = max(n_bwd, int(-ns[i]))
    mono_n = max(n_fwd, n_bwd)

    # geometric-mean decay ratio over the last 20% of the forward tail
    pos = alpha[ns >= 0]
    k = max(2, int(0.2 * len(pos)))
    tail = pos[-k:]
    ratios = tail[1:] / tail[:-1]
    tail_ratio = float(np.exp(np.mean(np.log(ratios)))) if np.all(ratios > 0) else math.nan

    # continuum-normalized l2 distance: sqrt(eps * sum |.|**2) discretizes the
    # L2 norm in the slow variable X = eps*n, under which the sech profile
    # itself has O(1) norm independent of eps
    def dist(X0):
        sa, sb = _sech_pair(orbit.eps, X0, ns, orbit.params)
        return math.sqrt(orbit.eps * float(np.sum((alpha - sa) ** 2)
                                           + np.sum((beta - sb) ** 2)))

    res = minimize_scalar(dist, bounds=(-2.0, 2.0), method="bounded",
                          options={"xatol": 1e-12})
    return OrbitDiagnostics(
        all_positive=all_positive,
        monotone_tail_index=mono_n,
        tail_decay_ratio=tail_ratio,
        l2_distance_to_sech=float(res.fun),
        sech_shift=float(res.x),
        max_state_norm=float(np.max(np.hypot(alpha, beta))),
    )
