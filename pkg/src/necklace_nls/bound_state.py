"""Bound-state profiles on the necklace graph.

Profiles are produced two independent ways: assembled edge by edge from a
homoclinic orbit of the period map, or recomputed directly by shooting from
the symmetry center with the vertex transfer rules applied at every vertex.
Mass, energy, Sobolev norm, and vertex-condition residuals are evaluated on
the sampled profiles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.integrate import simpson

from .dmap import MapState, Symmetry
from .errors import BracketingError, DomainError, NumericalError
from .graph import CellSamples, GraphParams, PiecewiseProfile
from .homoclinic import Orbit, shoot_homoclinic
from .ode import integrate_ivp
from .spectral import band_edge_curvature, trace_hyperbolic


class Source(Enum):
    FROM_ORBIT = "from_orbit"
    DIRECT_SHOOTING = "direct_shooting"


@dataclass(frozen=True)
class BoundState:
    """A computed bound state with its integral diagnostics."""

    profile: PiecewiseProfile
    symmetry: Symmetry
    lam: float
    Q: float
    E: float
    h2_norm: float
    max_kirchhoff_residual: float
    source: Source

    @property
    def eps(self) -> float:
        return math.sqrt(-self.lam)


def _edge_quad(x, y):
    return float(simpson(y, x=x))


def charge(profile: PiecewiseProfile) -> float:
    """Mass Q = integral of phi**2 over the graph (semicircles counted twice)."""
    q = 0.0
    for cell in profile.cells:
        q += _edge_quad(cell.link_x, cell.link_phi ** 2)
        q += 2.0 * _edge_quad(cell.ring_x, cell.ring_phi ** 2)
    return q


def energy(profile: PiecewiseProfile) -> float:
    """Energy E = integral of (phi')**2 - phi**4 over the graph."""
    e = 0.0
    for cell in profile.cells:
        e += _edge_quad(cell.link_x, cell.link_dphi ** 2 - cell.link_phi ** 4)
        e += 2.0 * _edge_quad(cell.ring_x, cell.ring_dphi ** 2 - cell.ring_phi ** 4)
    return e


def h2_norm(profile: PiecewiseProfile, eps: float | None = None) -> float:
    """Piecewise H2 norm, with phi'' evaluated from the stationary equation."""
    if eps is None:
        eps = profile.eps
    total = 0.0
    for cell in profile.cells:
        for x, p, dp, w in ((cell.link_x, cell.link_phi, cell.link_dphi, 1.0),
                            (cell.ring_x, cell.ring_phi, cell.ring_dphi, 2.0)):
            ddp = eps ** 2 * p - 2.0 * p ** 3
            total += w * _edge_quad(x, p ** 2 + dp ** 2 + ddp ** 2)
    return math.sqrt(total)


def kirchhoff_residual(profile: PiecewiseProfile) -> float:
    """Worst vertex residual: |value mismatch| + |flux mismatch| over all vertices.

    Under the symmetric reduction the link flux must equal twice the stored
    semicircle flux; for antisymmetric ring profiles the vertex values and the
    link flux must vanish (the two semicircle fluxes cancel).
    """
    worst = 0.0
    cells = profile.cells
    for i, cell in enumerate(cells):
        lv, ld = cell.link_phi[-1], cell.link_dphi[-1]
        rv, rd = cell.ring_phi[0], cell.ring_dphi[0]
        if profile.symmetric_ring_flag:
            worst = max(worst, abs(lv - rv) + abs(ld - 2.0 * rd))
        else:
            worst = max(worst, abs(lv) + abs(rv) + abs(ld))
        if i + 1 < len(cells):
            nxt = cells[i + 1]
            rv, rd = cell.ring_phi[-1], cell.ring_dphi[-1]
            lv, ld = nxt.link_phi[0], nxt.link_dphi[0]
            if profile.symmetric_ring_flag:
                worst = max(worst, abs(rv - lv) + abs(2.0 * rd - ld))
            else:
                worst = max(worst, abs(rv) + abs(lv) + abs(ld))
    return float(worst)


def _sample_edge(a, b, eps, length, x0, samples, tol):
    """Integrate one edge from (a, b) and return global samples and end state."""
    xs = np.linspace(0.0, length, samples)
    sol = integrate_ivp(a, b, eps, length, tol=tol, x_eval=xs)
    return x0 + sol.x, sol.psi, sol.dpsi, sol.end_state


def assemble_profile(orbit: Orbit, samples_per_edge: int = 64,
                     tol: float = 1e-10, residual_tol: float = 1e-8) -> BoundState:
    """Bound state assembled from a homoclinic orbit, cell by cell."""
    if samples_per_edge < 16:
        raise DomainError("samples_per_edge must be >= 16")
    eps, params = orbit.eps, orbit.params
    cells = []
    for i, n in enumerate(orbit.n):
        x_link = n * params.P
        lx, lphi, ldphi, _ = _sample_edge(orbit.a[i], orbit.b[i], eps, params.L,
                                          x_link, samples_per_edge, tol)
        rx, rphi, rdphi, _ = _sample_edge(orbit.c[i], orbit.d[i], eps, math.pi,
                                          x_link + params.L, samples_per_edge, tol)
        cells.append(CellSamples(cell=int(n), link_x=lx, link_phi=lphi, link_dphi=ldphi,
                                 ring_x=rx, ring_phi=rphi, ring_dphi=rdphi))
    profile = PiecewiseProfile(params=params, eps=eps, cells=tuple(cells),
                               symmetric_ring_flag=True)
    res = kirchhoff_residual(profile)
    if res > residual_tol:
        raise NumericalError(f"assembled profile violates vertex conditions: residual {res:.2e}")
    return BoundState(profile=profile, symmetry=orbit.symmetry, lam=-eps ** 2,
                      Q=charge(profile), E=energy(profile),
                      h2_norm=h2_norm(profile, eps),
                      max_kirchhoff_residual=res, source=Source.FROM_ORBIT)


# ---------------------------------------------------------------------------
# direct shooting from the symmetry center


def _outward_edges(symmetry: Symmetry, params: GraphParams, n_cells: int):
    """Edge plan (length, kirchhoff factor applied to the outgoing derivative,
    edge tag) for integration away from the symmetry center."""
    plan = []
    if symmetry is Symmetry.LINK_CENTERED:
        plan.append((params.L / 2.0, 0.5, ("link0_half", 0)))
        for n in range(n_cells):
            plan.append((math.pi, 2.0, ("ring", n)))
            plan.append((params.L, 0.5, ("link", n + 1)))
        plan.append((math.pi, 2.0, ("ring", n_cells)))
    else:
        plan.append((math.pi / 2.0, 2.0, ("ring0_half", 0)))
        for n in range(n_cells):
            plan.append((params.L, 0.5, ("link", n + 1)))
            plan.append((math.pi, 2.0, ("ring", n + 1)))
        plan.append((params.L, 0.5, ("link", n_cells + 1)))
    return plan


def _classify(phi0, symmetry, eps, params, n_cells, tol):
    """-1: peak value too large, +1: too small, 0: decayed through the horizon.

    The decaying profile has phi' < 0 on the whole right half, so a zero
    crossing means phi0 was too large (-1), while a turn-around (phi' > 0
    with phi still above 5% of the peak) means the trajectory fell onto a
    bounded oscillation and phi0 was too small (+1).  Decay below 1e-6 of
    the peak over the outermost cell classifies as converged (0).
    """
    state = (phi0, 0.0)
    last_cell = []
    for length, factor, (tag, idx) in _outward_edges(symmetry, params, n_cells):
        xs = np.linspace(0.0, length, 17)
        sol = integrate_ivp(state[0], state[1], eps, length, tol=tol, x_eval=xs)
        for p, dp in zip(sol.psi, sol.dpsi):
            if p < -0.05 * phi0:
                return -1
            if dp > 1e-9 * phi0 and p > 0.05 * phi0:
                return +1
        if idx >= n_cells - 1:
            last_cell.append(np.max(np.abs(sol.psi)))
        v, dp = sol.end_state
        state = (v, factor * dp)
    if last_cell and max(last_cell) < 1e-6 * phi0:
        return 0
    return +1 if state[0] > 0 else -1


def _mirror_edge(x, phi, dphi, center2):
    """Reflect edge samples about the symmetry center (center2 = 2*x_center)."""
    return (center2 - x)[::-1], phi[::-1], (-dphi)[::-1]


def _shoot_profile(phi0, symmetry, eps, params, n_cells, samples_per_edge, tol):
    """Dense right-half integration from the center and mirrored full profile."""
    edges = {}
    state = (phi0, 0.0)
    for length, factor, key in _outward_edges(symmetry, params, n_cells):
        xs = np.linspace(0.0, length, samples_per_edge)
        sol = integrate_ivp(state[0], state[1], eps, length, tol=tol, x_eval=xs)
        edges[key] = (sol.x, sol.psi, sol.dpsi)
        v, dp = sol.end_state
        state = (v, factor * dp)

    P, L = params.P, params.L
    # seed round-off grows along the unstable direction at lam_plus per cell;
    # cells where that floor reaches a few percent of the local amplitude are
    # contaminated and get trimmed, together with non-decaying cells
    th = trace_hyperbolic(eps, params)
    lam_plus = 0.5 * (th + math.sqrt(max(th * th - 4.0, 0.0)))
    delta0 = 1e-14 * phi0

    def _trim(sups):
        for n in range(1, len(sups)):
            if sups[n] >= sups[n - 1] or delta0 * lam_plus ** (n + 1) > 0.05 * sups[n]:
                return max(0, n - 1)
        return len(sups)

    cells = []
    if symmetry is Symmetry.LINK_CENTERED:
        center2 = L  # reflection x -> L - x
        sups = [np.max(np.abs(edges[("ring", n)][1])) for n in range(n_cells)]
        K = _trim(sups)
        for n in range(-K, K + 1):
            if n > 0:
                lx, lp, ld = edges[("link", n)]
                lx = lx + n * P
            elif n == 0:
                hx, hp, hd = edges[("link0_half", 0)]
                hx = hx + L / 2.0
                mx, mp, md = _mirror_edge(hx, hp, hd, center2)
                lx = np.concatenate([mx[:-1], hx])
                lp = np.concatenate([mp[:-1], hp])
                ld = np.concatenate([md[:-1], hd])
            else:
                sx, sp_, sd = edges[("link", -n)]
                lx, lp, ld = _mirror_edge(sx + (-n) * P, sp_, sd, center2)
            if n >= 0:
                rx, rp, rd = edges[("ring", n)]
                rx = rx + n * P + L
            else:
                sx, sp_, sd = edges[("ring", -n - 1)]
                rx, rp, rd = _mirror_edge(sx + (-n - 1) * P + L, sp_, sd, center2)
            cells.append(CellSamples(cell=n, link_x=lx, link_phi=lp, link_dphi=ld,
                                     ring_x=rx, ring_phi=rp, ring_dphi=rd))
    else:
        center2 = P + L  # reflection about L + pi/2
        sups = [np.max(np.abs(edges[("link", n)][1])) for n in range(1, n_cells + 1)]
        K = _trim(sups)
        for n in range(-K, K + 1):
            if n >= 1:
                lx, lp, ld = edges[("link", n)]
                lx = lx + n * P
            else:
                sx, sp_, sd = edges[("link", 1 - n)]
                lx, lp, ld = _mirror_edge(sx + (1 - n) * P, sp_, sd, center2)
            if n >= 1:
                rx, rp, rd = edges[("ring", n)]
                rx = rx + n * P + L
            elif n == 0:
                hx, hp, hd = edges[("ring0_half", 0)]
                hx = hx + L + math.pi / 2.0
                mx, mp, md = _mirror_edge(hx, hp, hd, center2)
                rx = np.concatenate([mx[:-1], hx])
                rp = np.concatenate([mp[:-1], hp])
                rd = np.concatenate([md[:-1], hd])
            else:
                sx, sp_, sd = edges[("ring", -n)]
                rx, rp, rd = _mirror_edge(sx + (-n) * P + L, sp_, sd, center2)
            cells.append(CellSamples(cell=n, link_x=lx, link_phi=lp, link_dphi=ld,
                                     ring_x=rx, ring_phi=rp, ring_dphi=rd))

    return PiecewiseProfile(params=params, eps=eps, cells=tuple(cells),
                            symmetric_ring_flag=True)


def default_n_cells(eps: float, params: GraphParams) -> int:
    """Largest decay horizon certifiable in double precision: ~16/(eps*nu) cells."""
    nu = math.sqrt(band_edge_curvature(params))
    return max(3, math.ceil(16.0 / (eps * nu)))


def shoot_bound_state(lam: float, params: GraphParams, symmetry: Symmetry,
                      phi0_bracket: tuple[float, float] | None = None,
                      n_cells: int | None = None, tol: float = 1e-10,
                      samples_per_edge: int = 64) -> BoundState:
    """Bound state by direct shooting from the symmetry center.

    The peak value phi0 (with phi' = 0 there) is the shooting parameter; a
    trial is classified by whether the outward trajectory crosses zero or
    grows past 10*phi0 within the cell horizon, and phi0 is bisected until
    the trajectory decays through the horizon.
    """
    if lam >= 0:
        raise DomainError("bound states require lam < 0")
    eps = math.sqrt(-lam)
    if n_cells is None:
        n_cells = default_n_cells(eps, params)
    if phi0_bracket is None:
        phi0_bracket = (0.3 * eps, 2.0 * eps)

    lo, hi = phi0_bracket
    grid = np.linspace(lo, hi, 25)
    classes = [_classify(p, symmetry, eps, params, n_cells, tol) for p in grid]
    pair = None
    for i in range(len(grid) - 1):
        if classes[i] == 0:
            pair = (grid[i], grid[i])
            cls_lo = 0
            break
        if classes[i] * classes[i + 1] < 0:
            pair = (grid[i], grid[i + 1])
            cls_lo = classes[i]
            break
    if pair is None:
        raise BracketingError("phi0 bracket contains no undershoot/overshoot transition")

    p_lo, p_hi = pair
    phi0 = 0.5 * (p_lo + p_hi)
    for _ in range(80):
        if p_hi - p_lo <= 4e-16 * max(1.0, p_hi):
            break
        phi0 = 0.5 * (p_lo + p_hi)
        cls = _classify(phi0, symmetry, eps, params, n_cells, tol)
        if cls == 0:
            break
        if cls == cls_lo:
            p_lo = phi0
        else:
            p_hi = phi0
    else:
        phi0 = 0.5 * (p_lo + p_hi)

    profile = _shoot_profile(phi0, symmetry, eps, params, n_cells, samples_per_edge, tol)
    return BoundState(profile=profile, symmetry=symmetry, lam=lam,
                      Q=charge(profile), E=energy(profile),
                      h2_norm=h2_norm(profile, eps),
                      max_kirchhoff_residual=kirchhoff_residual(profile),
                      source=Source.DIRECT_SHOOTING)


def compare_families(eps: float, params: GraphParams,
                     samples_per_edge: int = 64) -> dict:
    """Run both symmetry families end to end and compare their masses."""
    out = {}
    for sym, key in ((Symmetry.LINK_CENTERED, "link"), (Symmetry.RING_CENTERED, "ring")):
        orbit = shoot_homoclinic(eps, params, sym)
        bs = assemble_profile(orbit, samples_per_edge=samples_per_edge)
        out[f"Q_{key}"] = bs.Q
        out[f"E_{key}"] = bs.E
    out["dQ_rel"] = abs(out["Q_link"] - out["Q_ring"]) / max(out["Q_link"], out["Q_ring"])
    return out
