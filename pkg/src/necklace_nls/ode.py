"""Edgewise integration of the stationary NLS initial-value problem.

The scalar problem is psi'' = eps**2 * psi - 2 * psi**3 with data
(psi, psi')(0) = (a, b).  Every trajectory conserves the first-order
invariant E = (psi')**2 - eps**2 psi**2 + psi**4, which is monitored (never
re-imposed) as an accuracy check.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from .errors import DomainError, IntegrationError

DEFAULT_TOL = 1e-10


def first_invariant(psi: float, dpsi: float, eps: float) -> float:
    """First-order invariant E = (psi')**2 - eps**2 psi**2 + psi**4."""
    return dpsi * dpsi - eps * eps * psi * psi + psi ** 4


@dataclass(frozen=True)
class IvpSolution:
    """Trajectory of the edge IVP: samples of (x, psi, psi') and the drift of E."""

    a: float
    b: float
    eps: float
    x: np.ndarray
    psi: np.ndarray
    dpsi: np.ndarray
    invariant_drift: float

    @property
    def end_state(self) -> tuple[float, float]:
        return float(self.psi[-1]), float(self.dpsi[-1])


def _rhs_factory(eps: float):
    e2 = eps * eps

    def rhs(x, y):
        p = y[0]
        return (y[1], e2 * p - 2.0 * p ** 3)

    return rhs


def integrate_ivp(a: float, b: float, eps: float, x_end: float,
                  tol: float = DEFAULT_TOL, x_eval=None) -> IvpSolution:
    """Integrate the edge IVP on [0, x_end] with an adaptive RK 5(4) pair.

    Samples are returned at the solver's accepted steps, or at ``x_eval``
    (plus both endpoints) when given.  The invariant drift max|E(x) - E(0)|
    is evaluated on the returned samples.
    """
    if x_end <= 0:
        raise DomainError("x_end must be positive")
    if tol <= 0:
        raise DomainError("tol must be positive")
    t_eval = None
    if x_eval is not None:
        t_eval = np.unique(np.concatenate(([0.0, x_end], np.asarray(x_eval, dtype=float))))
        if t_eval[0] < 0 or t_eval[-1] > x_end:
            raise DomainError("x_eval must lie inside [0, x_end]")
    sol = solve_ivp(_rhs_factory(eps), (0.0, x_end), (a, b), method="RK45",
                    rtol=0.1 * tol, atol=tol * 1e-3, t_eval=t_eval, dense_output=False)
    if not sol.success:
        raise IntegrationError(f"integration failed: {sol.message}")
    psi, dpsi = sol.y
    e = dpsi ** 2 - eps ** 2 * psi ** 2 + psi ** 4
    drift = float(np.max(np.abs(e - e[0])))
    return IvpSolution(a=a, b=b, eps=eps, x=sol.t, psi=psi, dpsi=dpsi,
                       invariant_drift=drift)


def propagate(a: float, b: float, eps: float, length: float,
              tol: float = DEFAULT_TOL) -> tuple[float, float]:
    """End state (psi, psi')(length) of the edge IVP; hot path for map steps."""
    sol = solve_ivp(_rhs_factory(eps), (0.0, length), (a, b), method="RK45",
                    rtol=0.1 * tol, atol=tol * 1e-3)
    if not sol.success:
        raise IntegrationError(f"integration failed: {sol.message}")
    return float(sol.y[0, -1]), float(sol.y[1, -1])


def derivative_at(a: float, b: float, eps: float, x: float,
                  tol: float = DEFAULT_TOL) -> float:
    """psi'(x) of the edge IVP started from (a, b); used for symmetry defects."""
    return propagate(a, b, eps, x, tol)[1]


def small_amplitude_expansion(alpha: float, beta: float, eps: float, x: float) -> tuple[float, float]:
    """Quartic-order small-amplitude expansion of psi(x; eps*alpha, eps**2*beta).

    psi = eps*[alpha + eps*beta*x + (1/2) eps**2 alpha (1 - 2 alpha**2) x**2
               + (1/6) eps**3 (1 - 6 alpha**2) beta x**3], with its x-derivative.
    The omitted remainder is O(eps**5) uniformly on bounded intervals.
    """
    c2 = 0.5 * alpha * (1.0 - 2.0 * alpha ** 2)
    c3 = (1.0 - 6.0 * alpha ** 2) * beta / 6.0
    psi = eps * (alpha + eps * beta * x + eps ** 2 * c2 * x ** 2 + eps ** 3 * c3 * x ** 3)
    dpsi = eps * (eps * beta + 2.0 * eps ** 2 * c2 * x + 3.0 * eps ** 3 * c3 * x ** 2)
    return psi, dpsi
