"""Geometry of the periodic necklace graph and piecewise function storage.

The graph consists of horizontal links of length L joined by rings of
circumference 2*pi; one cell is a link followed by a ring, with period
P = L + pi.  Global arclength coordinates are used throughout: the link of
cell n spans [n*P, n*P + L] and its semicircles span [n*P + L, (n+1)*P].
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import DomainError

#: Cells are indexed by plain signed integers.
CellIndex = int


@dataclass(frozen=True)
class GraphParams:
    """Geometry of the necklace graph: link length L, derived period P = L + pi."""

    L: float

    def __post_init__(self):
        if not (self.L > 0 and math.isfinite(self.L)):
            raise DomainError(f"link length L must be positive and finite, got {self.L}")

    @property
    def P(self) -> float:
        return self.L + math.pi

    @property
    def semicircle(self) -> float:
        return math.pi


class EdgeKind(Enum):
    LINK = "link"
    SEMICIRCLE_UPPER = "semicircle_upper"
    SEMICIRCLE_LOWER = "semicircle_lower"


@dataclass(frozen=True)
class EdgeRef:
    """One edge of the graph: the link or one semicircle of a given cell."""

    cell: CellIndex
    kind: EdgeKind

    def length(self, params: GraphParams) -> float:
        return params.L if self.kind is EdgeKind.LINK else math.pi


def position_of(edge: EdgeRef, t: float, params: GraphParams) -> float:
    """Global arclength coordinate of the point at fraction t in [0, 1] along an edge."""
    if not 0.0 <= t <= 1.0:
        raise DomainError(f"edge parameter t must lie in [0, 1], got {t}")
    start = edge.cell * params.P
    if edge.kind is EdgeKind.LINK:
        return start + t * params.L
    return start + params.L + t * math.pi


@dataclass(frozen=True)
class CellSamples:
    """Sampled (x, phi, phi') data on the link and on one semicircle of a cell.

    Abscissae are global coordinates, strictly increasing, covering the edge.
    """

    cell: CellIndex
    link_x: np.ndarray
    link_phi: np.ndarray
    link_dphi: np.ndarray
    ring_x: np.ndarray
    ring_phi: np.ndarray
    ring_dphi: np.ndarray

    def __post_init__(self):
        for x in (self.link_x, self.ring_x):
            if x.size < 2 or not np.all(np.diff(x) > 0):
                raise DomainError("edge abscissae must be strictly increasing with >= 2 samples")


@dataclass(frozen=True)
class PiecewiseProfile:
    """A function on a truncated necklace graph, sampled edge by edge.

    When ``symmetric_ring_flag`` is true the stored semicircle stands for both
    the upper and the lower one (the symmetric reduction); when false the
    stored semicircle is the upper one and the lower is its negative
    (the antisymmetric, ring-supported reduction).
    """

    params: GraphParams
    eps: float
    cells: tuple[CellSamples, ...]
    symmetric_ring_flag: bool = True

    def __post_init__(self):
        cells = tuple(self.cells)
        object.__setattr__(self, "cells", cells)
        indices = [c.cell for c in cells]
        if indices != sorted(indices) or len(set(indices)) != len(indices):
            raise DomainError("cells must be sorted by cell index without duplicates")
        if indices and indices != list(range(indices[0], indices[-1] + 1)):
            raise DomainError("cell range must be contiguous")

    @property
    def n_min(self) -> int:
        return self.cells[0].cell

    @property
    def n_max(self) -> int:
        return self.cells[-1].cell

    @property
    def lam(self) -> float:
        """Frequency Lambda = -eps**2 of the stationary problem."""
        return -self.eps ** 2

    def sup_abs(self) -> float:
        return max(
            max(np.max(np.abs(c.link_phi)), np.max(np.abs(c.ring_phi))) for c in self.cells
        )
