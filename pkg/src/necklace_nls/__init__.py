"""Spectral bands, discrete-map homoclinic orbits, and NLS bound states on the necklace graph."""

from .graph import CellSamples, EdgeKind, EdgeRef, GraphParams, PiecewiseProfile, position_of
from .spectral import (Band, FlatBand, FlatBandLocation, Matrix2, band_edge_curvature,
                       classify_flat_band, find_bands, flat_band_eigenfunction,
                       monodromy_matrix, trace, trace_hyperbolic)
from .ode import IvpSolution, first_invariant, integrate_ivp, small_amplitude_expansion
from .dmap import (CurveMode, MapState, ScaledState, Symmetry, inverse_period_map,
                   jacobian, link_step, period_map, ring_step, scaled_map_truncated,
                   symmetry_curve, symmetry_defect_link, symmetry_defect_ring)
from .homoclinic import (Orbit, OrbitDiagnostics, orbit_diagnostics, sech_approximation,
                         shoot_homoclinic, unstable_direction)
from .bound_state import (BoundState, Source, assemble_profile, charge, compare_families,
                          energy, h2_norm, kirchhoff_residual, shoot_bound_state)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
