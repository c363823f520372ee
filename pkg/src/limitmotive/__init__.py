"""Limit mixed Hodge structures and geometric 1-motives of degenerating curves."""

from limitmotive.curve import NodalCurve, dual_graph, cycle_basis, validate
from limitmotive.limitmhs import lattice_L, limit_graded, spectral_row
from limitmotive.motive import nu_t, pairing_matrix

__all__ = ["NodalCurve", "dual_graph", "cycle_basis", "validate",
           "lattice_L", "limit_graded", "spectral_row", "nu_t", "pairing_matrix"]
