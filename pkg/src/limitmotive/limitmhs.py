"""Weight-graded invariants of the limit mixed Hodge structure on H^1.

Everything is read off the dual graph and the component genera:

* Gr^W_2 is the lattice L = ker(Z^{nodes} -> Z^{components}) (twisted by 1),
* W_1 is H^1 of the central fiber, with Gr^W_1 = H^1 of the normalization
  and Gr^W_0 = H^1 of the dual graph,
* N identifies Gr^W_2 with Gr^W_0.
"""

from dataclasses import dataclass

from limitmotive import exactla as la
from limitmotive.curve import betti1, cycle_basis, dual_graph, ensure_valid


@dataclass(frozen=True)
class GradedSummary:
    gr0_dim: int
    gr1_dim: int
    gr2_dim: int
    genus: int
    torus_rank: int
    hodge_numbers: dict     # weight -> {(p, q): h^{p,q}}
    tate_twist: int = 0     # hodge types as listed; twist by 1 shifts all by (-1, -1)

    @property
    def total_dim(self):
        return self.gr0_dim + self.gr1_dim + self.gr2_dim


@dataclass(frozen=True)
class SpectralRow:
    """The E_1 row 0 -> H^0(nodes) -> H^2(normalization) and its E_2 dims."""
    e1_terms: tuple
    e2_terms: tuple

    @property
    def kernel_dim(self):
        return self.e2_terms[1]


def _graph(curve, allow_disconnected=False):
    ensure_valid(curve, allow_disconnected=allow_disconnected)
    return dual_graph(curve)


def lattice_L(curve, allow_disconnected=False):
    """Basis of L as integer vectors indexed by nodes."""
    return cycle_basis(_graph(curve, allow_disconnected))


def in_lattice_L(curve, D):
    g = dual_graph(curve)
    return all(sum(g.incidence[i, k] * D[k] for k in range(g.d)) == 0
               for i in range(g.n))


def curve_h1(curve, allow_disconnected=False):
    """``(dim W_0, dim Gr_1)`` of H^1 of the central fiber."""
    g = _graph(curve, allow_disconnected)
    return betti1(g), 2 * curve.total_genus_of_components


def limit_graded(curve, allow_disconnected=False):
    g = _graph(curve, allow_disconnected)
    b1 = betti1(g)
    gsum = curve.total_genus_of_components
    return GradedSummary(
        gr0_dim=b1,
        gr1_dim=2 * gsum,
        gr2_dim=b1,
        genus=gsum + b1,
        torus_rank=g.d - g.n + g.connected_components,
        hodge_numbers={
            0: {(0, 0): b1},
            1: {(1, 0): gsum, (0, 1): gsum},
            2: {(1, 1): b1},
        },
    )


def spectral_row(curve, allow_disconnected=False):
    g = _graph(curve, allow_disconnected)
    r = la.rank(g.incidence)
    return SpectralRow(e1_terms=(0, g.d, g.n), e2_terms=(0, g.d - r, g.n - r))


def monodromy_graded(curve, allow_disconnected=False):
    """N : Gr^W_2 -> Gr^W_0 in the cycle bases of both pieces (identity)."""
    g = _graph(curve, allow_disconnected)
    return la.identity(betti1(g))


def monodromy_block(curve, allow_disconnected=False):
    """N on Gr_2 + Gr_1 + Gr_0 (in that order); only the Gr_2 -> Gr_0 block is nonzero."""
    s = limit_graded(curve, allow_disconnected)
    size = s.total_dim
    N = la.zeros(size, size)
    off = s.gr2_dim + s.gr1_dim
    for i in range(s.gr2_dim):
        N[off + i, i] = 1
    return N
