"""Koszul complexes of divided powers for maps of free abelian groups.

For ``eps: E -> F`` and a total degree ``n`` the complex has terms
``Gamma_{n-q}(E) (x) Lambda^q(F)`` in degree ``q`` and differential

    d(g_{a_1}(e_1)...g_{a_r}(e_r) (x) y) = sum_i g_{..a_i - 1..} (x) eps(e_i) ^ y

where ``g_k(x) = x^k / k!``.  Divided monomials are stored as exponent tuples,
so everything stays integral.
"""

from dataclasses import dataclass, field
from itertools import combinations
from math import comb

import numpy as np

from limitmotive import exactla as la
from limitmotive.exactla import AbelianGroupStructure


@dataclass(frozen=True, eq=False)
class FreeAbelianMap:
    """``eps: Z^source_rank -> Z^target_rank`` given by a target x source matrix."""
    matrix: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "matrix", la.int_matrix(self.matrix))

    @classmethod
    def from_rows(cls, rows, source_rank=None, target_rank=None):
        if target_rank is None:
            target_rank = len(rows)
        if source_rank is None:
            source_rank = len(rows[0]) if rows else 0
        return cls(la.int_matrix(rows, shape=(target_rank, source_rank)))

    @property
    def source_rank(self):
        return self.matrix.shape[1]

    @property
    def target_rank(self):
        return self.matrix.shape[0]


def divided_monomials(rank, degree):
    """Exponent tuples of total ``degree``, in descending lexicographic order."""
    if degree < 0:
        return []
    if rank == 0:
        return [()] if degree == 0 else []
    out = []
    for first in range(degree, -1, -1):
        for rest in divided_monomials(rank - 1, degree - first):
            out.append((first,) + rest)
    return out


def wedge_monomials(rank, degree):
    if degree < 0:
        return []
    return list(combinations(range(rank), degree))


def gamma_rank(rank, degree):
    """Rank of Gamma_degree(Z^rank)."""
    if degree < 0:
        return 0
    if degree == 0:
        return 1
    return comb(rank + degree - 1, degree)


def wedge_mul(j, indices):
    """``f_j ^ f_I`` as ``(sign, sorted indices)``, sign 0 if ``j`` is in ``I``."""
    if j in indices:
        return 0, None
    below = sum(1 for i in indices if i < j)
    return (-1) ** below, tuple(sorted(indices + (j,)))


@dataclass(frozen=True, eq=False)
class KoszulComplex:
    map: FreeAbelianMap
    n: int
    terms: tuple
    differentials: tuple
    _index: tuple = field(repr=False, default=())

    def dim(self, q):
        return len(self.terms[q]) if 0 <= q <= self.n else 0

    def differential(self, q):
        """``d^q`` as a ``dim(q+1) x dim(q)`` matrix, zero outside the range."""
        if 0 <= q < self.n:
            return self.differentials[q]
        return la.zeros(self.dim(q + 1), self.dim(q))

    def index(self, q, term):
        return self._index[q][term]

    def euler_characteristic(self):
        return sum((-1) ** q * self.dim(q) for q in range(self.n + 1))


def build_complex(eps, n):
    if n < 0:
        raise ValueError("total degree must be non-negative")
    A = eps.matrix
    rE, rF = eps.source_rank, eps.target_rank
    terms, index = [], []
    for q in range(n + 1):
        basis = [(a, I) for a in divided_monomials(rE, n - q)
                 for I in wedge_monomials(rF, q)]
        terms.append(tuple(basis))
        index.append({t: k for k, t in enumerate(basis)})

    diffs = []
    for q in range(n):
        D = la.zeros(len(terms[q + 1]), len(terms[q]))
        for col, (a, I) in enumerate(terms[q]):
            for i, ai in enumerate(a):
                if ai == 0:
                    continue
                lowered = a[:i] + (ai - 1,) + a[i + 1:]
                for j in range(rF):
                    c = A[j, i]
                    if c == 0:
                        continue
                    sign, J = wedge_mul(j, I)
                    if sign:
                        D[index[q + 1][(lowered, J)], col] += sign * c
        diffs.append(D)
    return KoszulComplex(map=eps, n=n, terms=tuple(terms),
                         differentials=tuple(diffs), _index=tuple(index))


def cohomology(K, p):
    return la.homology_at(K.differential(p - 1), K.differential(p))


def rational_dimension(K, p):
    """Dimension of H^p over Q (torsion forgotten)."""
    return cohomology(K, p).free_rank


@dataclass
class CheckReport:
    """Outcome of comparing computed cohomology against a closed form.

    ``rows`` holds ``(degree, computed, expected)`` triples.
    """
    ok: bool
    hypothesis_ok: bool
    message: str = ""
    rows: list = field(default_factory=list)


def verify_closed_form(eps, n):
    """Check ``H^p = Gamma_{n-p}(ker eps) (x) Lambda^p(coker eps)`` for all p.

    Only meaningful when the cokernel is free; otherwise a failed-hypothesis
    report is returned.
    """
    coker = la.cokernel_structure(eps.matrix)
    if not coker.is_free:
        return CheckReport(ok=False, hypothesis_ok=False,
                           message="lemma hypothesis fails: cokernel has torsion "
                                   f"({coker})")
    k = eps.source_rank - la.rank(eps.matrix)
    c = coker.free_rank
    K = build_complex(eps, n)
    rows, ok = [], True
    for p in range(n + 1):
        got = cohomology(K, p)
        want = AbelianGroupStructure(gamma_rank(k, n - p) * comb(c, p))
        rows.append((p, got, want))
        ok &= got == want
    return CheckReport(ok=ok, hypothesis_ok=True, rows=rows,
                       message="" if ok else "closed form mismatch")


@dataclass(frozen=True, eq=False)
class WeightSubgroupSpec:
    """Subgroup ``G`` of ``F`` (basis columns) and a filtration level ``m``."""
    G_basis: np.ndarray
    m: int

    def __post_init__(self):
        object.__setattr__(self, "G_basis", la.int_matrix(self.G_basis))

    def at(self, m):
        return WeightSubgroupSpec(self.G_basis, m)


def _wedge_coordinates(vectors, rF, q):
    """Coordinates of ``v_1 ^ ... ^ v_q`` in the basis ``f_I``: the q x q minors."""
    out = []
    for I in wedge_monomials(rF, q):
        out.append(la.det(vectors[list(I), :]) if q else 1)
    return out


def weight_subcomplex(K, spec):
    """Per degree q, basis columns of ``W(G)_m Kos^q`` in ambient coordinates."""
    G, m = spec.G_basis, spec.m
    rF = K.map.target_rank
    rG = G.shape[1]
    assert G.shape[0] == rF
    E_id = la.identity(rF)
    out = []
    for q in range(K.n + 1):
        dim = K.dim(q)
        if m < 0:
            out.append(la.zeros(dim, 0))
            continue
        if m >= q:
            out.append(la.identity(dim))
            continue
        wedges = []
        for S in combinations(range(rG), q - m):
            for T in combinations(range(rF), m):
                vecs = la.hstack([G[:, list(S)], E_id[:, list(T)]], rF)
                wedges.append(_wedge_coordinates(vecs, rF, q))
        monos = divided_monomials(K.map.source_rank, K.n - q)
        cols = []
        for a in monos:
            for w in wedges:
                col = [0] * dim
                for I, c in zip(wedge_monomials(rF, q), w):
                    if c:
                        col[K.index(q, (a, I))] = c
                cols.append(col)
        gens = la.int_matrix(np.array(cols, dtype=object).T if cols else [],
                             shape=(dim, len(cols)))
        out.append(la.image_basis(gens))
    return out


def check_filtration_stability(K, spec):
    """Whether ``d`` maps ``W(G)_m`` into itself in every degree."""
    W = weight_subcomplex(K, spec)
    for q in range(K.n):
        image = la.matmul(K.differential(q), W[q])
        if la.lattice_coordinates(W[q + 1], image) is None:
            return False
    return True


def _hypothesis_failures(eps, G):
    problems = []
    if la.lattice_coordinates(G, eps.matrix) is None:
        problems.append("eps(E) is not contained in G")
    quotient = la.cokernel_structure(G)
    if not quotient.is_free:
        problems.append(f"F/G has torsion ({quotient})")
    return problems


def graded_complex(K, spec):
    """``Gr_m = W_m / W_{m-1}`` with its induced differentials.

    Returns ``(dims, diffs)`` with ``diffs[q]`` mapping degree q to q+1 in
    quotient coordinates.  Assumes the filtration is stable and the
    quotients are torsion-free.
    """
    Wm = weight_subcomplex(K, spec)
    Wm1 = weight_subcomplex(K, spec.at(spec.m - 1))
    proj, lift, snfs = [], [], []
    for q in range(K.n + 1):
        snf_m = la.smith(Wm[q])
        snfs.append(snf_m)
        C = la.lattice_coordinates(Wm[q], Wm1[q], snf=snf_m)
        assert C is not None, "W_{m-1} not inside W_m"
        s = la.smith(C)
        r = s.rank
        if any(d != 1 for d in s.diagonal[:r]):
            raise ValueError("graded piece has torsion")
        proj.append(s.U[r:, :])
        lift.append(s.U_inv[:, r:])
    dims = [p.shape[0] for p in proj]
    diffs = []
    for q in range(K.n):
        ambient = la.matmul(K.differential(q), la.matmul(Wm[q], lift[q]))
        coords = la.lattice_coordinates(Wm[q + 1], ambient, snf=snfs[q + 1])
        assert coords is not None, "filtration not stable under d"
        diffs.append(la.matmul(proj[q + 1], coords))
    return dims, diffs


def graded_piece_iso_check(K, spec):
    """Compare ``Gr_m`` with ``Kos^{n-m}(eps_G)[-m] (x) Lambda^m(F/G)``.

    Term ranks are compared degreewise, then cohomology groups.
    """
    eps, G, m = K.map, spec.G_basis, spec.m
    problems = _hypothesis_failures(eps, G)
    if problems:
        return CheckReport(ok=False, hypothesis_ok=False,
                           message="hypothesis fails: " + "; ".join(problems))
    dims, diffs = graded_complex(K, spec)

    def gr_diff(q):
        if 0 <= q < K.n:
            return diffs[q]
        src = dims[q] if 0 <= q <= K.n else 0
        tgt = dims[q + 1] if 0 <= q + 1 <= K.n else 0
        return la.zeros(tgt, src)

    quotient_rank = G.shape[0] - G.shape[1]
    mult = comb(quotient_rank, m) if m >= 0 else 0
    eps_G = FreeAbelianMap(la.lattice_coordinates(G, eps.matrix))
    small = build_complex(eps_G, K.n - m) if K.n - m >= 0 else None

    rows, ok = [], True
    for q in range(K.n + 1):
        j = q - m
        if small is not None and 0 <= j <= small.n and mult:
            rhs_dim = small.dim(j) * mult
            rhs_h = cohomology(small, j).tensor_free(mult)
        else:
            rhs_dim, rhs_h = 0, AbelianGroupStructure(0)
        lhs_h = la.homology_at(gr_diff(q - 1), gr_diff(q))
        rows.append((q, (dims[q], lhs_h), (rhs_dim, rhs_h)))
        ok &= dims[q] == rhs_dim and lhs_h == rhs_h
    return CheckReport(ok=ok, hypothesis_ok=True, rows=rows,
                       message="" if ok else "graded piece mismatch")
