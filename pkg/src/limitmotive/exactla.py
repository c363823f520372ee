"""Exact integer linear algebra.

Matrices are 2-d numpy arrays of ``dtype=object`` holding Python ints, so
every product and determinant is computed with arbitrary precision.  The
Smith form convention throughout is ``S = U @ A @ V``.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import numpy as np


class ChainComplexError(ValueError):
    pass


def int_matrix(data, shape=None):
    """Build an object-dtype integer matrix.

    ``shape`` is needed for empty matrices, whose column count cannot be read
    off nested lists.
    """
    if isinstance(data, np.ndarray) and data.dtype == object and data.ndim == 2:
        A = data.copy()
    else:
        rows = [list(r) for r in data]
        if shape is None:
            shape = (len(rows), len(rows[0]) if rows else 0)
        A = np.empty(shape, dtype=object)
        for i, row in enumerate(rows):
            if len(row) != shape[1]:
                raise ValueError("ragged matrix rows")
            for j, x in enumerate(row):
                A[i, j] = int(x)
    if shape is not None and A.shape != tuple(shape):
        raise ValueError(f"expected shape {shape}, got {A.shape}")
    for x in A.flat:
        if not isinstance(x, int):
            raise TypeError(f"non-integer entry {x!r}")
    return A


def zeros(m, n):
    A = np.empty((m, n), dtype=object)
    A.fill(0)
    return A


def identity(n):
    A = zeros(n, n)
    for i in range(n):
        A[i, i] = 1
    return A


def matmul(A, B):
    assert A.shape[1] == B.shape[0], (A.shape, B.shape)
    if 0 in A.shape or 0 in B.shape:
        return zeros(A.shape[0], B.shape[1])
    return np.dot(A, B)


def is_zero(A):
    return all(x == 0 for x in A.flat)


def hstack(blocks, rows):
    if not blocks:
        return zeros(rows, 0)
    return np.concatenate(blocks, axis=1)


def det(A):
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = A.shape[0]
    assert A.shape == (n, n)
    if n == 0:
        return 1
    M = [[int(x) for x in row] for row in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


@dataclass(frozen=True, eq=False)
class SmithDecomposition:
    """``U @ A @ V == S`` with ``U``, ``V`` unimodular and ``S`` diagonal.

    The inverses of ``U`` and ``V`` are carried along because kernels,
    images and lattice coordinates all need them.
    """
    U: np.ndarray
    S: np.ndarray
    V: np.ndarray
    U_inv: np.ndarray
    V_inv: np.ndarray

    @property
    def diagonal(self):
        return [self.S[i, i] for i in range(min(self.S.shape))]

    @property
    def rank(self):
        return sum(1 for d in self.diagonal if d != 0)


@dataclass(frozen=True)
class AbelianGroupStructure:
    """``Z^free_rank`` plus ``Z/d`` for each torsion invariant ``d``."""
    free_rank: int
    torsion_invariants: tuple = ()

    def __post_init__(self):
        inv = tuple(int(d) for d in self.torsion_invariants)
        if any(d <= 1 for d in inv):
            raise ValueError("torsion invariants must exceed 1")
        if any(b % a for a, b in zip(inv, inv[1:])):
            raise ValueError("torsion invariants must form a divisibility chain")
        object.__setattr__(self, "torsion_invariants", inv)

    @property
    def is_trivial(self):
        return self.free_rank == 0 and not self.torsion_invariants

    @property
    def is_free(self):
        return not self.torsion_invariants

    def tensor_free(self, r):
        """Structure of ``self ⊗ Z^r``."""
        torsion = sorted(d for d in self.torsion_invariants for _ in range(r))
        return AbelianGroupStructure(self.free_rank * r, tuple(torsion))

    def __str__(self):
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion_invariants)
        return " + ".join(parts) if parts else "0"


def _swap_rows(M, i, j):
    if i != j:
        M[[i, j]] = M[[j, i]]


def _swap_cols(M, i, j):
    if i != j:
        M[:, [i, j]] = M[:, [j, i]]


def smith(A):
    """Smith normal form with transforms, ``S = U @ A @ V``.

    Pivot choice is deterministic: the smallest nonzero magnitude in the
    active block, ties broken by lowest (row, column) index.
    """
    A = int_matrix(A)
    m, n = A.shape
    S = A.copy()
    U, U_inv = identity(m), identity(m)
    V, V_inv = identity(n), identity(n)

    # Row op "row_i += c*row_j" on S is left mult by E; U <- E U, U_inv <- U_inv E^-1.
    def row_add(i, j, c):
        S[i] += c * S[j]
        U[i] += c * U[j]
        U_inv[:, j] -= c * U_inv[:, i]

    def col_add(i, j, c):
        S[:, i] += c * S[:, j]
        V[:, i] += c * V[:, j]
        V_inv[j] -= c * V_inv[i]

    def row_swap(i, j):
        _swap_rows(S, i, j)
        _swap_rows(U, i, j)
        _swap_cols(U_inv, i, j)

    def col_swap(i, j):
        _swap_cols(S, i, j)
        _swap_cols(V, i, j)
        _swap_rows(V_inv, i, j)

    def row_neg(i):
        S[i] = -S[i]
        U[i] = -U[i]
        U_inv[:, i] = -U_inv[:, i]

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = S[i, j]
                if x != 0 and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            break
        row_swap(t, best[1])
        col_swap(t, best[2])

        while True:
            done = True
            for i in range(t + 1, m):
                if S[i, t] != 0:
                    row_add(i, t, -(S[i, t] // S[t, t]))
            for j in range(t + 1, n):
                if S[t, j] != 0:
                    col_add(j, t, -(S[t, j] // S[t, t]))
            # Remainders left behind: bring the smallest one to the pivot.
            best = None
            for i in range(t + 1, m):
                if S[i, t] != 0 and (best is None or abs(S[i, t]) < best[0]):
                    best = (abs(S[i, t]), "r", i)
            for j in range(t + 1, n):
                if S[t, j] != 0 and (best is None or abs(S[t, j]) < best[0]):
                    best = (abs(S[t, j]), "c", j)
            if best is not None:
                done = False
                if best[1] == "r":
                    row_swap(t, best[2])
                else:
                    col_swap(t, best[2])
                continue
            # Divisibility: fold in the first offending row.
            p = S[t, t]
            for i in range(t + 1, m):
                if any(S[i, j] % p for j in range(t + 1, n)):
                    row_add(t, i, 1)
                    done = False
                    break
            if done:
                break
        if S[t, t] < 0:
            row_neg(t)

    return SmithDecomposition(U=U, S=S, V=V, U_inv=U_inv, V_inv=V_inv)


def rank(A):
    return smith(A).rank


def kernel_basis(A):
    """Columns spanning the saturated integer kernel of ``A``."""
    A = int_matrix(A)
    snf = smith(A)
    return snf.V[:, snf.rank:].copy()


def image_basis(A):
    """Columns forming a basis of the subgroup ``A @ Z^cols`` (not saturated)."""
    A = int_matrix(A)
    snf = smith(A)
    r = snf.rank
    B = snf.U_inv[:, :r].copy()
    for i in range(r):
        B[:, i] *= snf.S[i, i]
    return B


def cokernel_structure(A):
    A = int_matrix(A)
    diag = smith(A).diagonal
    nonzero = [d for d in diag if d != 0]
    return AbelianGroupStructure(
        free_rank=A.shape[0] - len(nonzero),
        torsion_invariants=tuple(d for d in nonzero if d > 1),
    )


def lattice_coordinates(B, v, snf=None):
    """Integer ``x`` with ``B @ x == v``, or ``None`` if ``v`` is not in the span.

    ``v`` may be a single column (1-d) or a matrix of columns.
    """
    B = int_matrix(B)
    single = np.ndim(v) == 1
    vv = np.asarray(v, dtype=object).reshape(B.shape[0], -1) if single else int_matrix(v)
    if snf is None:
        snf = smith(B)
    r = snf.rank
    Y = matmul(snf.U, vv)
    Z = zeros(B.shape[1], vv.shape[1])
    for i in range(Y.shape[0]):
        for j in range(Y.shape[1]):
            y = Y[i, j]
            if i < r:
                if y % snf.S[i, i]:
                    return None
                Z[i, j] = y // snf.S[i, i]
            elif y != 0:
                return None
    X = matmul(snf.V, Z)
    return X[:, 0] if single else X


def in_lattice(B, v):
    return lattice_coordinates(B, v) is not None


def same_lattice(B1, B2):
    """Whether two column bases span the same subgroup."""
    if B1.shape[0] != B2.shape[0]:
        return False
    return (lattice_coordinates(B1, B2) is not None
            and lattice_coordinates(B2, B1) is not None)


def homology_at(d_in, d_out):
    """Structure of ``ker(d_out) / im(d_in)``."""
    d_in, d_out = int_matrix(d_in), int_matrix(d_out)
    if d_out.shape[1] != d_in.shape[0]:
        raise ChainComplexError(
            f"not a complex: shapes {d_in.shape} and {d_out.shape} do not compose")
    if not is_zero(matmul(d_out, d_in)):
        raise ChainComplexError("not a complex: d_out @ d_in != 0")
    snf = smith(d_out)
    r = snf.rank
    # Kernel basis is V[:, r:], so coordinates of im(d_in) are rows r: of V^-1 d_in.
    X = matmul(snf.V_inv, d_in)[r:, :]
    return cokernel_structure(X)


def gcd_list(xs):
    g = 0
    for x in xs:
        g = gcd(g, int(x))
    return g


def fraction(x):
    return x if isinstance(x, Fraction) else Fraction(x)
