"""Dense and sparse linear algebra over F_p.

Everything downstream (coinvariant quotients, census solving, bar-complex
homology) reduces to ranks, kernels and quotient dimensions over a prime
field, so this module is the single place where elimination happens.

Pivoting is deterministic (first nonzero in column order) to keep every
report byte-reproducible.  The dense path is vectorized numpy row
elimination; the sparse path streams rows into an accumulator and is used
for the very wide boundary matrices of the bar complex, where a dense
array would not fit.  For p = 2 streamed rows are packed into Python
integers, which makes each reduction a single word-parallel xor.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import UsageError
from .fpx import validate_prime

__all__ = [
    "FpMatrix",
    "FpSubspace",
    "rank",
    "kernel_basis",
    "quotient_dim",
    "quotient_projection",
    "rref",
    "SparseRankAccumulator",
]

# A dense matrix with at most this fraction of nonzero entries is handed
# to the sparse path by rank().
SPARSE_DENSITY = 0.05
_SPARSE_MIN_CELLS = 1 << 16


class FpMatrix:
    """Immutable dense matrix over F_p (int64 storage, entries in [0, p))."""

    __slots__ = ("p", "array")

    def __init__(self, p: int, array):
        p = validate_prime(p)
        arr = np.asarray(array, dtype=np.int64)
        if arr.ndim != 2:
            raise UsageError("matrix data must be two-dimensional")
        arr = np.mod(arr, p)
        arr.flags.writeable = False
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "array", arr)

    def __setattr__(self, name, value):
        raise AttributeError("FpMatrix is immutable")

    @classmethod
    def zeros(cls, p: int, rows: int, cols: int) -> "FpMatrix":
        return cls(p, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, p: int, n: int) -> "FpMatrix":
        return cls(p, np.eye(n, dtype=np.int64))

    @classmethod
    def from_triplets(cls, p: int, rows: int, cols: int, triplets) -> "FpMatrix":
        arr = np.zeros((rows, cols), dtype=np.int64)
        for i, j, v in triplets:
            arr[i, j] += v
        return cls(p, arr)

    @property
    def rows(self) -> int:
        return self.array.shape[0]

    @property
    def cols(self) -> int:
        return self.array.shape[1]

    @property
    def density(self) -> float:
        cells = self.array.size
        return float(np.count_nonzero(self.array)) / cells if cells else 0.0

    def transpose(self) -> "FpMatrix":
        return FpMatrix(self.p, self.array.T)

    def __matmul__(self, other: "FpMatrix") -> "FpMatrix":
        if not isinstance(other, FpMatrix):
            raise UsageError("matrix product needs an FpMatrix")
        if self.p != other.p:
            raise UsageError(f"mixed primes {self.p} and {other.p}")
        if self.cols != other.rows:
            raise UsageError(f"shape mismatch {self.array.shape} @ {other.array.shape}")
        return FpMatrix(self.p, _matmul_mod(self.array, other.array, self.p))

    def __eq__(self, other) -> bool:
        if not isinstance(other, FpMatrix):
            return NotImplemented
        return self.p == other.p and np.array_equal(self.array, other.array)

    def __hash__(self):
        return hash((self.p, self.array.shape, self.array.tobytes()))

    def __repr__(self) -> str:
        return f"FpMatrix(p={self.p}, shape={self.array.shape})"


def _matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    # Chunk the contraction so int64 accumulators cannot overflow:
    # each partial sum is bounded by chunk * (p-1)^2.
    chunk = max(1, (1 << 62) // max(1, (p - 1) ** 2))
    if a.shape[1] <= chunk:
        return (a @ b) % p
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for lo in range(0, a.shape[1], chunk):
        out = (out + a[:, lo : lo + chunk] @ b[lo : lo + chunk]) % p
    return out


def rref(matrix: FpMatrix) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot column list."""
    p = matrix.p
    a = matrix.array.copy()
    nrows, ncols = a.shape
    r = 0
    pivots: list[int] = []
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r] = (a[r] * inv) % p
        col = a[:, c].copy()
        col[r] = 0
        mask = col != 0
        if mask.any():
            a[mask] = (a[mask] - np.outer(col[mask], a[r])) % p
        pivots.append(c)
        r += 1
    return a, pivots


def rank(matrix: FpMatrix) -> int:
    """Row rank over F_p; wide sparse matrices go through the sparse path."""
    if (
        matrix.array.size >= _SPARSE_MIN_CELLS
        and matrix.density < SPARSE_DENSITY
    ):
        acc = SparseRankAccumulator(matrix.cols, matrix.p)
        for i in np.nonzero(matrix.array.any(axis=1))[0]:
            row = matrix.array[i]
            cols = np.nonzero(row)[0]
            acc.add_pairs(zip(cols.tolist(), row[cols].tolist()))
        return acc.rank
    return len(rref(matrix)[1])


@dataclass(frozen=True)
class FpSubspace:
    """Subspace of F_p^ambient given by a reduced-row-echelon basis."""

    p: int
    ambient: int
    basis: np.ndarray  # shape (dim, ambient), RREF, full row rank

    @classmethod
    def from_vectors(cls, p: int, ambient: int, vectors) -> "FpSubspace":
        arr = np.asarray(list(vectors), dtype=np.int64)
        if arr.size == 0:
            arr = np.zeros((0, ambient), dtype=np.int64)
        if arr.shape[1] != ambient:
            raise UsageError(f"vectors have length {arr.shape[1]}, ambient is {ambient}")
        reduced, pivots = rref(FpMatrix(p, arr))
        basis = reduced[: len(pivots)]
        basis.flags.writeable = False
        return cls(p, ambient, basis)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def pivot_columns(self) -> list[int]:
        return [int(np.nonzero(row)[0][0]) for row in self.basis]

    def reduce(self, vector) -> np.ndarray:
        """Canonical representative of vector modulo this subspace."""
        v = np.mod(np.asarray(vector, dtype=np.int64), self.p)
        if v.shape != (self.ambient,):
            raise UsageError("vector has wrong length")
        for row, c in zip(self.basis, self.pivot_columns()):
            if v[c]:
                v = (v - v[c] * row) % self.p
        return v

    def contains(self, vector) -> bool:
        return not self.reduce(vector).any()


def kernel_basis(matrix: FpMatrix) -> FpSubspace:
    """Basis of the right null space {v : matrix @ v = 0}."""
    p = matrix.p
    reduced, pivots = rref(matrix)
    ncols = matrix.cols
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    vectors = []
    for f in free:
        v = np.zeros(ncols, dtype=np.int64)
        v[f] = 1
        for j, c in enumerate(pivots):
            v[c] = (-reduced[j, f]) % p
        vectors.append(v)
    return FpSubspace.from_vectors(p, ncols, vectors)


def quotient_dim(ambient: int, span: FpSubspace) -> int:
    """Dimension of F_p^ambient / span."""
    if span.ambient != ambient:
        raise UsageError(f"span lives in dimension {span.ambient}, not {ambient}")
    return ambient - span.dim


def quotient_projection(span: FpSubspace) -> FpMatrix:
    """Matrix of the projection F_p^ambient -> F_p^ambient / span.

    The quotient basis is the set of non-pivot coordinates of the span's
    echelon basis, in increasing column order.
    """
    p, ambient = span.p, span.ambient
    pivots = span.pivot_columns()
    pivot_set = set(pivots)
    free = [c for c in range(ambient) if c not in pivot_set]
    proj = np.zeros((len(free), ambient), dtype=np.int64)
    for a, c in enumerate(free):
        proj[a, c] = 1
    for j, c in enumerate(pivots):
        for a, f in enumerate(free):
            proj[a, c] = (-span.basis[j, f]) % p
    return FpMatrix(p, proj)


class SparseRankAccumulator:
    """Streaming rank computation for rows that arrive one at a time.

    Rows are reduced against the pivots collected so far and either vanish
    or contribute a new pivot.  Only the pivot rows are retained, so memory
    scales with the rank, not with the number of rows.

    Over F_2 a row is a bit-packed Python integer and a reduction is one
    xor.  For odd p the pivot rows are kept fully inter-reduced, so an
    incoming row is finished by a single gather-and-subtract pass; the
    combination is accumulated in float64 (exact below 2^53, which the
    column-count times p^2 bound guarantees) to get BLAS speed.
    """

    def __init__(self, ncols: int, p: int):
        self.ncols = ncols
        self.p = validate_prime(p)
        self.rank = 0
        self._pivots: dict[int, int] = {}  # p = 2: leading bit -> packed row
        self._pivcols: list[int] = []  # odd p: pivot column per basis row
        self._basis: np.ndarray | None = None  # odd p: RREF rows, float64
        if p != 2 and ncols * (p - 1) ** 2 >= (1 << 53):
            raise UsageError("column count too large for exact float accumulation")

    def add_pairs(self, pairs) -> bool:
        """Add a row given as (column, value) pairs; True if rank grew."""
        if self.p == 2:
            row = 0
            for c, v in pairs:
                if v % 2:
                    row ^= 1 << c
            return self._add_bits(row)
        row = np.zeros(self.ncols, dtype=np.int64)
        for c, v in pairs:
            row[c] = (row[c] + v) % self.p
        return self._add_dense(row)

    def add_bits(self, row: int) -> bool:
        """Add a bit-packed row (p = 2 only); True if the rank grew."""
        if self.p != 2:
            raise UsageError("bit-packed rows only make sense over F_2")
        return self._add_bits(row)

    def _add_bits(self, row: int) -> bool:
        pivots = self._pivots
        while row:
            lead = row.bit_length() - 1
            piv = pivots.get(lead)
            if piv is None:
                pivots[lead] = row
                self.rank += 1
                return True
            row ^= piv
        return False

    def _add_dense(self, row: np.ndarray) -> bool:
        p = self.p
        if self.rank:
            coeffs = row[self._pivcols]
            if coeffs.any():
                combo = coeffs.astype(np.float64) @ self._basis[: self.rank]
                row = (row - combo.astype(np.int64)) % p
        nz = np.nonzero(row)[0]
        if nz.size == 0:
            return False
        # basis rows are inter-reduced, so the leading column is new
        lead = int(nz[0])
        if row[lead] != 1:
            row = (row * pow(int(row[lead]), -1, p)) % p
        if self._basis is None:
            self._basis = np.zeros((max(16, self.ncols // 8), self.ncols))
        elif self.rank == self._basis.shape[0]:
            grown = np.zeros((min(self.ncols, 2 * self.rank), self.ncols))
            grown[: self.rank] = self._basis
            self._basis = grown
        basis = self._basis
        col = basis[: self.rank, lead].astype(np.int64)
        hit = np.nonzero(col)[0]
        if hit.size:
            updated = (
                basis[hit].astype(np.int64) - np.outer(col[hit], row)
            ) % p
            basis[hit] = updated
        basis[self.rank] = row
        self._pivcols.append(lead)
        self.rank += 1
        return True
