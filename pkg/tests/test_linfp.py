"""Linear algebra over F_p, cross-checked by a division-free eliminator."""

import random

import numpy as np
import pytest

from procyclic import (
    FpMatrix,
    FpSubspace,
    SparseRankAccumulator,
    UsageError,
    kernel_basis,
    quotient_dim,
    quotient_projection,
    rank,
)


def rank_division_free(rows, p):
    """Gaussian elimination using only cross-multiplication, no inverses."""
    a = [[int(x) % p for x in row] for row in rows]
    if not a:
        return 0
    nrows, ncols = len(a), len(a[0])
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, nrows):
            if a[i][c]:
                pivot = i
                break
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        lead = a[r][c]
        for i in range(nrows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [(lead * a[i][j] - f * a[r][j]) % p for j in range(ncols)]
        r += 1
        if r == nrows:
            break
    return r


def random_matrix(rng, p, rows, cols, density=1.0):
    arr = np.zeros((rows, cols), dtype=np.int64)
    for i in range(rows):
        for j in range(cols):
            if rng.random() < density:
                arr[i, j] = rng.randrange(p)
    return arr


def test_rank_identity_and_zero():
    assert rank(FpMatrix.identity(3, 7)) == 7
    assert rank(FpMatrix.zeros(2, 4, 6)) == 0


def test_rank_against_division_free_oracle_f3():
    rng = random.Random(50)
    arr = random_matrix(rng, 3, 50, 50)
    assert rank(FpMatrix(3, arr)) == rank_division_free(arr, 3)


def test_rank_against_oracle_various_shapes():
    rng = random.Random(51)
    for p in (2, 3, 7, 13):
        for _ in range(15):
            rows = rng.randrange(1, 25)
            cols = rng.randrange(1, 25)
            arr = random_matrix(rng, p, rows, cols)
            assert rank(FpMatrix(p, arr)) == rank_division_free(arr, p)


def test_rank_transpose_and_permutation_invariance():
    rng = random.Random(52)
    for p in (2, 5):
        arr = random_matrix(rng, p, 20, 31)
        m = FpMatrix(p, arr)
        assert rank(m) == rank(m.transpose())
        row_perm = np.array(rng.sample(range(20), 20))
        col_perm = np.array(rng.sample(range(31), 31))
        assert rank(FpMatrix(p, arr[row_perm][:, col_perm])) == rank(m)


def test_kernel_identity_zero_and_multiply_back():
    assert kernel_basis(FpMatrix.identity(5, 4)).dim == 0
    full = kernel_basis(FpMatrix.zeros(3, 3, 6))
    assert full.dim == 6
    rng = random.Random(53)
    for p in (2, 7):
        arr = random_matrix(rng, p, 9, 14)
        m = FpMatrix(p, arr)
        ker = kernel_basis(m)
        assert ker.dim == 14 - rank(m)
        for v in ker.basis:
            assert not ((arr @ v) % p).any()


def test_quotient_dim_examples():
    zero_span = FpSubspace.from_vectors(3, 5, [])
    assert quotient_dim(5, zero_span) == 5
    full_span = FpSubspace.from_vectors(3, 4, np.eye(4, dtype=np.int64))
    assert quotient_dim(4, full_span) == 0
    rng = random.Random(54)
    vectors = [[rng.randrange(3) for _ in range(8)] for _ in range(3)]
    span = FpSubspace.from_vectors(3, 8, vectors)
    assert quotient_dim(8, span) == 8 - span.dim
    with pytest.raises(UsageError):
        quotient_dim(9, span)


def test_quotient_projection_kills_span_and_is_onto():
    rng = random.Random(55)
    for p in (2, 5):
        vectors = [[rng.randrange(p) for _ in range(10)] for _ in range(4)]
        span = FpSubspace.from_vectors(p, 10, vectors)
        proj = quotient_projection(span)
        assert proj.rows == 10 - span.dim
        for v in span.basis:
            assert not ((proj.array @ v) % p).any()
        assert rank(proj) == proj.rows


def test_subspace_membership():
    span = FpSubspace.from_vectors(2, 4, [[1, 1, 0, 0], [0, 0, 1, 1]])
    assert span.contains([1, 1, 1, 1])
    assert not span.contains([1, 0, 0, 0])
    assert span.dim == 2


def test_sparse_stream_agrees_with_dense():
    rng = random.Random(56)
    for p in (2, 5):
        for _ in range(10):
            arr = random_matrix(rng, p, 40, 60, density=0.07)
            acc = SparseRankAccumulator(60, p)
            for row in arr:
                nz = np.nonzero(row)[0]
                acc.add_pairs(zip(nz.tolist(), row[nz].tolist()))
            assert acc.rank == rank_division_free(arr, p)


def test_rank_dispatches_sparse_path_consistently():
    rng = random.Random(57)
    arr = np.zeros((300, 400), dtype=np.int64)
    for _ in range(500):
        arr[rng.randrange(300), rng.randrange(400)] = rng.randrange(1, 3)
    m = FpMatrix(3, arr)
    assert m.density < 0.05
    assert rank(m) == rank_division_free(arr, 3)


def test_add_bits_requires_f2():
    acc = SparseRankAccumulator(8, 3)
    with pytest.raises(UsageError):
        acc.add_bits(0b101)
    acc2 = SparseRankAccumulator(8, 2)
    assert acc2.add_bits(0b101)
    assert not acc2.add_bits(0b101)
    assert acc2.rank == 1


def test_matmul_and_validation():
    a = FpMatrix(3, [[1, 2], [0, 1]])
    b = FpMatrix(3, [[1, 1], [1, 0]])
    assert (a @ b) == FpMatrix(3, [[0, 1], [1, 0]])
    with pytest.raises(UsageError):
        a @ FpMatrix(5, [[1, 0], [0, 1]])
    with pytest.raises(UsageError):
        FpMatrix(3, [[1, 2, 3]]) @ b
    with pytest.raises(UsageError):
        FpMatrix(3, np.zeros((2, 2, 2)))
