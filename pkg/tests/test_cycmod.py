"""Module quotients: frozen dimensions plus a definition-level oracle.

The production code spans relations by basis pairs only; the oracle here
re-derives the span from every pair of module elements, which is the raw
definition, and must give the same dimension.
"""

import itertools

import numpy as np
import pytest

from procyclic import (
    FpMatrix,
    FpSubspace,
    UsageError,
    antipode_iso_check,
    diagonal_coinvariants,
    regular_antipode,
    regular_module,
    tensor_over_groupring,
    trivial_module,
    z_action_homology,
)
from procyclic.cycmod import FpCModule, ModuleAntipode


def all_elements(p, dim):
    return [np.array(v, dtype=np.int64) for v in itertools.product(range(p), repeat=dim)]


def coinvariant_dim_oracle(module, module2):
    """Quotient dim with relations taken over every element pair."""
    p = module.p
    t1, t2 = module.action.array, module2.action.array
    vectors = []
    for m in all_elements(p, module.dim):
        tm = (t1 @ m) % p
        for m2 in all_elements(p, module2.dim):
            tm2 = (t2 @ m2) % p
            vectors.append((np.kron(tm, tm2) - np.kron(m, m2)) % p)
    span = FpSubspace.from_vectors(p, module.dim * module2.dim, vectors)
    return module.dim * module2.dim - span.dim


def tensor_gr_dim_oracle(module, module2):
    p = module.p
    t1, t2 = module.action.array, module2.action.array
    vectors = []
    for m in all_elements(p, module.dim):
        tm = (t1 @ m) % p
        for m2 in all_elements(p, module2.dim):
            tm2 = (t2 @ m2) % p
            vectors.append((np.kron(tm, m2) - np.kron(m, tm2)) % p)
    span = FpSubspace.from_vectors(p, module.dim * module2.dim, vectors)
    return module.dim * module2.dim - span.dim


# -- regular module ----------------------------------------------------------


def test_regular_module_smallest():
    m = regular_module(2, 1)
    assert m.dim == 1
    assert np.array_equal(m.action.array, [[1]])
    assert m.order_exponent == 0


def test_regular_module_dim2_matrix():
    m = regular_module(2, 2)
    assert np.array_equal(m.action.array, [[1, 0], [1, 1]])
    assert m.order_exponent == 1


@pytest.mark.parametrize("p", (2, 3, 5))
@pytest.mark.parametrize("i", range(1, 9))
def test_regular_action_has_p_power_order(p, i):
    m = regular_module(p, i)
    t = m.action.array
    power = np.eye(i, dtype=np.int64)
    for _ in range(p**m.order_exponent):
        power = (power @ t) % p
    assert np.array_equal(power, np.eye(i, dtype=np.int64))
    if i > 1:
        # exponent is minimal
        smaller = np.eye(i, dtype=np.int64)
        for _ in range(p ** (m.order_exponent - 1)):
            smaller = (smaller @ t) % p
        assert not np.array_equal(smaller, np.eye(i, dtype=np.int64))


def test_module_rejects_bad_actions():
    with pytest.raises(UsageError):
        FpCModule(3, FpMatrix(3, [[0, 0], [0, 1]]))  # singular
    with pytest.raises(UsageError):
        FpCModule(3, FpMatrix(3, [[0, 1], [1, 0]]))  # order 2, not a 3-power
    with pytest.raises(UsageError):
        regular_module(2, 0)


# -- quotient dimensions -------------------------------------------------------


def test_coinvariants_trivial_action():
    one = regular_module(5, 1)
    assert diagonal_coinvariants(one, one).dim == 1
    t3 = trivial_module(3, 4)
    assert diagonal_coinvariants(t3, t3).dim == 16


def test_coinvariants_frozen_values():
    m23 = regular_module(2, 3)
    assert diagonal_coinvariants(m23, m23).dim == 3
    m34 = regular_module(3, 4)
    assert diagonal_coinvariants(m34, m34).dim == 4


@pytest.mark.parametrize(
    "p,i,j",
    [(2, 1, 1), (2, 2, 2), (2, 3, 3), (3, 2, 2), (2, 2, 3), (3, 1, 2)],
)
def test_coinvariants_match_all_pairs_oracle(p, i, j):
    a, b = regular_module(p, i), regular_module(p, j)
    assert diagonal_coinvariants(a, b).dim == coinvariant_dim_oracle(a, b)


@pytest.mark.parametrize(
    "p,i,j",
    [(2, 1, 1), (2, 2, 2), (2, 3, 3), (3, 2, 2), (2, 2, 3), (3, 1, 2)],
)
def test_tensor_gr_matches_all_pairs_oracle(p, i, j):
    a, b = regular_module(p, i), regular_module(p, j)
    assert tensor_over_groupring(a, b).dim == tensor_gr_dim_oracle(a, b)


@pytest.mark.parametrize("p", (2, 3))
@pytest.mark.parametrize("i", range(1, 9))
def test_tensor_gr_collapse(p, i):
    m = regular_module(p, i)
    assert tensor_over_groupring(m, m).dim == i
    assert diagonal_coinvariants(m, m).dim == i


def test_tensor_with_trivial_factor_gives_coinvariants():
    m = regular_module(2, 4)
    one = trivial_module(2, 1)
    coinv_of_m = diagonal_coinvariants(one, m).dim
    assert tensor_over_groupring(one, m).dim == coinv_of_m
    # for the regular module the coinvariants are one-dimensional
    assert coinv_of_m == 1


def test_tensor_gr_mixed_sizes():
    a = regular_module(2, 2)
    b = regular_module(2, 4)
    assert tensor_over_groupring(a, b).dim == 2
    assert tensor_over_groupring(b, a).dim == 2


def test_quotient_dims_bounded_and_projection_consistent():
    for p, i in [(2, 3), (3, 2)]:
        m = regular_module(p, i)
        q = diagonal_coinvariants(m, m)
        assert 0 <= q.dim <= i * i
        assert q.projection.rows == q.dim
        # projection annihilates the relation span
        for v in q.relations.basis:
            assert not ((q.projection.array @ v) % p).any()


def test_quotient_dim_monotone_under_extra_relations():
    import random

    rng = random.Random(21)
    p, i = 3, 3
    m = regular_module(p, i)
    q = diagonal_coinvariants(m, m)
    ambient = i * i
    vectors = [list(v) for v in q.relations.basis]
    prev = q.dim
    for _ in range(5):
        vectors.append([rng.randrange(p) for _ in range(ambient)])
        span = FpSubspace.from_vectors(p, ambient, vectors)
        assert ambient - span.dim <= prev
        prev = ambient - span.dim


def test_mixed_primes_rejected():
    with pytest.raises(UsageError):
        diagonal_coinvariants(regular_module(2, 2), regular_module(3, 2))


# -- antipode ------------------------------------------------------------------


@pytest.mark.parametrize("p", (2, 3))
@pytest.mark.parametrize("i", range(1, 7))
def test_antipode_bijection_for_regular_modules(p, i):
    m = regular_module(p, i)
    check = antipode_iso_check(m, regular_antipode(p, i))
    assert check.bijective
    assert (check.coinvariant_dim, check.tensor_dim) == (i, i)


def test_antipode_trivial_module_identity():
    m = trivial_module(5, 1)
    check = antipode_iso_check(m, FpMatrix.identity(5, 1))
    assert check.bijective and check.coinvariant_dim == check.tensor_dim == 1


def test_antipode_twist_identity_holds():
    # S T = T^(-1) S, checked in the inverse-free form T S T = S
    for p, i in [(2, 4), (3, 3)]:
        s = regular_antipode(p, i).matrix.array
        t = regular_module(p, i).action.array
        assert np.array_equal((t @ s @ t) % p, s)


def test_corrupted_antipode_rejected():
    m = regular_module(2, 3)
    good = regular_antipode(2, 3).matrix.array.copy()
    good[0, 1] ^= 1  # break the twist
    with pytest.raises(UsageError):
        antipode_iso_check(m, FpMatrix(2, good))
    with pytest.raises(UsageError):
        ModuleAntipode(m, FpMatrix(2, np.zeros((3, 3), dtype=np.int64)))


# -- infinite-cyclic action homology ---------------------------------------------


@pytest.mark.parametrize("p,i", [(2, 1), (2, 5), (3, 4), (5, 2)])
def test_z_homology_regular(p, i):
    assert z_action_homology(regular_module(p, i)) == (1, 1)


def test_z_homology_trivial():
    assert z_action_homology(trivial_module(3, 7)) == (7, 7)


@pytest.mark.parametrize("p,k", [(2, 2), (3, 1)])
def test_z_homology_free_module_over_cyclic_ring(p, k):
    # the group ring of a cyclic group of order p^k, as a module over itself
    assert z_action_homology(regular_module(p, p**k)) == (1, 1)
