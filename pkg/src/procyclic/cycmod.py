"""Finite-dimensional modules over the group ring of a cyclic p-group.

A module is described by the matrix T of its generator action (acting on
column vectors).  T must have p-power order, equivalently T - I must be
nilpotent; the minimal exponent k with T^(p^k) = I is computed at
construction, so every module carries its canonical order exponent.

The two quotient constructions live side by side:

* diagonal coinvariants of M (x) M': quotient by the span of
  T m (x) T'm' - m (x) m',
* tensor product over the group ring: quotient by the span of
  T m (x) m' - m (x) T'm'.

Both relation spans are generated by basis pairs only, which suffices
because each relation is bilinear in (m, m').  Tensor coordinates are
row-major: basis pair (i, j) sits at index i * dim(M') + j.

The antipode of a module is an invertible S with S T = T^(-1) S; mapping
m (x) m' to m (x) S m' matches the two relation spans, so equality of the
two quotient dimensions upgrades to an explicit bijection, and that is
exactly what antipode_iso_check certifies.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import UsageError
from .fpx import TruncSeries, validate_prime
from .linfp import FpMatrix, FpSubspace, kernel_basis, quotient_projection, rank
from .taumap import min_digit_precision

__all__ = [
    "FpCModule",
    "ModuleAntipode",
    "QuotientDescription",
    "AntipodeCheck",
    "regular_module",
    "regular_antipode",
    "trivial_module",
    "diagonal_coinvariants",
    "tensor_over_groupring",
    "antipode_iso_check",
    "z_action_homology",
]


class FpCModule:
    """Module over F_p[C], C a cyclic p-group, given by its action matrix."""

    __slots__ = ("p", "dim", "action", "order_exponent")

    def __init__(self, p: int, action: FpMatrix):
        p = validate_prime(p)
        if not isinstance(action, FpMatrix):
            action = FpMatrix(p, action)
        if action.p != p:
            raise UsageError(f"action matrix is over F_{action.p}, module over F_{p}")
        d = action.rows
        if action.cols != d:
            raise UsageError("action matrix must be square")
        if rank(action) != d:
            raise UsageError("action matrix must be invertible")
        # T has p-power order iff T - I is nilpotent; the nilpotency index e
        # gives the minimal exponent via p^k >= e.
        n = (action.array - np.eye(d, dtype=np.int64)) % p
        e = 0
        power = np.eye(d, dtype=np.int64)
        while power.any():
            if e >= d:
                raise UsageError("action matrix does not have p-power order")
            power = _matmod(power, n, p)
            e += 1
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "dim", d)
        object.__setattr__(self, "action", action)
        object.__setattr__(self, "order_exponent", min_digit_precision(p, e))

    def __setattr__(self, name, value):
        raise AttributeError("FpCModule is immutable")

    def __repr__(self) -> str:
        return (
            f"FpCModule(p={self.p}, dim={self.dim}, "
            f"order_exponent={self.order_exponent})"
        )


def _matmod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    return (a @ b) % p


class ModuleAntipode:
    """Invertible S with S T = T^(-1) S over a given module."""

    __slots__ = ("module", "matrix")

    def __init__(self, module: FpCModule, matrix: FpMatrix):
        if not isinstance(matrix, FpMatrix):
            matrix = FpMatrix(module.p, matrix)
        if matrix.p != module.p:
            raise UsageError("antipode matrix prime differs from module prime")
        d = module.dim
        if matrix.array.shape != (d, d):
            raise UsageError("antipode matrix shape differs from module dimension")
        if rank(matrix) != d:
            raise UsageError("antipode matrix must be invertible")
        t = module.action.array
        # S T = T^(-1) S is equivalent to T S T = S.
        if not np.array_equal(_matmod(_matmod(t, matrix.array, module.p), t, module.p), matrix.array):
            raise UsageError("antipode twist S T = T^(-1) S fails")
        object.__setattr__(self, "module", module)
        object.__setattr__(self, "matrix", matrix)

    def __setattr__(self, name, value):
        raise AttributeError("ModuleAntipode is immutable")


def regular_module(p: int, i: int) -> FpCModule:
    """F_p[x]/(x^i) with the generator acting as multiplication by 1 - x."""
    if i < 1:
        raise UsageError("regular module needs i >= 1")
    t = np.zeros((i, i), dtype=np.int64)
    for j in range(i):
        t[j, j] = 1
        if j + 1 < i:
            t[j + 1, j] = p - 1
    return FpCModule(p, FpMatrix(p, t))


def trivial_module(p: int, dim: int) -> FpCModule:
    return FpCModule(p, FpMatrix.identity(p, dim))


def regular_antipode(p: int, i: int) -> ModuleAntipode:
    """The ring antipode of F_p[x]/(x^i) as a module antipode.

    Column j is sigma(x^j) = (1 - (1-x)^(-1))^j in the monomial basis.
    """
    mod = regular_module(p, i)
    one = TruncSeries.one(p, i)
    s_x = one - TruncSeries.one_minus_x(p, i).invert()
    cols = []
    power = one
    for _ in range(i):
        cols.append(power.coeffs)
        power = power * s_x
    return ModuleAntipode(mod, FpMatrix(p, np.array(cols).T))


@dataclass(frozen=True)
class QuotientDescription:
    """A quotient of a tensor square: dimension plus projection data."""

    p: int
    ambient: int
    dim: int
    projection: FpMatrix
    relations: FpSubspace


def _check_pair(m: FpCModule, m2: FpCModule) -> None:
    if m.p != m2.p:
        raise UsageError(f"mixed primes {m.p} and {m2.p}")


def _quotient_by(m: FpCModule, m2: FpCModule, rel_matrix: np.ndarray) -> QuotientDescription:
    p = m.p
    ambient = m.dim * m2.dim
    span = FpSubspace.from_vectors(p, ambient, rel_matrix.T % p)
    return QuotientDescription(
        p=p,
        ambient=ambient,
        dim=ambient - span.dim,
        projection=quotient_projection(span),
        relations=span,
    )


def diagonal_coinvariants(m: FpCModule, m2: FpCModule) -> QuotientDescription:
    """Quotient of M (x) M' by the span of T m (x) T'm' - m (x) m'."""
    _check_pair(m, m2)
    k = np.kron(m.action.array, m2.action.array)
    rel = (k - np.eye(k.shape[0], dtype=np.int64)) % m.p
    return _quotient_by(m, m2, rel)


def tensor_over_groupring(m: FpCModule, m2: FpCModule) -> QuotientDescription:
    """Quotient of M (x) M' by the span of T m (x) m' - m (x) T'm'."""
    _check_pair(m, m2)
    left = np.kron(m.action.array, np.eye(m2.dim, dtype=np.int64))
    right = np.kron(np.eye(m.dim, dtype=np.int64), m2.action.array)
    return _quotient_by(m, m2, (left - right) % m.p)


@dataclass(frozen=True)
class AntipodeCheck:
    bijective: bool
    coinvariant_dim: int
    tensor_dim: int


def antipode_iso_check(m: FpCModule, antipode) -> AntipodeCheck:
    """Certify that id (x) S maps coinvariant relations onto tensor relations.

    Accepts a ModuleAntipode or a raw matrix (validated here).  Since S is
    invertible, carrying one relation span into the other plus equality of
    span dimensions means the induced map of quotients is a bijection.
    """
    if not isinstance(antipode, ModuleAntipode):
        antipode = ModuleAntipode(m, antipode)
    if antipode.module is not m and antipode.module.action != m.action:
        raise UsageError("antipode was built for a different module")
    p = m.p
    coinv = diagonal_coinvariants(m, m)
    tensor = tensor_over_groupring(m, m)
    phi = np.kron(np.eye(m.dim, dtype=np.int64), antipode.matrix.array)
    images = (coinv.relations.basis @ phi.T) % p
    carried = all(tensor.relations.contains(v) for v in images)
    bij = carried and coinv.relations.dim == tensor.relations.dim
    return AntipodeCheck(
        bijective=bij,
        coinvariant_dim=coinv.dim,
        tensor_dim=tensor.dim,
    )


def z_action_homology(m: FpCModule) -> tuple[int, int]:
    """(dim coker(I - T), dim ker(I - T)) for the generator action T.

    This is the homology of an infinite-cyclic action at a finite stage.
    Degrees zero and one are computed along independent routes (column
    rank for the cokernel, an explicit null-space basis for the kernel).
    """
    d = m.dim
    one_minus_t = FpMatrix(m.p, (np.eye(d, dtype=np.int64) - m.action.array) % m.p)
    h0 = d - rank(one_minus_t)
    h1 = kernel_basis(one_minus_t).dim
    return h0, h1
