"""Finite p-groups as explicit multiplication tables.

A group of order m is a uint16 table t with t[a, b] = index of a*b, plus
the identity index and an inverse table.  Construction verifies the group
axioms: identity and inverses always, associativity exhaustively up to
order 4096 (vectorized, chunked by rows) and by random sampling above.

The builders cover the groups this package studies: cyclic p-groups,
elementary abelian groups, and the (single or double) lamplighter
quotients

    (F_p[x]/(x^i))^copies  x|  Z/p^i

with the cyclic generator acting on each coordinate as multiplication by
1 - x.  The semidirect convention is fixed once and for all as

    (u, n) * (u', n') = (u . T^(n') + u', n + n'),

acting on the left factor by the power of the generator matrix named by
the *right* factor's cyclic part.  The opposite convention gives an
isomorphic group; one choice is canonical so tables are reproducible.

Subgroup-flavored operations (closure, normality, the p-Frattini-style
products [G,G]G^p and [H,G]H^p, quotient groups) work on index sets and
power the mod-p Hopf quotient.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass

import numpy as np

from .errors import ResourceLimitError, UsageError
from .fpx import TruncSeries, validate_prime

__all__ = [
    "FiniteGroup",
    "GroupHom",
    "SemidirectElement",
    "LamplighterGroup",
    "cyclic_group",
    "elementary_abelian",
    "build_lamplighter",
    "subgroup_closure",
    "hopf_quotient",
    "max_group_order",
]

DEFAULT_MAX_GROUP = 4096
_EXHAUSTIVE_ASSOC_LIMIT = 4096
_ASSOC_SAMPLES = 20000


def max_group_order() -> int:
    """Table-construction budget; override with PROCYCLIC_MAX_GROUP."""
    value = os.environ.get("PROCYCLIC_MAX_GROUP")
    return int(value) if value else DEFAULT_MAX_GROUP


def _p_power_exponent(order: int, p: int) -> int:
    e = 0
    m = order
    while m % p == 0:
        m //= p
        e += 1
    if m != 1:
        raise UsageError(f"group order {order} is not a power of {p}")
    return e


class FiniteGroup:
    """Multiplication-table group of p-power order."""

    __slots__ = ("p", "order", "table", "identity", "inverses", "generator_names")

    def __init__(self, p: int, table, generator_names=None, validate: bool = True):
        p = validate_prime(p)
        tab = np.asarray(table, dtype=np.uint16)
        if tab.ndim != 2 or tab.shape[0] != tab.shape[1]:
            raise UsageError("multiplication table must be square")
        m = tab.shape[0]
        _p_power_exponent(m, p)
        if tab.size and int(tab.max()) >= m:
            raise UsageError("table entries must be element indices")
        identity = self._find_identity(tab)
        inverses = self._find_inverses(tab, identity)
        if validate:
            self._check_associativity(tab)
        tab.flags.writeable = False
        inverses.flags.writeable = False
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "order", m)
        object.__setattr__(self, "table", tab)
        object.__setattr__(self, "identity", identity)
        object.__setattr__(self, "inverses", inverses)
        object.__setattr__(self, "generator_names", tuple(generator_names or ()))

    def __setattr__(self, name, value):
        raise AttributeError("FiniteGroup is immutable")

    @staticmethod
    def _find_identity(tab: np.ndarray) -> int:
        m = tab.shape[0]
        idx = np.arange(m, dtype=np.uint16)
        for e in range(m):
            if np.array_equal(tab[e], idx) and np.array_equal(tab[:, e], idx):
                return e
        raise UsageError("table has no two-sided identity")

    @staticmethod
    def _find_inverses(tab: np.ndarray, identity: int) -> np.ndarray:
        m = tab.shape[0]
        inv = np.full(m, -1, dtype=np.int64)
        rows, cols = np.nonzero(tab == identity)
        for a, b in zip(rows, cols):
            inv[a] = b
        if (inv < 0).any():
            raise UsageError("some element has no inverse")
        # two-sidedness: a*b = e must imply b*a = e
        if not np.array_equal(tab[inv, np.arange(m)], np.full(m, identity, dtype=np.uint16)):
            raise UsageError("inverses are not two-sided")
        return inv.astype(np.uint16)

    @staticmethod
    def _check_associativity(tab: np.ndarray) -> None:
        m = tab.shape[0]
        if m <= _EXHAUSTIVE_ASSOC_LIMIT:
            for a in range(m):
                row = tab[a]
                if not np.array_equal(tab[row][:, :], tab[a][tab]):
                    raise UsageError(f"associativity fails at element {a}")
        else:
            rng = np.random.default_rng(0)
            a = rng.integers(0, m, _ASSOC_SAMPLES)
            b = rng.integers(0, m, _ASSOC_SAMPLES)
            c = rng.integers(0, m, _ASSOC_SAMPLES)
            if not np.array_equal(tab[tab[a, b], c], tab[a, tab[b, c]]):
                raise UsageError("associativity fails on random sample")

    # -- element arithmetic -------------------------------------------

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverses[a])

    def power(self, a: int, n: int) -> int:
        if n < 0:
            return self.power(self.inv(a), -n)
        result = self.identity
        base = a
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def conjugate(self, a: int, g: int) -> int:
        """g^(-1) a g."""
        return self.mul(self.mul(self.inv(g), a), g)

    def commutator(self, a: int, b: int) -> int:
        """a^(-1) b^(-1) a b."""
        return self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))

    def element_order(self, a: int) -> int:
        n = 1
        cur = a
        while cur != self.identity:
            cur = self.mul(cur, a)
            n += 1
        return n

    def center(self) -> list[int]:
        tab = self.table
        return [a for a in range(self.order) if np.array_equal(tab[a], tab[:, a])]

    def is_abelian(self) -> bool:
        return np.array_equal(self.table, self.table.T)

    # -- subgroup machinery ---------------------------------------------

    def subgroup_closure(self, generators) -> frozenset[int]:
        """Subgroup generated by a set of element indices (BFS closure)."""
        seen = {self.identity}
        frontier = [self.identity]
        gens = sorted(set(int(g) for g in generators))
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    b = self.mul(a, g)
                    if b not in seen:
                        seen.add(b)
                        nxt.append(b)
            frontier = nxt
        return frozenset(seen)

    def is_subgroup(self, elements) -> bool:
        s = set(int(x) for x in elements)
        if self.identity not in s:
            return False
        return all(self.mul(a, b) in s for a in s for b in s)

    def is_normal(self, elements) -> bool:
        s = set(int(x) for x in elements)
        if not self.is_subgroup(s):
            return False
        return all(self.conjugate(h, g) in s for h in s for g in range(self.order))

    def commutator_p_subgroup(self) -> frozenset[int]:
        """[G, G] G^p: the kernel of the maximal elementary abelian quotient."""
        gens = {self.commutator(a, b) for a in range(self.order) for b in range(self.order)}
        gens |= {self.power(a, self.p) for a in range(self.order)}
        return self.subgroup_closure(gens)

    def relative_commutator_p(self, h_elements) -> frozenset[int]:
        """[H, G] H^p for a subgroup H given as an index set."""
        h = sorted(set(int(x) for x in h_elements))
        gens = {self.commutator(x, g) for x in h for g in range(self.order)}
        gens |= {self.power(x, self.p) for x in h}
        return self.subgroup_closure(gens)

    def quotient(self, h_elements) -> tuple["FiniteGroup", "GroupHom"]:
        """Quotient by a normal subgroup, with the projection homomorphism."""
        h = frozenset(int(x) for x in h_elements)
        if not self.is_normal(h):
            raise UsageError("can only quotient by a normal subgroup")
        coset_of: dict[int, int] = {}
        reps: list[int] = []
        for a in range(self.order):
            if a in coset_of:
                continue
            idx = len(reps)
            reps.append(a)
            for x in h:
                coset_of[self.mul(a, x)] = idx
        q = len(reps)
        table = np.zeros((q, q), dtype=np.uint16)
        for ia, a in enumerate(reps):
            for ib, b in enumerate(reps):
                table[ia, ib] = coset_of[self.mul(a, b)]
        quotient = FiniteGroup(self.p, table, generator_names=self.generator_names)
        images = np.array([coset_of[a] for a in range(self.order)], dtype=np.uint16)
        return quotient, GroupHom(self, quotient, images)

    # -- serialization ----------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "order": self.order,
            "prime": self.p,
            "identity": self.identity,
            "generator_names": list(self.generator_names),
            "table": [int(v) for v in self.table.reshape(-1)],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())

    @classmethod
    def from_json_dict(cls, data: dict) -> "FiniteGroup":
        order = int(data["order"])
        table = np.asarray(data["table"], dtype=np.uint16).reshape(order, order)
        return cls(
            int(data["prime"]),
            table,
            generator_names=data.get("generator_names") or (),
        )

    def __repr__(self) -> str:
        return f"FiniteGroup(p={self.p}, order={self.order})"


class GroupHom:
    """Homomorphism between table groups, stored as an image table."""

    __slots__ = ("source", "target", "images")

    def __init__(self, source: FiniteGroup, target: FiniteGroup, images):
        img = np.asarray(images, dtype=np.uint16)
        if img.shape != (source.order,):
            raise UsageError("image table length must equal the source order")
        if img.size and int(img.max()) >= target.order:
            raise UsageError("image table entries must index the target")
        if int(img[source.identity]) != target.identity:
            raise UsageError("homomorphism must preserve the identity")
        a = np.repeat(np.arange(source.order), source.order)
        b = np.tile(np.arange(source.order), source.order)
        if not np.array_equal(
            img[source.table[a, b].astype(np.int64)],
            target.table[img[a].astype(np.int64), img[b].astype(np.int64)],
        ):
            raise UsageError("not a homomorphism: f(ab) != f(a)f(b) somewhere")
        img.flags.writeable = False
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "images", img)

    def __setattr__(self, name, value):
        raise AttributeError("GroupHom is immutable")

    def __call__(self, a: int) -> int:
        return int(self.images[a])


# -- builders ----------------------------------------------------------


def cyclic_group(p: int, e: int) -> FiniteGroup:
    """Z / p^e as a table group."""
    p = validate_prime(p)
    if e < 0:
        raise UsageError("exponent must be nonnegative")
    m = p**e
    if m > max_group_order():
        raise ResourceLimitError(f"order {m} exceeds budget {max_group_order()}")
    idx = np.arange(m)
    table = (idx[:, None] + idx[None, :]) % m
    return FiniteGroup(p, table.astype(np.uint16), generator_names=("g",))


def elementary_abelian(p: int, r: int) -> FiniteGroup:
    """(Z/p)^r, elements encoded as little-endian base-p words."""
    p = validate_prime(p)
    if r < 0:
        raise UsageError("rank must be nonnegative")
    m = p**r
    if m > max_group_order():
        raise ResourceLimitError(f"order {m} exceeds budget {max_group_order()}")
    digits = np.zeros((m, r), dtype=np.int64)
    v = np.arange(m)
    for j in range(r):
        digits[:, j] = v % p
        v = v // p
    table = np.zeros((m, m), dtype=np.uint16)
    weights = p ** np.arange(r)
    for a in range(m):
        summed = (digits[a][None, :] + digits) % p
        table[a] = summed @ weights
    names = tuple(f"e{j+1}" for j in range(r))
    return FiniteGroup(p, table, generator_names=names)


@dataclass(frozen=True)
class SemidirectElement:
    """Structured element (coords; n) of a lamplighter quotient."""

    coords: tuple[TruncSeries, ...]
    n: int

    @property
    def v(self) -> TruncSeries:
        return self.coords[0]

    @property
    def w(self) -> TruncSeries:
        if len(self.coords) < 2:
            raise UsageError("single-copy element has no second coordinate")
        return self.coords[1]


class LamplighterGroup(FiniteGroup):
    """Lamplighter quotient with element encode/decode helpers.

    Element index layout: base-p digits of all coordinate series, lowest
    coordinate first, then the cyclic part as the most significant word.
    """

    __slots__ = ("level", "copies", "cyclic_order")

    def __init__(self, p, table, level, copies, cyclic_order, generator_names):
        super().__init__(p, table, generator_names=generator_names)
        object.__setattr__(self, "level", level)
        object.__setattr__(self, "copies", copies)
        object.__setattr__(self, "cyclic_order", cyclic_order)

    def encode(self, element: SemidirectElement) -> int:
        if len(element.coords) != self.copies:
            raise UsageError(f"element must have {self.copies} coordinates")
        i = self.level
        idx = element.n % self.cyclic_order
        for series in reversed(element.coords):
            if series.p != self.p or series.prec != i:
                raise UsageError("coordinate series at the wrong prime or precision")
            for c in series.coeffs[::-1]:
                idx = idx * self.p + int(c)
        return idx

    def decode(self, index: int) -> SemidirectElement:
        i, p = self.level, self.p
        coords = []
        for _ in range(self.copies):
            digits = np.zeros(i, dtype=np.int64)
            for j in range(i):
                index, digits[j] = divmod(index, p)
            coords.append(TruncSeries(p, digits, i))
        return SemidirectElement(coords=tuple(coords), n=index)

    def socle_indices(self, coordinate: int = 0) -> frozenset[int]:
        """The central subgroup generated by x^(i-1) in one coordinate.

        These are the base elements killed by 1 - T, so they commute with
        everything; handy as a small normal subgroup.
        """
        if not 0 <= coordinate < self.copies:
            raise UsageError("no such coordinate")
        members = set()
        for c in range(self.p):
            coords = [TruncSeries.zero(self.p, self.level) for _ in range(self.copies)]
            coords[coordinate] = TruncSeries.monomial(
                self.p, self.level, self.level - 1, c
            )
            members.add(self.encode(SemidirectElement(tuple(coords), 0)))
        return frozenset(members)

    def base_indices(self) -> frozenset[int]:
        """The normal subgroup of all elements with trivial cyclic part."""
        count = self.p ** (self.level * self.copies)
        return frozenset(range(count))


def build_lamplighter(p: int, i: int, copies: int = 2) -> LamplighterGroup:
    """(F_p[x]/(x^i))^copies semidirect Z/p^i with the 1-x shift action."""
    p = validate_prime(p)
    if i < 1:
        raise UsageError("level i must be >= 1")
    if copies not in (1, 2):
        raise UsageError("copies must be 1 or 2")
    cyclic_order = p**i
    order = p ** (i * copies) * cyclic_order
    if order > max_group_order():
        raise ResourceLimitError(
            f"order {order} exceeds budget {max_group_order()} "
            "(set PROCYCLIC_MAX_GROUP to raise it)"
        )

    # powers of the action matrix, applied to all p^i coordinate values
    base_count = p**i
    t_action = np.zeros((i, i), dtype=np.int64)
    for j in range(i):
        t_action[j, j] = 1
        if j + 1 < i:
            t_action[j + 1, j] = p - 1

    digits = np.zeros((base_count, i), dtype=np.int64)
    v = np.arange(base_count)
    for j in range(i):
        digits[:, j] = v % p
        v = v // p
    weights = p ** np.arange(i)

    acted = np.zeros((cyclic_order, base_count), dtype=np.int64)
    power = np.eye(i, dtype=np.int64)
    for n in range(cyclic_order):
        acted[n] = ((digits @ power.T) % p) @ weights
        power = (t_action @ power) % p

    # element index = sum_c coord_c * base_count^c + n * base_count^copies
    coord_weights = base_count ** np.arange(copies)
    n_weight = base_count**copies

    coords = np.zeros((order, copies), dtype=np.int64)
    v = np.arange(order)
    for c in range(copies):
        coords[:, c] = v % base_count
        v = v // base_count
    n_part = v  # cyclic component of every element

    table = np.zeros((order, order), dtype=np.uint16)
    for b in range(order):
        nb = int(n_part[b])
        moved = acted[nb][coords]  # apply T^(n_b) to every coordinate of a
        combined = (digits[moved.reshape(-1)].reshape(order, copies, i) + digits[coords[b]][None, :, :]) % p
        summed = (combined @ weights) @ coord_weights
        table[:, b] = summed + ((n_part + nb) % cyclic_order) * n_weight

    names = ("a", "b", "c")[: copies + 1]
    return LamplighterGroup(
        p,
        table,
        level=i,
        copies=copies,
        cyclic_order=cyclic_order,
        generator_names=names,
    )


def subgroup_closure(group: FiniteGroup, generators) -> frozenset[int]:
    return group.subgroup_closure(generators)


def hopf_quotient(group: FiniteGroup, h_elements) -> int:
    """dim over F_p of (H intersect [G,G]G^p) / ([H,G]H^p).

    H must be normal.  Both subgroups are produced by exhaustive closure
    over commutator and p-th-power generators; the quotient is elementary
    abelian because H^p and [H, G] land in the denominator, so its
    dimension is log_p of the index.
    """
    h = frozenset(int(x) for x in h_elements)
    if not group.is_normal(h):
        raise UsageError("H must be a normal subgroup")
    numerator = h & group.commutator_p_subgroup()
    denominator = group.relative_commutator_p(h)
    num_closure = group.subgroup_closure(numerator)
    if num_closure != numerator:
        # H cap [G,G]G^p is an intersection of subgroups, hence a subgroup;
        # anything else means the inputs were inconsistent.
        raise UsageError("numerator is not a subgroup; H was not closed")
    if not denominator <= numerator:
        raise UsageError("[H,G]H^p escapes H cap [G,G]G^p; H was not normal")
    quotient_size = len(numerator) // len(denominator)
    dim = 0
    while quotient_size > 1:
        if quotient_size % group.p:
            raise UsageError("Hopf quotient size is not a p-power")
        quotient_size //= group.p
        dim += 1
    return dim
