"""Mod-p second homology of table groups via the normalized bar complex.

For a group of order m the normalized chains in degree d are tuples of
non-identity elements, so C_1, C_2, C_3 have dimensions (m-1), (m-1)^2,
(m-1)^3 over F_p, with boundaries

    d2[g|h]   = [h] - [gh] + [g]
    d3[g|h|k] = [h|k] - [gh|k] + [g|hk] - [g|h]

where faces containing the identity are dropped.  Then

    dim H_2(G, F_p) = dim ker d2 - rank d3
                    = (m-1)^2 - rank d2 - rank d3.

d3 has (m-1)^3 rows of at most four entries each, so ranks are taken by
the streaming sparse eliminator; order 64 is the practical ceiling (a
quarter-million rows) and is also the default budget.

The five-term check compares two independent computations attached to a
normal subgroup H of G: the cokernel of the induced map
H_2(G) -> H_2(G/H), obtained from bar cycles pushed through the quotient
chain map, and the subgroup-theoretic quotient (H cap [G,G]G^p)/([H,G]H^p)
computed purely from multiplication tables.  Exactness of the low-degree
homology sequence says the dimensions must agree.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from .cycmod import diagonal_coinvariants, regular_module, tensor_over_groupring
from .errors import ResourceLimitError, UsageError
from .groups import FiniteGroup, GroupHom, build_lamplighter, elementary_abelian, hopf_quotient
from .linfp import FpMatrix, SparseRankAccumulator, kernel_basis, rank

__all__ = [
    "bar_h2",
    "five_term_check",
    "FiveTermReport",
    "tower_report",
    "TowerRow",
    "TowerReport",
    "max_bar_order",
]

DEFAULT_MAX_BAR = 64


def max_bar_order() -> int:
    """Budget for bar-resolution homology; override with PROCYCLIC_MAX_BAR."""
    value = os.environ.get("PROCYCLIC_MAX_BAR")
    return int(value) if value else DEFAULT_MAX_BAR


def _check_bar_budget(group: FiniteGroup) -> None:
    budget = max_bar_order()
    if group.order > budget:
        raise ResourceLimitError(
            f"bar resolution needs |G| <= {budget}, got {group.order} "
            "(set PROCYCLIC_MAX_BAR to raise the budget)"
        )


def _boundary2_matrix(group: FiniteGroup, nontrivial, pos) -> FpMatrix:
    """Dense d2: C_2 -> C_1, columns indexed row-major by (g, h)."""
    m1 = len(nontrivial)
    arr = np.zeros((m1, m1 * m1), dtype=np.int64)
    e = group.identity
    for a, g in enumerate(nontrivial):
        for b, h in enumerate(nontrivial):
            col = a * m1 + b
            arr[b, col] += 1  # [h]
            gh = group.mul(g, h)
            if gh != e:
                arr[pos[gh], col] -= 1
            arr[a, col] += 1  # [g]
    return FpMatrix(group.p, arr)


def _rank_d3(group: FiniteGroup, nontrivial, pos) -> int:
    """Rank of d3 streamed row by row; bit-packed fast path for p = 2."""
    m1 = len(nontrivial)
    p = group.p
    e = group.identity
    table = group.table
    acc = SparseRankAccumulator(m1 * m1, p)
    if p == 2:
        for g in nontrivial:
            a = pos[g]
            row_g = table[g]
            for h in nontrivial:
                b = pos[h]
                gh = int(row_g[h])
                row_h = table[h]
                base = 1 << (a * m1 + b)  # [g|h]
                gh_ok = gh != e
                if gh_ok:
                    gh_base = pos[gh] * m1
                a_base = a * m1
                for k in nontrivial:
                    c = pos[k]
                    row = base ^ (1 << (b * m1 + c))  # [h|k]
                    if gh_ok:
                        row ^= 1 << (gh_base + c)  # [gh|k]
                    hk = int(row_h[k])
                    if hk != e:
                        row ^= 1 << (a_base + pos[hk])  # [g|hk]
                    acc.add_bits(row)
        return acc.rank
    for g in nontrivial:
        a = pos[g]
        row_g = table[g]
        for h in nontrivial:
            b = pos[h]
            gh = int(row_g[h])
            row_h = table[h]
            for k in nontrivial:
                c = pos[k]
                pairs = [(b * m1 + c, 1), (a * m1 + b, -1)]
                if gh != e:
                    pairs.append((pos[gh] * m1 + c, -1))
                hk = int(row_h[k])
                if hk != e:
                    pairs.append((a * m1 + pos[hk], 1))
                acc.add_pairs(pairs)
    return acc.rank


def bar_h2(group: FiniteGroup) -> int:
    """dim H_2(G, F_p) from the normalized bar complex."""
    _check_bar_budget(group)
    if group.order == 1:
        return 0
    nontrivial = [g for g in range(group.order) if g != group.identity]
    pos = {g: idx for idx, g in enumerate(nontrivial)}
    m1 = len(nontrivial)
    d2 = _boundary2_matrix(group, nontrivial, pos)
    z2_dim = m1 * m1 - rank(d2)
    return z2_dim - _rank_d3(group, nontrivial, pos)


@dataclass(frozen=True)
class FiveTermReport:
    cokernel_dim: int
    hopf_dim: int
    equal: bool


def _chain_map_c2(hom: GroupHom, nontrivial, pos, q_nontrivial, q_pos) -> np.ndarray:
    """Index map for f# on C_2: basis t -> target index, or -1 if degenerate."""
    m1 = len(nontrivial)
    q_e = hom.target.identity
    mapping = np.full(m1 * m1, -1, dtype=np.int64)
    qm1 = len(q_nontrivial)
    for a, g in enumerate(nontrivial):
        fg = hom(g)
        if fg == q_e:
            continue
        for b, h in enumerate(nontrivial):
            fh = hom(h)
            if fh == q_e:
                continue
            mapping[a * m1 + b] = q_pos[fg] * qm1 + q_pos[fh]
    return mapping


def five_term_check(group: FiniteGroup, h_elements) -> FiveTermReport:
    """Compare coker(H_2(G) -> H_2(G/H)) with the mod-p Hopf quotient.

    The cokernel comes from the bar pipeline: push a basis of 2-cycles of
    G through the quotient chain map, adjoin the 2-boundaries of G/H, and
    subtract the resulting rank from dim Z_2(G/H).  The Hopf side uses
    only subgroup closures.  Low-degree exactness demands equality.
    """
    _check_bar_budget(group)
    quotient, hom = group.quotient(h_elements)
    _check_bar_budget(quotient)

    p = group.p
    nontrivial = [g for g in range(group.order) if g != group.identity]
    pos = {g: idx for idx, g in enumerate(nontrivial)}
    q_nontrivial = [g for g in range(quotient.order) if g != quotient.identity]
    q_pos = {g: idx for idx, g in enumerate(q_nontrivial)}
    qm1 = len(q_nontrivial)
    q_cols = qm1 * qm1

    if q_cols == 0:
        return FiveTermReport(0, hopf_quotient(group, h_elements), True)

    # cycles of G pushed into C_2 of the quotient
    d2_g = _boundary2_matrix(group, nontrivial, pos)
    cycles = kernel_basis(d2_g)
    mapping = _chain_map_c2(hom, nontrivial, pos, q_nontrivial, q_pos)
    keep = mapping >= 0

    acc = SparseRankAccumulator(q_cols, p)
    for v in cycles.basis:
        nz = keep & (v != 0)
        if not nz.any():
            continue
        image = np.zeros(q_cols, dtype=np.int64)
        np.add.at(image, mapping[nz], v[nz])
        image %= p
        cols = np.nonzero(image)[0]
        acc.add_pairs(zip(cols.tolist(), image[cols].tolist()))

    # adjoin the boundaries of the quotient
    e = quotient.identity
    table = quotient.table
    for g in q_nontrivial:
        a = q_pos[g]
        for h in q_nontrivial:
            b = q_pos[h]
            gh = int(table[g, h])
            for k in q_nontrivial:
                c = q_pos[k]
                pairs = [(b * qm1 + c, 1), (a * qm1 + b, -1)]
                if gh != e:
                    pairs.append((q_pos[gh] * qm1 + c, -1))
                hk = int(table[h, k])
                if hk != e:
                    pairs.append((a * qm1 + q_pos[hk], 1))
                acc.add_pairs(pairs)
    rank_union = acc.rank

    d2_q = _boundary2_matrix(quotient, q_nontrivial, q_pos)
    z2_q = q_cols - rank(d2_q)
    cokernel_dim = z2_q - rank_union
    hopf_dim = hopf_quotient(group, h_elements)
    return FiveTermReport(
        cokernel_dim=cokernel_dim,
        hopf_dim=hopf_dim,
        equal=cokernel_dim == hopf_dim,
    )


@dataclass(frozen=True)
class TowerRow:
    level: int
    order: int
    h2_dim: int
    coinvariant_dim: int
    tensor_gr_dim: int
    elab_h2: int
    h2_lower_bound: int
    collapse_ok: bool
    inequality_ok: bool


@dataclass(frozen=True)
class TowerReport:
    p: int
    rows: tuple[TowerRow, ...]
    complete: bool
    stopped_reason: str | None = None


def tower_report(p: int, i_max: int) -> TowerReport:
    """Double-lamplighter tower rows up to level i_max.

    Each level i builds the order p^(3i) quotient, takes its bar H_2, and
    compares against the coinvariant and group-ring tensor dimensions of
    the level-i regular module.  The recorded checks are the finite-level
    collapse (both module dimensions equal i) and the split lower bound

        h2_dim >= i + 2 * H_2((Z/p)^i).

    Levels past the bar budget stop the tower with a partial report.
    """
    if i_max < 1:
        raise UsageError("tower needs i_max >= 1")
    rows = []
    for i in range(1, i_max + 1):
        try:
            group = build_lamplighter(p, i, copies=2)
            h2 = bar_h2(group)
            elab = bar_h2(elementary_abelian(p, i))
        except ResourceLimitError as exc:
            return TowerReport(p=p, rows=tuple(rows), complete=False, stopped_reason=str(exc))
        reg = regular_module(p, i)
        coinv = diagonal_coinvariants(reg, reg).dim
        tensor = tensor_over_groupring(reg, reg).dim
        bound = coinv + 2 * elab
        rows.append(
            TowerRow(
                level=i,
                order=group.order,
                h2_dim=h2,
                coinvariant_dim=coinv,
                tensor_gr_dim=tensor,
                elab_h2=elab,
                h2_lower_bound=bound,
                collapse_ok=(coinv == i and tensor == i),
                inequality_ok=(h2 >= bound),
            )
        )
    return TowerReport(p=p, rows=tuple(rows), complete=True)
