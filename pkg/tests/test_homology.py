"""Bar-resolution H2 against classical dimensions, and five-term exactness.

Expected values come from universal coefficients and Kunneth: for cyclic
Z/p^e the mod-p H2 is Tor(Z/p^e, Z/p) = Z/p (dimension 1); for a product,
dim H2 is the number of degree-2 monomials in the factors' Poincare
series, giving 3 for (Z/p)^2 and 6 for (Z/2)^3; D4 has Schur multiplier
Z/2 and abelianization (Z/2)^2, so dim H2(D4, F_2) = 1 + 2 = 3; Q8 has
trivial multiplier, so dim H2(Q8, F_2) = 0 + 2 = 2.
"""

import numpy as np
import pytest

from procyclic import (
    FiniteGroup,
    ResourceLimitError,
    bar_h2,
    build_lamplighter,
    cyclic_group,
    elementary_abelian,
    five_term_check,
    tower_report,
)


def dihedral8():
    """Symmetries of the square: (r, s) with r in Z/4, s in Z/2."""

    def mul(a, b):
        r1, s1 = a % 4, a // 4
        r2, s2 = b % 4, b // 4
        # s r s = r^(-1): (r1, s1)(r2, s2) = (r1 + r2 * (-1)^s1, s1 + s2)
        r = (r1 + (r2 if s1 == 0 else -r2)) % 4
        return r + 4 * ((s1 + s2) % 2)

    table = [[mul(a, b) for b in range(8)] for a in range(8)]
    return FiniteGroup(2, table)


def quaternion8():
    """Unit quaternions {1, -1, i, -i, j, -j, k, -k} as indices 0..7."""
    units = {}
    names = [(1, ""), (-1, ""), (1, "i"), (-1, "i"), (1, "j"), (-1, "j"), (1, "k"), (-1, "k")]

    def mul(a, b):
        sa, xa = names[a]
        sb, xb = names[b]
        rules = {
            ("", ""): (1, ""),
            ("", "i"): (1, "i"),
            ("", "j"): (1, "j"),
            ("", "k"): (1, "k"),
            ("i", ""): (1, "i"),
            ("j", ""): (1, "j"),
            ("k", ""): (1, "k"),
            ("i", "i"): (-1, ""),
            ("j", "j"): (-1, ""),
            ("k", "k"): (-1, ""),
            ("i", "j"): (1, "k"),
            ("j", "i"): (-1, "k"),
            ("j", "k"): (1, "i"),
            ("k", "j"): (-1, "i"),
            ("k", "i"): (1, "j"),
            ("i", "k"): (-1, "j"),
        }
        sign, axis = rules[(xa, xb)]
        sign *= sa * sb
        return names.index((sign, axis))

    table = [[mul(a, b) for b in range(8)] for a in range(8)]
    return FiniteGroup(2, table)


# -- known dimensions --------------------------------------------------------


@pytest.mark.parametrize(
    "build,expected",
    [
        (lambda: cyclic_group(2, 1), 1),
        (lambda: cyclic_group(3, 1), 1),
        (lambda: cyclic_group(5, 1), 1),
        (lambda: cyclic_group(2, 2), 1),
        (lambda: cyclic_group(2, 3), 1),
        (lambda: cyclic_group(3, 2), 1),
        (lambda: elementary_abelian(2, 2), 3),
        (lambda: elementary_abelian(3, 2), 3),
        (lambda: elementary_abelian(2, 3), 6),
        (lambda: build_lamplighter(2, 1, 2), 6),
    ],
)
def test_bar_h2_known_values(build, expected):
    assert bar_h2(build()) == expected


def test_bar_h2_dihedral_and_quaternion():
    assert bar_h2(dihedral8()) == 3
    assert bar_h2(quaternion8()) == 2


def test_bar_h2_trivial_group():
    assert bar_h2(cyclic_group(2, 0)) == 0


def test_bar_budget(monkeypatch):
    with pytest.raises(ResourceLimitError):
        bar_h2(elementary_abelian(2, 7))
    monkeypatch.setenv("PROCYCLIC_MAX_BAR", "8")
    with pytest.raises(ResourceLimitError):
        bar_h2(build_lamplighter(2, 2, 1))
    monkeypatch.setenv("PROCYCLIC_MAX_BAR", "16")
    assert bar_h2(build_lamplighter(2, 2, 1)) >= 0


# -- five-term exactness --------------------------------------------------------


def five_term_cases():
    g1 = elementary_abelian(2, 2)
    yield g1, g1.subgroup_closure([3])
    lamp = build_lamplighter(2, 2, 1)
    yield lamp, lamp.socle_indices(0)
    z4 = cyclic_group(2, 2)
    yield z4, z4.subgroup_closure([2])
    g3 = elementary_abelian(3, 2)
    yield g3, g3.subgroup_closure([g3.mul(1, 3)])
    dl1 = build_lamplighter(2, 1, 2)
    yield dl1, dl1.socle_indices(0)
    z9 = cyclic_group(3, 2)
    yield z9, z9.subgroup_closure([3])
    d4 = dihedral8()
    yield d4, d4.subgroup_closure([2])  # the central rotation {1, r^2}
    q8 = quaternion8()
    yield q8, q8.subgroup_closure([1])  # the center {1, -1}


def test_five_term_equality_on_all_pairs():
    results = []
    for group, subgroup in five_term_cases():
        report = five_term_check(group, subgroup)
        results.append(report)
        assert report.equal, (group, report)
    assert len(results) == 8


def test_five_term_full_subgroup():
    g = elementary_abelian(2, 2)
    report = five_term_check(g, range(g.order))
    assert report.cokernel_dim == 0 and report.hopf_dim == 0 and report.equal


def test_five_term_trivial_subgroup():
    g = build_lamplighter(2, 2, 1)
    report = five_term_check(g, [g.identity])
    # quotient is G itself: the map on H2 is the identity, cokernel 0
    assert report.cokernel_dim == 0 and report.hopf_dim == 0 and report.equal


# -- tower ------------------------------------------------------------------------


def test_tower_level_one():
    rep = tower_report(2, 1)
    assert rep.complete
    row = rep.rows[0]
    assert row.order == 8
    assert row.h2_dim == 6
    assert row.coinvariant_dim == 1
    assert row.tensor_gr_dim == 1
    assert row.h2_lower_bound == 3
    assert row.collapse_ok and row.inequality_ok


def test_tower_partial_on_budget(monkeypatch):
    monkeypatch.setenv("PROCYCLIC_MAX_BAR", "8")
    rep = tower_report(2, 2)
    assert not rep.complete
    assert len(rep.rows) == 1
    assert rep.stopped_reason


def test_tower_level_two_full():
    rep = tower_report(2, 2)
    assert rep.complete
    row = rep.rows[1]
    assert row.order == 64
    assert row.coinvariant_dim == 2 and row.tensor_gr_dim == 2
    assert row.h2_dim >= row.h2_lower_bound == 8
