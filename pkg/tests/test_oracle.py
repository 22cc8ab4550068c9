import time

import pytest

from addcomp.group import FiniteSubgroup, GroupError, GroupSpec
from addcomp.oracle import (
    FiniteGroupTable,
    all_complements,
    minimal_complements,
    parse_subset,
    small_groups,
    subgroups,
    thm24_all,
    thm24_check,
    translation_closed,
)


def members(T, masks):
    return sorted(tuple(e[0] for e in T.members(m)) for m in masks)


def test_z4_example():
    T = FiniteGroupTable(GroupSpec.parse("Z4"))
    assert members(T, minimal_complements(T.mask([(0,), (1,)]), T)) == [(0, 2), (1, 3)]


def test_z6_transversals():
    T = FiniteGroupTable(GroupSpec.parse("Z6"))
    got = members(T, minimal_complements(T.mask([(0,), (2,), (4,)]), T))
    expected = sorted((a, b) for a in range(6) for b in range(a + 1, 6) if (b - a) % 2)
    assert got == expected


def test_doubling_table_matches_direct_sumsets():
    T = FiniteGroupTable(GroupSpec.parse("Z3xZ2"))
    W = T.mask([(0, 0), (1, 1)])
    cov = T.coverage_table(W)
    for C in range(1 << T.N):
        assert int(cov[C]) == T.sumset(W, C)
    assert len(list(all_complements(W, T))) == sum(int(cov[C]) == T.full for C in range(1 << T.N))


def test_subgroup_lists():
    assert len(subgroups(GroupSpec.parse("Z12"))) == 6
    assert len(subgroups(GroupSpec.parse("Z2xZ2"))) == 5
    assert len(subgroups(GroupSpec.parse("Z2xZ2xZ2"))) == 16


def test_every_cyclic_w_has_translation_closed_minimal_complements():
    for n in range(2, 13):
        T = FiniteGroupTable(GroupSpec(0, (n,)))
        for W in range(1, 1 << n):
            mins = minimal_complements(W, T)
            assert mins and translation_closed(mins, T)


def test_thm24_single_and_errors():
    G = GroupSpec.parse("Z2xZ4")
    H = FiniteSubgroup.generated(G, [(0, 1)])
    rep = thm24_check(G, H, [(0, 0), (0, 1)])
    assert rep.ok and rep.lifts_checked > 0 and rep.restrictions_checked > 0
    with pytest.raises(ValueError):
        thm24_check(G, H, [(1, 0)])


def test_thm24_exhaustive_small_groups():
    start = time.perf_counter()
    total = 0
    for G in small_groups(8):
        reps = thm24_all(G)
        total += len(reps)
        assert all(r.ok for r in reps), [r.failures for r in reps if not r.ok][:3]
    assert total > 0 and time.perf_counter() - start < 30


def test_guards_and_parsing():
    with pytest.raises(GroupError):
        FiniteGroupTable(GroupSpec.parse("ZxZ2"))
    with pytest.raises(GroupError):
        FiniteGroupTable(GroupSpec.parse("Z5xZ5"))
    assert parse_subset("0,0; 1,5", GroupSpec.parse("Z4xZ2")) == [(0, 0), (1, 1)]
