"""Groupoid table validation, components, vertex groups, transversals."""

import pytest

from mpkit import groups
from mpkit.errors import NotConnectedError
from mpkit.groupoids import (FiniteGroupoid, WideSubgroupoid, choose_transversal,
                             connected_components, disjoint_union,
                             enumerate_wide_subgroupoids, from_group_table,
                             group_times_pair, groupoid_from_json,
                             groupoid_to_json, pair_groupoid, validate_groupoid,
                             vertex_group)


def test_pair2_valid():
    g = pair_groupoid(2)
    assert validate_groupoid(g).ok
    assert g.n_arrows == 4


def test_s3_group_table_valid():
    g = from_group_table(groups.dihedral(3))
    assert validate_groupoid(g).ok
    assert g.n_objects == 1 and g.n_arrows == 6


def test_corrupted_compose_is_reported():
    g = pair_groupoid(2)
    compose = dict(g._compose)
    # corrupt one composable entry: id_0 * (0->1) now returns id_0's row wrongly
    a = g.identity[0]
    b = [x for x in g.arrows() if g.source[x] == 0 and g.target[x] == 1][0]
    compose[(a, b)] = g.identity[0]
    bad = FiniteGroupoid(2, g.source, g.target, compose, g.identity)
    report = validate_groupoid(bad)
    assert not report.ok
    # brute-force recheck: every violation mentions the corrupted entry's arrows
    assert any("endpoints" in v or "associativity" in v or "id*" in v
               for v in report.violations)


def test_connected_components():
    g = pair_groupoid(2)
    assert connected_components(g) == ((0, 1),)
    d = disjoint_union(from_group_table(groups.dihedral(3)), pair_groupoid(2))
    assert validate_groupoid(d).ok
    assert connected_components(d) == ((0,), (1, 2))


def test_gpd6_connected_and_hom_sizes():
    g = group_times_pair(groups.cyclic(2), 2)
    assert validate_groupoid(g).ok
    assert g.is_connected()
    for p in range(2):
        for q in range(2):
            assert len(g.hom(p, q)) == 2


def test_vertex_group_counts():
    g = group_times_pair(groups.cyclic(2), 2)
    vg = vertex_group(g, 1)
    assert validate_groupoid(vg.group).ok
    assert vg.group.n_arrows == 2
    # |D(P,Q)| = |D(P)| within a component
    for q in range(2):
        assert len(g.hom(1, q)) == vg.group.n_arrows
    s3 = from_group_table(groups.dihedral(3))
    assert vertex_group(s3, 0).group.n_arrows == 6
    assert vertex_group(pair_groupoid(2), 0).group.n_arrows == 1


def test_wide_subgroupoid_enumeration_pair2():
    g = pair_groupoid(2)
    subs = enumerate_wide_subgroupoids(g)
    sizes = sorted(len(s.arrows) for s in subs)
    assert sizes == [2, 4]
    for s in subs:
        assert s.validate().ok


def test_subgroupoids_of_s3_match_subgroups():
    g = from_group_table(groups.dihedral(3))
    subs = enumerate_wide_subgroupoids(g)
    assert sorted(len(s.arrows) for s in subs) == [1, 2, 2, 2, 3, 6]


def test_transversal_deterministic():
    g = group_times_pair(groups.cyclic(2), 2)
    arrows = [(gg, p, q) for p in range(2) for q in range(2) for gg in range(2)]
    v = WideSubgroupoid(g, frozenset(i for i, (gg, _, _) in enumerate(arrows)
                                     if gg == 0))
    t1 = choose_transversal(v, 0)
    t2 = choose_transversal(v, 0)
    assert t1 == t2
    assert t1.arrows[0] == g.identity[0]
    assert g.source[t1.arrows[1]] == 0 and g.target[t1.arrows[1]] == 1
    ids = WideSubgroupoid(g, frozenset(g.identity))
    with pytest.raises(NotConnectedError):
        choose_transversal(ids, 0)


def test_json_roundtrip():
    g = group_times_pair(groups.cyclic(2), 2)
    data = groupoid_to_json(g)
    g2 = groupoid_from_json(data)
    assert validate_groupoid(g2).ok
    assert groupoid_to_json(g2) == data
