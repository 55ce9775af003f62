"""The group catalog: validity, completeness invariants, subgroup search."""

from mpkit.groups import (all_subgroups, cyclic, dicyclic, dihedral,
                          direct_product, group_catalog, is_group_table,
                          order_profile)


def _center_size(table):
    n = len(table)
    return sum(1 for a in range(n)
               if all(table[a][b] == table[b][a] for b in range(n)))


def test_all_tables_are_groups():
    for name, table in group_catalog(16):
        assert is_group_table(table), name


def test_catalog_counts_by_order():
    expected = {1: 1, 2: 1, 3: 1, 4: 2, 5: 1, 6: 2, 7: 1, 8: 5, 9: 2,
                10: 2, 11: 1, 12: 5, 13: 1, 14: 2, 15: 1, 16: 14}
    got: dict[int, int] = {}
    for _, table in group_catalog(16):
        got[len(table)] = got.get(len(table), 0) + 1
    assert got == expected


def test_catalog_pairwise_nonisomorphic():
    seen = {}
    for name, table in group_catalog(16):
        inv = (len(table), order_profile(table), _center_size(table),
               order_profile(_abelianization_table(table)),
               order_profile(_center_table(table)))
        assert inv not in seen, f"{name} vs {seen.get(inv)}"
        seen[inv] = name


def _abelianization_table(table):
    n = len(table)
    derived = _derived_subgroup(table)
    coset = {}
    reps = []
    for a in range(n):
        cs = frozenset(table[a][d] for d in derived)
        if cs not in coset:
            coset[cs] = len(reps)
            reps.append(a)
    def cls(a):
        return coset[frozenset(table[a][d] for d in derived)]
    return [[cls(table[a][b]) for b in reps] for a in reps]


def _derived_subgroup(table):
    n = len(table)
    inv = [next(b for b in range(n) if table[a][b] == 0) for a in range(n)]
    comms = {table[table[a][b]][table[inv[a]][inv[b]]]
             for a in range(n) for b in range(n)}
    derived = {0}
    frontier = list(comms)
    while frontier:
        nxt = []
        for a in frontier:
            if a in derived:
                continue
            derived.add(a)
            for b in list(derived):
                for c in (table[a][b], table[b][a]):
                    if c not in derived:
                        nxt.append(c)
            if inv[a] not in derived:
                nxt.append(inv[a])
        frontier = nxt
    return sorted(derived)


def _center_table(table):
    n = len(table)
    elems = [a for a in range(n)
             if all(table[a][b] == table[b][a] for b in range(n))]
    index = {a: i for i, a in enumerate(elems)}
    return [[index[table[a][b]] for b in elems] for a in elems]


def test_known_order_profiles():
    assert order_profile(dicyclic(4)) == ((1, 1), (2, 1), (4, 10), (8, 4))
    assert order_profile(dihedral(8)) == ((1, 1), (2, 9), (4, 2), (8, 4))
    assert order_profile(cyclic(16))[-1] == (16, 8)


def test_subgroups_of_s3():
    subs = all_subgroups(dihedral(3))
    assert sorted(len(s) for s in subs) == [1, 2, 2, 2, 3, 6]


def test_subgroups_of_c2_cubed():
    c2 = cyclic(2)
    t = direct_product(direct_product(c2, c2), c2)
    subs = all_subgroups(t)
    # 1 + 7 + 7 + 1 subgroups of orders 1, 2, 4, 8
    assert sorted(len(s) for s in subs) == [1] + [2] * 7 + [4] * 7 + [8]
