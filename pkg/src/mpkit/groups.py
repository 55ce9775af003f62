"""Multiplication tables for every group of order <= 16, up to isomorphism.

Tables index elements 0..n-1 with identity 0.  Constructions: cyclic groups,
direct products, semidirect products C_n x| C_m (the C_m generator acting by
multiplication with a unit k mod n), dicyclic groups, the alternating group
A4 from permutations, and the 16-element Pauli group i^a X^b Z^c.
"""

from __future__ import annotations

from itertools import permutations


def cyclic(n: int):
    return tuple(tuple((a + b) % n for b in range(n)) for a in range(n))


def direct_product(t1, t2):
    n1, n2 = len(t1), len(t2)
    idx = {(a, b): a * n2 + b for a in range(n1) for b in range(n2)}
    table = [[0] * (n1 * n2) for _ in range(n1 * n2)]
    for (a, b), i in idx.items():
        for (c, d), j in idx.items():
            table[i][j] = idx[(t1[a][c], t2[b][d])]
    return tuple(tuple(row) for row in table)


def semidirect_cyclic(n: int, m: int, k: int):
    """C_n x| C_m where the C_m generator acts on C_n by x -> k*x.

    Requires k^m = 1 mod n.  Elements are pairs (i mod n, j mod m) with
    (i,j)(i',j') = (i + k^j i', j + j').
    """
    if pow(k, m, n) != 1 % n:
        raise ValueError("k^m != 1 mod n")
    idx = {(i, j): i * m + j for i in range(n) for j in range(m)}
    table = [[0] * (n * m) for _ in range(n * m)]
    for (i, j), a in idx.items():
        for (i2, j2), b in idx.items():
            table[a][b] = idx[((i + pow(k, j, n) * i2) % n, (j + j2) % m)]
    return tuple(tuple(row) for row in table)


def dihedral(n: int):
    return semidirect_cyclic(n, 2, n - 1)


def dicyclic(n: int):
    """Dicyclic group of order 4n: a^(2n)=1, b^2=a^n, b a b^-1 = a^-1."""
    order = 4 * n
    idx = {(i, j): i * 2 + j for i in range(2 * n) for j in range(2)}
    table = [[0] * order for _ in range(order)]
    for (i, j), a in idx.items():
        for (i2, j2), b in idx.items():
            if j == 0:
                res = ((i + i2) % (2 * n), j2)
            elif j2 == 0:
                res = ((i - i2) % (2 * n), 1)
            else:
                res = ((i - i2 + n) % (2 * n), 0)
            table[a][b] = idx[res]
    return tuple(tuple(row) for row in table)


def alternating4():
    elems = sorted(p for p in permutations(range(4)) if _sign(p) == 1)
    elems.remove((0, 1, 2, 3))
    elems.insert(0, (0, 1, 2, 3))
    index = {p: i for i, p in enumerate(elems)}
    table = [[0] * 12 for _ in range(12)]
    for p, i in index.items():
        for q, j in index.items():
            pq = tuple(p[q[x]] for x in range(4))
            table[i][j] = index[pq]
    return tuple(tuple(row) for row in table)


def _sign(p) -> int:
    s = 1
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                s = -s
    return s


def pauli16():
    """Central product C4 o D4: elements i^a X^b Z^c with ZX = -XZ."""
    idx = {(a, b, c): (a * 2 + b) * 2 + c
           for a in range(4) for b in range(2) for c in range(2)}
    table = [[0] * 16 for _ in range(16)]
    for (a, b, c), i in idx.items():
        for (a2, b2, c2), j in idx.items():
            table[i][j] = idx[((a + a2 + 2 * c * b2) % 4,
                               (b + b2) % 2, (c + c2) % 2)]
    return tuple(tuple(row) for row in table)


def swap_semidirect_16():
    """(C2 x C2) x| C4, the C4 generator swapping the two C2 factors."""
    idx = {(x, y, j): (x * 2 + y) * 4 + j
           for x in range(2) for y in range(2) for j in range(4)}
    table = [[0] * 16 for _ in range(16)]
    for (x, y, j), a in idx.items():
        for (x2, y2, j2), b in idx.items():
            if j % 2 == 0:
                nx, ny = (x + x2) % 2, (y + y2) % 2
            else:
                nx, ny = (x + y2) % 2, (y + x2) % 2
            table[a][b] = idx[(nx, ny, (j + j2) % 4)]
    return tuple(tuple(row) for row in table)


def c4_semidirect_c4():
    """C4 x| C4 with b a b^-1 = a^-1."""
    return _pair_semidirect(4, 4, lambda i, j: (-i) % 4 if j % 2 else i)


def _pair_semidirect(n, m, act):
    idx = {(i, j): i * m + j for i in range(n) for j in range(m)}
    table = [[0] * (n * m) for _ in range(n * m)]
    for (i, j), a in idx.items():
        for (i2, j2), b in idx.items():
            table[a][b] = idx[((i + act(i2, j)) % n, (j + j2) % m)]
    return tuple(tuple(row) for row in table)


def group_catalog(max_order: int = 16):
    """Deterministic list of (name, table) covering all groups of order <= max."""
    c2, c3, c4 = cyclic(2), cyclic(3), cyclic(4)
    groups: list[tuple[str, tuple]] = [("C1", cyclic(1))]
    by_order = {
        2: [("C2", c2)],
        3: [("C3", c3)],
        4: [("C4", c4), ("C2xC2", direct_product(c2, c2))],
        5: [("C5", cyclic(5))],
        6: [("C6", cyclic(6)), ("S3", dihedral(3))],
        7: [("C7", cyclic(7))],
        8: [("C8", cyclic(8)), ("C4xC2", direct_product(c4, c2)),
            ("C2^3", direct_product(direct_product(c2, c2), c2)),
            ("D4", dihedral(4)), ("Q8", dicyclic(2))],
        9: [("C9", cyclic(9)), ("C3xC3", direct_product(c3, c3))],
        10: [("C10", cyclic(10)), ("D5", dihedral(5))],
        11: [("C11", cyclic(11))],
        12: [("C12", cyclic(12)), ("C6xC2", direct_product(cyclic(6), c2)),
             ("D6", dihedral(6)), ("A4", alternating4()), ("Dic3", dicyclic(3))],
        13: [("C13", cyclic(13))],
        14: [("C14", cyclic(14)), ("D7", dihedral(7))],
        15: [("C15", cyclic(15))],
        16: [("C16", cyclic(16)),
             ("C4xC4", direct_product(c4, c4)),
             ("(C2xC2):C4", swap_semidirect_16()),
             ("C8:C2_mod", semidirect_cyclic(8, 2, 5)),
             ("C4:C4", c4_semidirect_c4()),
             ("C8xC2", direct_product(cyclic(8), c2)),
             ("D8", dihedral(8)),
             ("SD16", semidirect_cyclic(8, 2, 3)),
             ("Q16", dicyclic(4)),
             ("C4xC2xC2", direct_product(direct_product(c4, c2), c2)),
             ("D4xC2", direct_product(dihedral(4), c2)),
             ("Q8xC2", direct_product(dicyclic(2), c2)),
             ("Pauli16", pauli16()),
             ("C2^4", direct_product(direct_product(c2, c2),
                                     direct_product(c2, c2)))],
    }
    for order in range(2, max_order + 1):
        groups.extend(by_order.get(order, []))
    return groups


def is_group_table(table) -> bool:
    n = len(table)
    if any(len(row) != n for row in table):
        return False
    if any(table[0][a] != a or table[a][0] != a for a in range(n)):
        return False
    for a in range(n):
        if 0 not in table[a]:
            return False
        for b in range(n):
            for c in range(n):
                if table[table[a][b]][c] != table[a][table[b][c]]:
                    return False
    return True


def order_profile(table):
    """Multiset of element orders; cheap isomorphism invariant."""
    n = len(table)
    counts: dict[int, int] = {}
    for a in range(n):
        x, k = a, 1
        while x != 0:
            x = table[x][a]
            k += 1
        counts[k] = counts.get(k, 0) + 1
    return tuple(sorted(counts.items()))


def all_subgroups(table):
    """All subgroups of a group table, as sorted element tuples."""
    n = len(table)
    inv = [0] * n
    for a in range(n):
        for b in range(n):
            if table[a][b] == 0:
                inv[a] = b

    def close(seed):
        out = set(seed) | {0}
        frontier = list(out)
        while frontier:
            nxt = []
            for a in frontier:
                for b in list(out):
                    for c in (table[a][b], table[b][a]):
                        if c not in out:
                            out.add(c)
                            nxt.append(c)
                if inv[a] not in out:
                    out.add(inv[a])
                    nxt.append(inv[a])
            frontier = nxt
        return frozenset(out)

    found = {close(())}
    frontier = [close(())]
    while frontier:
        nxt = []
        for s in frontier:
            for a in range(n):
                if a in s:
                    continue
                t = close(s | {a})
                if t not in found:
                    found.add(t)
                    nxt.append(t)
        frontier = nxt
    return [tuple(sorted(s)) for s in sorted(found, key=lambda s: (len(s), sorted(s)))]
