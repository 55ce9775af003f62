"""Finite groupoids as validated combinatorial tables.

A groupoid lives on a dense object set 0..n_objects-1 with dense arrow ids.
Composition ab is defined iff target(a) == source(b); then source(ab) ==
source(a) and target(ab) == target(b).  All iteration is in id order so that
downstream computations are deterministic.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import BoundExceededError, NotComposableError, NotConnectedError


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def summary(self, limit: int = 8) -> str:
        if self.ok:
            return "valid"
        head = "; ".join(self.violations[:limit])
        more = len(self.violations) - limit
        return head + (f"; ... ({more} more)" if more > 0 else "")


class FiniteGroupoid:
    """Composition/inverse/identity tables over dense object and arrow ids."""

    def __init__(self, n_objects: int, source, target, compose, identity,
                 inverse=None):
        self.n_objects = int(n_objects)
        self.source = tuple(source)
        self.target = tuple(target)
        self.identity = tuple(identity)
        self._compose = dict(compose)
        if inverse is None:
            inverse = self._derive_inverse()
        self.inverse = tuple(inverse)
        self._homs: dict[tuple[int, int], tuple[int, ...]] | None = None
        self._components: tuple[tuple[int, ...], ...] | None = None

    # -- basic structure ---------------------------------------------------

    @property
    def n_arrows(self) -> int:
        return len(self.source)

    def arrows(self):
        return range(self.n_arrows)

    def is_identity(self, a: int) -> bool:
        return a in self._identity_set()

    def _identity_set(self):
        s = getattr(self, "_idset", None)
        if s is None:
            s = frozenset(self.identity)
            self._idset = s
        return s

    def composable(self, a: int, b: int) -> bool:
        return self.target[a] == self.source[b]

    def compose(self, a: int, b: int) -> int:
        try:
            return self._compose[(a, b)]
        except KeyError:
            raise NotComposableError(f"arrows {a} and {b} do not compose")

    def compose_or_none(self, a: int, b: int):
        return self._compose.get((a, b))

    def compose_many(self, *arrows: int) -> int:
        out = arrows[0]
        for a in arrows[1:]:
            out = self.compose(out, a)
        return out

    def _derive_inverse(self):
        # best effort: validation flags arrows whose inverse law fails
        inv = [-1] * self.n_arrows
        for (a, b), c in self._compose.items():
            if (c == self.identity[self.source[a]]
                    and self.source[b] == self.target[a]
                    and self.target[b] == self.source[a]):
                inv[a] = b
        return [i if i >= 0 else a for a, i in enumerate(inv)]

    def hom(self, p: int, q: int) -> tuple[int, ...]:
        if self._homs is None:
            homs: dict[tuple[int, int], list[int]] = {}
            for a in self.arrows():
                homs.setdefault((self.source[a], self.target[a]), []).append(a)
            self._homs = {k: tuple(v) for k, v in homs.items()}
        return self._homs.get((p, q), ())

    def arrows_from(self, p: int) -> tuple[int, ...]:
        cache = getattr(self, "_from_cache", None)
        if cache is None:
            cache = [[] for _ in range(self.n_objects)]
            for a in self.arrows():
                cache[self.source[a]].append(a)
            cache = [tuple(lst) for lst in cache]
            self._from_cache = cache
        return cache[p]

    def arrows_to(self, q: int) -> tuple[int, ...]:
        cache = getattr(self, "_to_cache", None)
        if cache is None:
            cache = [[] for _ in range(self.n_objects)]
            for a in self.arrows():
                cache[self.target[a]].append(a)
            cache = [tuple(lst) for lst in cache]
            self._to_cache = cache
        return cache[q]

    # -- structure maps ----------------------------------------------------

    def connected_components(self) -> tuple[tuple[int, ...], ...]:
        """Partition of the object set; P ~ Q iff hom(P, Q) is nonempty."""
        if self._components is not None:
            return self._components
        parent = list(range(self.n_objects))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a in self.arrows():
            ra, rb = find(self.source[a]), find(self.target[a])
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
        blocks: dict[int, list[int]] = {}
        for p in range(self.n_objects):
            blocks.setdefault(find(p), []).append(p)
        self._components = tuple(tuple(sorted(b)) for _, b in sorted(blocks.items()))
        return self._components

    def is_connected(self) -> bool:
        return len(self.connected_components()) <= 1

    def __repr__(self) -> str:
        return f"FiniteGroupoid(objects={self.n_objects}, arrows={self.n_arrows})"


def validate_groupoid(g: FiniteGroupoid) -> ValidationReport:
    """Check every groupoid axiom instance; empty report iff valid."""
    bad: list[str] = []
    n, m = g.n_objects, g.n_arrows
    if len(g.identity) != n:
        bad.append("identity table has wrong length")
        return ValidationReport(tuple(bad))
    for p in range(n):
        e = g.identity[p]
        if not (0 <= e < m) or g.source[e] != p or g.target[e] != p:
            bad.append(f"identity of object {p} is not a loop at {p}")
    for a in range(m):
        for b in range(m):
            c = g.compose_or_none(a, b)
            if (c is None) != (g.target[a] != g.source[b]):
                bad.append(f"compose({a},{b}) defined iff composable fails")
            if c is not None:
                if g.source[c] != g.source[a] or g.target[c] != g.target[b]:
                    bad.append(f"compose({a},{b}) has wrong endpoints")
    for a in range(m):
        e_s, e_t = g.identity[g.source[a]], g.identity[g.target[a]]
        if g.compose_or_none(e_s, a) != a:
            bad.append(f"id*{a} != {a}")
        if g.compose_or_none(a, e_t) != a:
            bad.append(f"{a}*id != {a}")
        ia = g.inverse[a]
        if g.source[ia] != g.target[a] or g.target[ia] != g.source[a]:
            bad.append(f"inverse of {a} has wrong endpoints")
        elif g.compose_or_none(a, ia) != e_s or g.compose_or_none(ia, a) != e_t:
            bad.append(f"arrow {a} fails inverse law")
    for a in range(m):
        for b in g.arrows_from(g.target[a]):
            ab = g.compose_or_none(a, b)
            if ab is None:
                continue
            for c in g.arrows_from(g.target[b]):
                bc = g.compose_or_none(b, c)
                if bc is None or g.compose_or_none(ab, c) != g.compose_or_none(a, bc):
                    bad.append(f"associativity fails at ({a},{b},{c})")
    return ValidationReport(tuple(bad))


def connected_components(g: FiniteGroupoid):
    return g.connected_components()


@dataclass(frozen=True)
class VertexGroup:
    """A vertex group D(P) with its arrow maps into the ambient groupoid."""

    parent: FiniteGroupoid
    obj: int
    group: FiniteGroupoid
    to_parent: tuple[int, ...]
    from_parent: dict

    def __repr__(self):
        return f"VertexGroup(obj={self.obj}, order={self.group.n_arrows})"


def vertex_group(g: FiniteGroupoid, p: int) -> VertexGroup:
    """The one-object groupoid D(P) of loops at P with induced composition."""
    loops = [a for a in g.arrows() if g.source[a] == p and g.target[a] == p]
    index = {a: i for i, a in enumerate(loops)}
    compose = {}
    for a in loops:
        for b in loops:
            compose[(index[a], index[b])] = index[g.compose(a, b)]
    grp = FiniteGroupoid(
        1,
        source=[0] * len(loops),
        target=[0] * len(loops),
        compose=compose,
        identity=[index[g.identity[p]]],
        inverse=[index[g.inverse[a]] for a in loops],
    )
    return VertexGroup(g, p, grp, tuple(loops), index)


@dataclass(frozen=True)
class WideSubgroupoid:
    """A wide subgroupoid given by its arrow subset."""

    parent: FiniteGroupoid
    arrows: frozenset

    def validate(self) -> ValidationReport:
        bad = []
        for p in range(self.parent.n_objects):
            if self.parent.identity[p] not in self.arrows:
                bad.append(f"missing identity of object {p}")
        for a in self.arrows:
            if self.parent.inverse[a] not in self.arrows:
                bad.append(f"not closed under inverse at {a}")
            for b in self.arrows:
                c = self.parent.compose_or_none(a, b)
                if c is not None and c not in self.arrows:
                    bad.append(f"not closed under composition at ({a},{b})")
        return ValidationReport(tuple(bad))

    def restrict(self) -> tuple[FiniteGroupoid, tuple[int, ...], dict]:
        """Standalone groupoid plus (local->parent, parent->local) arrow maps."""
        order = sorted(self.arrows)
        index = {a: i for i, a in enumerate(order)}
        compose = {}
        for a in order:
            for b in order:
                c = self.parent.compose_or_none(a, b)
                if c is not None:
                    compose[(index[a], index[b])] = index[c]
        sub = FiniteGroupoid(
            self.parent.n_objects,
            source=[self.parent.source[a] for a in order],
            target=[self.parent.target[a] for a in order],
            compose=compose,
            identity=[index[self.parent.identity[p]]
                      for p in range(self.parent.n_objects)],
            inverse=[index[self.parent.inverse[a]] for a in order],
        )
        return sub, tuple(order), index

    def is_connected(self) -> bool:
        return self.restrict()[0].is_connected()

    def __repr__(self):
        return f"WideSubgroupoid({sorted(self.arrows)})"


def close_arrow_set(g: FiniteGroupoid, seed) -> frozenset:
    """Smallest wide subgroupoid arrow set containing the seed."""
    todo = set(seed) | set(g.identity)
    todo |= {g.inverse[a] for a in todo}
    out: set[int] = set()
    frontier = list(todo)
    out |= todo
    while frontier:
        nxt = []
        for a in frontier:
            for b in list(out):
                for c in (g.compose_or_none(a, b), g.compose_or_none(b, a)):
                    if c is not None and c not in out:
                        out.add(c)
                        nxt.append(c)
                        inv = g.inverse[c]
                        if inv not in out:
                            out.add(inv)
                            nxt.append(inv)
        frontier = nxt
    return frozenset(out)


def enumerate_wide_subgroupoids(g: FiniteGroupoid, bound: int = 48):
    """All wide subgroupoids, found by closing generator sets (BFS by size)."""
    if g.n_arrows > bound:
        raise BoundExceededError(
            f"{g.n_arrows} arrows exceeds enumeration bound {bound}")
    base = close_arrow_set(g, ())
    found = {base}
    frontier = [base]
    while frontier:
        nxt = []
        for s in frontier:
            for a in g.arrows():
                if a in s:
                    continue
                t = close_arrow_set(g, s | {a})
                if t not in found:
                    found.add(t)
                    nxt.append(t)
        frontier = nxt
    subs = [WideSubgroupoid(g, s) for s in sorted(found, key=lambda s: (len(s), sorted(s)))]
    return subs


@dataclass(frozen=True)
class Transversal:
    """Arrows tau(P): O -> P inside a chosen connected wide subgroupoid."""

    basepoint: int
    arrows: tuple[int, ...]  # parent arrow ids, indexed by object


def choose_transversal(v: WideSubgroupoid, basepoint: int,
                       variant: int = 0) -> Transversal:
    """Deterministic transversal: per object the (variant+1)-th smallest arrow
    id in V(O, P), falling back to the smallest when the hom-set is short;
    tau(O) is always the identity."""
    g = v.parent
    taus = []
    for p in range(g.n_objects):
        if p == basepoint:
            taus.append(g.identity[basepoint])
            continue
        cands = sorted(a for a in v.arrows
                       if g.source[a] == basepoint and g.target[a] == p)
        if not cands:
            raise NotConnectedError(
                f"no arrow {basepoint} -> {p} in the chosen subgroupoid")
        taus.append(cands[min(variant, len(cands) - 1)])
    return Transversal(basepoint, tuple(taus))


# -- constructors ----------------------------------------------------------

def from_group_table(table) -> FiniteGroupoid:
    """One-object groupoid from a group multiplication table (identity = 0)."""
    n = len(table)
    compose = {(a, b): table[a][b] for a in range(n) for b in range(n)}
    inv = [0] * n
    for a in range(n):
        for b in range(n):
            if table[a][b] == 0:
                inv[a] = b
    return FiniteGroupoid(1, [0] * n, [0] * n, compose, [0], inv)


def pair_groupoid(n: int) -> FiniteGroupoid:
    """The pair groupoid on n objects: exactly one arrow P -> Q for all P,Q."""
    arrows = [(p, q) for p in range(n) for q in range(n)]
    index = {pq: i for i, pq in enumerate(arrows)}
    compose = {}
    for (p, q) in arrows:
        for (q2, r) in arrows:
            if q == q2:
                compose[(index[(p, q)], index[(q2, r)])] = index[(p, r)]
    return FiniteGroupoid(
        n,
        source=[p for p, _ in arrows],
        target=[q for _, q in arrows],
        compose=compose,
        identity=[index[(p, p)] for p in range(n)],
        inverse=[index[(q, p)] for p, q in arrows],
    )


def disjoint_union(g1: FiniteGroupoid, g2: FiniteGroupoid) -> FiniteGroupoid:
    no, na = g1.n_objects, g1.n_arrows
    compose = dict(g1._compose)
    for (a, b), c in g2._compose.items():
        compose[(a + na, b + na)] = c + na
    return FiniteGroupoid(
        no + g2.n_objects,
        source=list(g1.source) + [s + no for s in g2.source],
        target=list(g1.target) + [t + no for t in g2.target],
        compose=compose,
        identity=list(g1.identity) + [e + na for e in g2.identity],
        inverse=list(g1.inverse) + [i + na for i in g2.inverse],
    )


def group_times_pair(table, n: int) -> FiniteGroupoid:
    """Connected groupoid G x (pair groupoid on n objects).

    Arrows are (g, P, Q) with (g,P,Q)(h,Q,R) = (gh, P, R); every vertex group
    is G and every hom-set has |G| elements.
    """
    k = len(table)
    arrows = [(g, p, q) for p in range(n) for q in range(n) for g in range(k)]
    index = {a: i for i, a in enumerate(arrows)}
    compose = {}
    for (g, p, q) in arrows:
        for (h, q2, r) in arrows:
            if q == q2:
                compose[(index[(g, p, q)], index[(h, q2, r)])] = index[(table[g][h], p, r)]
    inv_tbl = [0] * k
    for a in range(k):
        for b in range(k):
            if table[a][b] == 0:
                inv_tbl[a] = b
    return FiniteGroupoid(
        n,
        source=[p for _, p, _ in arrows],
        target=[q for _, _, q in arrows],
        compose=compose,
        identity=[index[(0, p, p)] for p in range(n)],
        inverse=[index[(inv_tbl[g], q, p)] for g, p, q in arrows],
    )


# -- JSON schema -----------------------------------------------------------

def groupoid_to_json(g: FiniteGroupoid) -> dict:
    return {
        "objects": g.n_objects,
        "arrows": [{"src": g.source[a], "tgt": g.target[a]} for a in g.arrows()],
        "compose": sorted([a, b, c] for (a, b), c in g._compose.items()),
        "identities": list(g.identity),
    }


def groupoid_from_json(data: dict) -> FiniteGroupoid:
    arrows = data["arrows"]
    compose = {(a, b): c for a, b, c in data["compose"]}
    g = FiniteGroupoid(
        data["objects"],
        source=[a["src"] for a in arrows],
        target=[a["tgt"] for a in arrows],
        compose=compose,
        identity=data["identities"],
    )
    return g


def load_groupoid(path) -> FiniteGroupoid:
    with open(path) as fh:
        return groupoid_from_json(json.load(fh))


def save_groupoid(g: FiniteGroupoid, path) -> None:
    with open(path, "w") as fh:
        json.dump(groupoid_to_json(g), fh, indent=1, sort_keys=True)
        fh.write("\n")
