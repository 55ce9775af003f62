"""Matched pairs of groupoids, diagonal groupoids, and the box calculus.

Conventions: horizontal arrows x run l(x) -> r(x) (source l, target r),
vertical arrows g run t(g) -> b(g) (source t, target b).  The actions x|>g
(in V) and x<|g (in H) are defined iff r(x) = t(g).  A box is the unique
square with top edge x, right edge g, left edge x|>g and bottom edge x<|g:

        x
  x|>g [ ] g
       x<|g

Boxes compose horizontally (shared vertical edge) and vertically (shared
horizontal edge); by uniqueness every box is determined by any adjacent pair
of edges.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BoundExceededError, NotComposableError, NotExactError
from .groupoids import (FiniteGroupoid, ValidationReport, WideSubgroupoid,
                        enumerate_wide_subgroupoids, validate_groupoid)


@dataclass(frozen=True)
class MatchedPair:
    """Two wide groupoids on one base with mutually compatible actions.

    ``act_left[(x, g)]`` is x|>g (an arrow of v); ``act_right[(x, g)]`` is
    x<|g (an arrow of h); both defined exactly when r(x) = t(g).
    """

    h: FiniteGroupoid
    v: FiniteGroupoid
    act_left: dict
    act_right: dict

    def left(self, x: int, g: int) -> int:
        try:
            return self.act_left[(x, g)]
        except KeyError:
            raise NotComposableError(f"|> undefined at ({x},{g})")

    def right(self, x: int, g: int) -> int:
        try:
            return self.act_right[(x, g)]
        except KeyError:
            raise NotComposableError(f"<| undefined at ({x},{g})")


def validate_matched_pair(mp: MatchedPair) -> ValidationReport:
    """Check the groupoid, action and compatibility axioms on all tuples."""
    bad: list[str] = []
    h, v = mp.h, mp.v
    if h.n_objects != v.n_objects:
        return ValidationReport(("h and v have different bases",))
    rep = validate_groupoid(h)
    bad += [f"h: {s}" for s in rep.violations]
    rep = validate_groupoid(v)
    bad += [f"v: {s}" for s in rep.violations]
    if bad:
        return ValidationReport(tuple(bad))

    admissible = {(x, g) for x in h.arrows() for g in v.arrows()
                  if h.target[x] == v.source[g]}
    for x, g in sorted(admissible):
        if (x, g) not in mp.act_left or (x, g) not in mp.act_right:
            bad.append(f"action undefined on admissible ({x},{g})")
    for key in mp.act_left:
        if key not in admissible:
            bad.append(f"|> defined on inadmissible {key}")
    for key in mp.act_right:
        if key not in admissible:
            bad.append(f"<| defined on inadmissible {key}")
    if bad:
        return ValidationReport(tuple(bad))

    for x, g in sorted(admissible):
        lg, rx = mp.left(x, g), mp.right(x, g)
        if v.source[lg] != h.source[x]:
            bad.append(f"t(x|>g) != l(x) at ({x},{g})")
        if h.target[rx] != v.target[g]:
            bad.append(f"r(x<|g) != b(g) at ({x},{g})")
        if v.target[lg] != h.source[rx]:
            bad.append(f"corner b(x|>g) != l(x<|g) at ({x},{g})")
    for g in v.arrows():
        e = h.identity[v.source[g]]
        if mp.left(e, g) != g:
            bad.append(f"id |> {g} != {g}")
        if not h.is_identity(mp.right(e, g)):
            bad.append(f"id <| g not an identity at {g}")
    for x in h.arrows():
        e = v.identity[h.target[x]]
        if mp.right(x, e) != x:
            bad.append(f"{x} <| id != {x}")
        if not v.is_identity(mp.left(x, e)):
            bad.append(f"x |> id not an identity at {x}")
    # composition laws
    for x in h.arrows():
        for y in h.arrows_from(h.target[x]):
            xy = h.compose(x, y)
            for g in v.arrows():
                if v.source[g] != h.target[y]:
                    continue
                if mp.left(xy, g) != mp.left(x, mp.left(y, g)):
                    bad.append(f"(xy)|>g fails at ({x},{y},{g})")
                lhs = mp.right(xy, g)
                rhs = mp.h.compose(mp.right(x, mp.left(y, g)), mp.right(y, g))
                if lhs != rhs:
                    bad.append(f"(xy)<|g fails at ({x},{y},{g})")
    for x in h.arrows():
        for g in v.arrows():
            if h.target[x] != v.source[g]:
                continue
            for k in v.arrows_from(v.target[g]):
                gk = v.compose(g, k)
                lhs = mp.left(x, gk)
                rhs = v.compose(mp.left(x, g), mp.left(mp.right(x, g), k))
                if lhs != rhs:
                    bad.append(f"x|>(gk) fails at ({x},{g},{k})")
                if mp.right(x, gk) != mp.right(mp.right(x, g), k):
                    bad.append(f"x<|(gk) fails at ({x},{g},{k})")
    return ValidationReport(tuple(bad))


@dataclass(frozen=True)
class Diagonal:
    """The diagonal groupoid with arrows (g, x), b(g) = l(x)."""

    groupoid: FiniteGroupoid
    pairs: tuple          # arrow id -> (g, x)
    index: dict           # (g, x) -> arrow id
    v_embed: tuple        # V arrow -> diagonal arrow (g, id)
    h_embed: tuple        # H arrow -> diagonal arrow (id, x)

    def v_part(self, d: int) -> int:
        return self.pairs[d][0]

    def h_part(self, d: int) -> int:
        return self.pairs[d][1]


def diagonal_groupoid(mp: MatchedPair) -> Diagonal:
    h, v = mp.h, mp.v
    pairs = [(g, x) for g in v.arrows() for x in h.arrows()
             if v.target[g] == h.source[x]]
    index = {p: i for i, p in enumerate(pairs)}
    compose = {}
    for (g, x) in pairs:
        for (k, y) in pairs:
            if h.target[x] != v.source[k]:
                continue
            res = (v.compose(g, mp.left(x, k)), h.compose(mp.right(x, k), y))
            compose[(index[(g, x)], index[(k, y)])] = index[res]
    gpd = FiniteGroupoid(
        h.n_objects,
        source=[v.source[g] for g, _ in pairs],
        target=[h.target[x] for _, x in pairs],
        compose=compose,
        identity=[index[(v.identity[p], h.identity[p])]
                  for p in range(h.n_objects)],
    )
    v_embed = tuple(index[(g, h.identity[v.target[g]])] for g in v.arrows())
    h_embed = tuple(index[(v.identity[h.source[x]], x)] for x in h.arrows())
    return Diagonal(gpd, tuple(pairs), index, v_embed, h_embed)


def from_exact_factorization(d: FiniteGroupoid, v: WideSubgroupoid,
                             h: WideSubgroupoid) -> MatchedPair:
    """Recover the matched pair from D = V.H with unique factorization.

    The actions satisfy x.g = (x|>g).(x<|g) in D for r(x) = t(g).
    """
    factor = {}
    for g in sorted(v.arrows):
        for x in sorted(h.arrows):
            c = d.compose_or_none(g, x)
            if c is None:
                continue
            if c in factor:
                raise NotExactError(f"arrow {c} factors twice")
            factor[c] = (g, x)
    if len(factor) != d.n_arrows:
        missing = [a for a in d.arrows() if a not in factor]
        raise NotExactError(f"arrows without factorization: {missing}")

    hg, hmap, hidx = h.restrict()
    vg, vmap, vidx = v.restrict()
    act_left, act_right = {}, {}
    for xi in hg.arrows():
        for gi in vg.arrows():
            if hg.target[xi] != vg.source[gi]:
                continue
            prod = d.compose(hmap[xi], vmap[gi])
            g2, x2 = factor[prod]
            act_left[(xi, gi)] = vidx[g2]
            act_right[(xi, gi)] = hidx[x2]
    return MatchedPair(hg, vg, act_left, act_right)


def is_exact_factorization(d: FiniteGroupoid, v: WideSubgroupoid,
                           h: WideSubgroupoid) -> bool:
    count = 0
    seen = set()
    for g in v.arrows:
        for x in h.arrows:
            c = d.compose_or_none(g, x)
            if c is None:
                continue
            if c in seen:
                return False
            seen.add(c)
            count += 1
    return count == d.n_arrows


def enumerate_exact_factorizations(d: FiniteGroupoid, bound: int = 48):
    """All ordered pairs (V, H) of wide subgroupoids with V.H exact."""
    if d.n_arrows > bound:
        raise BoundExceededError(f"{d.n_arrows} arrows exceeds bound {bound}")
    subs = enumerate_wide_subgroupoids(d, bound)
    out = []
    for v in subs:
        for h in subs:
            if is_exact_factorization(d, v, h):
                out.append((v, h))
    return out


@dataclass(frozen=True)
class Box:
    top: int
    right: int
    left: int
    bottom: int


class BoxSystem:
    """All boxes of a matched pair with both compositions and inverses."""

    def __init__(self, mp: MatchedPair):
        self.mp = mp
        h, v = mp.h, mp.v
        self.pairs = tuple((x, g) for x in h.arrows() for g in v.arrows()
                           if h.target[x] == v.source[g])
        self.index = {p: i for i, p in enumerate(self.pairs)}
        self.top = tuple(x for x, _ in self.pairs)
        self.right = tuple(g for _, g in self.pairs)
        self.left = tuple(mp.left(x, g) for x, g in self.pairs)
        self.bottom = tuple(mp.right(x, g) for x, g in self.pairs)
        self.idv = tuple(self.index[(x, v.identity[h.target[x]])]
                         for x in h.arrows())
        self.idh = tuple(self.index[(h.identity[v.source[g]], g)]
                         for g in v.arrows())
        self.h_inv = tuple(self.index[(h.inverse[x], mp.left(x, g))]
                           for x, g in self.pairs)
        self.v_inv = tuple(self.index[(mp.right(x, g), v.inverse[g])]
                           for x, g in self.pairs)
        self.rot = tuple(self.index[(h.inverse[self.bottom[b]],
                                     v.inverse[self.left[b]])]
                         for b in range(len(self.pairs)))
        self._vert: FiniteGroupoid | None = None
        self._horiz: FiniteGroupoid | None = None

    @property
    def n_boxes(self) -> int:
        return len(self.pairs)

    def box(self, b: int) -> Box:
        return Box(self.top[b], self.right[b], self.left[b], self.bottom[b])

    def fill(self, top: int, right: int) -> int:
        try:
            return self.index[(top, right)]
        except KeyError:
            raise NotComposableError(f"no box with top {top}, right {right}")

    def fill_from_edges(self, *, top=None, right=None, left=None, bottom=None) -> int:
        """Reconstruct the unique box from any adjacent pair of edges."""
        for b in range(self.n_boxes):
            if top is not None and self.top[b] != top:
                continue
            if right is not None and self.right[b] != right:
                continue
            if left is not None and self.left[b] != left:
                continue
            if bottom is not None and self.bottom[b] != bottom:
                continue
            return b
        raise NotComposableError("no box with the given edges")

    def h_compose(self, a: int, b: int) -> int:
        if self.right[a] != self.left[b]:
            raise NotComposableError("boxes not horizontally composable")
        return self.index[(self.mp.h.compose(self.top[a], self.top[b]),
                           self.right[b])]

    def v_compose(self, a: int, b: int) -> int:
        if self.bottom[a] != self.top[b]:
            raise NotComposableError("boxes not vertically composable")
        return self.index[(self.top[a],
                           self.mp.v.compose(self.right[a], self.right[b]))]

    def h_compose_or_none(self, a: int, b: int):
        if self.right[a] != self.left[b]:
            return None
        return self.index[(self.mp.h.compose(self.top[a], self.top[b]),
                           self.right[b])]

    def v_compose_or_none(self, a: int, b: int):
        if self.bottom[a] != self.top[b]:
            return None
        return self.index[(self.top[a],
                           self.mp.v.compose(self.right[a], self.right[b]))]

    def h_inverse(self, a: int) -> int:
        return self.h_inv[a]

    def v_inverse(self, a: int) -> int:
        return self.v_inv[a]

    def rotate(self, a: int) -> int:
        """The 180-degree rotation (x,g) -> ((x<|g)^-1, (x|>g)^-1)."""
        return self.rot[a]

    def vertical_groupoid(self) -> FiniteGroupoid:
        """Boxes under vertical composition; objects are the H-arrows."""
        if self._vert is None:
            h = self.mp.h
            compose = {}
            for a in range(self.n_boxes):
                for b in range(self.n_boxes):
                    if self.bottom[a] == self.top[b]:
                        compose[(a, b)] = self.v_compose(a, b)
            self._vert = FiniteGroupoid(
                h.n_arrows,
                source=self.top,
                target=self.bottom,
                compose=compose,
                identity=self.idv,
                inverse=self.v_inv,
            )
        return self._vert

    def horizontal_groupoid(self) -> FiniteGroupoid:
        """Boxes under horizontal composition; objects are the V-arrows."""
        if self._horiz is None:
            v = self.mp.v
            compose = {}
            for a in range(self.n_boxes):
                for b in range(self.n_boxes):
                    if self.right[a] == self.left[b]:
                        compose[(a, b)] = self.h_compose(a, b)
            self._horiz = FiniteGroupoid(
                v.n_arrows,
                source=self.left,
                target=self.right,
                compose=compose,
                identity=self.idh,
                inverse=self.h_inv,
            )
        return self._horiz

    def interchange_report(self) -> ValidationReport:
        """(A|B over C|D) agrees with (A over C)|(B over D) on all grids."""
        bad = []
        for a in range(self.n_boxes):
            for b in range(self.n_boxes):
                if self.right[a] != self.left[b]:
                    continue
                for c in range(self.n_boxes):
                    if self.bottom[a] != self.top[c]:
                        continue
                    for dd in range(self.n_boxes):
                        if self.right[c] != self.left[dd] or self.bottom[b] != self.top[dd]:
                            continue
                        lhs = self.v_compose(self.h_compose(a, b),
                                             self.h_compose(c, dd))
                        rhs = self.h_compose(self.v_compose(a, c),
                                             self.v_compose(b, dd))
                        if lhs != rhs:
                            bad.append(f"interchange fails at ({a},{b},{c},{dd})")
        return ValidationReport(tuple(bad))

    def grids(self):
        """All 2x2 grids (a, b, c, d): a|b on top, c|d below, edges matching."""
        for a in range(self.n_boxes):
            for b in range(self.n_boxes):
                if self.right[a] != self.left[b]:
                    continue
                for c in range(self.n_boxes):
                    if self.bottom[a] != self.top[c]:
                        continue
                    for dd in range(self.n_boxes):
                        if (self.right[c] == self.left[dd]
                                and self.bottom[b] == self.top[dd]):
                            yield a, b, c, dd


def fill_box(mp: MatchedPair, top: int, right: int) -> Box:
    """The unique box with the given top and right edges."""
    if mp.h.target[top] != mp.v.source[right]:
        raise NotComposableError("edges do not share a corner")
    return Box(top, right, mp.left(top, right), mp.right(top, right))
