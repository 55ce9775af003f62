"""Exact cochain algebra on finite groupoids and on box groupoids.

Cochains take values in Q/Z (exponents of roots of unity) and are normalized:
a tuple containing an identity arrow always maps to 0.  The coboundary d uses
the standard alternating convention, so a 3-cocycle satisfies

    w(a,b,c) + w(a,bc,d) + w(b,c,d) = w(ab,c,d) + w(a,b,cd)   (mod 1).

The module also carries the box-pair cocycle theory: a compatible pair is a
2-cocycle sigma for vertical box composition and a 2-cocycle tau for
horizontal box composition satisfying, on every 2x2 grid of boxes,

    sigma(AB, CD) + tau(A/C, B/D) = tau(A,B) + tau(C,D) + sigma(A,C) + sigma(B,D).

All these conditions are homogeneous linear in the exponents, so the valid
mu_n-valued pairs form a group computed exactly by nullspace linear algebra.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import (IncompatibleDataError, InvalidPairError,
                     MismatchedCarrierError, NoSolutionError,
                     NotConnectedError)
from .groupoids import (FiniteGroupoid, Transversal, ValidationReport,
                        VertexGroup, WideSubgroupoid, vertex_group)
from .matched_pairs import BoxSystem, Diagonal
from .phases import Phase, phase_lcm
from .zlinalg import gf2_nullspace, nullspace_mod, solve_mod1


def composable_tuples(g: FiniteGroupoid, n: int, skip_identities: bool = False):
    """All composable n-tuples of arrows, in lexicographic id order."""
    def extend(prefix, depth):
        if depth == n:
            yield tuple(prefix)
            return
        cands = g.arrows() if depth == 0 else g.arrows_from(g.target[prefix[-1]])
        for a in cands:
            if skip_identities and g.is_identity(a):
                continue
            prefix.append(a)
            yield from extend(prefix, depth + 1)
            prefix.pop()

    yield from extend([], 0)


class Cochain:
    """A normalized Q/Z-valued cochain of degree 1, 2 or 3."""

    def __init__(self, carrier: FiniteGroupoid, degree: int, data=None):
        if degree not in (1, 2, 3):
            raise ValueError("degree must be 1, 2 or 3")
        self.carrier = carrier
        self.degree = degree
        clean: dict[tuple, Phase] = {}
        for key, val in (data or {}).items():
            key = tuple(key)
            if len(key) != degree:
                raise ValueError(f"key {key} has wrong arity")
            if not isinstance(val, Phase):
                val = Phase(val)
            if val.is_zero:
                continue
            if any(carrier.is_identity(a) for a in key):
                raise ValueError(f"non-normalized cochain: nonzero value on {key}")
            clean[key] = val
        self.data = clean

    def value(self, key) -> Phase:
        return self.data.get(tuple(key), Phase(0))

    @property
    def is_zero(self) -> bool:
        return not self.data

    def __eq__(self, other) -> bool:
        return (isinstance(other, Cochain) and other.carrier is self.carrier
                and other.degree == self.degree and other.data == self.data)

    def __hash__(self):
        return hash((id(self.carrier), self.degree,
                     tuple(sorted(self.data.items()))))

    def _pointwise(self, other: "Cochain", sign: int) -> "Cochain":
        if other.carrier is not self.carrier or other.degree != self.degree:
            raise MismatchedCarrierError("cochains live on different carriers")
        keys = set(self.data) | set(other.data)
        return Cochain(self.carrier, self.degree,
                       {k: self.value(k) + sign * other.value(k) for k in keys})

    def __add__(self, other):
        return self._pointwise(other, 1)

    def __sub__(self, other):
        return self._pointwise(other, -1)

    def __neg__(self):
        return Cochain(self.carrier, self.degree,
                       {k: -v for k, v in self.data.items()})

    def relabel(self, carrier: FiniteGroupoid) -> "Cochain":
        """Same table on a structurally identical carrier (same arrow ids)."""
        if carrier.n_arrows != self.carrier.n_arrows:
            raise MismatchedCarrierError("carriers differ in size")
        return Cochain(carrier, self.degree, dict(self.data))

    def denominator_lcm(self) -> int:
        return phase_lcm(self.data.values())

    def __repr__(self):
        return f"Cochain(deg={self.degree}, support={len(self.data)})"


def coboundary(c: Cochain) -> Cochain:
    """The coboundary d(c) for degree 1 or 2 input (normalized output)."""
    g = c.carrier
    out: dict[tuple, Phase] = {}
    if c.degree == 1:
        for a, b in composable_tuples(g, 2, skip_identities=True):
            v = c.value((a,)) + c.value((b,)) - c.value((g.compose(a, b),))
            if not v.is_zero:
                out[(a, b)] = v
        return Cochain(g, 2, out)
    if c.degree == 2:
        for a, b, cc in composable_tuples(g, 3, skip_identities=True):
            ab, bc = g.compose(a, b), g.compose(b, cc)
            v = (c.value((b, cc)) - c.value((ab, cc))
                 + c.value((a, bc)) - c.value((a, b)))
            if not v.is_zero:
                out[(a, b, cc)] = v
        return Cochain(g, 3, out)
    raise ValueError("use is_cocycle for degree-3 cochains")


def is_cocycle(c: Cochain) -> bool:
    """True iff d(c) vanishes on every composable tuple."""
    g = c.carrier
    if c.degree in (1, 2):
        return coboundary(c).is_zero
    for a, b, cc, d in composable_tuples(g, 4, skip_identities=True):
        ab, bc, cd = g.compose(a, b), g.compose(b, cc), g.compose(cc, d)
        lhs = c.value((a, b, cc)) + c.value((a, bc, d)) + c.value((b, cc, d))
        rhs = c.value((ab, cc, d)) + c.value((a, b, cd))
        if lhs != rhs:
            return False
    return True


def pullback_cochain(c: Cochain, sub: FiniteGroupoid, to_parent) -> Cochain:
    """Restrict a cochain along an inclusion given by an arrow map."""
    data = {}
    for key in composable_tuples(sub, c.degree, skip_identities=True):
        v = c.value(tuple(to_parent[a] for a in key))
        if not v.is_zero:
            data[key] = v
    return Cochain(sub, c.degree, data)


def restrict_to_vertex(c: Cochain, obj: int) -> tuple[Cochain, VertexGroup]:
    """Restrict a cochain on a connected groupoid to the vertex group at obj."""
    if not c.carrier.is_connected():
        raise NotConnectedError("carrier is disconnected")
    vg = vertex_group(c.carrier, obj)
    return pullback_cochain(c, vg.group, vg.to_parent), vg


def transport_cochain(chat: Cochain, vertex: VertexGroup,
                      tau: Transversal) -> Cochain:
    """Spread a vertex-group cocycle over the whole connected groupoid.

    The value on (a_1,...,a_n) is chat on the loops tau_P a_i tau_Q^{-1};
    restricting back to the vertex recovers chat exactly, and the result is
    trivial whenever any argument is one of the tau arrows.
    """
    parent = vertex.parent
    if chat.carrier is not vertex.group:
        raise MismatchedCarrierError("cochain does not live on the vertex group")
    conj = []
    for a in parent.arrows():
        loop = parent.compose_many(tau.arrows[parent.source[a]], a,
                                   parent.inverse[tau.arrows[parent.target[a]]])
        conj.append(vertex.from_parent[loop])
    data = {}
    for key in composable_tuples(parent, chat.degree, skip_identities=True):
        v = chat.value(tuple(conj[a] for a in key))
        if not v.is_zero:
            data[key] = v
    return Cochain(parent, chat.degree, data)


transport_cocycle3 = transport_cochain
transport_cocycle2 = transport_cochain


# -- coboundary solving ------------------------------------------------------

def solve_coboundary(target: Cochain, reference: Cochain,
                     variant: int = 0) -> Cochain:
    """Find c with d(c) = target - reference; raise NoSolutionError otherwise.

    Exact over Q/Z via Smith normal form (free coordinates pinned to 0 in the
    Smith basis, so the output is deterministic).  variant > 0 adds the
    coboundary of a canonical nontrivial lower cochain, producing a different
    but equally valid normalized solution.
    """
    if target.carrier is not reference.carrier or target.degree != reference.degree:
        raise MismatchedCarrierError("target and reference do not match")
    g = target.carrier
    delta = target - reference
    n = target.degree
    if n == 1:
        raise ValueError("cannot solve below degree 1")

    unknowns = list(composable_tuples(g, n - 1, skip_identities=True))
    uindex = {u: i for i, u in enumerate(unknowns)}
    rows, rhs = [], []
    for key in composable_tuples(g, n, skip_identities=True):
        row = [0] * len(unknowns)

        def add(tup, coeff):
            if all(not g.is_identity(a) for a in tup):
                row[uindex[tup]] += coeff

        if n == 2:
            a, b = key
            add((a,), 1)
            add((b,), 1)
            add((g.compose(a, b),), -1)
        else:
            a, b, c = key
            add((b, c), 1)
            add((g.compose(a, b), c), -1)
            add((a, g.compose(b, c)), 1)
            add((a, b), -1)
        rows.append(row)
        rhs.append(delta.value(key).exponent)

    if rows and unknowns:
        sol = solve_mod1(np.array(rows, dtype=np.int64), rhs)
        if sol is None:
            raise NoSolutionError("classes differ; no coboundary solution")
    else:
        if any(r != 0 for r in rhs):
            raise NoSolutionError("classes differ; no coboundary solution")
        sol = [Fraction(0)] * len(unknowns)
    result = Cochain(g, n - 1, {u: Phase(sol[i]) for i, u in enumerate(unknowns)})
    if variant > 0:
        result = result + _canonical_shift(g, n - 1, variant)
    if n - 1 in (1, 2) and coboundary(result) != delta:
        raise NoSolutionError("internal: solution failed recheck")
    return result


def _canonical_shift(g: FiniteGroupoid, degree: int, variant: int) -> Cochain:
    """The coboundary of a canonical nontrivial cochain one degree down."""
    if degree == 2:
        non_id = [a for a in g.arrows() if not g.is_identity(a)]
        if not non_id:
            return Cochain(g, 2, {})
        a0 = non_id[(variant - 1) % len(non_id)]
        return coboundary(Cochain(g, 1, {(a0,): Phase(Fraction(1, 2))}))
    data = {}
    mu = [Fraction(0)] * g.n_objects
    mu[(variant - 1) % g.n_objects] = Fraction(1, 2)
    for a in g.arrows():
        if g.is_identity(a):
            continue
        v = Phase(mu[g.source[a]] - mu[g.target[a]])
        if not v.is_zero:
            data[(a,)] = v
    return Cochain(g, 1, data)


def trivialize_subgroup_cocycle(omega_hat: Cochain, v: WideSubgroupoid,
                                psi_hat: Cochain) -> tuple[Cochain, Cochain]:
    """Make a 3-cocycle trivial on a distinguished subgroupoid.

    psi_hat lives on v.restrict()'s groupoid (sorted-arrow numbering) and must
    satisfy d(psi_hat) = restriction of omega_hat (either orientation).
    Returns (omega_bar, eta): omega_bar = omega_hat + d(eta) restricts to 0 on
    the subgroupoid, where eta extends +/- psi_hat by zero off it.
    """
    parent = omega_hat.carrier
    sub, to_parent, _ = v.restrict()
    if psi_hat.carrier.n_arrows != sub.n_arrows:
        raise MismatchedCarrierError("psi_hat does not live on the subgroupoid")
    restr = pullback_cochain(omega_hat, sub, to_parent)
    dpsi = coboundary(psi_hat.relabel(sub))
    if restr == dpsi:
        sign = -1
    elif restr == -dpsi:
        sign = 1
    else:
        raise IncompatibleDataError(
            "d(psi_hat) does not match the restriction of omega_hat")
    eta = Cochain(parent, 2,
                  {(to_parent[a], to_parent[b]): sign * val
                   for (a, b), val in psi_hat.data.items()})
    omega_bar = omega_hat + coboundary(eta)
    if not pullback_cochain(omega_bar, sub, to_parent).is_zero:
        raise IncompatibleDataError("internal: omega_bar not trivial on subgroupoid")
    return omega_bar, eta


# -- compatible box-pair cocycles -------------------------------------------

@dataclass(frozen=True)
class OpextPair:
    """A vertical 2-cocycle sigma and horizontal 2-cocycle tau on boxes."""

    boxes: BoxSystem
    sigma: Cochain  # degree 2 on boxes.vertical_groupoid()
    tau: Cochain    # degree 2 on boxes.horizontal_groupoid()

    def sigma_value(self, a: int, b: int) -> Phase:
        return self.sigma.value((a, b))

    def tau_value(self, a: int, b: int) -> Phase:
        return self.tau.value((a, b))

    def denominator_lcm(self) -> int:
        import math
        return math.lcm(self.sigma.denominator_lcm(), self.tau.denominator_lcm())

    @property
    def is_trivial(self) -> bool:
        return self.sigma.is_zero and self.tau.is_zero


def trivial_pair(boxes: BoxSystem) -> OpextPair:
    return OpextPair(boxes,
                     Cochain(boxes.vertical_groupoid(), 2, {}),
                     Cochain(boxes.horizontal_groupoid(), 2, {}))


def check_opext_pair(boxes: BoxSystem, pair: OpextPair) -> ValidationReport:
    """Cocycle conditions for both compositions plus the 2x2 grid condition."""
    bad = []
    vert, horiz = boxes.vertical_groupoid(), boxes.horizontal_groupoid()
    if pair.sigma.carrier is not vert:
        bad.append("sigma lives on the wrong carrier")
    if pair.tau.carrier is not horiz:
        bad.append("tau lives on the wrong carrier")
    if bad:
        return ValidationReport(tuple(bad))
    if not is_cocycle(pair.sigma):
        bad.append("sigma is not a vertical 2-cocycle")
    if not is_cocycle(pair.tau):
        bad.append("tau is not a horizontal 2-cocycle")
    for a, b, c, d in boxes.grids():
        lhs = (pair.sigma_value(boxes.h_compose(a, b), boxes.h_compose(c, d))
               + pair.tau_value(boxes.v_compose(a, c), boxes.v_compose(b, d)))
        rhs = (pair.tau_value(a, b) + pair.tau_value(c, d)
               + pair.sigma_value(a, c) + pair.sigma_value(b, d))
        if lhs != rhs:
            bad.append(f"grid condition fails at ({a},{b},{c},{d})")
    return ValidationReport(tuple(bad))


class OpextPairSpace:
    """The group of valid mu_n-valued pairs as an exact nullspace.

    Variables are the sigma values on vertically composable non-identity box
    pairs followed by the tau values on horizontally composable non-identity
    pairs, with exponents in Z_n.
    """

    def __init__(self, boxes: BoxSystem, n: int = 2):
        self.boxes = boxes
        self.n = n
        vert, horiz = boxes.vertical_groupoid(), boxes.horizontal_groupoid()
        self.sigma_vars = list(composable_tuples(vert, 2, skip_identities=True))
        self.tau_vars = list(composable_tuples(horiz, 2, skip_identities=True))
        self._sidx = {p: i for i, p in enumerate(self.sigma_vars)}
        off = len(self.sigma_vars)
        self._tidx = {p: off + i for i, p in enumerate(self.tau_vars)}
        self.ncols = off + len(self.tau_vars)
        rows = self._constraint_rows(vert, horiz)
        if n == 2:
            self.basis = gf2_nullspace(np.array(rows, dtype=np.uint8)
                                       if rows else np.zeros((0, self.ncols), dtype=np.uint8),
                                       self.ncols)
        else:
            mat = (np.array(rows, dtype=np.int64) if rows
                   else np.zeros((0, self.ncols), dtype=np.int64))
            self.basis = nullspace_mod(mat, n)

    def _constraint_rows(self, vert, horiz):
        rows = []

        def cocycle_rows(g, index):
            out = []
            for a, b, c in composable_tuples(g, 3, skip_identities=True):
                row = [0] * self.ncols
                for tup, coeff in (((b, c), 1), ((g.compose(a, b), c), -1),
                                   ((a, g.compose(b, c)), 1), ((a, b), -1)):
                    col = index.get(tup)
                    if col is not None:
                        row[col] = (row[col] + coeff) % self.n
                if any(row):
                    out.append(row)
            return out

        rows += cocycle_rows(vert, self._sidx)
        rows += cocycle_rows(horiz, self._tidx)
        bx = self.boxes
        for a, b, c, d in bx.grids():
            row = [0] * self.ncols
            for tup, index, coeff in (
                    ((bx.h_compose(a, b), bx.h_compose(c, d)), self._sidx, 1),
                    ((bx.v_compose(a, c), bx.v_compose(b, d)), self._tidx, 1),
                    ((a, b), self._tidx, -1),
                    ((c, d), self._tidx, -1),
                    ((a, c), self._sidx, -1),
                    ((b, d), self._sidx, -1)):
                col = index.get(tup)
                if col is not None:
                    row[col] = (row[col] + coeff) % self.n
            if any(row):
                rows.append(row)
        return rows

    @property
    def log_size(self) -> int:
        """Number of generators; the group has n^log_size elements for prime n."""
        return len(self.basis)

    def pair_from_vector(self, vec) -> OpextPair:
        vert, horiz = self.boxes.vertical_groupoid(), self.boxes.horizontal_groupoid()
        sdata, tdata = {}, {}
        for i, key in enumerate(self.sigma_vars):
            if vec[i] % self.n:
                sdata[key] = Phase(Fraction(int(vec[i]) % self.n, self.n))
        off = len(self.sigma_vars)
        for i, key in enumerate(self.tau_vars):
            if vec[off + i] % self.n:
                tdata[key] = Phase(Fraction(int(vec[off + i]) % self.n, self.n))
        return OpextPair(self.boxes, Cochain(vert, 2, sdata),
                         Cochain(horiz, 2, tdata))

    def basis_pairs(self) -> list[OpextPair]:
        return [self.pair_from_vector(v) for v in self.basis]

    def enumerate_vectors(self, cap: int | None = None):
        """All vectors of the solution group, or None if it exceeds cap."""
        total = self.n ** len(self.basis)
        if cap is not None and total > cap:
            return None
        vecs = [np.zeros(self.ncols, dtype=np.int64)]
        for gen in self.basis:
            vecs = [(v + k * np.asarray(gen, dtype=np.int64)) % self.n
                    for v in vecs for k in range(self.n)]
        # deduplicate (generators need not be independent for composite n)
        seen, out = set(), []
        for v in vecs:
            key = tuple(int(x) for x in v)
            if key not in seen:
                seen.add(key)
                out.append(np.array(key, dtype=np.int64))
        return out

    def random_vector(self, rng) -> np.ndarray:
        vec = np.zeros(self.ncols, dtype=np.int64)
        for gen in self.basis:
            vec = (vec + int(rng.integers(self.n)) * np.asarray(gen, dtype=np.int64)) % self.n
        return vec


# -- the obstruction 3-cocycle on the diagonal groupoid ----------------------

def kac_cocycle(boxes: BoxSystem, diag: Diagonal, pair: OpextPair,
                assume_valid: bool = False) -> Cochain:
    """The 3-cocycle on the diagonal groupoid induced by a compatible pair.

    On a composable triple (g,x), (h,y), (f,z) the value is

        tau(box(x<|h, y|>f), box(y, f)) + sigma(box(x, h), box(x<|h, y|>f)),

    independent of g and z.  Requires a valid pair.
    """
    if not assume_valid:
        rep = check_opext_pair(boxes, pair)
        if not rep.ok:
            raise InvalidPairError(rep.summary())
    mp = boxes.mp
    dg = diag.groupoid
    data = {}
    for d1, d2, d3 in composable_tuples(dg, 3, skip_identities=True):
        _, x = diag.pairs[d1]
        h, y = diag.pairs[d2]
        f, _ = diag.pairs[d3]
        b3 = boxes.fill(x, h)
        b1 = boxes.fill(mp.right(x, h), mp.left(y, f))
        b2 = boxes.fill(y, f)
        val = pair.tau_value(b1, b2) + pair.sigma_value(b3, b1)
        if not val.is_zero:
            data[(d1, d2, d3)] = val
    return Cochain(dg, 3, data)


def kac_property_report(boxes: BoxSystem, diag: Diagonal, pair: OpextPair,
                        omega: Cochain) -> ValidationReport:
    """Check the cocycle law and the three structural identities of omega.

    (i) omega vanishes when the first argument lies in the vertical edge
    subgroupoid; (ii) omega only depends on the displayed reduced arguments;
    (iii) pure-sigma evaluation on triples ((id,x),(h,id),(f,id)).
    """
    bad = []
    if not is_cocycle(omega):
        bad.append("omega is not a 3-cocycle")
    dg = diag.groupoid
    mp = boxes.mp
    v_embedded = set(diag.v_embed)
    for key, val in omega.data.items():
        if key[0] in v_embedded:
            bad.append(f"omega nonzero with vertical first argument {key}")
    h, v = mp.h, mp.v
    for d1, d2, d3 in composable_tuples(dg, 3, skip_identities=True):
        _, x = diag.pairs[d1]
        hh, y = diag.pairs[d2]
        f, _ = diag.pairs[d3]
        red1 = diag.index[(v.identity[h.source[x]], x)]
        red3 = diag.index[(f, h.identity[v.target[f]])]
        if omega.value((d1, d2, d3)) != omega.value((red1, d2, red3)):
            bad.append(f"reduced-argument identity fails at ({d1},{d2},{d3})")
    for x in h.arrows():
        for hh in v.arrows():
            if h.target[x] != v.source[hh]:
                continue
            for f in v.arrows_from(v.target[hh]):
                d1 = diag.index[(v.identity[h.source[x]], x)]
                d2 = diag.index[(hh, h.identity[v.target[hh]])]
                d3 = diag.index[(f, h.identity[v.target[f]])]
                expect = pair.sigma_value(boxes.fill(x, hh),
                                          boxes.fill(mp.right(x, hh), f))
                if omega.value((d1, d2, d3)) != expect:
                    bad.append(f"pure-sigma identity fails at ({x},{hh},{f})")
    return ValidationReport(tuple(bad))
