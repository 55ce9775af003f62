"""Two-sided graded modules: spaces graded by a groupoid D with left/right
translations by a wide subgroupoid V, twisted by a 3-cocycle omega (trivial
on V-triples) and an optional 2-cocycle psi on V.

Linearizing the two actions gives the twisted algebra of the action groupoid
(g, alpha, h): alpha -> g.alpha.h.  Its components are the double cosets;
restriction to a basepoint fiber is a Morita equivalence onto the twisted
group algebra of the stabilizer, which keeps every decomposition small.
The balanced tensor product is modeled on orbit representatives of the
sliding relation (m <- g) (x) n  ~  omega(|m|,g,|n|) m (x) (g -> n); right
translation on a groupoid is free, so each orbit contributes one block.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cohomology import Cochain, is_cocycle
from .errors import (CocycleNotTrivialOnVError, DecompositionFailedError,
                     MismatchedCarrierError, NotFusionError)
from .fusion_rings import FusionRing, fusion_ring_from_table
from .graded_modules import fp_dims
from .groupoids import FiniteGroupoid
from .phases import Phase, phase_lcm
from .semisimple import (StructureAlgebra, decompose, multiplicities,
                         simple_module_matrices)

ATOL = 1e-8


class BimoduleCategory:
    """Carrier data (D, V, omega, psi) with omega trivial on V-triples."""

    def __init__(self, d: FiniteGroupoid, v_arrows, omega: Cochain,
                 psi: dict | None = None):
        self.d = d
        self.v_arrows = tuple(sorted(v_arrows))
        self.v_set = frozenset(self.v_arrows)
        if omega.carrier is not d:
            raise MismatchedCarrierError("omega must live on the ambient groupoid")
        self.omega = omega
        self.psi = {tuple(k): (v if isinstance(v, Phase) else Phase(v))
                    for k, v in (psi or {}).items()}
        for p in range(d.n_objects):
            if d.identity[p] not in self.v_set:
                raise MismatchedCarrierError("V must be wide")
        for a, b, c in _v_triples(d, self.v_arrows):
            if not self.omega.value((a, b, c)).is_zero:
                raise CocycleNotTrivialOnVError(
                    f"omega nonzero on V-triple ({a},{b},{c})")
        # psi must be a normalized 2-cocycle on V
        for (g, h), val in self.psi.items():
            if g not in self.v_set or h not in self.v_set:
                raise MismatchedCarrierError("psi defined off V")
            if d.is_identity(g) or d.is_identity(h):
                if not val.is_zero:
                    raise MismatchedCarrierError("psi not normalized")
        for a, b, c in _v_triples(d, self.v_arrows):
            ab, bc = d.compose(a, b), d.compose(b, c)
            if (self.psi_val(b, c) - self.psi_val(ab, c)
                    + self.psi_val(a, bc) - self.psi_val(a, b)):
                raise MismatchedCarrierError("psi is not a 2-cocycle on V")
        self.L = max(1, phase_lcm(list(self.omega.data.values())
                                  + list(self.psi.values())))

    def omega_val(self, a: int, b: int, c: int) -> Phase:
        return self.omega.value((a, b, c))

    def psi_val(self, g: int, h: int) -> Phase:
        return self.psi.get((g, h), Phase(0))

    def v_from(self, p: int):
        return [g for g in self.d.arrows_from(p) if g in self.v_set]

    def v_to(self, q: int):
        return [g for g in self.d.arrows_to(q) if g in self.v_set]

    # -- twisted action-algebra scalars -------------------------------------

    def triple_cocycle(self, t2, t1) -> Phase:
        """Phase of e_{t2} e_{t1} = zeta^c e_{t2 o t1} in the action algebra."""
        g2, _, h2 = t2
        g1, a1, h1 = t1
        d = self.d
        a1h1 = d.compose(a1, h1)
        h1h2 = d.compose(h1, h2)
        return (self.psi_val(g2, g1) + self.psi_val(h1, h2)
                + self.omega_val(g1, a1h1, h2) + self.omega_val(a1, h1, h2)
                - self.omega_val(g2, g1, d.compose(a1, h1h2)))

    def triple_compose(self, t2, t1):
        """(phase, t2 o t1); requires alpha(t2) = g1 alpha1 h1."""
        g2, a2, h2 = t2
        g1, a1, h1 = t1
        d = self.d
        if a2 != d.compose_many(g1, a1, h1):
            raise MismatchedCarrierError("triples not composable")
        phase = self.triple_cocycle(t2, t1)
        return phase, (d.compose(g2, g1), a1, d.compose(h1, h2))

    def triple_inverse(self, t):
        """(phase, s) with e_s e_t = zeta^phase e_id at the source of t."""
        g, a, h = t
        d = self.d
        s = (d.inverse[g], d.compose_many(g, a, h), d.inverse[h])
        return self.triple_cocycle(s, t), s

    def identity_triple(self, a: int):
        d = self.d
        return (d.identity[d.source[a]], a, d.identity[d.target[a]])


def _v_triples(d: FiniteGroupoid, v_arrows):
    for a in v_arrows:
        for b in v_arrows:
            if d.target[a] != d.source[b]:
                continue
            for c in v_arrows:
                if d.target[b] == d.source[c]:
                    yield a, b, c


@dataclass
class DBimodule:
    """Graded components with left/right translation matrices."""

    cat: BimoduleCategory
    dims: dict                  # alpha -> positive dimension
    left: dict                  # (g, alpha) -> matrix M_alpha -> M_{g alpha}
    right: dict                 # (alpha, h) -> matrix M_alpha -> M_{alpha h}

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    def lact(self, g: int, alpha: int) -> np.ndarray:
        return self.left[(g, alpha)]

    def ract(self, alpha: int, h: int) -> np.ndarray:
        return self.right[(alpha, h)]

    def triple_action(self, t) -> np.ndarray:
        """g -> (m <- h) on the source component of t."""
        g, a, h = t
        d = self.cat.d
        return self.lact(g, d.compose(a, h)) @ self.ract(a, h)

    def check_axioms(self, atol: float = ATOL) -> list[str]:
        bad = []
        cat, d = self.cat, self.cat.d
        comps = sorted(self.dims)
        for a in comps:
            da = self.dims[a]
            if np.linalg.norm(self.lact(d.identity[d.source[a]], a)
                              - np.eye(da)) > atol:
                bad.append(f"left identity fails at {a}")
            if np.linalg.norm(self.ract(a, d.identity[d.target[a]])
                              - np.eye(da)) > atol:
                bad.append(f"right identity fails at {a}")
        for a in comps:
            for g1 in cat.v_to(d.source[a]):
                for g2 in cat.v_to(d.source[g1]):
                    g21 = d.compose(g2, g1)
                    lhs = self.lact(g2, d.compose(g1, a)) @ self.lact(g1, a)
                    ph = (cat.omega_val(g2, g1, a)
                          - cat.psi_val(g2, g1)).to_complex()
                    rhs = ph * self.lact(g21, a)
                    if np.linalg.norm(lhs - rhs) > atol:
                        bad.append(f"left twisted law fails at ({g2},{g1},{a})")
            for h1 in cat.v_from(d.target[a]):
                for h2 in cat.v_from(d.target[h1]):
                    h12 = d.compose(h1, h2)
                    lhs = self.ract(d.compose(a, h1), h2) @ self.ract(a, h1)
                    ph = (cat.omega_val(a, h1, h2)
                          + cat.psi_val(h1, h2)).to_complex()
                    rhs = ph * self.ract(a, h12)
                    if np.linalg.norm(lhs - rhs) > atol:
                        bad.append(f"right twisted law fails at ({a},{h1},{h2})")
            for g in cat.v_to(d.source[a]):
                for h in cat.v_from(d.target[a]):
                    ga = d.compose(g, a)
                    ah = d.compose(a, h)
                    lhs = self.ract(ga, h) @ self.lact(g, a)
                    ph = cat.omega_val(g, a, h).to_complex()
                    rhs = ph * self.lact(g, ah) @ self.ract(a, h)
                    if np.linalg.norm(lhs - rhs) > atol:
                        bad.append(f"middle law fails at ({g},{a},{h})")
        return bad


def unit_bimodule(cat: BimoduleCategory) -> DBimodule:
    """The unit object: one dimension on each V-arrow, psi-twisted actions."""
    d = cat.d
    dims = {g: 1 for g in cat.v_arrows}
    left, right = {}, {}
    for a in cat.v_arrows:
        for g in cat.v_to(d.source[a]):
            left[(g, a)] = np.array([[cat.psi_val(g, a).to_complex()]])
        for h in cat.v_from(d.target[a]):
            right[(a, h)] = np.array([[cat.psi_val(a, h).to_complex()]])
    return DBimodule(cat, dims, left, right)


@dataclass
class ActionComponent:
    basepoint: int
    members: tuple
    reach: dict                  # member -> transversal triple alpha0 -> member
    stab: tuple                  # sorted stabilizer pairs (g, h)
    algebra: StructureAlgebra    # twisted stabilizer group algebra


def action_components(cat: BimoduleCategory) -> list[ActionComponent]:
    d = cat.d
    seen = set()
    comps = []
    for a0 in d.arrows():
        if a0 in seen:
            continue
        members = {}
        for g in cat.v_to(d.source[a0]):
            for h in cat.v_from(d.target[a0]):
                b = d.compose_many(g, a0, h)
                key = (g, h)
                if b not in members or key < members[b]:
                    members[b] = key
        ordered = tuple(sorted(members))
        seen.update(ordered)
        reach = {b: (gh[0], a0, gh[1]) for b, gh in members.items()}
        reach[a0] = cat.identity_triple(a0)
        stab = tuple(sorted((g, h) for g in cat.v_to(d.source[a0])
                            for h in cat.v_from(d.target[a0])
                            if d.compose_many(g, a0, h) == a0))
        index = {p: i for i, p in enumerate(stab)}
        mult = {}
        for p2 in stab:
            for p1 in stab:
                phase, tcomp = cat.triple_compose((p2[0], a0, p2[1]),
                                                  (p1[0], a0, p1[1]))
                mult[(index[p2], index[p1])] = (phase.to_complex(),
                                                index[(tcomp[0], tcomp[2])])
        ident = index[(d.identity[d.source[a0]], d.identity[d.target[a0]])]
        alg = StructureAlgebra(len(stab), mult, {ident: 1.0})
        comps.append(ActionComponent(a0, ordered, reach, stab, alg))
    return comps


def induce_bimodule(cat: BimoduleCategory, comp: ActionComponent,
                    w_mats: np.ndarray) -> DBimodule:
    """Spread a stabilizer-twisted module over the whole component.

    w_mats[i] is the matrix of the i-th stabilizer pair.  Component beta gets
    a copy of W along the transversal triple t_beta; a triple t: beta -> beta'
    acts as the phase-corrected stabilizer loop t_{beta'}^{-1} o t o t_beta.
    """
    d = cat.d
    dim = w_mats.shape[1]
    index = {p: i for i, p in enumerate(comp.stab)}

    def triple_matrix(t, beta):
        a, u = cat.triple_compose(t, comp.reach[beta])
        tgt = d.compose_many(u[0], u[1], u[2])
        _, s = cat.triple_inverse(comp.reach[tgt])
        c, gamma = cat.triple_compose(s, u)
        kap = cat.triple_cocycle(comp.reach[tgt], s)
        phase = (a + c - kap).to_complex()
        return phase * w_mats[index[(gamma[0], gamma[2])]]

    dims = {b: dim for b in comp.members}
    left, right = {}, {}
    for beta in comp.members:
        for g in cat.v_to(d.source[beta]):
            t = (g, beta, d.identity[d.target[beta]])
            left[(g, beta)] = triple_matrix(t, beta)
        for h in cat.v_from(d.target[beta]):
            t = (d.identity[d.source[beta]], beta, h)
            right[(beta, h)] = triple_matrix(t, beta)
    return DBimodule(cat, dims, left, right)


def fiber_matrices(m: DBimodule, comp: ActionComponent) -> np.ndarray | None:
    """Stabilizer-algebra action on the basepoint component (None if absent)."""
    a0 = comp.basepoint
    if a0 not in m.dims:
        return None
    dim = m.dims[a0]
    mats = np.zeros((len(comp.stab), dim, dim), dtype=complex)
    for i, (g, h) in enumerate(comp.stab):
        mats[i] = m.triple_action((g, a0, h))
    return mats


@dataclass
class BimoduleFusionData:
    cat: BimoduleCategory
    components: list
    decs: list                   # Decomposition of each stabilizer algebra
    labels: list                 # (component index, block index)
    simples: list                # induced DBimodule per label
    unit_multiplicities: list


def bimodule_fusion_data(cat: BimoduleCategory,
                         seed: int = 20259) -> BimoduleFusionData:
    comps = action_components(cat)
    decs, labels, simples = [], [], []
    for ci, comp in enumerate(comps):
        dec = decompose(comp.algebra, seed=seed + 101 * ci)
        decs.append(dec)
        for bi, block in enumerate(dec.blocks):
            w = simple_module_matrices(comp.algebra, block,
                                       seed=seed + 101 * ci + 13 * bi + 5)
            mod = induce_bimodule(cat, comp, w)
            errs = mod.check_axioms()
            if errs:
                raise DecompositionFailedError(
                    f"induced module fails axioms: {errs[:3]}")
            labels.append((ci, bi))
            simples.append(mod)
    umult = decompose_dbimodule(cat, comps, decs, unit_bimodule(cat))
    return BimoduleFusionData(cat, comps, decs, labels, simples, umult)


def decompose_dbimodule(cat: BimoduleCategory, comps, decs,
                        m: DBimodule) -> list[int]:
    """Multiplicity of each simple (component, block) in a bimodule."""
    out = []
    for comp, dec in zip(comps, decs):
        fib = fiber_matrices(m, comp)
        if fib is None:
            out.extend([0] * len(dec.blocks))
            continue
        traces = np.array([np.trace(f) for f in fib])

        def chi(coords, traces=traces):
            return complex(coords @ traces)

        out.extend(multiplicities(dec, chi))
    return out


class TensorModel:
    """Balanced tensor product over the twisted V-algebra, with its layout.

    Components are orbit representatives of the slide relation
    (alpha, beta) ~ (alpha g^-1, g beta); right translation on a groupoid is
    free, so each orbit contributes the single block M_rep (x) N_rep.
    ``embed`` sends a vector of M_a (x) N_b into quotient coordinates.
    """

    def __init__(self, m1: DBimodule, m2: DBimodule):
        if m1.cat is not m2.cat:
            raise MismatchedCarrierError("bimodules over different carriers")
        self.m1, self.m2 = m1, m2
        cat = m1.cat
        self.cat = cat
        d = cat.d
        pairs = [(a, b) for a in sorted(m1.dims) for b in sorted(m2.dims)
                 if d.target[a] == d.source[b]]
        pair_set = set(pairs)
        rep_of: dict = {}
        for p in pairs:
            if p in rep_of:
                continue
            a, b = p
            orbit = []
            for g in cat.v_to(d.target[a]):
                q = (d.compose(a, d.inverse[g]), d.compose(g, b))
                if q in pair_set:
                    orbit.append(q)
            rep = min(orbit)
            for q in orbit:
                rep_of[q] = rep
        self.rep_of = rep_of
        self.reps = sorted({rep_of[p] for p in pairs})
        degree = {p: d.compose(p[0], p[1]) for p in self.reps}
        comp_members: dict[int, list] = {}
        for p in self.reps:
            comp_members.setdefault(degree[p], []).append(p)
        self.comp_members = comp_members
        self.dims = {gam: sum(self.block_dim(p) for p in members)
                     for gam, members in comp_members.items()}
        self.offsets: dict = {}
        for gam, members in comp_members.items():
            off = 0
            for p in members:
                self.offsets[p] = off
                off += self.block_dim(p)
        self._module: DBimodule | None = None

    def block_dim(self, p) -> int:
        return self.m1.dims[p[0]] * self.m2.dims[p[1]]

    def slide_to_rep(self, p):
        """(rep pair, transport matrix from the (a, b) block to its rep)."""
        cat, d = self.cat, self.cat.d
        a, b = p
        rep = self.rep_of[p]
        if rep == p:
            return rep, np.eye(self.block_dim(p))
        # the V-arrow with (a g^-1, g b) = rep is g = rep[0]^-1 a
        gg = d.compose(d.inverse[rep[0]], a)
        if gg not in cat.v_set:
            raise DecompositionFailedError("slide arrow not in V")
        ag = rep[0]                      # = a gg^-1
        phase = (cat.omega_val(ag, gg, b)
                 - cat.omega_val(ag, gg, d.inverse[gg])
                 - cat.psi_val(gg, d.inverse[gg]))
        mat = np.kron(self.m1.ract(a, d.inverse[gg]), self.m2.lact(gg, b))
        return rep, phase.to_complex() * mat

    def embed(self, p, vec: np.ndarray) -> tuple[int, np.ndarray]:
        """Quotient class of a vector in M_a (x) N_b: (component, coords)."""
        rep, tr = self.slide_to_rep(p)
        gam = self.cat.d.compose(rep[0], rep[1])
        out = np.zeros(self.dims[gam], dtype=complex)
        off = self.offsets[rep]
        moved = tr @ vec
        out[off:off + moved.shape[0]] = moved
        return gam, out

    def embed_matrix(self, p) -> tuple[int, np.ndarray]:
        """(component, matrix) form of ``embed`` on the whole (a, b) block."""
        rep, tr = self.slide_to_rep(p)
        gam = self.cat.d.compose(rep[0], rep[1])
        out = np.zeros((self.dims[gam], tr.shape[1]), dtype=complex)
        off = self.offsets[rep]
        out[off:off + tr.shape[0], :] = tr
        return gam, out

    @property
    def module(self) -> DBimodule:
        if self._module is not None:
            return self._module
        cat, d = self.cat, self.cat.d
        m1, m2 = self.m1, self.m2
        left, right = {}, {}
        for gam, members in self.comp_members.items():
            for g in cat.v_to(d.source[gam]):
                tgt = d.compose(g, gam)
                mat = np.zeros((self.dims[tgt], self.dims[gam]), dtype=complex)
                for p in members:
                    a, b = p
                    ph = (-cat.omega_val(g, a, b)).to_complex()
                    moved = (d.compose(g, a), b)
                    rep, tr = self.slide_to_rep(moved)
                    piece = (tr @ np.kron(m1.lact(g, a), np.eye(m2.dims[b]))) * ph
                    r0, c0 = self.offsets[rep], self.offsets[p]
                    mat[r0:r0 + piece.shape[0], c0:c0 + piece.shape[1]] += piece
                left[(g, gam)] = mat
            for h in cat.v_from(d.target[gam]):
                tgt = d.compose(gam, h)
                mat = np.zeros((self.dims[tgt], self.dims[gam]), dtype=complex)
                for p in members:
                    a, b = p
                    ph = cat.omega_val(a, b, h).to_complex()
                    moved = (a, d.compose(b, h))
                    rep, tr = self.slide_to_rep(moved)
                    piece = (tr @ np.kron(np.eye(m1.dims[a]), m2.ract(b, h))) * ph
                    r0, c0 = self.offsets[rep], self.offsets[p]
                    mat[r0:r0 + piece.shape[0], c0:c0 + piece.shape[1]] += piece
                right[(gam, h)] = mat
        self._module = DBimodule(cat, dict(self.dims), left, right)
        return self._module


def bimodule_tensor(m1: DBimodule, m2: DBimodule) -> DBimodule:
    return TensorModel(m1, m2).module


def fusion_ring_bimodule(cat: BimoduleCategory, seed: int = 20259,
                         data: BimoduleFusionData | None = None) -> FusionRing:
    if data is None:
        data = bimodule_fusion_data(cat, seed=seed)
    target = [0] * (len(data.labels) - 1) + [1]
    if sorted(data.unit_multiplicities) != target:
        raise NotFusionError(
            f"unit object is not simple: multiplicities {data.unit_multiplicities}")
    unit_idx = data.unit_multiplicities.index(1)
    r = len(data.labels)
    table = {}
    for i in range(r):
        for j in range(r):
            prod = bimodule_tensor(data.simples[i], data.simples[j])
            mults = decompose_dbimodule(cat, data.components, data.decs, prod)
            if sum(m * data.simples[k].total_dim
                   for k, m in enumerate(mults)) != prod.total_dim:
                raise DecompositionFailedError("tensor dimensions do not add up")
            for k, m in enumerate(mults):
                if m:
                    table[(i, j, k)] = m
    dims = fp_dims(table, r, unit_idx)
    return fusion_ring_from_table(dims, unit_idx, table)
