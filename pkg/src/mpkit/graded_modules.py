"""Right modules of the twisted box algebra as graded modules.

A module is graded by the horizontal arrows, with right vertical translations
g: M_x -> M_{x<|g} twisted by sigma; the tensor product convolves the grading
along horizontal composition and acts through the comultiplication's tau
phase.  Fusion multiplicities come from block characters of the opposite
algebra (right modules = left modules of the opposite).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DecompositionFailedError, MismatchedCarrierError, NotFusionError
from .fusion_rings import FusionRing, fusion_ring_from_table
from .semisimple import (Block, Decomposition, StructureAlgebra, decompose,
                         multiplicities, simple_module_matrices)
from .weak_hopf import WeakHopfAlgebra

ATOL = 1e-9


def rep_structure_algebra(w: WeakHopfAlgebra) -> StructureAlgebra:
    mult = {}
    for (a, b), (exp, c) in w._mult.items():
        mult[(a, b)] = (w.field.root(exp).to_complex(), c)
    return StructureAlgebra(w.dim, mult, {b: 1.0 for b in w.unit_boxes})


@dataclass
class HGradedModule:
    """Graded components with right translation matrices (column convention)."""

    w: WeakHopfAlgebra
    dims: dict                    # x -> positive dimension
    act: dict                     # (x, g) -> matrix M_x -> M_{x<|g}

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    def action(self, x: int, g: int) -> np.ndarray:
        return self.act[(x, g)]

    def check_axioms(self, atol: float = 1e-8) -> list[str]:
        """Identity, sigma-twisted composition, and grading typing checks."""
        bad = []
        boxes = self.w.boxes
        mp = boxes.mp
        h, v = mp.h, mp.v
        for x, d in self.dims.items():
            e = v.identity[h.target[x]]
            if np.linalg.norm(self.action(x, e) - np.eye(d)) > atol:
                bad.append(f"identity action fails at {x}")
        for (x, g), mat in self.act.items():
            if mat.shape != (self.dims.get(mp.right(x, g), 0), self.dims[x]):
                bad.append(f"typing fails at ({x},{g})")
        for x in self.dims:
            for g in v.arrows_from(h.target[x]):
                xg = mp.right(x, g)
                for k in v.arrows_from(v.target[g]):
                    gk = v.compose(g, k)
                    lhs = self.action(xg, k) @ self.action(x, g)
                    phase = self.w.pair.sigma_value(boxes.fill(x, g),
                                                    boxes.fill(xg, k))
                    rhs = phase.to_complex() * self.action(x, gk)
                    if np.linalg.norm(lhs - rhs) > atol:
                        bad.append(f"twisted composition fails at ({x},{g},{k})")
        return bad


def unit_module(w: WeakHopfAlgebra) -> HGradedModule:
    """The monoidal unit: one dimension per object, graded at the identities."""
    mp = w.boxes.mp
    h, v = mp.h, mp.v
    dims = {h.identity[p]: 1 for p in range(h.n_objects)}
    act = {}
    for p in range(h.n_objects):
        x = h.identity[p]
        for g in v.arrows_from(p):
            act[(x, g)] = np.eye(1)
    return HGradedModule(w, dims, act)


class GradedTensor:
    """Tensor product with its block layout: component z is the ordered sum
    of M_x (x) N_y over factorizations xy = z."""

    def __init__(self, m1: HGradedModule, m2: HGradedModule):
        if m1.w is not m2.w:
            raise MismatchedCarrierError("modules over different algebras")
        self.m1, self.m2 = m1, m2
        w = m1.w
        boxes = w.boxes
        mp = boxes.mp
        h, v = mp.h, mp.v
        blocks: dict[int, list] = {}
        for x in sorted(m1.dims):
            for y in sorted(m2.dims):
                z = h.compose_or_none(x, y)
                if z is not None:
                    blocks.setdefault(z, []).append((x, y))
        self.blocks = blocks
        dims = {z: sum(m1.dims[x] * m2.dims[y] for x, y in pairs)
                for z, pairs in blocks.items()}
        offsets: dict[int, dict] = {}
        for z, pairs in blocks.items():
            off = 0
            offsets[z] = {}
            for x, y in pairs:
                offsets[z][(x, y)] = off
                off += m1.dims[x] * m2.dims[y]
        self.offsets = offsets
        act = {}
        for z, pairs in blocks.items():
            for g in v.arrows_from(h.target[z]):
                zg = mp.right(z, g)
                mat = np.zeros((dims[zg], dims[z]), dtype=complex)
                for x, y in pairs:
                    yg = mp.left(y, g)            # y |> g
                    x2, y2 = mp.right(x, yg), mp.right(y, g)
                    phase = w.pair.tau_value(boxes.fill(x, yg), boxes.fill(y, g))
                    piece = phase.to_complex() * np.kron(m1.action(x, yg),
                                                         m2.action(y, g))
                    r0 = offsets[zg][(x2, y2)]
                    c0 = offsets[z][(x, y)]
                    mat[r0:r0 + piece.shape[0], c0:c0 + piece.shape[1]] = piece
                act[(z, g)] = mat
        self.module = HGradedModule(w, dims, act)


def rep_tensor(m1: HGradedModule, m2: HGradedModule) -> HGradedModule:
    """Tensor product: grading convolves along horizontal composition."""
    return GradedTensor(m1, m2).module


def module_from_matrices(w: WeakHopfAlgebra, mats: np.ndarray,
                         atol: float = 1e-8) -> HGradedModule:
    """Recover the graded form from right-action matrices on a total space.

    mats[b] is the action of basis box b (as a left module of the opposite
    algebra).  Components are the ranges of the vertical identity boxes.
    """
    boxes = w.boxes
    mp = boxes.mp
    dims, bases = {}, {}
    for x in mp.h.arrows():
        proj = mats[boxes.idv[x]]
        u, s, _ = np.linalg.svd(proj)
        rank = int((s > 1e-7 * max(1.0, s[0] if len(s) else 1.0)).sum())
        if rank:
            dims[x] = rank
            bases[x] = u[:, :rank]
    act = {}
    for x in dims:
        for g in mp.v.arrows_from(mp.h.target[x]):
            xg = mp.right(x, g)
            if xg not in dims:
                raise DecompositionFailedError("grading not closed under action")
            b = boxes.fill(x, g)
            mat = bases[xg].conj().T @ mats[b] @ bases[x]
            resid = np.linalg.norm(mats[b] @ bases[x] - bases[xg] @ mat)
            if resid > atol * max(1.0, np.linalg.norm(mat)):
                raise DecompositionFailedError("action does not respect grading")
            act[(x, g)] = mat
    return HGradedModule(w, dims, act)


def module_character(m: HGradedModule) -> np.ndarray:
    """chi(b) = trace of the box b acting on the graded module."""
    w = m.w
    boxes = w.boxes
    mp = boxes.mp
    out = np.zeros(w.dim, dtype=complex)
    for b in range(w.dim):
        x, g = boxes.pairs[b]
        if x in m.dims and mp.right(x, g) == x:
            out[b] = np.trace(m.action(x, g))
    return out


@dataclass
class RepFusionData:
    w: WeakHopfAlgebra
    dec: Decomposition
    simple_modules: list          # HGradedModule per block
    unit_multiplicities: list     # multiplicity of each simple in the unit object


def rep_fusion_data(w: WeakHopfAlgebra, seed: int = 20259) -> RepFusionData:
    alg = rep_structure_algebra(w)
    dec = decompose(alg.opposite(), seed=seed)
    if sum(b.dim ** 2 for b in dec.blocks) != w.dim:
        raise DecompositionFailedError("sum of squared dims != algebra dim")
    simples = []
    for i, block in enumerate(dec.blocks):
        mats = simple_module_matrices(dec.algebra, block, seed=seed + 7 * i + 1)
        simples.append(module_from_matrices(w, mats))
    unit = unit_object_module(w)
    umult = multiplicities(dec, _matrix_module_character(unit))
    return RepFusionData(w, dec, simples, umult)


def unit_object_module(w: WeakHopfAlgebra) -> np.ndarray:
    """The unit object: action of boxes on the source counital subalgebra.

    Returns the action matrices rho[b] on the span of the source partial
    units, for u . b := eps_s(u b).
    """
    n = w.dim
    by_r, _ = w.partial_units()
    cols = []
    for p in sorted(by_r):
        vec = np.zeros(n, dtype=complex)
        for b, c in by_r[p].items():
            vec[b] = c.to_complex()
        cols.append(vec)
    basis = np.column_stack(cols)
    eps_mat = np.zeros((n, n), dtype=complex)
    for b in range(n):
        for k, val in w.eps_source(b).items():
            eps_mat[k, b] += val.to_complex()
    pinv = np.linalg.pinv(basis)
    mats = np.zeros((n, basis.shape[1], basis.shape[1]), dtype=complex)
    alg = rep_structure_algebra(w)
    for b in range(n):
        right = np.zeros((n, n), dtype=complex)
        for (i, j), (z, k) in alg.mult.items():
            if j == b:
                right[k, i] = z
        act = eps_mat @ right @ basis
        mats[b] = pinv @ act
        if np.linalg.norm(basis @ mats[b] - act) > 1e-8 * max(1.0, np.linalg.norm(act)):
            raise DecompositionFailedError("unit object action leaves the span")
    return mats


def _matrix_module_character(mats: np.ndarray):
    traces = np.array([np.trace(m) for m in mats])

    def chi(coords: np.ndarray) -> complex:
        return complex(coords @ traces)

    return chi


def fusion_ring_rep(w: WeakHopfAlgebra, seed: int = 20259,
                    data: RepFusionData | None = None) -> FusionRing:
    """The fusion ring of the right-module category (unit must be simple)."""
    if data is None:
        data = rep_fusion_data(w, seed=seed)
    if sorted(data.unit_multiplicities) != [0] * (len(data.dec.blocks) - 1) + [1]:
        raise NotFusionError(
            f"unit object is not simple: multiplicities {data.unit_multiplicities}")
    unit_idx = data.unit_multiplicities.index(1)
    blocks = data.dec.blocks
    r = len(blocks)
    chars = [b.character for b in blocks]
    table = {}
    for i in range(r):
        for j in range(r):
            for k, bk in enumerate(blocks):
                val = 0j
                for b, coeff in enumerate(bk.idempotent):
                    if abs(coeff) < 1e-13:
                        continue
                    acc = 0j
                    for exp, b1, b2 in w.comult(b):
                        acc += (w.field.root(exp).to_complex()
                                * chars[i][b1] * chars[j][b2])
                    val += coeff * acc
                val /= bk.dim
                m = int(round(val.real))
                if abs(val - m) > 1e-6 or m < 0:
                    raise DecompositionFailedError(
                        f"fusion multiplicity not a non-negative integer: {val}")
                if m:
                    table[(i, j, k)] = m
    dims = fp_dims(table, r, unit_idx)
    return fusion_ring_from_table(dims, unit_idx, table)


def fp_dims(table: dict, rank: int, unit: int) -> list[int]:
    """Integer Perron dimensions determined by the structure constants."""
    dims = []
    for i in range(rank):
        mat = np.zeros((rank, rank))
        for (a, j, k), n in table.items():
            if a == i:
                mat[k, j] = n
        lam = max(np.linalg.eigvals(mat).real)
        d = int(round(lam))
        if abs(lam - d) > 1e-6 or d < 1:
            raise DecompositionFailedError(f"non-integer Perron dimension {lam}")
        dims.append(d)
    return dims
