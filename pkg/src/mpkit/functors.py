"""Equivalence functors between the three category models.

* spread/compress (between graded right modules of the box algebra and
  two-sided modules over the diagonal groupoid): spread tensors with the
  vertical groupoid algebra, compress averages with the element Lambda.
* restrict/induce (between two-sided modules over a connected carrier and
  over its vertex group, along a fixed transversal).

Round-trip isomorphisms are built explicitly so callers can assert they
compose to the identity.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .bimodules import BimoduleCategory, DBimodule, TensorModel
from .errors import DecompositionFailedError, MismatchedCarrierError
from .graded_modules import HGradedModule
from .groupoids import (FiniteGroupoid, Transversal, ValidationReport,
                        VertexGroup)
from .matched_pairs import Diagonal
from .weak_hopf import WeakHopfAlgebra

ATOL = 1e-9


# -- the averaging element ---------------------------------------------------

@dataclass
class Symmetrizer:
    """Out-averages, in-averages, and their common sum in the groupoid algebra."""

    v: FiniteGroupoid
    theta: tuple
    lam_p: tuple       # per object: {arrow: Fraction}, arrows out of P
    lam_tilde_p: tuple  # per object: arrows into P
    lam: dict


def symmetrizer(v: FiniteGroupoid) -> Symmetrizer:
    theta, lam_p, lam_tilde_p = [], [], []
    for p in range(v.n_objects):
        outs, ins = v.arrows_from(p), v.arrows_to(p)
        theta.append(len(outs))
        lam_p.append({g: Fraction(1, len(outs)) for g in outs})
        lam_tilde_p.append({g: Fraction(1, len(ins)) for g in ins})
    lam: dict = {}
    for p in range(v.n_objects):
        for g, c in lam_p[p].items():
            lam[g] = lam.get(g, Fraction(0)) + c
    return Symmetrizer(v, tuple(theta), tuple(lam_p), tuple(lam_tilde_p), lam)


def _algebra_mult(v: FiniteGroupoid, x: dict, y: dict) -> dict:
    out: dict = {}
    for a, ca in x.items():
        for b, cb in y.items():
            c = v.compose_or_none(a, b)
            if c is not None:
                out[c] = out.get(c, Fraction(0)) + ca * cb
    return {k: q for k, q in out.items() if q}


def symmetrizer_report(v: FiniteGroupoid) -> ValidationReport:
    """Exact averaging identities in the groupoid algebra."""
    s = symmetrizer(v)
    bad = []
    for h in v.arrows():
        hv = {h: Fraction(1)}
        for p in range(v.n_objects):
            lhs = _algebra_mult(v, hv, s.lam_p[p])
            expect = s.lam_p[v.source[h]] if v.target[h] == p else {}
            if lhs != expect:
                bad.append(f"out-average identity fails at (h={h}, P={p})")
            rhs = _algebra_mult(v, s.lam_tilde_p[p], hv)
            expect = s.lam_tilde_p[v.target[h]] if v.source[h] == p else {}
            if rhs != expect:
                bad.append(f"in-average identity fails at (h={h}, P={p})")
        id_s = {v.identity[v.source[h]]: Fraction(1)}
        id_e = {v.identity[v.target[h]]: Fraction(1)}
        if _algebra_mult(v, hv, s.lam) != _algebra_mult(v, id_s, s.lam):
            bad.append(f"left absorption fails at {h}")
        if _algebra_mult(v, s.lam, hv) != _algebra_mult(v, s.lam, id_e):
            bad.append(f"right absorption fails at {h}")
        if _algebra_mult(v, s.lam, s.lam) != s.lam:
            bad.append("Lambda is not idempotent")
    return ValidationReport(tuple(bad))


# -- morphism checks ---------------------------------------------------------

def is_dbimodule_morphism(m: DBimodule, n: DBimodule, blocks: dict,
                          atol: float = ATOL) -> bool:
    cat, d = m.cat, m.cat.d
    for alpha in m.dims:
        if alpha not in blocks:
            return False
        f = blocks[alpha]
        for g in cat.v_to(d.source[alpha]):
            ga = d.compose(g, alpha)
            if np.linalg.norm(n.lact(g, alpha) @ f
                              - blocks[ga] @ m.lact(g, alpha)) > atol:
                return False
        for h in cat.v_from(d.target[alpha]):
            ah = d.compose(alpha, h)
            if np.linalg.norm(n.ract(alpha, h) @ f
                              - blocks[ah] @ m.ract(alpha, h)) > atol:
                return False
    return True


def is_graded_morphism(m: HGradedModule, n: HGradedModule, blocks: dict,
                       atol: float = ATOL) -> bool:
    mp = m.w.boxes.mp
    for x in m.dims:
        f = blocks[x]
        for g in mp.v.arrows_from(mp.h.target[x]):
            xg = mp.right(x, g)
            if np.linalg.norm(n.action(x, g) @ f
                              - blocks[xg] @ m.action(x, g)) > atol:
                return False
    return True


def _blocks_identity(m_dims_a, m_dims_b, blocks, atol=ATOL) -> bool:
    if set(m_dims_a) != set(m_dims_b):
        return False
    for key, f in blocks.items():
        d = m_dims_a[key]
        if f.shape != (d, d) or np.linalg.norm(f - np.eye(d)) > atol:
            return False
    return True


def compose_blocks(outer: dict, inner: dict) -> dict:
    return {k: outer[k] @ inner[k] for k in inner}


# -- spread (Phi) / compress (Psi) -------------------------------------------

class DiagonalContext:
    """Box algebra + diagonal groupoid + induced two-sided category."""

    def __init__(self, w: WeakHopfAlgebra, diag: Diagonal, cat: BimoduleCategory):
        self.w = w
        self.diag = diag
        self.cat = cat
        self.mp = w.boxes.mp
        self.sym = symmetrizer(self.mp.v)

    def ve(self, g: int) -> int:
        return self.diag.v_embed[g]


def phi_module(ctx: DiagonalContext, m: HGradedModule) -> DBimodule:
    """Spread: component (h, x) carries a copy of M_x; left translation moves
    h freely, right translation acts through the module action (no phases)."""
    diag, mp = ctx.diag, ctx.mp
    dims, left, right = {}, {}, {}
    for i, (g0, x) in enumerate(diag.pairs):
        if x in m.dims:
            dims[i] = m.dims[x]
    for i in dims:
        g0, x = diag.pairs[i]
        for g in mp.v.arrows():
            if mp.v.target[g] == mp.v.source[g0]:
                left[(ctx.ve(g), i)] = np.eye(m.dims[x])
        for g in mp.v.arrows():
            if mp.v.source[g] == mp.h.target[x]:
                right[(i, ctx.ve(g))] = m.action(x, g)
    return DBimodule(ctx.cat, dims, left, right)


@dataclass
class PsiData:
    module: HGradedModule
    x_comps: dict        # x -> ordered diagonal components (h, x)
    x_offsets: dict      # x -> {component: offset}
    x_total: dict        # x -> total stacked dimension
    basis: dict          # x -> orthonormal basis of the averaged subspace
    projector: dict      # x -> averaging projector on the stacked space


def psi_module(ctx: DiagonalContext, m: DBimodule) -> PsiData:
    """Compress: the averaged subspace with grading by the horizontal part."""
    diag, mp = ctx.diag, ctx.mp
    by_x: dict = {}
    for i in sorted(m.dims):
        g0, x = diag.pairs[i]
        by_x.setdefault(x, []).append(i)
    x_comps, x_offsets, x_total, basis, projector = {}, {}, {}, {}, {}
    dims, act = {}, {}
    for x, comps in by_x.items():
        offsets, off = {}, 0
        for i in comps:
            offsets[i] = off
            off += m.dims[i]
        x_comps[x], x_offsets[x], x_total[x] = comps, offsets, off
        proj = np.zeros((off, off), dtype=complex)
        for g in mp.v.arrows():
            coeff = 1.0 / ctx.sym.theta[mp.v.source[g]]
            for i in comps:
                g0, _ = diag.pairs[i]
                if mp.v.target[g] != mp.v.source[g0]:
                    continue
                tgt = diag.index[(mp.v.compose(g, g0), x)]
                blk = m.lact(ctx.ve(g), i)
                proj[offsets[tgt]:offsets[tgt] + blk.shape[0],
                     offsets[i]:offsets[i] + blk.shape[1]] += coeff * blk
        projector[x] = proj
        if np.linalg.norm(proj @ proj - proj) > 1e-7 * max(1.0, off):
            raise DecompositionFailedError("averaging operator not idempotent")
        u, s, _ = np.linalg.svd(proj)
        rank = int((s > 1e-7 * max(1.0, s[0] if len(s) else 1.0)).sum())
        basis[x] = u[:, :rank]
        if rank:
            dims[x] = rank
    for x in dims:
        for g in mp.v.arrows_from(mp.h.target[x]):
            xg = mp.right(x, g)
            big = np.zeros((x_total[xg], x_total[x]), dtype=complex)
            for i in x_comps[x]:
                g0, _ = diag.pairs[i]
                tgt = diag.index[(mp.v.compose(g0, mp.left(x, g)), xg)]
                blk = m.ract(i, ctx.ve(g))
                big[x_offsets[xg][tgt]:x_offsets[xg][tgt] + blk.shape[0],
                    x_offsets[x][i]:x_offsets[x][i] + blk.shape[1]] += blk
            mat = basis[xg].conj().T @ big @ basis[x]
            resid = np.linalg.norm(big @ basis[x] - basis[xg] @ mat)
            if resid > 1e-7 * max(1.0, np.linalg.norm(mat)):
                raise DecompositionFailedError("averaged space not stable")
            act[(x, g)] = mat
    return PsiData(HGradedModule(ctx.w, dims, act), x_comps, x_offsets,
                   x_total, basis, projector)


def averaged_equals_fixed_space(ctx: DiagonalContext, m: DBimodule,
                                psi: PsiData | None = None) -> bool:
    """The averaging image equals the space on which every left translation
    acts like its source identity, block by block."""
    if psi is None:
        psi = psi_module(ctx, m)
    mp, diag = ctx.mp, ctx.diag
    for x, comps in psi.x_comps.items():
        total = psi.x_total[x]
        rows = []
        for g in mp.v.arrows():
            op = np.zeros((total, total), dtype=complex)
            for i in comps:
                g0, _ = diag.pairs[i]
                if mp.v.target[g] != mp.v.source[g0]:
                    continue
                tgt = diag.index[(mp.v.compose(g, g0), x)]
                blk = m.lact(ctx.ve(g), i)
                o_t, o_i = psi.x_offsets[x][tgt], psi.x_offsets[x][i]
                op[o_t:o_t + blk.shape[0], o_i:o_i + blk.shape[1]] += blk
            e = mp.v.identity[mp.v.source[g]]
            idop = np.zeros((total, total), dtype=complex)
            for i in comps:
                g0, _ = diag.pairs[i]
                if mp.v.target[e] != mp.v.source[g0]:
                    continue
                blk = m.lact(ctx.ve(e), i)
                o_i = psi.x_offsets[x][i]
                idop[o_i:o_i + blk.shape[0], o_i:o_i + blk.shape[1]] += blk
            rows.append(op - idop)
        stack = np.concatenate(rows, axis=0)
        s = np.linalg.svd(stack, compute_uv=False)
        null_dim = int((s < 1e-7).sum()) + max(0, total - len(s))
        if null_dim != psi.module.dims.get(x, 0):
            return False
        # the averaged image lies inside the fixed space
        if np.linalg.norm(stack @ psi.basis[x]) > 1e-7 * max(1, total):
            return False
    return True


def gamma_maps(ctx: DiagonalContext, m: DBimodule,
               psi: PsiData) -> tuple[dict, dict]:
    """The unit maps gamma: M -> spread(compress(M)) and its stated inverse."""
    diag, mp = ctx.diag, ctx.mp
    gamma, gamma_bar = {}, {}
    for i in sorted(m.dims):
        g0, x = diag.pairs[i]
        off = psi.x_offsets[x][i]
        cols = psi.projector[x][:, off:off + m.dims[i]]
        gamma[i] = psi.basis[x].conj().T @ cols
        # inverse: theta * (g0 acting on the identity-slot component)
        p = mp.h.source[x]
        id_comp = diag.index[(mp.v.identity[p], x)]
        sl = psi.x_offsets[x][id_comp]
        rows = psi.basis[x][sl:sl + m.dims[id_comp], :]
        theta = ctx.sym.theta[p]
        gamma_bar[i] = theta * (m.lact(ctx.ve(g0), id_comp) @ rows)
    return gamma, gamma_bar


def phi_unit_map(ctx: DiagonalContext, w_mod: HGradedModule,
                 psi: PsiData) -> dict:
    """The unit map W -> compress(spread(W)) (averaged diagonal embedding)."""
    mp = ctx.mp
    blocks = {}
    for x in w_mod.dims:
        p = mp.h.source[x]
        theta = ctx.sym.theta[p]
        total = psi.x_total[x]
        vec = np.zeros((total, w_mod.dims[x]), dtype=complex)
        for i in psi.x_comps[x]:
            g0, _ = ctx.diag.pairs[i]
            vec[psi.x_offsets[x][i]:psi.x_offsets[x][i] + w_mod.dims[x], :] = \
                np.eye(w_mod.dims[x]) / theta
        blocks[x] = psi.basis[x].conj().T @ vec
    return blocks


# -- the tensor-structure maps of spread --------------------------------------

def xi_maps(ctx: DiagonalContext, w1: HGradedModule, w2: HGradedModule,
            tensor_layout) -> tuple[dict, dict, TensorModel]:
    """xi: spread(W1 (x) W2) -> spread(W1) (x)bar spread(W2), and its inverse.

    xi sends g (x) (w (x) u) to (g (x) w) (x)bar (id (x) u); the inverse sends
    a representative (h (x) z) (x)bar (f (x) u) to h(x |> f) (x) (z <- f) (x) u.
    tensor_layout is the GradedTensor of (W1, W2).
    """
    diag, mp = ctx.diag, ctx.mp
    prod = tensor_layout.module
    src = phi_module(ctx, prod)
    model = TensorModel(phi_module(ctx, w1), phi_module(ctx, w2))
    xi: dict = {}
    for i in sorted(src.dims):
        g, z = diag.pairs[i]
        mat = np.zeros((model.dims[i], src.dims[i]), dtype=complex)
        for (x, y) in tensor_layout.blocks[z]:
            alpha = diag.index[(g, x)]
            beta = diag.h_embed[y]
            gam, emb = model.embed_matrix((alpha, beta))
            if gam != i:
                raise DecompositionFailedError("xi degree mismatch")
            c0 = tensor_layout.offsets[z][(x, y)]
            mat[:, c0:c0 + emb.shape[1]] += emb
        xi[i] = mat
    xi_bar: dict = {}
    for i in sorted(src.dims):
        g, z = diag.pairs[i]
        mat = np.zeros((src.dims[i], model.dims[i]), dtype=complex)
        for p in model.comp_members.get(i, []):
            alpha, beta = p
            _, x = diag.pairs[alpha]
            f_arrow, y = diag.pairs[beta]
            x2 = mp.right(x, f_arrow)
            blk = np.kron(w1.action(x, f_arrow), np.eye(w2.dims[y]))
            c0 = model.offsets[p]
            r0 = tensor_layout.offsets[z][(x2, y)]
            mat[r0:r0 + blk.shape[0], c0:c0 + blk.shape[1]] += blk
        xi_bar[i] = mat
    return xi, xi_bar, model


# -- restrict / induce along a transversal ------------------------------------

@dataclass
class VertexContext:
    parent_cat: BimoduleCategory
    hat_cat: BimoduleCategory
    vertex: VertexGroup
    tau: Transversal

    def conj_arrow(self, a: int) -> int:
        """tau_P a tau_Q^{-1} as a local vertex-group arrow id."""
        d = self.parent_cat.d
        loop = d.compose_many(self.tau.arrows[d.source[a]], a,
                              d.inverse[self.tau.arrows[d.target[a]]])
        return self.vertex.from_parent[loop]


def restrict_module(ctx: VertexContext, m: DBimodule) -> DBimodule:
    """Keep only the vertex-group components with their vertex translations."""
    dims, left, right = {}, {}, {}
    for z_local, z in enumerate(ctx.vertex.to_parent):
        if z in m.dims:
            dims[z_local] = m.dims[z]
    for z_local in dims:
        z = ctx.vertex.to_parent[z_local]
        for g_local in ctx.hat_cat.v_arrows:
            g = ctx.vertex.to_parent[g_local]
            left[(g_local, z_local)] = m.lact(g, z)
            right[(z_local, g_local)] = m.ract(z, g)
    return DBimodule(ctx.hat_cat, dims, left, right)


def induce_module(ctx: VertexContext, w_mod: DBimodule) -> DBimodule:
    """Spread a vertex-group module over the whole carrier via the transversal."""
    d = ctx.parent_cat.d
    dims, left, right = {}, {}, {}
    for a in d.arrows():
        z_local = ctx.conj_arrow(a)
        if z_local in w_mod.dims:
            dims[a] = w_mod.dims[z_local]
    for a in dims:
        z_local = ctx.conj_arrow(a)
        for g in ctx.parent_cat.v_to(d.source[a]):
            left[(g, a)] = w_mod.lact(ctx.conj_arrow(g), z_local)
        for h in ctx.parent_cat.v_from(d.target[a]):
            right[(a, h)] = w_mod.ract(z_local, ctx.conj_arrow(h))
    return DBimodule(ctx.parent_cat, dims, left, right)


def induce_restrict_unit(ctx: VertexContext, m: DBimodule) -> dict:
    """The iso induce(restrict(M)) -> M, alpha |-> (tau_P^-1 -> .) <- tau_Q."""
    d = ctx.parent_cat.d
    blocks = {}
    for a in m.dims:
        p, q = d.source[a], d.target[a]
        tp, tq = ctx.tau.arrows[p], ctx.tau.arrows[q]
        z = d.compose_many(tp, a, d.inverse[tq])
        step1 = m.lact(d.inverse[tp], z)
        step2 = m.ract(d.compose(d.inverse[tp], z), tq)
        blocks[a] = step2 @ step1
    return blocks


def reassociate_blocks(w1: HGradedModule, w2: HGradedModule,
                       w3: HGradedModule, inner_l, outer_l, inner_r,
                       outer_r) -> dict:
    """Layout change ((W1 W2) W3) -> (W1 (W2 W3)), per component.

    Kronecker coordinates are strictly associative; only block orderings
    differ.  inner/outer are the GradedTensor layouts of both bracketings.
    """
    h = w1.w.boxes.mp.h
    blocks = {}
    for z, pairs in outer_l.blocks.items():
        mat = np.zeros((outer_r.module.dims[z], outer_l.module.dims[z]))
        for (xy, c) in pairs:
            d3 = w3.dims[c]
            for (x, y) in inner_l.blocks[xy]:
                d1, d2 = w1.dims[x], w2.dims[y]
                yc = h.compose(y, c)
                col0 = (outer_l.offsets[z][(xy, c)]
                        + inner_l.offsets[xy][(x, y)] * d3)
                row_base = outer_r.offsets[z][(x, yc)]
                o23 = inner_r.offsets[yc][(y, c)]
                d23 = inner_r.module.dims[yc]
                # a fixed W1-index i1 contributes a contiguous d2*d3 run
                for i1 in range(d1):
                    r0 = row_base + i1 * d23 + o23
                    c0 = col0 + i1 * d2 * d3
                    mat[r0:r0 + d2 * d3, c0:c0 + d2 * d3] = np.eye(d2 * d3)
        blocks[z] = mat
    return blocks


def tensor_morphism(model_src: TensorModel, model_dst: TensorModel,
                    f_blocks: dict, side: str) -> dict:
    """The map f (x)bar id (side='left') or id (x)bar f (side='right')."""
    out = {}
    for gam, members in model_src.comp_members.items():
        mat = np.zeros((model_dst.dims[gam], model_src.dims[gam]), dtype=complex)
        for p in members:
            alpha, beta = p
            if side == "left":
                op = np.kron(f_blocks[alpha], np.eye(model_src.m2.dims[beta]))
            else:
                op = np.kron(np.eye(model_src.m1.dims[alpha]), f_blocks[beta])
            gam2, emb = model_dst.embed_matrix(p)
            if gam2 != gam:
                raise DecompositionFailedError("tensor morphism degree mismatch")
            piece = emb @ op
            c0 = model_src.offsets[p]
            mat[:, c0:c0 + piece.shape[1]] += piece
        out[gam] = mat
    return out


def bimodule_associator(model_ab: TensorModel, model_ab_c: TensorModel,
                        model_bc: TensorModel,
                        model_a_bc: TensorModel) -> dict:
    """(A (x)bar B) (x)bar C -> A (x)bar (B (x)bar C), per component."""
    cat = model_ab.cat
    a_mod, b_mod = model_ab.m1, model_ab.m2
    c_mod = model_ab_c.m2
    out = {}
    for gam, members in model_ab_c.comp_members.items():
        mat = np.zeros((model_a_bc.dims[gam], model_ab_c.dims[gam]),
                       dtype=complex)
        for (t1comp, c) in members:
            dc = c_mod.dims[c]
            for (alpha, beta) in model_ab.comp_members[t1comp]:
                da, db = a_mod.dims[alpha], b_mod.dims[beta]
                phase = cat.omega_val(alpha, beta, c).to_complex()
                delta, e2 = model_bc.embed_matrix((beta, c))
                gam2, e1 = model_a_bc.embed_matrix((alpha, delta))
                if gam2 != gam:
                    raise DecompositionFailedError("associator degree mismatch")
                block = phase * (e1 @ np.kron(np.eye(da), e2))
                col0 = (model_ab_c.offsets[(t1comp, c)]
                        + model_ab.offsets[(alpha, beta)] * dc)
                mat[:, col0:col0 + da * db * dc] += block
        out[gam] = mat
    return out


def phi_morphism(ctx: DiagonalContext, f_blocks: dict, src: DBimodule) -> dict:
    """Per-component spread of a graded-module morphism (keyed by H-part)."""
    diag = ctx.diag
    return {i: f_blocks[diag.pairs[i][1]] for i in src.dims}


def hexagon_check(ctx: DiagonalContext, u: HGradedModule, v: HGradedModule,
                  w: HGradedModule, atol: float = 1e-8) -> bool:
    """Compatibility of xi with the two bracketings of a triple product."""
    from .graded_modules import GradedTensor
    t_uv = GradedTensor(u, v)
    t_uv_w = GradedTensor(t_uv.module, w)
    t_vw = GradedTensor(v, w)
    t_u_vw = GradedTensor(u, t_vw.module)
    xi_uv, _, model_uv = xi_maps(ctx, u, v, t_uv)
    xi_outer, _, model_uvw = xi_maps(ctx, t_uv.module, w, t_uv_w)
    xi_vw, _, model_vw = xi_maps(ctx, v, w, t_vw)
    xi_right, _, model_u_vw = xi_maps(ctx, u, t_vw.module, t_u_vw)
    phi_w_mod = phi_module(ctx, w)
    phi_u_mod = phi_module(ctx, u)
    model_uv_then_w = TensorModel(model_uv.module, phi_w_mod)
    model_u_then_vw = TensorModel(phi_u_mod, model_vw.module)
    # LHS: assoc . (xi_uv (x) id) . xi_outer
    tm = tensor_morphism(model_uvw, model_uv_then_w, xi_uv, side="left")
    assoc = bimodule_associator(model_uv, model_uv_then_w, model_vw,
                                model_u_then_vw)
    src = phi_module(ctx, t_uv_w.module)
    lhs = {i: assoc[i] @ tm[i] @ xi_outer[i] for i in src.dims}
    # RHS: (id (x) xi_vw) . xi_right . spread(reassociation)
    ra = reassociate_blocks(u, v, w, t_uv, t_uv_w, t_vw, t_u_vw)
    ra_spread = phi_morphism(ctx, ra, src)
    tm2 = tensor_morphism(model_u_vw, model_u_then_vw, xi_vw, side="right")
    rhs = {i: tm2[i] @ xi_right[i] @ ra_spread[i] for i in src.dims}
    for i in src.dims:
        if np.linalg.norm(lhs[i] - rhs[i]) > atol * max(1.0, np.linalg.norm(rhs[i])):
            return False
    return True
