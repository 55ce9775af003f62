"""The reduction pipeline: from a matched pair and a compatible cocycle pair
to one-object (group) data whose two-sided module category has the same
fusion ring, with every intermediate cocycle certified.

Pipeline: induced 3-cocycle on the diagonal groupoid -> vertex restriction ->
transversal transport -> coboundary solve -> restriction to the vertical
vertex group -> trivialization on the subgroup.  Each arrow of the pipeline
re-verifies its defining identity exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .bimodules import BimoduleCategory, bimodule_fusion_data, fusion_ring_bimodule
from .cohomology import (Cochain, OpextPair, coboundary, is_cocycle,
                         kac_cocycle, pullback_cochain, solve_coboundary,
                         transport_cochain, trivialize_subgroup_cocycle)
from .errors import NotConnectedError
from .fusion_rings import FusionRing, fusion_ring_isomorphic
from .graded_modules import fusion_ring_rep, rep_fusion_data
from .groupoids import (Transversal, VertexGroup, WideSubgroupoid,
                        choose_transversal, vertex_group)
from .matched_pairs import BoxSystem, Diagonal, diagonal_groupoid
from .weak_hopf import build_weak_hopf


@dataclass
class ReductionData:
    """Everything produced along the reduction, plus verification notes."""

    boxes: BoxSystem
    diag: Diagonal
    pair: OpextPair
    omega: Cochain                 # induced 3-cocycle on the diagonal groupoid
    v_embedded: tuple              # V inside the diagonal groupoid
    diag_cat: BimoduleCategory     # (D, omega, V)
    vertex: VertexGroup            # D(O)
    tau: Transversal
    omega_hat: Cochain             # on D(O)
    omega_tilde: Cochain           # transported back over D
    psi_d: Cochain                 # 2-cochain with d(psi_d) = omega_tilde - omega
    v_hat_local: tuple             # V(O) as arrows of D(O)
    psi_hat: dict                  # 2-cocycle on V(O) (local pairs)
    omega_bar: Cochain             # on D(O), trivial on V(O)^3
    eta: Cochain                   # omega_bar = omega_hat + d(eta)
    tilde_cat: BimoduleCategory    # (D, omega_tilde, V, psi_tilde)
    hat_cat: BimoduleCategory      # (D(O), omega_hat, V(O), psi_hat)
    group_cat: BimoduleCategory    # (D(O), omega_bar, V(O))
    chi: Cochain                   # 1-cochain with psi_tilde = psi|_V + d(chi)
    notes: dict = field(default_factory=dict)


def reduce_to_group_data(boxes: BoxSystem, diag: Diagonal, pair: OpextPair,
                         basepoint: int = 0, transversal_variant: int = 0,
                         coboundary_variant: int = 0) -> ReductionData:
    mp = boxes.mp
    dg = diag.groupoid
    omega = kac_cocycle(boxes, diag, pair)
    v_embedded = tuple(sorted(diag.v_embed))
    v_sub = WideSubgroupoid(dg, frozenset(v_embedded))
    if not v_sub.is_connected():
        raise NotConnectedError("the vertical subgroupoid is disconnected")
    notes = {"omega_is_cocycle": is_cocycle(omega)}

    vertex = vertex_group(dg, basepoint)
    omega_hat = pullback_cochain(omega, vertex.group, vertex.to_parent)
    notes["omega_hat_is_cocycle"] = is_cocycle(omega_hat)
    tau = choose_transversal(v_sub, basepoint, variant=transversal_variant)
    omega_tilde = transport_cochain(omega_hat, vertex, tau)
    notes["omega_tilde_is_cocycle"] = is_cocycle(omega_tilde)
    notes["omega_tilde_restricts_back"] = (
        pullback_cochain(omega_tilde, vertex.group, vertex.to_parent)
        == omega_hat)
    psi_d = solve_coboundary(omega_tilde, omega, variant=coboundary_variant)

    # restriction of psi_d to V is a 2-cocycle; to V(O) it is the group datum
    v_set = frozenset(v_embedded)
    psi_v = {k: v for k, v in psi_d.data.items()
             if k[0] in v_set and k[1] in v_set}
    v_hat_local = tuple(sorted(
        loc for loc, parent in enumerate(vertex.to_parent) if parent in v_set))
    psi_hat = {}
    for (a, b), val in psi_v.items():
        la, lb = vertex.from_parent.get(a), vertex.from_parent.get(b)
        if la is not None and lb is not None:
            psi_hat[(la, lb)] = val

    # trivialize on the subgroup: eta extends -psi_hat by zero
    v_hat_sub = WideSubgroupoid(vertex.group, frozenset(v_hat_local))
    sub, sub_to_parent, sub_index = v_hat_sub.restrict()
    psi_hat_sub = Cochain(sub, 2, {(sub_index[a], sub_index[b]): val
                                   for (a, b), val in psi_hat.items()})
    notes["psi_hat_is_cocycle"] = is_cocycle(psi_hat_sub)
    omega_bar, eta = trivialize_subgroup_cocycle(omega_hat, v_hat_sub,
                                                 psi_hat_sub)
    notes["omega_bar_is_cocycle"] = is_cocycle(omega_bar)

    # transported psi over V, with the connecting 1-cochain as certificate
    vg_std, vmap, vidx = v_sub.restrict()
    vertex_v = vertex_group(vg_std, basepoint)
    tau_local = Transversal(basepoint,
                            tuple(vidx[a] for a in tau.arrows))
    vv_data = {}
    for a in vertex_v.group.arrows():
        for b in vertex_v.group.arrows():
            if vertex_v.group.target[a] != vertex_v.group.source[b]:
                continue
            key = (vmap[vertex_v.to_parent[a]], vmap[vertex_v.to_parent[b]])
            val = psi_v.get(key)
            if val is not None:
                vv_data[(a, b)] = val
    psi_hat_on_vvertex = Cochain(vertex_v.group, 2, vv_data)
    psi_tilde_vg = transport_cochain(psi_hat_on_vvertex, vertex_v, tau_local)
    psi_v_vg = Cochain(vg_std, 2, {(vidx[a], vidx[b]): val
                                   for (a, b), val in psi_v.items()})
    notes["psi_v_is_cocycle"] = is_cocycle(psi_v_vg)
    chi = solve_coboundary(psi_tilde_vg, psi_v_vg)
    psi_tilde = {(vmap[a], vmap[b]): val
                 for (a, b), val in psi_tilde_vg.data.items()}

    diag_cat = BimoduleCategory(dg, v_embedded, omega)
    tilde_cat = BimoduleCategory(dg, v_embedded, omega_tilde, psi_tilde)
    hat_cat = BimoduleCategory(vertex.group, v_hat_local, omega_hat, psi_hat)
    group_cat = BimoduleCategory(vertex.group, v_hat_local, omega_bar)
    return ReductionData(boxes, diag, pair, omega, v_embedded, diag_cat,
                         vertex, tau, omega_hat, omega_tilde, psi_d,
                         v_hat_local, psi_hat, omega_bar, eta, tilde_cat,
                         hat_cat, group_cat, chi, notes)


@dataclass
class EquivalenceCertificate:
    rep_ring: FusionRing
    bimodule_ring: FusionRing
    group_ring: FusionRing
    rep_to_bimodule: dict
    bimodule_to_group: dict
    rep_to_group: dict
    sum_of_squares: int
    algebra_dim: int
    seed: int
    notes: dict


def certify_equivalence(boxes: BoxSystem, diag: Diagonal, pair: OpextPair,
                        seed: int = 20259, basepoint: int = 0,
                        transversal_variant: int = 0,
                        coboundary_variant: int = 0,
                        reduction: ReductionData | None = None) -> EquivalenceCertificate:
    """Compute the three fusion rings independently and match them."""
    w = build_weak_hopf(boxes, pair)
    rep_data = rep_fusion_data(w, seed=seed)
    rep_ring = fusion_ring_rep(w, data=rep_data)
    if reduction is None:
        reduction = reduce_to_group_data(
            boxes, diag, pair, basepoint=basepoint,
            transversal_variant=transversal_variant,
            coboundary_variant=coboundary_variant)
    bim_ring = fusion_ring_bimodule(reduction.diag_cat, seed=seed)
    grp_ring = fusion_ring_bimodule(reduction.group_cat, seed=seed)
    b1 = fusion_ring_isomorphic(rep_ring, bim_ring)
    b2 = fusion_ring_isomorphic(bim_ring, grp_ring)
    b3 = fusion_ring_isomorphic(rep_ring, grp_ring)
    notes = dict(reduction.notes)
    notes["rings_isomorphic"] = all(b is not None for b in (b1, b2, b3))
    return EquivalenceCertificate(
        rep_ring, bim_ring, grp_ring, b1, b2, b3,
        sum(b.dim ** 2 for b in rep_data.dec.blocks), w.dim, seed, notes)
