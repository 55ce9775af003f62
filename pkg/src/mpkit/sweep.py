"""Sweep orchestration: the axiom suite over every exact factorization of the
ambient catalog with all compatible mu_2 pairs, and the fusion-certification
suite over the acceptance list.

The valid mu_2 pairs form an F2 group and every checked identity is a
pair-independent combinatorial bijection plus an F2-linear phase identity, so
verifying a basis of the group (plus the trivial pair and random subset sums)
certifies every pair exactly; small groups are enumerated outright.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import groups
from .cohomology import (OpextPairSpace, kac_cocycle, kac_property_report)
from .fixtures import ex_gpd6
from .fusion_rings import fusion_ring_isomorphic
from .graded_modules import fusion_ring_rep, rep_fusion_data
from .groupoids import FiniteGroupoid, from_group_table, pair_groupoid
from .matched_pairs import (BoxSystem, Diagonal, diagonal_groupoid,
                            enumerate_exact_factorizations,
                            from_exact_factorization)
from .reduction import certify_equivalence, reduce_to_group_data
from .weak_hopf import (build_weak_hopf, counital_subalgebras,
                        verify_weak_hopf_axioms)

PAIR_CAP = 32          # enumerate the whole pair group up to this size
DEFAULT_SEED = 20259
CHUNK = 20             # factorizations per pool task


def axiom_ambients(max_order: int = 16):
    """Criterion-1 catalog: groups up to max_order, small pair groupoids, and
    the two-object rank-2 example."""
    out = [(name, from_group_table(tbl))
           for name, tbl in groups.group_catalog(max_order)]
    out.append(("Pair2", pair_groupoid(2)))
    out.append(("Pair3", pair_groupoid(3)))
    out.append(("GPD6", ex_gpd6().ambient))
    return out


def fusion_ambients():
    """The acceptance sweep list for the fusion certification."""
    keep = {"C2xC2", "S3", "C6"}
    out = [(name, from_group_table(tbl))
           for name, tbl in groups.group_catalog(6) if name in keep]
    out.append(("Pair2", pair_groupoid(2)))
    out.append(("Pair3", pair_groupoid(3)))
    out.append(("GPD6", ex_gpd6().ambient))
    return out


class GroupKacChecker:
    """Vectorized exact mu_2 checks of the induced 3-cocycle for one-object
    carriers: builds the full value table by index gathers and verifies the
    cocycle law plus the structural identities with integer arithmetic."""

    def __init__(self, boxes: BoxSystem, diag: Diagonal):
        mp = boxes.mp
        dg = diag.groupoid
        n = dg.n_arrows
        self.n = n
        self.nb = boxes.n_boxes
        vpart = np.array([diag.pairs[i][0] for i in range(n)])
        hpart = np.array([diag.pairs[i][1] for i in range(n)])
        nh, nv = mp.h.n_arrows, mp.v.n_arrows
        fill = np.full((nh, nv), -1, dtype=np.int64)
        for b, (x, g) in enumerate(boxes.pairs):
            fill[x, g] = b
        act_l = np.full((nh, nv), -1, dtype=np.int64)
        act_r = np.full((nh, nv), -1, dtype=np.int64)
        for (x, g), res in mp.act_left.items():
            act_l[x, g] = res
        for (x, g), res in mp.act_right.items():
            act_r[x, g] = res
        # triple index tables over the n^3 grid
        a = np.arange(n)
        x = hpart[a][:, None, None] + np.zeros((1, n, n), dtype=np.int64)
        h = vpart[a][None, :, None] + np.zeros((n, 1, n), dtype=np.int64)
        y = hpart[a][None, :, None] + np.zeros((n, 1, n), dtype=np.int64)
        f = vpart[a][None, None, :] + np.zeros((n, n, 1), dtype=np.int64)
        xh = act_r[x, h]
        yf = act_l[y, f]
        self.b3 = fill[x, h].ravel()
        self.b1 = fill[xh, yf].ravel()
        self.b2 = fill[y, f].ravel()
        # composition table and quadruple gather indices
        comp = np.zeros((n, n), dtype=np.int64)
        for (p, q), r in dg._compose.items():
            comp[p, q] = r
        self.comp = comp
        a4, b4, c4, d4 = np.meshgrid(a, a, a, a, indexing="ij")
        def tri(i, j, k):
            return ((i * n) + j) * n + k
        self.q_abc = tri(a4, b4, c4).ravel()
        self.q_a_bc_d = tri(a4, comp[b4, c4], d4).ravel()
        self.q_bcd = tri(b4, c4, d4).ravel()
        self.q_ab_c_d = tri(comp[a4, b4], c4, d4).ravel()
        self.q_ab_cd = tri(a4, b4, comp[c4, d4]).ravel()
        # identity-argument triples must vanish
        e = dg.identity[0]
        grid = np.stack(np.meshgrid(a, a, a, indexing="ij"), axis=-1).reshape(-1, 3)
        self.id_mask = (grid == e).any(axis=1)
        # the first argument in the vertical edge subgroupoid forces zero
        v_emb = np.zeros(n, dtype=bool)
        for i in diag.v_embed:
            v_emb[i] = True
        self.v_first_mask = v_emb[grid[:, 0]]
        # reduced-argument identity: (a,b,c) vs (red1[a], b, red3[c])
        red1 = np.array([diag.index[(mp.v.identity[0], diag.pairs[i][1])]
                         for i in range(n)])
        red3 = np.array([diag.index[(diag.pairs[i][0], mp.h.identity[0])]
                         for i in range(n)])
        self.q_red = tri(red1[grid[:, 0]], grid[:, 1], red3[grid[:, 2]]).ravel()
        # pure-sigma triples ((id,x),(h,id),(f,id))
        xs, hs, fs = np.meshgrid(np.arange(nh), np.arange(nv), np.arange(nv),
                                 indexing="ij")
        d1 = np.array([diag.index[(mp.v.identity[0], int(xx))]
                       for xx in xs.ravel()])
        d2 = np.array([diag.index[(int(hh), mp.h.identity[0])]
                       for hh in hs.ravel()])
        d3 = np.array([diag.index[(int(ff), mp.h.identity[0])]
                       for ff in fs.ravel()])
        self.k13_idx = tri(d1, d2, d3)
        self.k13_b3 = fill[xs.ravel(), hs.ravel()]
        self.k13_b1 = fill[act_r[xs.ravel(), hs.ravel()], fs.ravel()]

    def om_flat(self, sig_mat: np.ndarray, tau_mat: np.ndarray) -> np.ndarray:
        ts, ss = tau_mat.ravel(), sig_mat.ravel()
        return (ts[self.b1 * self.nb + self.b2]
                + ss[self.b3 * self.nb + self.b1]) % 2

    def check_pair(self, sig_mat, tau_mat) -> list[str]:
        om = self.om_flat(sig_mat, tau_mat)
        bad = []
        if om[self.id_mask].any():
            bad.append("induced cocycle not normalized")
        s = (om[self.q_abc] + om[self.q_a_bc_d] + om[self.q_bcd]
             + om[self.q_ab_c_d] + om[self.q_ab_cd]) % 2
        if s.any():
            bad.append("cocycle law fails")
        if om[self.v_first_mask].any():
            bad.append("vertical-first-argument identity fails")
        if ((om + om[self.q_red]) % 2).any():
            bad.append("reduced-argument identity fails")
        expect = sig_mat.ravel()[self.k13_b3 * self.nb + self.k13_b1] % 2
        if ((om[self.k13_idx] + expect) % 2).any():
            bad.append("pure-sigma identity fails")
        return bad


@dataclass
class AxiomRow:
    ambient: str
    v_size: int
    h_size: int
    n_boxes: int
    log2_pairs: int
    n_checked: int
    exhaustive: bool
    ok: bool
    failures: tuple = ()
    seconds: float = 0.0


def _sigma_tau_mats(space: OpextPairSpace, vec) -> tuple[np.ndarray, np.ndarray]:
    nb = space.boxes.n_boxes
    sig = np.zeros((nb, nb), dtype=np.int64)
    tau = np.zeros((nb, nb), dtype=np.int64)
    for i, (a, b) in enumerate(space.sigma_vars):
        sig[a, b] = int(vec[i]) % 2
    off = len(space.sigma_vars)
    for i, (a, b) in enumerate(space.tau_vars):
        tau[a, b] = int(vec[off + i]) % 2
    return sig, tau


def axiom_check_factorization(ambient_name: str, d: FiniteGroupoid,
                              v_arrows, h_arrows, pair_cap: int = PAIR_CAP,
                              samples: int = 1, seed: int = DEFAULT_SEED,
                              full_kac: bool | None = None) -> AxiomRow:
    """Verify the axiom suite on every pair of one factorization (via basis
    certification when the pair group is large)."""
    t0 = time.time()
    from .groupoids import WideSubgroupoid
    v = WideSubgroupoid(d, frozenset(v_arrows))
    h = WideSubgroupoid(d, frozenset(h_arrows))
    mp = from_exact_factorization(d, v, h)
    bx = BoxSystem(mp)
    diag = diagonal_groupoid(mp)
    space = OpextPairSpace(bx, n=2)
    rng = np.random.default_rng(seed)
    vecs = space.enumerate_vectors(cap=pair_cap)
    exhaustive = vecs is not None
    if vecs is None:
        vecs = [np.zeros(space.ncols, dtype=np.int64)]
        vecs += [np.asarray(b, dtype=np.int64) for b in space.basis]
        vecs += [space.random_vector(rng) for _ in range(samples)]
    checker = None
    if d.n_objects == 1:
        checker = GroupKacChecker(bx, diag)
    failures = []
    for vec in vecs:
        pair = space.pair_from_vector(vec)
        w = build_weak_hopf(bx, pair, validate=False)
        rep = verify_weak_hopf_axioms(w)
        if not rep.ok:
            failures.append(f"axioms: {rep.summary(3)}")
        _, _, crep = counital_subalgebras(w)
        if not crep.ok:
            failures.append(f"counital: {crep.summary(3)}")
        if checker is not None:
            sig, tau = _sigma_tau_mats(space, vec)
            failures += checker.check_pair(sig, tau)
            if not vec.any():
                if checker.om_flat(sig, tau).any():
                    failures.append("trivial pair gives nontrivial cocycle")
        else:
            om = kac_cocycle(bx, diag, pair, assume_valid=True)
            if not vec.any() and not om.is_zero:
                failures.append("trivial pair gives nontrivial cocycle")
            krep = kac_property_report(bx, diag, pair, om)
            if not krep.ok:
                failures.append(f"kac: {krep.summary(3)}")
        if failures:
            break
    return AxiomRow(ambient_name, len(v_arrows), len(h_arrows), bx.n_boxes,
                    space.log_size, len(vecs), exhaustive, not failures,
                    tuple(failures), time.time() - t0)


def _axiom_worker(args):
    name, d, fact_chunk, pair_cap, samples, seed = args
    rows = []
    for v_arrows, h_arrows in fact_chunk:
        rows.append(axiom_check_factorization(
            name, d, v_arrows, h_arrows, pair_cap=pair_cap, samples=samples,
            seed=seed))
    return rows


def run_axiom_sweep(max_order: int = 16, pair_cap: int = PAIR_CAP,
                    samples: int = 1, seed: int = DEFAULT_SEED,
                    threads: int | None = None) -> list[AxiomRow]:
    """Criterion-1 driver; deterministic row order regardless of scheduling."""
    if threads is None:
        threads = int(os.environ.get("MPKIT_THREADS", os.cpu_count() or 1))
    jobs = []
    for name, d in axiom_ambients(max_order):
        facts = [(tuple(sorted(v.arrows)), tuple(sorted(h.arrows)))
                 for v, h in enumerate_exact_factorizations(d)]
        for i in range(0, len(facts), CHUNK):
            jobs.append((name, d, facts[i:i + CHUNK], pair_cap, samples, seed))
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(_axiom_worker, jobs))
    else:
        chunks = [_axiom_worker(j) for j in jobs]
    rows = [row for chunk in chunks for row in chunk]
    rows.sort(key=lambda r: (r.ambient, r.v_size, r.h_size, r.n_boxes))
    return rows


# -- fusion sweep -------------------------------------------------------------

@dataclass
class FusionRow:
    ambient: str
    v_size: int
    h_size: int
    connected_v: bool
    n_classes: int
    class_index: int
    rep_rank: int
    rings_isomorphic: bool
    unit_simple: bool
    sum_squares_ok: bool
    translate_checked: bool
    seconds: float
    notes: dict = field(default_factory=dict)


def translation_class_reps(space: OpextPairSpace):
    """Coset representatives of the pair group modulo basis rescalings.

    Rescaling each box basis vector by a sign sends (sigma, tau) to
    (sigma + d_v b, tau + d_h b); such pairs give canonically isomorphic
    algebras, so fusion rings are computed once per coset.
    """
    bx = space.boxes
    vert, horiz = bx.vertical_groupoid(), bx.horizontal_groupoid()
    svars = {p: i for i, p in enumerate(space.sigma_vars)}
    tvars = {p: i + len(space.sigma_vars) for i, p in enumerate(space.tau_vars)}
    gens = []
    for beta in range(bx.n_boxes):
        if beta in bx.idv or beta in bx.idh:
            continue
        vec = np.zeros(space.ncols, dtype=np.int64)
        for g, index in ((vert, svars), (horiz, tvars)):
            for a in range(bx.n_boxes):
                for b in range(bx.n_boxes):
                    c = g.compose_or_none(a, b)
                    if c is None:
                        continue
                    col = index.get((a, b))
                    if col is None:
                        continue
                    coeff = (a == beta) + (b == beta) + (c == beta)
                    vec[col] = (vec[col] + coeff) % 2
        if vec.any():
            gens.append(vec)
    # reduce nullspace basis modulo the translation span
    from .zlinalg import gf2_row_reduce
    if gens:
        tr_ech, tr_piv = gf2_row_reduce(np.array(gens, dtype=np.uint8))
    else:
        tr_ech, tr_piv = np.zeros((0, space.ncols), dtype=np.uint8), []
    residues = []
    for b in space.basis:
        vec = np.array(b, dtype=np.uint8) % 2
        for r, pc in enumerate(tr_piv):
            if vec[pc]:
                vec ^= tr_ech[r]
        if vec.any():
            if residues:
                red = vec.copy()
                ech2, piv2 = gf2_row_reduce(np.array(residues, dtype=np.uint8))
                for r, pc in enumerate(piv2):
                    if red[pc]:
                        red ^= ech2[r]
                if not red.any():
                    continue
            residues.append(vec)
    reps = [np.zeros(space.ncols, dtype=np.int64)]
    for take in range(1, 2 ** len(residues)):
        acc = np.zeros(space.ncols, dtype=np.int64)
        for i, res in enumerate(residues):
            if take >> i & 1:
                acc = (acc + res) % 2
        reps.append(acc)
    return reps, [np.asarray(g, dtype=np.int64) for g in gens]


def _fusion_worker(args):
    name, d, v_arrows, h_arrows, seed = args
    from .groupoids import WideSubgroupoid
    rows = []
    t0 = time.time()
    v = WideSubgroupoid(d, frozenset(v_arrows))
    h = WideSubgroupoid(d, frozenset(h_arrows))
    mp = from_exact_factorization(d, v, h)
    bx = BoxSystem(mp)
    diag = diagonal_groupoid(mp)
    space = OpextPairSpace(bx, n=2)
    connected = v.is_connected()
    reps, trans_gens = translation_class_reps(space)
    rng = np.random.default_rng(seed)
    for ci, vec in enumerate(reps):
        t1 = time.time()
        pair = space.pair_from_vector(vec)
        w = build_weak_hopf(bx, pair, validate=False)
        rdata = rep_fusion_data(w, seed=seed)
        unit_simple = sorted(rdata.unit_multiplicities) == \
            [0] * (len(rdata.dec.blocks) - 1) + [1]
        sum_sq = sum(b.dim ** 2 for b in rdata.dec.blocks) == w.dim
        if not connected:
            rows.append(FusionRow(name, len(v_arrows), len(h_arrows), False,
                                  len(reps), ci, len(rdata.dec.blocks),
                                  True, unit_simple, sum_sq, False,
                                  time.time() - t1,
                                  {"skipped": "disconnected"}))
            continue
        cert = certify_equivalence(bx, diag, pair, seed=seed)
        translate_ok = True
        if trans_gens:
            # confirm a nontrivial basis-rescaling translate of this class
            shift = np.zeros(space.ncols, dtype=np.int64)
            for g in trans_gens:
                if rng.integers(2):
                    shift = (shift + g) % 2
            if not shift.any():
                shift = trans_gens[0]
            tvec = (vec + shift) % 2
            w2 = build_weak_hopf(bx, space.pair_from_vector(tvec),
                                 validate=False)
            ring2 = fusion_ring_rep(w2, seed=seed)
            translate_ok = fusion_ring_isomorphic(cert.rep_ring,
                                                  ring2) is not None
        rows.append(FusionRow(
            name, len(v_arrows), len(h_arrows), True, len(reps), ci,
            cert.rep_ring.rank, cert.notes["rings_isomorphic"], unit_simple,
            cert.sum_of_squares == cert.algebra_dim, translate_ok,
            time.time() - t1, {k: v for k, v in cert.notes.items()}))
    return rows


def run_fusion_sweep(seed: int = DEFAULT_SEED,
                     threads: int | None = None) -> list[FusionRow]:
    """Criterion-5/7/8 driver over the acceptance sweep list."""
    if threads is None:
        threads = int(os.environ.get("MPKIT_THREADS", os.cpu_count() or 1))
    jobs = []
    for name, d in fusion_ambients():
        for v, h in enumerate_exact_factorizations(d):
            jobs.append((name, d, tuple(sorted(v.arrows)),
                         tuple(sorted(h.arrows)), seed))
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(_fusion_worker, jobs))
    else:
        chunks = [_fusion_worker(j) for j in jobs]
    rows = [row for chunk in chunks for row in chunk]
    rows.sort(key=lambda r: (r.ambient, r.v_size, r.h_size, r.class_index))
    return rows


def axiom_rows_tsv(rows) -> str:
    lines = ["# ambient\t|V|\t|H|\tboxes\tlog2_pairs\tchecked\texhaustive\tstatus"]
    for r in rows:
        lines.append(f"{r.ambient}\t{r.v_size}\t{r.h_size}\t{r.n_boxes}"
                     f"\t{r.log2_pairs}\t{r.n_checked}"
                     f"\t{int(r.exhaustive)}\t{'PASS' if r.ok else 'FAIL'}")
    return "\n".join(lines) + "\n"


def fusion_rows_tsv(rows) -> str:
    lines = ["# ambient\t|V|\t|H|\tconnected\tclass\trank\tstatus"]
    for r in rows:
        ok = (r.rings_isomorphic and r.sum_squares_ok and r.translate_checked
              if r.connected_v else r.sum_squares_ok)
        status = "PASS" if ok else "FAIL"
        lines.append(f"{r.ambient}\t{r.v_size}\t{r.h_size}"
                     f"\t{int(r.connected_v)}\t{r.class_index}/{r.n_classes}"
                     f"\t{r.rep_rank}\t{status}")
    return "\n".join(lines) + "\n"