"""Numeric Wedderburn decomposition of small semisimple algebras.

Strategy: eigenprojections of a random central element split the regular
representation into matrix blocks; block ranks give simple dimensions,
projections applied to 1 give the central idempotents, and block traces give
the simple characters.  All integer outputs (dimensions, multiplicities) are
certified by rounding residuals; structural identities are rechecked.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DecompositionFailedError

RANK_TOL = 1e-9
INT_TOL = 1e-6


class StructureAlgebra:
    """An algebra with monomial structure constants e_i e_j = z e_k (or 0)."""

    def __init__(self, n: int, mult: dict, unit: dict):
        self.n = n
        self.mult = mult            # (i, j) -> (complex, k)
        self.unit = dict(unit)      # i -> complex
        self._left = None

    def opposite(self) -> "StructureAlgebra":
        return StructureAlgebra(
            self.n, {(j, i): zk for (i, j), zk in self.mult.items()}, self.unit)

    def left_matrices(self) -> np.ndarray:
        if self._left is None:
            mats = np.zeros((self.n, self.n, self.n), dtype=complex)
            for (i, j), (z, k) in self.mult.items():
                mats[i, k, j] = z
            self._left = mats
        return self._left

    def unit_vector(self) -> np.ndarray:
        vec = np.zeros(self.n, dtype=complex)
        for i, z in self.unit.items():
            vec[i] = z
        return vec

    def elem_matrix(self, coords: np.ndarray) -> np.ndarray:
        return np.tensordot(coords, self.left_matrices(), axes=(0, 0))


@dataclass
class Block:
    dim: int                      # simple module dimension d
    size: int                     # block size d^2 inside the algebra
    projector: np.ndarray         # n x n projection onto the block
    idempotent: np.ndarray        # coordinates of the central idempotent
    character: np.ndarray         # chi(e_i) for each basis element


@dataclass
class Decomposition:
    algebra: StructureAlgebra
    blocks: list


def _center_basis(alg: StructureAlgebra) -> np.ndarray:
    n = alg.n
    mats = alg.left_matrices()
    rows = []
    for i in range(n):
        li = mats[i]
        # commutator condition: for central x, L_i L_x = L_x L_i on basis j
        # as linear condition on coords of x: sum_j x_j (e_i e_j - e_j e_i) = 0
        block = np.zeros((n, n), dtype=complex)
        for j in range(n):
            m = alg.mult.get((i, j))
            if m is not None:
                block[m[1], j] += m[0]
            m = alg.mult.get((j, i))
            if m is not None:
                block[m[1], j] -= m[0]
        rows.append(block)
    stacked = np.concatenate(rows, axis=0)
    _, s, vh = np.linalg.svd(stacked)
    null_mask = np.concatenate([s, np.zeros(max(0, vh.shape[0] - len(s)))]) <= \
        RANK_TOL * max(1.0, s[0] if len(s) else 1.0)
    basis = vh[null_mask].conj()
    if basis.shape[0] == 0:
        raise DecompositionFailedError("empty center")
    return basis


def decompose(alg: StructureAlgebra, seed: int = 20259) -> Decomposition:
    rng = np.random.default_rng(seed)
    n = alg.n
    center = _center_basis(alg)
    coeffs = rng.normal(size=center.shape[0]) + 1j * rng.normal(size=center.shape[0])
    z = coeffs @ center
    lz = alg.elem_matrix(z)
    evals, evecs = np.linalg.eig(lz)
    order = np.lexsort((evals.imag.round(7), evals.real.round(7)))
    evals, evecs = evals[order], evecs[:, order]
    inv = np.linalg.inv(evecs)
    clusters: list[list[int]] = []
    for idx in range(n):
        if clusters and abs(evals[idx] - evals[clusters[-1][-1]]) < 1e-7 * max(
                1.0, abs(evals[idx])):
            clusters[-1].append(idx)
        else:
            clusters.append([idx])
    unit_vec = alg.unit_vector()
    mats = alg.left_matrices()
    blocks = []
    for cl in clusters:
        proj = evecs[:, cl] @ inv[cl, :]
        size = len(cl)
        d = round(size ** 0.5)
        if d * d != size:
            raise DecompositionFailedError(
                f"block size {size} is not a perfect square")
        idem = proj @ unit_vec
        char = np.array([np.trace(mats[i] @ proj) / d for i in range(n)])
        blocks.append(Block(d, size, proj, idem, char))
    if sum(b.size for b in blocks) != n:
        raise DecompositionFailedError("block sizes do not sum to dim")
    # canonical order independent of the random element
    blocks.sort(key=lambda b: (b.dim, tuple(np.round(b.character, 6).view(float))))
    # structural checks
    for b in blocks:
        if np.linalg.norm(b.projector @ b.projector - b.projector) > 1e-7 * n:
            raise DecompositionFailedError("projector not idempotent")
    total = sum(b.idempotent for b in blocks)
    if np.linalg.norm(total - unit_vec) > 1e-7 * n:
        raise DecompositionFailedError("idempotents do not sum to 1")
    return Decomposition(alg, blocks)


def simple_module_matrices(alg: StructureAlgebra, block: Block,
                           seed: int = 977) -> np.ndarray:
    """Explicit action matrices of one simple module inside a block.

    Eigenspaces of a generic commutant element (a right multiplication) cut
    the d^2-dimensional regular block into d copies of the simple module.
    """
    rng = np.random.default_rng(seed)
    n, d = alg.n, block.dim
    # orthonormal basis of the block subspace
    u, s, _ = np.linalg.svd(block.projector)
    rank = int((s > RANK_TOL * max(1.0, s[0])).sum())
    if rank != block.size:
        raise DecompositionFailedError("projector rank mismatch")
    basis = u[:, :rank]
    # right multiplication commutes with all left multiplications
    w = rng.normal(size=n) + 1j * rng.normal(size=n)
    rw = np.zeros((n, n), dtype=complex)
    for (i, j), (z, k) in alg.mult.items():
        rw[k, i] += z * w[j]
    m = basis.conj().T @ rw @ basis
    evals, evecs = np.linalg.eig(m)
    order = np.lexsort((evals.imag.round(7), evals.real.round(7)))
    evals, evecs = evals[order], evecs[:, order]
    take = [0]
    for idx in range(1, rank):
        if abs(evals[idx] - evals[take[0]]) < 1e-6 * max(1.0, abs(evals[idx])):
            take.append(idx)
        else:
            break
    if len(take) != d:
        raise DecompositionFailedError("commutant eigenspace has wrong size")
    sub = basis @ evecs[:, take]        # n x d, a single simple summand
    sub, _ = np.linalg.qr(sub)
    mats = np.zeros((n, d, d), dtype=complex)
    left = alg.left_matrices()
    for i in range(n):
        act = left[i] @ sub
        rho = sub.conj().T @ act
        if np.linalg.norm(act - sub @ rho) > 1e-7 * max(1.0, np.linalg.norm(act)):
            raise DecompositionFailedError("submodule not invariant")
        mats[i] = rho
    return mats


def multiplicities(dec: Decomposition, module_character) -> list[int]:
    """Multiplicity of each simple in a module with the given character.

    module_character maps a coordinate vector (central idempotent) to a
    complex trace; integrality is certified to INT_TOL.
    """
    out = []
    for b in dec.blocks:
        val = module_character(b.idempotent) / b.dim
        m = int(round(val.real))
        if abs(val - m) > INT_TOL or m < 0:
            raise DecompositionFailedError(
                f"non-integral multiplicity {val}")
        out.append(m)
    return out
