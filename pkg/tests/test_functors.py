"""Functor round trips: spread/compress, restrict/induce, tensor structure."""

import numpy as np
import pytest

from mpkit.bimodules import (BimoduleCategory, bimodule_fusion_data,
                             unit_bimodule)
from mpkit.cohomology import OpextPairSpace, kac_cocycle, trivial_pair
from mpkit.fixtures import all_fixtures, ex_gpd6, ex_k4, ex_pair2, ex_s3
from mpkit.functors import (DiagonalContext, VertexContext, gamma_maps,
                            hexagon_check, induce_module,
                            induce_restrict_unit, is_dbimodule_morphism,
                            is_graded_morphism, phi_module, phi_unit_map,
                            psi_module, restrict_module, symmetrizer,
                            symmetrizer_report, xi_maps)
from mpkit.graded_modules import GradedTensor, rep_fusion_data, unit_module
from mpkit.groupoids import pair_groupoid
from mpkit.matched_pairs import BoxSystem, diagonal_groupoid
from mpkit.reduction import reduce_to_group_data
from mpkit.weak_hopf import build_weak_hopf


def _context(fx, pair_vec=None):
    bx = BoxSystem(fx.mp)
    diag = diagonal_groupoid(fx.mp)
    space = OpextPairSpace(bx, n=2)
    if pair_vec is None:
        pair = trivial_pair(bx)
    else:
        pair = space.pair_from_vector(pair_vec)
    w = build_weak_hopf(bx, pair)
    omega = kac_cocycle(bx, diag, pair)
    v_arrows = [diag.v_embed[g] for g in fx.mp.v.arrows()]
    cat = BimoduleCategory(diag.groupoid, v_arrows, omega)
    return DiagonalContext(w, diag, cat)


def _contexts(fx):
    bx = BoxSystem(fx.mp)
    space = OpextPairSpace(bx, n=2)
    yield _context(fx)
    if space.basis:
        yield _context(fx, space.basis[0])


def test_symmetrizer_identities_all_test_groupoids():
    for fx in all_fixtures():
        assert symmetrizer_report(fx.mp.v).ok, fx.name
    assert symmetrizer_report(pair_groupoid(3)).ok


def test_phi_lands_in_bimodules():
    # well-definedness of the spread functor = the twisted module laws hold
    for fx in (ex_s3(), ex_k4(), ex_gpd6()):
        for ctx in _contexts(fx):
            data = rep_fusion_data(ctx.w)
            for s in data.simple_modules:
                assert phi_module(ctx, s).check_axioms() == [], fx.name


def test_phi_dimension_formula():
    for fx in (ex_s3(), ex_gpd6()):
        ctx = _context(fx)
        data = rep_fusion_data(ctx.w)
        mp = fx.mp
        for s in data.simple_modules:
            spread = phi_module(ctx, s)
            expect = sum(ctx.sym.theta[mp.h.source[x]] * d
                         for x, d in s.dims.items())
            assert spread.total_dim == expect


def test_phi_of_unit_is_unit_bimodule():
    for fx in (ex_s3(), ex_k4(), ex_gpd6()):
        ctx = _context(fx)
        spread = phi_module(ctx, unit_module(ctx.w))
        unit = unit_bimodule(ctx.cat)
        assert set(spread.dims) == set(unit.dims)
        for key in unit.left:
            assert np.allclose(spread.left[key], unit.left[key])
        for key in unit.right:
            assert np.allclose(spread.right[key], unit.right[key])


def test_psi_after_phi_is_identity():
    for fx in (ex_s3(), ex_k4(), ex_gpd6()):
        for ctx in _contexts(fx):
            data = rep_fusion_data(ctx.w)
            for s in data.simple_modules:
                spread = phi_module(ctx, s)
                psi = psi_module(ctx, spread)
                assert psi.module.check_axioms() == []
                assert psi.module.dims == s.dims
                blocks = phi_unit_map(ctx, s, psi)
                assert is_graded_morphism(s, psi.module, blocks)
                for x, f in blocks.items():
                    assert f.shape[0] == f.shape[1]
                    assert abs(np.linalg.det(f)) > 1e-9


def test_phi_after_psi_is_identity():
    for fx in (ex_s3(), ex_gpd6()):
        for ctx in _contexts(fx):
            bdata = bimodule_fusion_data(ctx.cat)
            for m in bdata.simples:
                psi = psi_module(ctx, m)
                spread = phi_module(ctx, psi.module)
                gamma, gamma_bar = gamma_maps(ctx, m, psi)
                assert is_dbimodule_morphism(m, spread, gamma)
                for i in m.dims:
                    prod = gamma_bar[i] @ gamma[i]
                    assert np.linalg.norm(prod - np.eye(m.dims[i])) < 1e-8
                    prod2 = gamma[i] @ gamma_bar[i]
                    assert np.linalg.norm(prod2 - np.eye(spread.dims[i])) < 1e-8


def test_averaged_space_equals_fixed_space():
    # the averaging image coincides with the space where every left
    # translation acts like its source identity
    from mpkit.functors import averaged_equals_fixed_space
    for fx in (ex_s3(), ex_gpd6()):
        ctx = _context(fx)
        bdata = bimodule_fusion_data(ctx.cat)
        for m in bdata.simples:
            assert averaged_equals_fixed_space(ctx, m), fx.name


def test_xi_maps_inverse_and_morphism():
    for fx in (ex_s3(), ex_gpd6()):
        for ctx in _contexts(fx):
            data = rep_fusion_data(ctx.w)
            sims = data.simple_modules
            for s1 in sims[:3]:
                for s2 in sims[:3]:
                    layout = GradedTensor(s1, s2)
                    xi, xi_bar, model = xi_maps(ctx, s1, s2, layout)
                    src = phi_module(ctx, layout.module)
                    tgt = model.module
                    assert is_dbimodule_morphism(src, tgt, xi)
                    for i in src.dims:
                        assert np.linalg.norm(
                            xi_bar[i] @ xi[i] - np.eye(src.dims[i])) < 1e-8
                        assert np.linalg.norm(
                            xi[i] @ xi_bar[i] - np.eye(tgt.dims[i])) < 1e-8


def test_hexagon_compatibility():
    for fx in (ex_s3(), ex_gpd6()):
        for ctx in _contexts(fx):
            data = rep_fusion_data(ctx.w)
            sims = data.simple_modules[:2]
            for u in sims:
                for v in sims:
                    for w in sims:
                        assert hexagon_check(ctx, u, v, w), fx.name


def test_restrict_induce_round_trip():
    for fx in (ex_gpd6(), ex_s3()):
        bx = BoxSystem(fx.mp)
        diag = diagonal_groupoid(fx.mp)
        space = OpextPairSpace(bx, n=2)
        for vec in [None] + list(space.basis[:1]):
            pair = trivial_pair(bx) if vec is None else space.pair_from_vector(vec)
            red = reduce_to_group_data(bx, diag, pair)
            ctx = VertexContext(red.tilde_cat, red.hat_cat, red.vertex, red.tau)
            # G lands in well-defined two-sided modules (transport identities)
            hat_data = bimodule_fusion_data(red.hat_cat)
            for w_mod in hat_data.simples:
                induced = induce_module(ctx, w_mod)
                assert induced.check_axioms() == [], fx.name
                back = restrict_module(ctx, induced)
                assert back.dims == w_mod.dims
                for key in w_mod.left:
                    assert np.allclose(back.left[key], w_mod.left[key])
                for key in w_mod.right:
                    assert np.allclose(back.right[key], w_mod.right[key])
            # G(F(M)) ~ M via the transversal two-step map
            tilde_data = bimodule_fusion_data(red.tilde_cat)
            for m in tilde_data.simples:
                w_mod = restrict_module(ctx, m)
                again = induce_module(ctx, w_mod)
                blocks = induce_restrict_unit(ctx, again)
                iso = {a: blocks[a] for a in again.dims}
                assert is_dbimodule_morphism(again, m, iso)
                for a, f in iso.items():
                    assert f.shape[0] == f.shape[1] == again.dims[a]
                    assert abs(np.linalg.det(f)) > 1e-9


def test_restrict_induce_unit_to_unit():
    fx = ex_gpd6()
    bx = BoxSystem(fx.mp)
    diag = diagonal_groupoid(fx.mp)
    red = reduce_to_group_data(bx, diag, trivial_pair(bx))
    ctx = VertexContext(red.tilde_cat, red.hat_cat, red.vertex, red.tau)
    unit_tilde = unit_bimodule(red.tilde_cat)
    w_mod = restrict_module(ctx, unit_tilde)
    unit_hat = unit_bimodule(red.hat_cat)
    assert w_mod.dims == unit_hat.dims
    for key in unit_hat.left:
        assert np.allclose(w_mod.left[key], unit_hat.left[key])
