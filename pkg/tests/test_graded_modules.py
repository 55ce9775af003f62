"""Rep-side module category: simples, tensor, fusion ring, unit object."""

import numpy as np
import pytest

from mpkit import groups
from mpkit.cohomology import OpextPairSpace, trivial_pair
from mpkit.errors import NotFusionError
from mpkit.fixtures import all_fixtures, ex_gpd6, ex_k4, ex_pair2, ex_s3
from mpkit.fusion_rings import fusion_ring_isomorphic, group_ring
from mpkit.graded_modules import (fusion_ring_rep, module_character,
                                  rep_fusion_data, rep_tensor, unit_module)
from mpkit.matched_pairs import BoxSystem
from mpkit.semisimple import multiplicities
from mpkit.weak_hopf import build_weak_hopf


def _wha(fx, pair=None):
    bx = BoxSystem(fx.mp)
    return build_weak_hopf(bx, pair if pair is not None else trivial_pair(bx))


def test_pair2_single_simple_of_dim2():
    w = _wha(ex_pair2())
    data = rep_fusion_data(w)
    dims = sorted(b.dim for b in data.dec.blocks)
    assert dims == [2]
    assert sum(d * d for d in dims) == w.dim == 4
    ring = fusion_ring_rep(w, data=data)
    assert ring.rank == 1
    assert ring.dims[ring.unit] == 1


def test_s3_trivial_pair_six_one_dim_simples():
    w = _wha(ex_s3())
    data = rep_fusion_data(w)
    assert sorted(b.dim for b in data.dec.blocks) == [1] * 6
    ring = fusion_ring_rep(w, data=data)
    assert ring.rank == 6
    assert ring.validate().ok
    # pointed: the six invertibles form a group of order 6
    assert all(d == 1 for d in ring.dims.values())


def test_gpd6_trivial_pair_gives_rank2_group_ring():
    w = _wha(ex_gpd6())
    data = rep_fusion_data(w)
    assert sum(b.dim ** 2 for b in data.dec.blocks) == 8
    ring = fusion_ring_rep(w, data=data)
    assert ring.validate().ok
    assert fusion_ring_isomorphic(ring, group_ring(groups.cyclic(2))) is not None


def test_k4_trivial_pair_gives_z_c2xc2():
    w = _wha(ex_k4())
    ring = fusion_ring_rep(w)
    assert ring.validate().ok
    k4 = groups.direct_product(groups.cyclic(2), groups.cyclic(2))
    assert fusion_ring_isomorphic(ring, group_ring(k4)) is not None
    assert fusion_ring_isomorphic(ring, group_ring(groups.cyclic(4))) is None


def test_unit_module_structure():
    for fx in all_fixtures():
        w = _wha(fx)
        u = unit_module(w)
        assert u.total_dim == fx.mp.h.n_objects
        assert u.check_axioms() == []


def test_simple_modules_satisfy_axioms_and_sum_of_squares():
    for fx in all_fixtures():
        bx = BoxSystem(fx.mp)
        space = OpextPairSpace(bx, n=2)
        vecs = space.enumerate_vectors(cap=16) or [space.basis[0]]
        for vec in vecs:
            w = build_weak_hopf(bx, space.pair_from_vector(vec))
            data = rep_fusion_data(w)
            assert sum(b.dim ** 2 for b in data.dec.blocks) == w.dim
            for s in data.simple_modules:
                assert s.check_axioms() == [], fx.name


def test_explicit_tensor_matches_character_fusion():
    # decompose S_i (x) S_j explicitly and compare with the character table
    for fx in (ex_k4(), ex_gpd6(), ex_s3()):
        w = _wha(fx)
        data = rep_fusion_data(w)
        ring = fusion_ring_rep(w, data=data)
        simples = data.simple_modules
        for i, si in enumerate(simples):
            for j, sj in enumerate(simples):
                prod = rep_tensor(si, sj)
                assert prod.check_axioms() == []
                chi = module_character(prod)

                def char_fn(coords, chi=chi):
                    return complex(coords @ chi)

                mults = multiplicities(data.dec, char_fn)
                expect = [ring.n(i, j, k) for k in range(ring.rank)]
                assert mults == expect, (fx.name, i, j)


def test_regular_tensor_dimension_bookkeeping():
    # tensor of two regular-sized modules has total dimension 36 for EX-S3
    w = _wha(ex_s3())
    data = rep_fusion_data(w)
    reg_dims = [s.total_dim for s in data.simple_modules]
    # regular module = sum of d_k copies of each simple; here all dims 1
    total = 0
    for si in data.simple_modules:
        for sj in data.simple_modules:
            total += rep_tensor(si, sj).total_dim
    assert total == 36


def test_unit_simple_iff_v_connected():
    # EX-PAIR2 has connected V; the transposed factorization has V = identities
    fx = ex_pair2()
    w = _wha(fx)
    data = rep_fusion_data(w)
    assert sorted(data.unit_multiplicities) == [1]
    from mpkit.matched_pairs import from_exact_factorization
    swapped = from_exact_factorization(fx.ambient, fx.h, fx.v)
    bx = BoxSystem(swapped)
    w2 = build_weak_hopf(bx, trivial_pair(bx))
    data2 = rep_fusion_data(w2)
    assert sum(data2.unit_multiplicities) > 1
    with pytest.raises(NotFusionError):
        fusion_ring_rep(w2, data=data2)
