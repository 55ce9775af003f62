"""Twisted box algebra: dimensions, axioms, counital subalgebras."""

from fractions import Fraction

import pytest

from mpkit.cohomology import (Cochain, OpextPair, OpextPairSpace,
                              composable_tuples, trivial_pair)
from mpkit.errors import InvalidPairError
from mpkit.fixtures import all_fixtures, ex_gpd6, ex_k4, ex_pair2, ex_s3
from mpkit.matched_pairs import BoxSystem
from mpkit.phases import Phase
from mpkit.weak_hopf import (build_weak_hopf, counital_subalgebras,
                             semisimplicity_check, verify_weak_hopf_axioms)


def _all_valid_pairs(bx, cap=64):
    space = OpextPairSpace(bx, n=2)
    vecs = space.enumerate_vectors(cap=cap)
    return [space.pair_from_vector(v) for v in vecs]


def test_dimensions():
    for fx, expect in ((ex_s3(), 6), (ex_pair2(), 4), (ex_k4(), 4),
                       (ex_gpd6(), 8)):
        bx = BoxSystem(fx.mp)
        w = build_weak_hopf(bx, trivial_pair(bx))
        assert w.dim == expect, fx.name


def test_trivial_pair_is_vertical_groupoid_algebra():
    # direct construction: multiplication = vertical stacking, no phases
    for fx in all_fixtures():
        bx = BoxSystem(fx.mp)
        w = build_weak_hopf(bx, trivial_pair(bx))
        vert = bx.vertical_groupoid()
        for a in range(bx.n_boxes):
            for b in range(bx.n_boxes):
                m = w.mult(a, b)
                c = vert.compose_or_none(a, b)
                if c is None:
                    assert m is None
                else:
                    assert m == (0, c)


def test_counit_is_identity_top_indicator():
    fx = ex_gpd6()
    bx = BoxSystem(fx.mp)
    w = build_weak_hopf(bx, trivial_pair(bx))
    for b in range(bx.n_boxes):
        assert w.counit(b) == (1 if fx.mp.h.is_identity(bx.top[b]) else 0)


def test_axioms_all_mu2_pairs_fixtures():
    for fx in all_fixtures():
        bx = BoxSystem(fx.mp)
        for pair in _all_valid_pairs(bx):
            w = build_weak_hopf(bx, pair)
            rep = verify_weak_hopf_axioms(w)
            assert rep.ok, f"{fx.name}: {rep.summary()}"


def test_invalid_pair_rejected_and_flagged():
    fx = ex_s3()
    bx = BoxSystem(fx.mp)
    vert = bx.vertical_groupoid()
    # a non-cocycle sigma: a single 1/2 on one composable non-identity pair
    key = next(iter(composable_tuples(vert, 2, skip_identities=True)))
    sigma = Cochain(vert, 2, {key: Phase(Fraction(1, 2))})
    bad = OpextPair(bx, sigma, trivial_pair(bx).tau)
    with pytest.raises(InvalidPairError):
        build_weak_hopf(bx, bad)
    w = build_weak_hopf(bx, bad, validate=False)
    rep = verify_weak_hopf_axioms(w)
    assert any("associativity" in v or "multiplicativity" in v
               for v in rep.violations)


def test_counital_subalgebras_dims_and_commutativity():
    for fx, n_obj in ((ex_s3(), 1), (ex_k4(), 1), (ex_pair2(), 2),
                      (ex_gpd6(), 2)):
        bx = BoxSystem(fx.mp)
        for pair in _all_valid_pairs(bx):
            w = build_weak_hopf(bx, pair)
            src, tgt, rep = counital_subalgebras(w)
            assert rep.ok, f"{fx.name}: {rep.summary()}"
            assert len(src) == len(tgt) == n_obj


def test_semisimplicity_fixtures():
    for fx in all_fixtures():
        bx = BoxSystem(fx.mp)
        for pair in _all_valid_pairs(bx):
            w = build_weak_hopf(bx, pair)
            assert semisimplicity_check(w), fx.name


def test_unit_element_and_antipode_shape():
    fx = ex_s3()
    bx = BoxSystem(fx.mp)
    space = OpextPairSpace(bx, n=2)
    pair = space.pair_from_vector(space.basis[0])
    w = build_weak_hopf(bx, pair)
    assert sorted(w.unit_element()) == sorted(bx.idv)
    for a in range(bx.n_boxes):
        exp, b = w.antipode(a)
        assert b == bx.rotate(a)
