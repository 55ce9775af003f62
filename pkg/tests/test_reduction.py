"""Main-theorem certification: the three fusion rings agree, robustly."""

import pytest

from mpkit.cohomology import OpextPairSpace, trivial_pair
from mpkit.errors import NotConnectedError
from mpkit.fixtures import ex_gpd6, ex_k4, ex_pair2, ex_s3
from mpkit.fusion_rings import fusion_ring_isomorphic, group_ring
from mpkit.matched_pairs import BoxSystem, diagonal_groupoid, from_exact_factorization
from mpkit import groups
from mpkit.reduction import certify_equivalence, reduce_to_group_data


def _all_pairs(bx, cap=16):
    space = OpextPairSpace(bx, n=2)
    return [space.pair_from_vector(v) for v in space.enumerate_vectors(cap=cap)]


def test_certify_fixtures_all_mu2_pairs():
    for fx in (ex_s3(), ex_k4(), ex_gpd6(), ex_pair2()):
        bx = BoxSystem(fx.mp)
        diag = diagonal_groupoid(fx.mp)
        for pair in _all_pairs(bx):
            cert = certify_equivalence(bx, diag, pair)
            assert cert.notes["rings_isomorphic"], fx.name
            assert cert.sum_of_squares == cert.algebra_dim
            for key, val in cert.notes.items():
                if key.startswith(("omega", "psi")):
                    assert val, (fx.name, key)


def test_s3_trivial_pair_group_data():
    fx = ex_s3()
    bx = BoxSystem(fx.mp)
    diag = diagonal_groupoid(fx.mp)
    red = reduce_to_group_data(bx, diag, trivial_pair(bx))
    # one object: D(O) = S3, V(O) = C3, trivial cocycles
    assert red.vertex.group.n_arrows == 6
    assert len(red.v_hat_local) == 3
    assert red.omega_hat.is_zero and red.omega_bar.is_zero
    assert not red.psi_hat or all(v.is_zero for v in red.psi_hat.values())


def test_k4_trivial_pair_group_data():
    fx = ex_k4()
    bx = BoxSystem(fx.mp)
    diag = diagonal_groupoid(fx.mp)
    red = reduce_to_group_data(bx, diag, trivial_pair(bx))
    assert red.vertex.group.n_arrows == 4
    assert len(red.v_hat_local) == 2
    cert = certify_equivalence(bx, diag, trivial_pair(bx), reduction=red)
    assert fusion_ring_isomorphic(
        cert.group_ring,
        group_ring(groups.direct_product(groups.cyclic(2), groups.cyclic(2)))
    ) is not None


def test_gpd6_group_data_is_vertex_c2():
    fx = ex_gpd6()
    bx = BoxSystem(fx.mp)
    diag = diagonal_groupoid(fx.mp)
    for pair in _all_pairs(bx, cap=4):
        red = reduce_to_group_data(bx, diag, pair)
        assert red.vertex.group.n_arrows == 2   # vertex group C2
        assert len(red.v_hat_local) == 1        # V(O) trivial
        cert = certify_equivalence(bx, diag, pair, reduction=red)
        assert cert.notes["rings_isomorphic"]
        assert fusion_ring_isomorphic(cert.group_ring,
                                      group_ring(groups.cyclic(2))) is not None


def test_solution_independence():
    # second transversal, second coboundary solution, different basepoint
    for fx in (ex_gpd6(), ex_s3()):
        bx = BoxSystem(fx.mp)
        diag = diagonal_groupoid(fx.mp)
        space = OpextPairSpace(bx, n=2)
        pair = space.pair_from_vector(space.basis[0])
        base = certify_equivalence(bx, diag, pair)
        alt = certify_equivalence(bx, diag, pair, transversal_variant=1,
                                  coboundary_variant=1)
        assert fusion_ring_isomorphic(base.group_ring, alt.group_ring) is not None
        if fx.mp.h.n_objects > 1:
            alt2 = certify_equivalence(bx, diag, pair, basepoint=1)
            assert fusion_ring_isomorphic(base.group_ring,
                                          alt2.group_ring) is not None


def test_disconnected_v_raises():
    fx = ex_pair2()
    swapped = from_exact_factorization(fx.ambient, fx.h, fx.v)
    bx = BoxSystem(swapped)
    diag = diagonal_groupoid(swapped)
    with pytest.raises(NotConnectedError):
        reduce_to_group_data(bx, diag, trivial_pair(bx))
