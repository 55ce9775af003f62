"""Worked examples: small matched pairs used as test and sweep fixtures.

EX-PAIR2: pair groupoid on two objects (vertical part), horizontal trivial.
EX-S3:    one object, vertical C3, horizontal C2 inside S3 = C3.C2.
EX-K4:    one object, C2 x C2 with both factors and trivial actions.
EX-GPD6:  two objects, vertex group C2, all hom-sets of size 2; vertical part
          the pair-like subgroupoid, horizontal part the C2 bundle.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import groups
from .groupoids import FiniteGroupoid, WideSubgroupoid, from_group_table, \
    group_times_pair, pair_groupoid
from .matched_pairs import MatchedPair, from_exact_factorization


@dataclass(frozen=True)
class Fixture:
    name: str
    ambient: FiniteGroupoid
    v: WideSubgroupoid
    h: WideSubgroupoid
    mp: MatchedPair


def _fixture(name, ambient, v_arrows, h_arrows) -> Fixture:
    v = WideSubgroupoid(ambient, frozenset(v_arrows))
    h = WideSubgroupoid(ambient, frozenset(h_arrows))
    return Fixture(name, ambient, v, h, from_exact_factorization(ambient, v, h))


def ex_pair2() -> Fixture:
    d = pair_groupoid(2)
    return _fixture("EX-PAIR2", d, range(d.n_arrows), d.identity)


def ex_s3() -> Fixture:
    # dihedral(3) elements are (i, j) = r^i s^j at index 2*i + j
    d = from_group_table(groups.dihedral(3))
    return _fixture("EX-S3", d, {0, 2, 4}, {0, 1})


def ex_k4() -> Fixture:
    d = from_group_table(groups.direct_product(groups.cyclic(2), groups.cyclic(2)))
    return _fixture("EX-K4", d, {0, 2}, {0, 1})


def ex_gpd6() -> Fixture:
    d = group_times_pair(groups.cyclic(2), 2)
    arrows = [(g, p, q) for p in range(2) for q in range(2) for g in range(2)]
    v = [i for i, (g, _, _) in enumerate(arrows) if g == 0]
    h = [i for i, (_, p, q) in enumerate(arrows) if p == q]
    return _fixture("EX-GPD6", d, v, h)


def all_fixtures() -> list[Fixture]:
    return [ex_pair2(), ex_s3(), ex_k4(), ex_gpd6()]
