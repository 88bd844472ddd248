from fractions import Fraction
from itertools import combinations_with_replacement

import pytest

from kltbasket.data.artifacts import Basket, CyclicGerm, ForkGerm
from kltbasket.data.universe import GermUniverse
from kltbasket.geometry.germ_model import invariants
from kltbasket.search.basket_enum import enumerate_baskets

CHAINS = ([2], [3], [4], [5], [2, 2], [3, 2], [2, 5], [3, 3], [2, 2, 2], [7], [2, 3, 2])


@pytest.fixture(scope="module")
def small():
    u = GermUniverse(Fraction(1, 7))
    for chain in CHAINS:
        u.add(invariants(CyclicGerm(chain)))
    u.add(invariants(ForkGerm.from_pairs(2, [(2, 1), (3, 2), (3, 1)])))
    return u


def _brute_force(u, vol_cap, max_size):
    invs = list(u)
    out = []
    for size in range(1, max_size + 1):
        for idx in combinations_with_replacement(range(len(invs)), size):
            chosen = [invs[i] for i in idx]
            b = Basket([c.germ for c in chosen], [c.r_x for c in chosen], [c.gamma for c in chosen])
            if 9 - vol_cap <= b.gamma_sum < 9 and b.bogomolov_sum() <= 3:
                out.append(b)
    return sorted(out)


@pytest.mark.parametrize("vol_cap", [Fraction(9), Fraction(2), Fraction(1, 3)])
def test_matches_brute_force(small, vol_cap):
    got = list(enumerate_baskets(small, vol_cap, max_size=4))
    assert got == _brute_force(small, vol_cap, 4)


def test_window(small):
    for b in enumerate_baskets(small, Fraction(1), max_size=3):
        assert 0 < b.k2 <= 1


def test_sizes(small):
    got = list(enumerate_baskets(small, Fraction(9), sizes=[2]))
    assert got
    assert all(len(b) == 2 for b in got)


def test_cap_must_be_positive(small):
    with pytest.raises(ValueError):
        list(enumerate_baskets(small, Fraction(0)))
