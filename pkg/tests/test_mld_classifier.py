import random
from fractions import Fraction
from itertools import product

import pytest

from kltbasket.data.artifacts import CyclicGerm, DIIFamily, ForkGerm, MiddleFamily, TailFamily
from kltbasket.geometry.germ_model import mld
from kltbasket.geometry.mld_classifier import (
    classify_mld, expand_family, family_limit, family_member, verify_family,
)
from kltbasket.search import DEFAULT_MLD, RESIDUAL_CHAINS


@pytest.fixture(scope="module")
def half():
    return classify_mld(Fraction(1, 2))


@pytest.mark.parametrize("a", [Fraction(0), Fraction(-1, 2), Fraction(3, 2)])
def test_threshold_range(a):
    with pytest.raises(ValueError):
        classify_mld(a)


def test_family_limits():
    assert family_limit(DIIFamily(3, 1)) == Fraction(1, 3)
    assert family_limit(TailFamily([2])) == 1
    assert family_limit(TailFamily([3])) == Fraction(1, 2)
    assert family_limit(MiddleFamily([3], [3])) == Fraction(1, 2)


def test_family_member():
    assert family_member(TailFamily([3]), 2) == CyclicGerm([3, 2, 2])
    with pytest.raises(ValueError):
        family_member(TailFamily([3]), -1)


def test_expand_family_is_an_initial_segment():
    members = expand_family(TailFamily([4]), Fraction(1, 2))
    assert members
    assert all(mld(g) >= Fraction(1, 2) for g in members)
    assert mld(TailFamily([4]).member(len(members))) < Fraction(1, 2)


def test_du_val_only_at_one():
    out = classify_mld(Fraction(1))
    assert len(out.families) == 2
    assert len(out.isolated) == 3
    for third in ((3, 2), (4, 3), (5, 4)):
        assert out.covers(ForkGerm.from_pairs(2, [(2, 1), (3, 2), third]))
    assert out.covers(CyclicGerm([2] * 7))
    assert not out.covers(CyclicGerm([3]))
    assert out.max_excess() == 0
    assert out.length_cap() == 9


def test_half(half):
    assert half.covers(CyclicGerm([3]))
    assert half.covers(CyclicGerm([4]))
    assert half.covers(CyclicGerm([3, 2, 2, 2, 2, 2]))
    assert not half.covers(CyclicGerm([7]))
    assert not half.covers(CyclicGerm([5]))
    for f in half.families:
        assert verify_family(f, Fraction(1, 2), probes=6)


def test_no_germ_listed_twice(half):
    for g in half.isolated:
        assert half.family_of(g) is None


def test_completeness_on_small_chains(half):
    a = Fraction(1, 2)
    rng = random.Random(3)
    for _ in range(300):
        chain = [rng.randint(2, 6) for _ in range(rng.randint(1, 6))]
        g = CyclicGerm(chain)
        assert half.covers(g) == (mld(g) >= a), g



def test_output_json(half):
    d = half.to_json()
    assert d["a"] == "1/2"
    back = type(half).from_json(d)
    assert len(back.isolated) == len(half.isolated)
    assert len(back.families) == len(half.families)


def _chains(max_len, max_entry):
    for n in range(1, max_len + 1):
        for chain in product(range(2, max_entry + 1), repeat=n):
            # one orientation of each germ
            if chain <= chain[::-1]:
                yield list(chain)


def _check_completeness(a, max_len, max_entry):
    out = classify_mld(a)
    for chain in _chains(max_len, max_entry):
        g = CyclicGerm(chain)
        assert out.covers(g) == (mld(g) >= a), g


@pytest.mark.parametrize("a", [Fraction(1, 2), Fraction(1, 3), Fraction(1, 5)])
def test_completeness_on_short_chains(a):
    _check_completeness(a, 4, 5)


@pytest.mark.slow
@pytest.mark.parametrize("a", [Fraction(1, 2), Fraction(1, 3), Fraction(1, 5)])
def test_completeness_on_all_chains_up_to_seven(a):
    _check_completeness(a, 7, 7)


def test_search_threshold_families_and_residual_germs():
    out = classify_mld(DEFAULT_MLD)
    assert {f.m for f in out.families if isinstance(f, DIIFamily) and f.m > 1} == set(range(2, 10))
    for chain in RESIDUAL_CHAINS:
        assert out.covers(CyclicGerm(chain)), chain
