import random
from fractions import Fraction
from itertools import product

import pytest

from kltbasket.ls.knapsack import unit_combination_exists

F = Fraction


@pytest.mark.parametrize("coeffs, expected", [
    ([F(1, 2)], True),
    ([F(2, 3)], False),
    ([F(2, 5), F(3, 5)], True),
    ([F(3, 7), F(5, 7)], False),
    ([F(1)], True),
    ([F(3, 2)], False),
    ([F(0)], False),
    ([], False),
])
def test_free_coefficients(coeffs, expected):
    assert unit_combination_exists(coeffs) is expected


def test_negative_coefficient():
    with pytest.raises(ValueError):
        unit_combination_exists([F(-1, 2)])
    with pytest.raises(ValueError):
        unit_combination_exists([], required=[[F(-1, 3)]])


def test_required_groups():
    assert unit_combination_exists([F(1, 2)], required=[[F(1, 3)]])
    assert not unit_combination_exists([F(1, 2)], required=[[F(2, 3)]])
    assert unit_combination_exists([], required=[[F(1, 2)], [F(1, 2)]])
    assert not unit_combination_exists([], required=[[F(1, 2)], [F(1, 3)]])
    # without the group the free part alone would do
    assert not unit_combination_exists([F(1, 4)], required=[[F(2, 3)]])


def test_zero_in_group_satisfies_it():
    assert unit_combination_exists([F(1, 2)], required=[[F(0)]])
    assert not unit_combination_exists([F(2, 3)], required=[[F(0), F(5, 6)]])


def _brute_force(coeffs, groups):
    items = list(coeffs) + [c for g in groups for c in g]
    owner = [None] * len(coeffs) + [k for k, g in enumerate(groups) for _ in g]
    ranges = [range(int(1 / c) + 1) if c > 0 else range(1) for c in items]
    for mult in product(*ranges):
        if sum(m * c for m, c in zip(mult, items)) != 1:
            continue
        used = {owner[i] for i, m in enumerate(mult) if m and owner[i] is not None}
        if all(k in used for k in range(len(groups))):
            return True
    return False


def test_against_brute_force():
    rng = random.Random(13)
    for _ in range(150):
        coeffs = [F(rng.randint(1, 9), rng.randint(2, 12)) for _ in range(rng.randint(0, 3))]
        groups = [[F(rng.randint(1, 9), rng.randint(2, 12))] for _ in range(rng.randint(0, 2))]
        if not coeffs and not groups:
            continue
        assert unit_combination_exists(coeffs, groups) == _brute_force(coeffs, groups), (coeffs, groups)
