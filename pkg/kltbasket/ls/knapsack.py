"""
Feasibility of sum c_i x_i = 1 over non-negative integers c_i for small positive rational
coefficients x_i. Everything is scaled to the common denominator D, after which it is an
unbounded subset-sum on integers up to D, solved by dynamic programming over the reachable
values.
"""
import logging
from fractions import Fraction
from math import lcm
from typing import Iterable, List, Sequence, Tuple

_l = logging.getLogger(name=__name__)


def _scale(coeffs: Sequence[Fraction]) -> Tuple[List[int], int]:
    denom = lcm(*(c.denominator for c in coeffs)) if coeffs else 1
    return [int(c * denom) for c in coeffs], denom


def unit_combination_exists(coeffs: Iterable[Fraction],
                            required: Sequence[Iterable[Fraction]] = ()) -> bool:
    """
    Whether 1 is a non-negative integer combination of `coeffs` and the coefficients of
    `required`, where every group in `required` must take part with a positive multiplier on
    at least one of its members.

    @param coeffs:      coefficients with unrestricted multipliers
    @param required:    groups of coefficients that each have to be used
    @return:            solvability
    """
    free = [Fraction(c) for c in coeffs]
    groups = [[Fraction(c) for c in g] for g in required]
    if any(c < 0 for c in free) or any(c < 0 for g in groups for c in g):
        raise ValueError("knapsack coefficients must be non-negative")

    # a zero coefficient satisfies its group for free and never changes a sum
    done = 0
    for k, g in enumerate(groups):
        if any(c == 0 for c in g):
            done |= 1 << k
    full = (1 << len(groups)) - 1

    items: List[Tuple[Fraction, int]] = [(c, 0) for c in free if c > 0]
    for k, g in enumerate(groups):
        items.extend((c, 1 << k) for c in g if c > 0)
    items = [(c, flag) for c, flag in items if c <= 1]
    if not items:
        return False

    nums, denom = _scale([c for c, _ in items])
    flags = [flag for _, flag in items]
    _l.debug("knapsack over %d coefficients, denominator %d", len(nums), denom)

    # reach[v] is a bitset over the masks of satisfied groups that can sum to v
    reach = [0] * (denom + 1)
    reach[0] = 1 << done
    for v in range(1, denom + 1):
        acc = 0
        for n, flag in zip(nums, flags):
            if n > v or not reach[v - n]:
                continue
            prev = reach[v - n]
            if not flag:
                acc |= prev
                continue
            for mask in range(full + 1):
                if prev >> mask & 1:
                    acc |= 1 << (mask | flag)
        reach[v] = acc
    return bool(reach[denom] >> full & 1)
