"""
Classification of plt pairs (X, bS) on rank-one surfaces with K_X + bS numerically trivial
and b just above 6/7. S is a smooth rational curve through three or four cyclic quotient
points, and case 3 adds one point off S. Every candidate is cut down by adjunction, the
Bogomolov bound, rationality of b, S_Y^2 being an integer >= -1 on the minimal resolution and
the 1/7-klt condition; the survivors are then tested against the (-1)-curve and MMP arguments.
"""
import logging
import time
from bisect import bisect_left
from fractions import Fraction
from math import gcd, isqrt
from typing import Iterable, List, NamedTuple, Optional, Sequence, Tuple

from . import (
    B_MIN, B_SETTLED, CASE_OFF_S, CASE_ON_S_3, CASE_ON_S_4, COEFF_CAP, EXCLUDED_B_BOUND,
    EXCLUDED_MINUS_ONE, EXCLUDED_MMP, OFF_S_ORDER_CAP, ON_S_ORDER_CAP, OPEN, S_Y_SQ_MIN,
    UNLISTED,
)
from .knapsack import unit_combination_exists
from .tables import CLASSIFICATION_ROWS, RETAINED_ROWS, TableRow, lookup
from ..data.artifacts import CyclicGerm, ForkGerm, Germ, InvalidGermError, LSCase, coprime_germ
from ..data.artifacts.basket import GAMMA_TOTAL
from ..geometry.germ_model import (
    discrepancies, gamma, order, prefix_dets, solve_intersection_system,
)
from ..geometry.hj import pair_from_seq, seq_from_pair

_l = logging.getLogger(name=__name__)

Pair = Tuple[int, int]

# b > B_MIN exactly when b^2/(1-b) > T_MIN
T_MIN = B_MIN * B_MIN / (1 - B_MIN)

# platonic branch orders of forks; the D series is bounded by the order cap
E_BRANCHES = ((2, 3, 3), (2, 3, 4), (2, 3, 5))


class OnSCandidate(NamedTuple):
    pair: Pair
    gamma: Fraction
    b_cap: Fraction


class OffSCandidate(NamedTuple):
    germ: Germ
    order: int
    gamma: Fraction


#
# Arithmetic of a single configuration
#

def _fraction_sqrt(x: Fraction) -> Optional[Fraction]:
    if x < 0:
        return None
    n, d = isqrt(x.numerator), isqrt(x.denominator)
    if n * n != x.numerator or d * d != x.denominator:
        return None
    return Fraction(n, d)


def _adjunction(orders: Iterable[int]) -> Fraction:
    """
    (K_X + S).S = -2 + sum (r_i - 1)/r_i over the points on S.
    """
    return -2 + sum((1 - Fraction(1, r) for r in orders), Fraction(0))


def _b_factor(b: Fraction) -> Fraction:
    return b * b / (1 - b)


def solve_b(gammas: Sequence[Fraction], orders: Sequence[int]) -> Optional[Fraction]:
    """
    Solves sum gamma = 9 - b^2/(1-b) (K_X + S).S for b.

    @param gammas:  gamma invariants of every singular point
    @param orders:  orders of the points on S
    @return:        the root in (0, 1), or None if there is none or it is irrational
    """
    a = _adjunction(orders)
    k = GAMMA_TOTAL - sum(gammas, Fraction(0))
    if a <= 0 or k <= 0:
        return None

    # A b^2 + K b - K = 0
    root = _fraction_sqrt(k * k + 4 * a * k)
    if root is None:
        return None
    b = (root - k) / (2 * a)
    return b if 0 < b < 1 else None


def _s_y_squared(pairs: Sequence[Pair], b: Fraction) -> Fraction:
    a = _adjunction(r for r, _ in pairs)
    return a / (1 - b) - sum((Fraction(q, r) for r, q in pairs), Fraction(0))


def s_y_squared(c: LSCase) -> Fraction:
    """
    Self-intersection of the strict transform of S on the minimal resolution.
    """
    return _s_y_squared(c.pairs, c.b)


def extended_discrepancies(p: Pair, b: Fraction) -> List[Fraction]:
    """
    Coefficients b_j of K_Y + b S_Y + sum b_j E_j = f^*(K_X + bS) along the chain of the
    point p = (r, q), where E_1 is the curve meeting S.
    """
    r, q = p
    g = CyclicGerm(seq_from_pair(r, q))
    e = g.weights()
    rhs = [Fraction(w - 2) for w in e]
    rhs[0] += b
    return solve_intersection_system(e, g.adjacency(), rhs)


def coeff_cap(r: int, q: int) -> Fraction:
    """
    The supremum of the b for which every coefficient of `extended_discrepancies((r, q), b)`
    stays below 6/7. b_j = 1 - (left_j + (1 - b) right_j)/r with left_j and right_j the
    determinants of the chain on either side of E_j.
    """
    e = seq_from_pair(r, q)
    left = prefix_dets(e)
    right = prefix_dets(e[::-1])[::-1]
    cap = Fraction(1)
    for j in range(len(e)):
        lj, rj = left[j], right[j + 1]
        if 7 * lj < r:
            cap = min(cap, 1 - Fraction(r - 7 * lj, 7 * rj))
    return cap


def coefficient_vector(c: LSCase) -> List[Fraction]:
    """
    Every b_ij of the case, germs in order, the off-S germ last.
    """
    out = []
    for p in c.pairs:
        out.extend(extended_discrepancies(p, c.b))
    if c.off_s is not None:
        out.extend(discrepancies(c.off_s).b)
    return out


#
# Exclusion filters
#

def minus_one_filter(b: Fraction, coeffs: Sequence[Fraction], s_y_sq: Fraction) -> bool:
    """
    A (-1)-curve C on the resolution gives 1 = c b + sum c_ij b_ij with non-negative integer
    intersection numbers. When S_Y^2 = -1, C may be S_Y itself and nothing follows.

    @return: False iff the case is excluded
    """
    if s_y_sq == -1:
        return True
    return unit_combination_exists([b, *coeffs])


def mmp_filter(b: Fraction, on_s_coeffs: Sequence[Fraction], b41: Fraction) -> bool:
    """
    The curve contracted by the first MMP step meets the off-S curve and some curve over a
    point of S, so 1 = b l + sum b_ij l_ij needs l_41 > 0 and some on-S l_ij > 0.

    @return: False iff the case is excluded
    """
    return unit_combination_exists([b], required=[on_s_coeffs, [b41]])


#
# Candidates
#

def on_s_candidates(order_cap: int = ON_S_ORDER_CAP, b_min: Fraction = B_MIN) -> List[OnSCandidate]:
    """
    Points (r, q) on S that are 1/7-klt for some b > b_min.
    """
    n, d = b_min.numerator, b_min.denominator
    out = []
    for r in range(2, order_cap + 1):
        for q in range(1, r):
            # the curve meeting S alone: 7 (1 + (1 - b) q) > r
            if gcd(r, q) != 1 or 7 * (d + (d - n) * q) <= d * r:
                continue
            cap = coeff_cap(r, q)
            if cap <= b_min:
                continue
            out.append(OnSCandidate((r, q), gamma(CyclicGerm(seq_from_pair(r, q))), cap))
    _l.debug("%d points on S with r <= %d", len(out), order_cap)
    return out


def _fork_germs(order_cap: int) -> List[ForkGerm]:
    branch_orders = [(2, 2, n) for n in range(2, order_cap // 4 + 1)] + list(E_BRANCHES)
    found = {}
    for orders in branch_orders:
        qs = [[q for q in range(1, r) if gcd(r, q) == 1] for r in orders]
        for q1 in qs[0]:
            for q2 in qs[1]:
                for q3 in qs[2]:
                    pairs = list(zip(orders, (q1, q2, q3)))
                    e0 = 2
                    while True:
                        try:
                            g = ForkGerm.from_pairs(e0, pairs)
                        except InvalidGermError:
                            e0 += 1
                            continue
                        if order(g) > order_cap:
                            break
                        found.setdefault(g.key(), g)
                        e0 += 1
    return list(found.values())


def off_s_candidates(order_cap: int = OFF_S_ORDER_CAP) -> List[OffSCandidate]:
    """
    1/7-klt points of order at most `order_cap`; cyclic points up to orientation, forks
    included.
    """
    germs: List[Germ] = []
    for r in range(2, order_cap + 1):
        for q in range(1, r):
            if gcd(r, q) == 1 and q <= pow(q, -1, r):
                germs.append(CyclicGerm(seq_from_pair(r, q)))
    germs.extend(_fork_germs(order_cap))

    out = [
        OffSCandidate(g, order(g), gamma(g))
        for g in germs
        if all(bi < COEFF_CAP for bi in discrepancies(g).b)
    ]
    out.sort(key=lambda c: (c.order, c.gamma, c.germ.label()))
    _l.debug("%d points off S with order <= %d", len(out), order_cap)
    return out


def off_s_pair(g: Germ) -> Optional[Pair]:
    """
    (r, q) with the smaller of q and its inverse, or None for a fork.
    """
    if not isinstance(g, CyclicGerm):
        return None
    r, q = pair_from_seq(g.chain)
    return (r, min(q, pow(q, -1, r))) if r > 1 else (r, q)


#
# Enumeration
#

def _make_case(case: int, on_s: Sequence[OnSCandidate],
               off_s: Optional[OffSCandidate] = None) -> Optional[LSCase]:
    on_s = sorted(on_s, key=lambda c: c.pair)
    pairs = [c.pair for c in on_s]
    orders = [r for r, _ in pairs]
    gammas = [c.gamma for c in on_s] + ([off_s.gamma] if off_s is not None else [])

    a = _adjunction(orders)
    k = GAMMA_TOTAL - sum(gammas, Fraction(0))
    b_cap = min(c.b_cap for c in on_s)
    # b is increasing in K/A, which bounds it by the b window before any root is taken
    if a <= 0 or k <= a * T_MIN:
        return None
    if b_cap < 1 and k >= a * _b_factor(b_cap):
        return None

    b = solve_b(gammas, orders)
    if b is None or not B_MIN < b < b_cap:
        return None
    s_y_sq = _s_y_squared(pairs, b)
    # S_Y^2 = -1 stays: S_Y may then be a (-1)-curve, which the verdict filters handle
    if s_y_sq.denominator != 1 or s_y_sq < S_Y_SQ_MIN:
        return None
    return LSCase(case, pairs, b, gammas, s_y_sq, off_s=off_s.germ if off_s is not None else None)


def _quadruples(cands: Sequence[OnSCandidate]) -> List[LSCase]:
    """
    Four points on S with sum 1/r >= 1, chosen in (r, index) order.
    """
    by_r = sorted(range(len(cands)), key=lambda i: (cands[i].pair[0], i))
    g_min = min((c.gamma for c in cands), default=Fraction(0))
    out = []

    def dfs(chosen: List[int], start: int, inv_sum: Fraction, gamma_sum: Fraction):
        left = 4 - len(chosen)
        if left == 0:
            if inv_sum >= 1:
                case = _make_case(CASE_ON_S_4, [cands[i] for i in chosen])
                if case is not None:
                    out.append(case)
            return
        for p in range(start, len(by_r)):
            idx = by_r[p]
            r = cands[idx].pair[0]
            if inv_sum + Fraction(left, r) < 1:
                break
            g = gamma_sum + cands[idx].gamma
            if g + (left - 1) * g_min >= GAMMA_TOTAL:
                continue
            chosen.append(idx)
            dfs(chosen, p, inv_sum + Fraction(1, r), g)
            chosen.pop()

    dfs([], 0, Fraction(0), Fraction(0))
    return out


def _triples(cands: Sequence[OnSCandidate], off: Sequence[OffSCandidate]) -> List[LSCase]:
    """
    Three points on S, found by a range query on the sorted gammas, each completed by no
    point (case 1) or one off-S point (case 3).
    """
    gammas = [c.gamma for c in cands]
    slack = -min(min((o.gamma for o in off), default=Fraction(0)), Fraction(0))
    out = []
    for i, ci in enumerate(cands):
        if 3 * ci.gamma - slack >= GAMMA_TOTAL:
            break
        ri = ci.pair[0]
        for j in range(i, len(cands)):
            cj = cands[j]
            if ci.gamma + 2 * cj.gamma - slack >= GAMMA_TOTAL:
                break
            rj = cj.pair[0]
            hi = bisect_left(gammas, GAMMA_TOTAL + slack - ci.gamma - cj.gamma)
            for k in range(j, hi):
                ck = cands[k]
                rk = ck.pair[0]
                # sum 1/r < 1
                if ri * rj + ri * rk + rj * rk >= ri * rj * rk:
                    continue
                on_s = (ci, cj, ck)
                case = _make_case(CASE_ON_S_3, on_s)
                if case is not None:
                    out.append(case)

                # sum 1/r over all four points >= 1, i.e. r_4 (1 - s) <= 1
                s = Fraction(1, ri) + Fraction(1, rj) + Fraction(1, rk)
                rest = GAMMA_TOTAL - ci.gamma - cj.gamma - ck.gamma
                for o in off:
                    if o.order * (1 - s) > 1:
                        break
                    if o.gamma >= rest:
                        continue
                    case = _make_case(CASE_OFF_S, on_s, o)
                    if case is not None:
                        out.append(case)
    return out


def _label(c: LSCase) -> LSCase:
    row = lookup(c.pairs, off_s_pair(c.off_s) if c.off_s is not None else None)
    if row is not None and row.b == c.b:
        c.label = row.label
    return c


def enumerate_ls(order_cap: int = ON_S_ORDER_CAP, off_s_cap: int = OFF_S_ORDER_CAP) -> List[LSCase]:
    """
    Every configuration passing adjunction, the Bogomolov bound (cases 2 and 3), rationality
    of b with b > 6/7 + 1/938, S_Y^2 an integer >= -1 and the 1/7-klt condition. Rows of the
    published classification carry their label.

    @param order_cap:   largest order of a point on S
    @param off_s_cap:   largest order of the point off S
    @return:            cases sorted by points on S, then by the point off S
    """
    start = time.time()
    cands = sorted(on_s_candidates(order_cap), key=lambda c: (c.gamma, c.pair))
    off = off_s_candidates(off_s_cap)
    _l.info("%d points on S, %d off S", len(cands), len(off))

    cases = _triples(cands, off) + _quadruples(cands)
    cases = [_label(c) for c in cases]
    cases.sort(key=lambda c: (c.case, c.key()))
    _l.info("%d cases survive the enumeration filters (%.1fs)", len(cases), time.time() - start)
    return cases


#
# Verdicts
#

def verdict(c: LSCase) -> str:
    if c.label is None:
        return UNLISTED
    if c.label in RETAINED_ROWS:
        return RETAINED_ROWS[c.label]
    # 2.1 is left to the (-1)-curve filter
    if c.b > B_SETTLED and c.label != "2.1":
        return EXCLUDED_B_BOUND

    coeffs = coefficient_vector(c)
    if not minus_one_filter(c.b, coeffs, c.s_y_sq):
        return EXCLUDED_MINUS_ONE
    if c.case == CASE_OFF_S and c.off_s.num_curves() == 1:
        if not mmp_filter(c.b, coeffs[:-1], coeffs[-1]):
            return EXCLUDED_MMP
    return OPEN


def classify_ls(cases: Optional[List[LSCase]] = None) -> List[LSCase]:
    cases = enumerate_ls() if cases is None else cases
    for c in cases:
        c.verdict = verdict(c)
        _l.debug("%s: %s", c, c.verdict)
    return cases


def table_diff(cases: Sequence[LSCase]) -> Tuple[List[str], List[LSCase]]:
    """
    @return: (labels of published rows that were not found, cases the table does not list)
    """
    found = {c.label for c in cases if c.label is not None}
    missing = [row.label for row in CLASSIFICATION_ROWS if row.label not in found]
    extra = [c for c in cases if c.label is None]
    return missing, extra


def case_from_row(row: TableRow) -> LSCase:
    """
    Rebuilds a published row with gammas and S_Y^2 recomputed from its points.
    """
    on_s = [coprime_germ(r, q) for r, q in row.pairs]
    off = coprime_germ(*row.off_s) if row.off_s is not None else None
    gammas = [gamma(g) for g in on_s] + ([gamma(off)] if off is not None else [])
    if off is not None:
        case = CASE_OFF_S
    else:
        case = CASE_ON_S_4 if len(row.pairs) == 4 else CASE_ON_S_3
    return LSCase(case, row.pairs, row.b, gammas, _s_y_squared(row.pairs, row.b), off_s=off,
                  label=row.label)
