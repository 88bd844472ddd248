"""
Predicates on baskets. Every filter is a pure function of the basket (and the plurigenus
table built from it), so the cascade may apply them in any order.
"""
import logging
from fractions import Fraction
from math import isqrt, prod
from typing import Iterable, List, Optional, Sequence, Tuple

from . import DEFAULT_VOL_CAP, RESIDUAL_CHAINS
from ..data.artifacts import Basket, CyclicGerm, PlurigenusTable
from ..data.artifacts.basket import GAMMA_TOTAL
from ..geometry.germ_model import (
    curve_excess, delta_n, discrepancies, discriminant, invariants, is_du_val, is_interior, mu_tau,
    special_valuations,
)
from ..ls.tables import table_row

_l = logging.getLogger(name=__name__)

# 1/6.4886, a lower bound of 1/6 - sqrt(1/6351)
TAIL_THRESHOLD = Fraction(10000, 64886)
# largest coefficient p_E of the extracted curve on the boundary
P_MAX = Fraction(6, 7) + Fraction(1, 938)
DEFAULT_N_MAX = 500


#
# Enumeration filters
#

def f_bogomolov(b: Basket) -> bool:
    return b.bogomolov_sum() <= 3


def f_gamma_window(b: Basket, vol_cap: Fraction = DEFAULT_VOL_CAP) -> bool:
    return GAMMA_TOTAL - vol_cap <= b.gamma_sum < GAMMA_TOTAL


#
# Arithmetic filters
#

def f_complete_square(b: Basket) -> bool:
    """
    The discriminant of the lattice spanned by the exceptional curves times K^2 must be the
    square of an integer. The discriminant is the product of the germ discriminants, which
    agree with the orders r_i on cyclic germs but not on forks.
    """
    v = prod(discriminant(g) for g in b.germs) * b.k2
    if v.denominator != 1 or v < 0:
        return False
    root = isqrt(v.numerator)
    return root * root == v.numerator


def _end_positions(g: CyclicGerm) -> Sequence[int]:
    n = len(g.chain)
    return (0,) if n == 1 else (0, n - 1)


def f_tail(b: Basket) -> bool:
    """
    An end curve of weight >= 3 on a chain must have discrepancy a(E) > 1/6.4886.
    """
    for g in b.germs:
        if not isinstance(g, CyclicGerm):
            continue
        data = discrepancies(g)
        for i in _end_positions(g):
            if g.chain[i] >= 3 and 1 - data.b[i] <= TAIL_THRESHOLD:
                return False
    return True


#
# Plurigenera
#

def delta_sum(b: Basket, n: int) -> Fraction:
    return sum((delta_n(g, n) for g in b.germs), Fraction(0))


def plurigenus_table(b: Basket, n_max: int = DEFAULT_N_MAX, sign: int = 1) -> PlurigenusTable:
    """
    P_n = 1 + n(n-1)/2 K^2 + sign * sum_x delta_n(x) for n = 0..n_max.
    """
    if n_max < 2:
        raise ValueError(f"n_max must be >= 2, got {n_max}")
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")

    k2 = b.k2
    P = [1 + Fraction(n * (n - 1), 2) * k2 + sign * delta_sum(b, n) for n in range(n_max + 1)]
    return PlurigenusTable(k2, P, sign)


def f_blache(b: Basket, n_max: int = DEFAULT_N_MAX, sign: int = 1,
             table: PlurigenusTable = None) -> bool:
    """
    Every P_n with 2 <= n <= n_max must be a non-negative integer. Without a prebuilt table
    the values are computed one at a time and the scan stops at the first failure.
    """
    if table is not None:
        return table.first_invalid(2) is None

    k2 = b.k2
    for n in range(2, n_max + 1):
        v = 1 + Fraction(n * (n - 1), 2) * k2 + sign * delta_sum(b, n)
        if v.denominator != 1 or v < 0:
            return False
    return True


def residual_basket() -> Basket:
    germs = [CyclicGerm(c) for c in RESIDUAL_CHAINS]
    invs = [invariants(g) for g in germs]
    return Basket(germs, [inv.r_x for inv in invs], [inv.gamma for inv in invs])


def calibrate_delta_sign(n_max: int = DEFAULT_N_MAX) -> int:
    """
    The sign of the correction term, fixed by requiring integral non-negative plurigenera
    on the residual basket.

    @raise ArithmeticError: if not exactly one sign works
    """
    b = residual_basket()
    valid = [s for s in (1, -1) if f_blache(b, n_max, s)]
    if len(valid) != 1:
        raise ArithmeticError(f"cannot fix the plurigenus sign, valid signs: {valid}")
    _l.info("plurigenus correction sign: %+d", valid[0])
    return valid[0]


#
# Special valuations
#

def kx2_from_special(c: Fraction, e: Fraction, lam: Fraction, p: Fraction) -> Fraction:
    """
    K^2 = (c - p)^2 / ((1 - p)/lam + 1/e) for a special curve with c_E = c, e_E = e and
    boundary data (lam, p).
    """
    if e <= 0 or lam <= 0:
        raise ValueError(f"need e > 0 and lam > 0, got e={e}, lam={lam}")
    return (c - p) ** 2 / ((1 - p) / lam + 1 / e)


# the retained pair with points 1/2(1,1), 1/5(1,4), 1/7(1,3) and b = 10/11
EXTRACTION_ROW = "1.1"


def kx2_extracted_family(m: int) -> Fraction:
    """
    K^2 when the special curve is the (-m)-curve of [2, m, 2, 2, 2, 2] and extracting it
    lands on the retained pair of EXTRACTION_ROW. The closed form is
    (m - 9)^2 / ((10m - 13)(7m + 3)), equal to 1/6351 at m = 10.

    @param m:   weight of the special curve, at least 2
    """
    if m < 2:
        raise ValueError(f"need m >= 2, got {m}")
    row = table_row(EXTRACTION_ROW)
    lam = 1 - sum(Fraction(1, r) for r, _ in row.pairs)
    g = CyclicGerm([2, m, 2, 2, 2, 2])
    return kx2_from_special(discrepancies(g).b[1], curve_excess(g, 1), lam, row.b)


def nontail_bound(c: Fraction, e: Fraction, lambdas: Iterable[Fraction],
                  p_max: Fraction = P_MAX) -> Fraction:
    """
    min over p in [0, p_max] and lam in `lambdas` of kx2_from_special. The derivative in p
    has the sign of (p + c - 2)/lam - 2/e on p < c, so besides the endpoints only p = c and
    p = 2 - c + 2 lam/e can be extremal.
    """
    best = None
    for lam in lambdas:
        candidates = {Fraction(0), p_max}
        if 0 <= c <= p_max:
            candidates.add(c)
        crit = 2 - c + 2 * lam / e
        if 0 <= crit <= p_max:
            candidates.add(crit)
        for p in candidates:
            v = kx2_from_special(c, e, lam, p)
            if best is None or v < best:
                best = v
    return best if best is not None else Fraction(0)


def nontail_bounds(g: CyclicGerm) -> List[Tuple[int, Fraction]]:
    """
    @return: (chain index, lower bound of K^2) for every interior special curve with
             a(E) <= 1/6.4886
    """
    out = []
    if is_du_val(g):
        return out
    for v in special_valuations(g):
        if not is_interior(g, v) or 1 - v.c_e > TAIL_THRESHOLD:
            continue
        mt = mu_tau(g, v)
        lambdas = [mt.tau] + ([mt.mu] if mt.mu is not None else [])
        out.append((v.index, nontail_bound(v.c_e, v.e_e, lambdas)))
    return out


def f_nontail(b: Basket) -> bool:
    k2 = b.k2
    for g in b.germs:
        if not isinstance(g, CyclicGerm):
            continue
        for _, bound in nontail_bounds(g):
            if k2 < bound:
                return False
    return True


#
# Product inequality
#

def f_product(t: PlurigenusTable, n_max: int = DEFAULT_N_MAX) -> Optional[Tuple[int, int]]:
    """
    The first pair (a, b), ordered by a + b then a, with 2 <= a <= b, a + b <= n_max,
    P_a > 0, P_b > 0 and P_{a+b} < P_a + P_b - 1.
    """
    n_max = min(n_max, t.n_max)
    for total in range(4, n_max + 1):
        for a in range(2, total // 2 + 1):
            pa, pb = t[a], t[total - a]
            if pa > 0 and pb > 0 and t[total] < pa + pb - 1:
                return a, total - a
    return None
