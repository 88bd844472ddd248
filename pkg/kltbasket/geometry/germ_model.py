"""
Numerical model of a klt germ from its minimal resolution graph: discrepancies, mld,
gamma, local fundamental group order and discriminant, special valuations, and the
plurigenus correction delta_n.
"""
import logging
from fractions import Fraction
from math import floor, lcm
from typing import List, NamedTuple, Optional, Sequence, Tuple

from . import A_TYPE, D_I_TYPE, D_II_TYPE, DU_VAL, E_I_TYPE, E_II_TYPE
from .hj import contract_ehjs, det_hj
from ..data.artifacts.germ import CyclicGerm, ForkGerm, Germ, InvalidGermError
from ..data.artifacts.invariants import GermInvariants

_l = logging.getLogger(name=__name__)

# lower bound of e_E over every E-II germ, attained by [2;(2,1);(3,2);(5,3)]
E2_MIN_EXCESS = Fraction(7, 30)


class DiscrepancyData(NamedTuple):
    b: Tuple[Fraction, ...]
    e: Tuple[int, ...]


class SpecialValuation(NamedTuple):
    """
    :ivar kind:     "chain" (cyclic germ), "fork" (the center) or "branch" (D-II)
    :ivar index:    1-based chain index, or 1-based position on the third branch; 0 for the center
    :ivar vertex:   index of the curve in the germ's weight vector
    """
    kind: str
    index: int
    vertex: int
    c_e: Fraction
    e_e: Fraction


class MuTau(NamedTuple):
    mu: Optional[Fraction]
    tau: Fraction


#
# Linear algebra on trees
#

def solve_intersection_system(weights: Sequence[int], adjacency: Sequence[Sequence[int]],
                              rhs: Sequence[Fraction]) -> List[Fraction]:
    """
    Solves Q x = rhs for the positive form Q (Q_ii = e_i, Q_ij = -1 on edges) of a tree by
    eliminating leaves first, so no fill-in ever happens.

    @raise ArithmeticError: if a pivot is not positive, i.e. the graph is not negative definite
    """
    n = len(weights)
    if n == 0:
        return []

    parent = [-1] * n
    bfs = [0]
    seen = {0}
    for v in bfs:
        for u in adjacency[v]:
            if u not in seen:
                seen.add(u)
                parent[u] = v
                bfs.append(u)

    pivot = [Fraction(w) for w in weights]
    red = [Fraction(x) for x in rhs]
    for v in reversed(bfs):
        if pivot[v] <= 0:
            raise ArithmeticError(f"non-positive pivot at curve {v}: graph is not negative definite")
        p = parent[v]
        if p >= 0:
            pivot[p] -= 1 / pivot[v]
            red[p] += red[v] / pivot[v]

    x = [Fraction(0)] * n
    for v in bfs:
        p = parent[v]
        x[v] = (red[v] + (x[p] if p >= 0 else 0)) / pivot[v]
    return x


def prefix_dets(seq: Sequence[int]) -> List[int]:
    """
    @return: [det[], det[e_1], det[e_1, e_2], ...]
    """
    dets = [1]
    prev = 0
    for e in seq:
        dets.append(e * dets[-1] - prev)
        prev = dets[-2]
    return dets


def discrepancies(g: Germ) -> DiscrepancyData:
    """
    Coefficients b_i of f^*K_X = K_Y + sum b_i E_i, from (K_Y + B).E_j = 0 for every j.
    """
    cached = g.cache.get("discrepancies")
    if cached is not None:
        return cached

    e = g.weights()
    if isinstance(g, CyclicGerm):
        # log discrepancy of E_i is (det[e_1..e_{i-1}] + det[e_{i+1}..e_n]) / det[e]
        left, right = prefix_dets(e), prefix_dets(e[::-1])[::-1]
        r = left[-1]
        b = [1 - Fraction(left[i] + right[i + 1], r) for i in range(len(e))]
    else:
        b = solve_intersection_system(e, g.adjacency(), [Fraction(w - 2) for w in e])
    if any(not 0 <= bi < 1 for bi in b):
        raise ArithmeticError(f"{g.label()} has a discrepancy outside [0, 1)")

    data = DiscrepancyData(tuple(b), e)
    g.cache["discrepancies"] = data
    return data


def is_du_val(g: Germ) -> bool:
    return all(e == 2 for e in g.weights())


def classify(g: Germ) -> str:
    if is_du_val(g):
        return DU_VAL
    if isinstance(g, CyclicGerm):
        return A_TYPE

    r2 = g.pairs()[1][0]
    if r2 == 2:
        return D_II_TYPE if g.e0 == 2 else D_I_TYPE
    return E_II_TYPE if g.e0 == 2 else E_I_TYPE


def mld(g: Germ) -> Fraction:
    if is_du_val(g):
        return Fraction(1)
    return 1 - max(discrepancies(g).b)


def gamma(g: Germ) -> Fraction:
    """
    gamma_x = n - sum b_i (e_i - 2)
    """
    data = discrepancies(g)
    return len(data.e) - sum(bi * (ei - 2) for bi, ei in zip(data.b, data.e))


def order(g: Germ) -> int:
    """
    Order of the local fundamental group. Forks use the Seifert data: 4e/chi^2 with
    e = e0 - sum q_i/r_i and chi = -1 + sum 1/r_i.
    """
    if isinstance(g, CyclicGerm):
        return det_hj(g.chain)

    e = g.center_excess()
    chi = -1 + sum(Fraction(1, r) for r, _ in g.pairs())
    val = 4 * e / (chi * chi)
    if val.denominator != 1 or val <= 0:
        raise ArithmeticError(f"fork order of {g.label()} is {val}, not a positive integer")
    return val.numerator


def discriminant(g: Germ) -> int:
    """
    Absolute determinant of the intersection matrix of the resolution graph, the order of
    the first homology of the link. Equals the order for cyclic germs; a fork gives
    r1 * r2 * r3 * e.
    """
    if isinstance(g, CyclicGerm):
        return det_hj(g.chain)

    val = g.center_excess()
    for r, _ in g.pairs():
        val *= r
    if val.denominator != 1 or val <= 0:
        raise ArithmeticError(f"fork discriminant of {g.label()} is {val}, not a positive integer")
    return val.numerator


def curve_excess(g: Germ, vertex: int) -> Fraction:
    """
    e_E of a single exceptional curve: once every other curve is contracted it has
    self-intersection -1/(Q^-1)_vv.
    """
    unit = [Fraction(0)] * g.num_curves()
    unit[vertex] = Fraction(1)
    x = solve_intersection_system(g.weights(), g.adjacency(), unit)
    return 1 / x[vertex]


def special_valuations(g: Germ) -> List[SpecialValuation]:
    if is_du_val(g):
        raise InvalidGermError(f"{g.label()} is Du Val and has no special valuation")

    b = discrepancies(g).b
    if isinstance(g, CyclicGerm):
        out = []
        chain = g.chain
        for k, e in enumerate(chain):
            if e < 3:
                continue
            left = chain[:k][::-1]
            right = chain[k + 1:]
            s_sq, _ = contract_ehjs(Fraction(-e), left)
            s_sq, _ = contract_ehjs(s_sq, right)
            out.append(SpecialValuation("chain", k + 1, k, b[k], -s_sq))
        return out

    if classify(g) == D_II_TYPE:
        third = g.branches[2]
        m = next(i for i, e in enumerate(third) if e >= 3)
        vertex = g.branch_offset(2) + m
        return [SpecialValuation("branch", m + 1, vertex, b[vertex], curve_excess(g, vertex))]

    return [SpecialValuation("fork", 0, 0, b[0], curve_excess(g, 0))]


def side_orders(g: CyclicGerm, v: SpecialValuation) -> Tuple[int, int]:
    k = v.vertex
    return det_hj(g.chain[:k]), det_hj(g.chain[k + 1:])


def is_interior(g: Germ, v: SpecialValuation) -> bool:
    return isinstance(g, CyclicGerm) and 0 < v.vertex < len(g.chain) - 1


def mu_tau(g: Germ, v: SpecialValuation) -> MuTau:
    """
    tau = min(1 - 1/r1, 1 - 1/r2); mu = min of 1 - 1/r1 - 1/r2 - 1/r over the r making it
    positive, absent when no r does.
    """
    if not is_interior(g, v):
        raise InvalidGermError(f"valuation {v.index} of {g.label()} is not interior to a chain")

    r1, r2 = side_orders(g, v)
    tau = min(1 - Fraction(1, r1), 1 - Fraction(1, r2))
    base = 1 - Fraction(1, r1) - Fraction(1, r2)
    if base <= 0:
        return MuTau(None, tau)
    r = floor(1 / base) + 1
    return MuTau(base - Fraction(1, r), tau)


def delta_period(g: Germ) -> int:
    return lcm(*(bi.denominator for bi in discrepancies(g).b))


def delta_n(g: Germ, n: int) -> Fraction:
    """
    Local correction (1/2)(K_Y + {nB}).{nB} of the plurigenus formula, evaluated on the
    resolution graph of the germ. Periodic in n with period dividing the order.
    """
    if n < 0:
        raise ValueError(f"delta_n needs n >= 0, got {n}")

    period = delta_period(g)
    n_red = n % period
    table = g.cache.setdefault("delta", {})
    if n_red in table:
        return table[n_red]

    data = discrepancies(g)
    f = [n_red * bi - floor(n_red * bi) for bi in data.b]
    linear = sum(fi * (ei - 2) for fi, ei in zip(f, data.e))
    quad = -sum(ei * fi * fi for fi, ei in zip(f, data.e))
    for i, nbrs in enumerate(g.adjacency()):
        for j in nbrs:
            if i < j:
                quad += 2 * f[i] * f[j]

    val = (linear + quad) / 2
    table[n_red] = val
    return val


#
# E-II germs of small volume
#

def e2_germs() -> List[ForkGerm]:
    """
    Every non Du Val E-II germ: center 2, branches (2,1), (3,q2), (r3,q3) with r3 <= 5.
    """
    found = {}
    for q2 in (1, 2):
        for r3 in (3, 4, 5):
            for q3 in range(1, r3):
                try:
                    g = ForkGerm.from_pairs(2, [(2, 1), (3, q2), (r3, q3)])
                except InvalidGermError:
                    continue
                if not is_du_val(g):
                    found[g.key()] = g
    return list(found.values())


def enumerate_e2_small(bound_vol: Fraction = Fraction(1, 6351),
                       n_cap: Fraction = Fraction(5, 6)) -> List[Tuple[ForkGerm, Fraction, Fraction]]:
    """
    E-II germs that can carry a special valuation with n_E <= n_cap on a surface of volume
    at most bound_vol: K^2 >= (c - n)^2 e with e >= 7/30 leaves c <= n_cap or
    (c - n_cap)^2 * 7/30 <= bound_vol.

    @return: rows (germ, e_x, c_x) sorted by (c_x, branch pairs)
    """
    if bound_vol <= 0:
        return []

    rows = []
    for g in e2_germs():
        sv = special_valuations(g)[0]
        c, e = sv.c_e, sv.e_e
        if c <= n_cap or (c - n_cap) ** 2 * E2_MIN_EXCESS <= bound_vol:
            rows.append((g, e, c))

    rows.sort(key=lambda row: (row[2], row[0].pairs()))
    _l.debug("%d E-II germs below the volume bound %s", len(rows), bound_vol)
    return rows


def invariants(g: Germ) -> GermInvariants:
    data = discrepancies(g)
    return GermInvariants(g, order(g), mld(g), gamma(g), data.b, tag=classify(g))
