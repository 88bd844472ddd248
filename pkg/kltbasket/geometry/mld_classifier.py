"""
Finite description of all klt surface germs with mld >= a: finitely many isolated germs and
finitely many one-parameter families, as in the classification of cyclic quotient
singularities by the discrepancy of their special curve.
"""
import logging
from fractions import Fraction
from itertools import count
from math import floor, gcd
from typing import Dict, List, Tuple

from .germ_model import e2_germs, mld
from .hj import HJSeq, det_hj, seq_from_pair
from ..data.artifacts import (
    ClassifierOutput, CyclicGerm, DIIFamily, ForkGerm, Germ, GermFamily, MiddleFamily, TailFamily,
)

_l = logging.getLogger(name=__name__)

# E6, E7, E8
DU_VAL_FORKS = (
    ((2, 1), (3, 2), (3, 2)),
    ((2, 1), (3, 2), (4, 3)),
    ((2, 1), (3, 2), (5, 4)),
)


#
# Families
#

def family_member(f: GermFamily, s: int) -> Germ:
    if s < 0:
        raise ValueError(f"family parameter must be >= 0, got {s}")
    return f.member(s)


def family_limit(f: GermFamily) -> Fraction:
    """
    lim mld(member(s)) as s grows. Along a chain the log discrepancy of a curve is
    (det(left) + det(right)) / det(chain), and every determinant is affine in the number of
    inserted 2's, so the limit at a template curve is the ratio of the two slopes.
    """
    if isinstance(f, DIIFamily):
        return Fraction(1, f.m)

    chains = [f.member(s).chain for s in (0, 1)]
    positions = [f.template_positions(s) for s in (0, 1)]
    limit = Fraction(1)
    for p0, p1 in zip(*positions):
        if chains[0][p0] < 3:
            continue
        nums = [det_hj(c[:p]) + det_hj(c[p + 1:]) for c, p in zip(chains, (p0, p1))]
        dens = [det_hj(c) for c in chains]
        limit = min(limit, Fraction(nums[1] - nums[0], dens[1] - dens[0]))
    return limit


def verify_family(f: GermFamily, a: Fraction, probes: int = 10) -> bool:
    """
    Checks mld >= a on member(0..probes) and on the exact limit of the family.
    """
    if probes < 1:
        raise ValueError(f"probes must be >= 1, got {probes}")
    if a <= 0:
        return True
    if any(mld(f.member(s)) < a for s in range(probes + 1)):
        return False
    return family_limit(f) >= a


def expand_family(f: GermFamily, a: Fraction) -> List[Germ]:
    """
    Members with mld >= a of a family whose limit is below a. mld never increases with s,
    so the members form an initial segment.
    """
    out = []
    for s in count():
        g = f.member(s)
        if mld(g) < a:
            break
        out.append(g)
    return out


#
# A type
#

def _prefixes(a: Fraction):
    """
    Yields (prefix, r1, q1) where prefix = [e_1, ..., e_k] ends in e_k >= 3, r1 = det(prefix)
    and q1 = det(prefix without e_k), under (e_k - 2) q1 <= 2 (1/a - 1).
    """
    bound = 2 * (1 / a - 1)
    for e_k in count(3):
        if e_k - 2 > bound:
            break
        for q1 in count(1):
            if (e_k - 2) * q1 > bound:
                break
            for r1 in range((e_k - 1) * q1 + 1, e_k * q1 + 1):
                if gcd(r1, q1) != 1:
                    continue
                yield tuple(reversed(seq_from_pair(r1, q1))), r1, q1


def _suffix(r2: int, q2: int) -> HJSeq:
    return seq_from_pair(r2, q2) if q2 else ()


def a_type_candidates(a: Fraction) -> Tuple[List[Germ], List[GermFamily]]:
    """
    With A = q1 + d, B = r1 - q1, C = r1 d and d = r2 - q2 <= B, the special curve has log
    discrepancy (q2 + A) / (B q2 + C). If 1/B < a only finitely many q2 qualify; otherwise
    every q2 does and the germs form tail (d = 1) or middle (d >= 2) families.
    """
    isolated = []
    families = []
    for prefix, r1, q1 in _prefixes(a):
        B = r1 - q1
        for d in range(1, B + 1):
            A = q1 + d
            C = r1 * d
            if a * B > 1:
                q2_max = floor((A - a * C) / (a * B - 1))
                for q2 in range(0 if d == 1 else 1, q2_max + 1):
                    if d > 1 and gcd(q2, d) != 1:
                        continue
                    r2 = q2 + d
                    if q1 > r2:
                        continue
                    g = CyclicGerm(prefix + _suffix(r2, q2))
                    if mld(g) >= a:
                        isolated.append(g)
            elif d == 1:
                families.append(TailFamily(prefix))
            else:
                for v in range(1, d):
                    if gcd(v, d) == 1:
                        families.append(MiddleFamily(prefix, seq_from_pair(v + d, v)))
    return isolated, families


#
# Forks
#

def fork_candidates(a: Fraction) -> List[ForkGerm]:
    """
    Non Du Val forks of type D-I, E-I and E-II with mld >= a. D-I germs have
    mld = 1 / (r3 (e0 - 1) - q3).
    """
    inv = 1 / a
    out = []

    for e0 in count(3):
        if 2 * (e0 - 2) + 1 > inv:
            break
        for r3 in count(2):
            if r3 * (e0 - 2) + 1 > inv:
                break
            for q3 in range(1, r3):
                if gcd(r3, q3) == 1 and r3 * (e0 - 1) - q3 <= inv:
                    out.append(ForkGerm.from_pairs(e0, [(2, 1), (2, 1), (r3, q3)]))

    e_pairs = [((2, 1), (3, q2), (r3, q3)) for q2 in (1, 2) for r3 in (3, 4, 5)
               for q3 in range(1, r3) if gcd(r3, q3) == 1]
    for e0 in count(3):
        level = {}
        for pairs in e_pairs:
            g = ForkGerm.from_pairs(e0, pairs)
            if mld(g) >= a:
                level[g.key()] = g
        if not level:
            break
        out.extend(level.values())

    out.extend(g for g in e2_germs() if mld(g) >= a)
    return [g for g in out if mld(g) >= a]


#
# Driver
#

def _family_key(f: GermFamily) -> Tuple:
    return f.member(0).key(), f.member(1).key()


def classify_mld(a: Fraction) -> ClassifierOutput:
    """
    Isolated germs and families exhausting the klt surface germs with mld >= a.

    @param a:   threshold, 0 < a <= 1
    @return:    ClassifierOutput
    """
    a = Fraction(a)
    if not 0 < a <= 1:
        raise ValueError(f"mld threshold must satisfy 0 < a <= 1, got {a}")

    families: Dict[Tuple, GermFamily] = {}
    isolated: Dict[Tuple, Germ] = {}

    def add_family(f: GermFamily):
        families.setdefault(_family_key(f), f)

    def add_germ(g: Germ):
        isolated.setdefault(g.key(), g.canonical())

    # Du Val: A_n, D_n, E6, E7, E8
    add_family(TailFamily([2]))
    add_family(DIIFamily(1))
    for pairs in DU_VAL_FORKS:
        add_germ(ForkGerm.from_pairs(2, pairs))

    for m in range(2, floor(1 / a) + 1):
        for v in range(1, m):
            if gcd(m, v) == 1:
                add_family(DIIFamily(m, v))

    for g in fork_candidates(a):
        add_germ(g)

    a_isolated, a_families = a_type_candidates(a)
    for g in a_isolated:
        add_germ(g)

    expanded = 0
    for f in a_families:
        if _family_key(f) in families:
            continue
        if family_limit(f) >= a:
            add_family(f)
            continue
        for g in expand_family(f, a):
            add_germ(g)
            expanded += 1

    kept_families = list(families.values())
    kept_isolated = []
    duplicates = 0
    for g in isolated.values():
        if any(f.contains(g) is not None for f in kept_families):
            duplicates += 1
            continue
        kept_isolated.append(g)
    kept_isolated.sort(key=lambda g: (g.num_curves(), g.label()))

    _l.debug("classifier at a=%s: %d germs from truncated families, %d duplicates removed",
             a, expanded, duplicates)
    _l.info("mld >= %s: %d isolated germs, %d families", a, len(kept_isolated), len(kept_families))
    return ClassifierOutput(a, kept_isolated, kept_families, duplicates=duplicates)
