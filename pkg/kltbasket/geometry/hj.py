"""
Hirzebruch-Jung strings: determinants, the (r, a) <-> string correspondence and the
intersection arithmetic of contracting a string attached to a curve.

A string is a tuple of integers >= 2. The empty tuple is a valid string and stands for
"nothing attached" (its determinant is 1).
"""
import logging
from fractions import Fraction
from math import gcd
from typing import Iterable, NamedTuple, Sequence, Tuple

_l = logging.getLogger(name=__name__)

HJSeq = Tuple[int, ...]


class InvalidSequenceError(ValueError):
    pass


class CoprimePair(NamedTuple):
    r: int
    a: int

    def __str__(self):
        return f"({self.r},{self.a})"


def validate_seq(seq: Iterable[int]) -> HJSeq:
    """
    Returns the string as a tuple, rejecting entries that are not integers >= 2.
    """
    seq = tuple(seq)
    for e in seq:
        if isinstance(e, bool) or not isinstance(e, int):
            raise InvalidSequenceError(f"entry {e!r} of {list(seq)} is not an integer")
        if e < 2:
            raise InvalidSequenceError(f"entry {e} of {list(seq)} is below 2")
    return seq


def coprime_pair(r: int, a: int) -> CoprimePair:
    if not r > a >= 1:
        raise InvalidSequenceError(f"pair ({r},{a}) violates r > a >= 1")
    if gcd(r, a) != 1:
        raise InvalidSequenceError(f"pair ({r},{a}) is not coprime")
    return CoprimePair(r, a)


def det_hj(seq: Sequence[int]) -> int:
    """
    det[e1..en] = e1*det[e2..en] - det[e3..en], with det[] = 1.
    """
    cur, nxt = 1, 0
    for e in reversed(seq):
        cur, nxt = e * cur - nxt, cur
    return cur


def seq_from_pair(r: int, a: int) -> HJSeq:
    """
    The unique string with det = r and det(tail) = a.

    @param r:   order
    @param a:   coprime, 1 <= a < r
    @return:    HJSeq
    """
    coprime_pair(r, a)
    seq = []
    while a:
        e = -(-r // a)
        seq.append(e)
        r, a = a, e * a - r
    return tuple(seq)


def pair_from_seq(seq: Sequence[int]) -> CoprimePair:
    if not seq:
        raise InvalidSequenceError("the empty string has no pair")
    return CoprimePair(det_hj(seq), det_hj(seq[1:]))


def contract_ehjs(s_y_sq: Fraction, seq: Sequence[int]) -> Tuple[Fraction, Fraction]:
    """
    Contracting the string `seq` (read outward from a curve S) raises S^2 by q/r, and q/r is
    also the multiplicity of the pullback of S along the first curve of the string.

    @return: (new S^2, multiplicity)
    """
    if not seq:
        return Fraction(s_y_sq), Fraction(0)
    r, q = det_hj(seq), det_hj(seq[1:])
    mult = Fraction(q, r)
    return s_y_sq + mult, mult


def canonical_chain(seq: Sequence[int]) -> HJSeq:
    seq = tuple(seq)
    rev = seq[::-1]
    return min(seq, rev)


def dual_pair(r: int, a: int) -> CoprimePair:
    """
    The pair of the reversed string: (r, a^-1 mod r).
    """
    return CoprimePair(r, pow(a, -1, r)) if r > 1 else CoprimePair(r, a)
