from fractions import Fraction
from typing import Dict, List, Optional

from .artifact import Artifact
from ..rationals import format_rational, parse_rational


class PlurigenusTable(Artifact):
    """
    P_n for n = 0..n_max as exact rationals. On an actual surface every entry is a
    non-negative integer.

    :ivar sign:     the sign the correction terms enter with
    """
    __slots__ = Artifact.__slots__ + (
        "k2",
        "P",
        "sign",
    )

    def __init__(self, k2: Fraction, P: List[Fraction], sign: int = 1):
        self.k2 = k2
        self.P = list(P)
        self.sign = sign

    def __str__(self):
        return f"<PlurigenusTable: K2={self.k2} n<={self.n_max}>"

    def __repr__(self):
        return self.__str__()

    def __hash__(self):
        return hash((self.k2, tuple(self.P), self.sign))

    def __getitem__(self, n: int) -> Fraction:
        return self.P[n]

    @property
    def n_max(self) -> int:
        return len(self.P) - 1

    def first_invalid(self, start: int = 2) -> Optional[int]:
        """
        @return: the smallest n >= start whose P_n is not a non-negative integer, or None
        """
        for n in range(start, len(self.P)):
            v = self.P[n]
            if v.denominator != 1 or v < 0:
                return n
        return None

    def to_json(self) -> Dict:
        return {
            "k2": format_rational(self.k2),
            "P": [format_rational(v) for v in self.P],
            "sign": self.sign,
        }

    @classmethod
    def from_json(cls, d: Dict) -> "PlurigenusTable":
        return cls(parse_rational(d["k2"]), [parse_rational(v) for v in d["P"]], int(d.get("sign", 1)))
