from fractions import Fraction
from typing import Dict, Tuple

from .artifact import Artifact
from .germ import Germ
from ..rationals import parse_rational


class GermInvariants(Artifact):
    """
    Exact invariants of a germ as stored in the germ universe.

    :ivar int r_x:      order of the local fundamental group
    :ivar mld:          minimal log discrepancy
    :ivar gamma:        n - sum b_i (e_i - 2)
    :ivar tag:          DuVal, A, D-I, D-II, E-I or E-II
    """
    __slots__ = Artifact.__slots__ + (
        "germ",
        "r_x",
        "mld",
        "gamma",
        "b",
        "tag",
    )

    def __init__(self, germ: Germ, r_x: int, mld: Fraction, gamma: Fraction,
                 b: Tuple[Fraction, ...] = (), tag: str = None):
        self.germ = germ
        self.r_x = r_x
        self.mld = mld
        self.gamma = gamma
        self.b = tuple(b)
        self.tag = tag

    def __str__(self):
        return f"<GermInvariants: {self.germ.label()} r={self.r_x} mld={self.mld} gamma={self.gamma}>"

    def __repr__(self):
        return self.__str__()

    @classmethod
    def from_json(cls, d: Dict) -> "GermInvariants":
        return cls(
            Germ.from_json(d["germ"]),
            int(d["r_x"]),
            parse_rational(d["mld"]),
            parse_rational(d["gamma"]),
            tuple(parse_rational(x) for x in d.get("b", ())),
            tag=d.get("tag"),
        )
