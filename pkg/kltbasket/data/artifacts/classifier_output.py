from fractions import Fraction
from typing import Dict, List, Optional

from .artifact import Artifact
from .family import GermFamily
from .germ import Germ
from ..rationals import format_rational, parse_rational


class ClassifierOutput(Artifact):
    """
    Every klt surface germ with mld >= a is either one of `isolated` or a member of one of
    `families`, and never both.

    :ivar a:            the threshold
    :ivar duplicates:   isolated candidates dropped because a family already covers them
    """
    __slots__ = Artifact.__slots__ + (
        "a",
        "isolated",
        "families",
        "duplicates",
        "_isolated_index",
    )

    def __init__(self, a: Fraction, isolated: List[Germ] = None, families: List[GermFamily] = None,
                 duplicates: int = 0):
        self.a = a
        self.isolated = isolated or []
        self.families = families or []
        self.duplicates = duplicates
        self._isolated_index = None

    def __str__(self):
        return f"<ClassifierOutput: a={self.a} isolated={len(self.isolated)} families={len(self.families)}>"

    def __repr__(self):
        return self.__str__()

    def __hash__(self):
        return hash((self.a, len(self.isolated), len(self.families)))

    def max_excess(self) -> int:
        """
        N: the largest sum (e - 2) over an isolated germ or a family template.
        """
        vals = [sum(e - 2 for e in g.weights()) for g in self.isolated]
        vals += [f.excess() for f in self.families]
        return max(vals, default=0)

    def length_cap(self, max_germs: int = 6) -> int:
        return 9 + max_germs * self.max_excess()

    def covers(self, g: Germ) -> bool:
        # rebuilt whenever isolated grows
        if self._isolated_index is None or self._isolated_index[0] != len(self.isolated):
            self._isolated_index = (len(self.isolated), frozenset(self.isolated))
        return g in self._isolated_index[1] or self.family_of(g) is not None

    def family_of(self, g: Germ) -> Optional[GermFamily]:
        for f in self.families:
            if f.contains(g) is not None:
                return f
        return None

    def to_json(self) -> Dict:
        return {
            "a": format_rational(self.a),
            "isolated": [g.to_json() for g in self.isolated],
            "families": [f.to_json() for f in self.families],
            "duplicates": self.duplicates,
        }

    @classmethod
    def from_json(cls, d: Dict) -> "ClassifierOutput":
        return cls(
            parse_rational(d["a"]),
            [Germ.from_json(g) for g in d.get("isolated", [])],
            [GermFamily.from_json(f) for f in d.get("families", [])],
            duplicates=int(d.get("duplicates", 0)),
        )
