from fractions import Fraction
from typing import Dict, Optional, Sequence, Tuple

from .artifact import Artifact
from .germ import CyclicGerm, Germ
from ..rationals import format_rational, parse_rational
from ...geometry.hj import pair_from_seq

Pair = Tuple[int, int]


class LSCase(Artifact):
    """
    A candidate configuration of a plt pair (X, bS): germs on S given by their pairs (r, q),
    with E_1 the curve meeting S, and for case 3 one further germ off S.

    :ivar case:     1 (three germs on S), 2 (four germs on S) or 3 (three on S, one off S)
    :ivar label:    row label of the published table, None for rows it does not list
    :ivar verdict:  outcome of the exclusion filters, see ls.ls_classifier
    """
    __slots__ = Artifact.__slots__ + (
        "case",
        "pairs",
        "off_s",
        "b",
        "gammas",
        "s_y_sq",
        "label",
        "verdict",
    )

    def __init__(self, case: int, pairs: Sequence[Pair], b: Fraction, gammas: Sequence[Fraction],
                 s_y_sq: Fraction, off_s: Optional[Germ] = None, label: str = None,
                 verdict: str = None):
        self.case = case
        self.pairs: Tuple[Pair, ...] = tuple(tuple(p) for p in pairs)
        self.off_s = off_s
        self.b = b
        self.gammas = tuple(gammas)
        self.s_y_sq = s_y_sq
        self.label = label
        self.verdict = verdict

    def __str__(self):
        return f"<LSCase: {self.label or '-'} {self.pairs_label()} b={format_rational(self.b)}>"

    def __repr__(self):
        return self.__str__()

    def __hash__(self):
        return hash((self.case, self.pairs, self.off_s, self.b))

    def __eq__(self, other):
        return isinstance(other, LSCase) and (self.case, self.pairs, self.off_s, self.b) == \
            (other.case, other.pairs, other.off_s, other.b)

    def off_s_label(self) -> Optional[str]:
        if self.off_s is None:
            return None
        if isinstance(self.off_s, CyclicGerm):
            r, q = pair_from_seq(self.off_s.chain)
            q = min(q, pow(q, -1, r)) if r > 1 else q
            return f"({r},{q})"
        return self.off_s.label()

    def pairs_label(self) -> str:
        parts = [f"({r},{q})" for r, q in self.pairs]
        if self.off_s is not None:
            parts.append(self.off_s_label())
        return "[" + ",".join(parts) + "]"

    def key(self) -> Tuple:
        return self.pairs, (self.off_s.label() if self.off_s is not None else "")

    def to_json(self) -> Dict:
        return {
            "case": self.case,
            "pairs": [list(p) for p in self.pairs],
            "off_s": self.off_s.to_json() if self.off_s is not None else None,
            "b": format_rational(self.b),
            "gammas": [format_rational(g) for g in self.gammas],
            "s_y_sq": format_rational(self.s_y_sq),
            "label": self.label,
            "verdict": self.verdict,
        }

    @classmethod
    def from_json(cls, d: Dict) -> "LSCase":
        off_s = d.get("off_s")
        return cls(
            int(d["case"]),
            [tuple(p) for p in d["pairs"]],
            parse_rational(d["b"]),
            [parse_rational(g) for g in d.get("gammas", [])],
            parse_rational(d["s_y_sq"]),
            off_s=Germ.from_json(off_s) if off_s else None,
            label=d.get("label"),
            verdict=d.get("verdict"),
        )
