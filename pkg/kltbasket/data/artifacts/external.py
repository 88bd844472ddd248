from fractions import Fraction
from typing import Dict

from sortedcontainers import SortedDict

from .artifact import Artifact
from ..rationals import format_rational, parse_rational


class ExternalPlurigenusRecord(Artifact):
    """
    Plurigenus values P_n of one surface taken from a third-party table. Values are kept as
    exact rationals so that non-integral entries can be reported rather than rejected.
    """
    __slots__ = Artifact.__slots__ + (
        "label",
        "P",
        "metadata",
    )

    def __init__(self, label: str, P: Dict[int, Fraction] = None, metadata: Dict = None):
        self.label = label
        self.P: Dict[int, Fraction] = SortedDict(P or {})
        self.metadata = metadata or {}

    def __str__(self):
        return f"<ExternalPlurigenusRecord: {self.label} n<={self.n_max()}>"

    def __repr__(self):
        return self.__str__()

    def __hash__(self):
        return hash((self.label, tuple(self.P.items())))

    def n_max(self) -> int:
        return self.P.keys()[-1] if self.P else 0

    def to_json(self) -> Dict:
        d = {
            "label": self.label,
            "P": {str(n): format_rational(v) for n, v in self.P.items()},
        }
        if self.metadata:
            d["metadata"] = dict(self.metadata)
        return d

    @classmethod
    def from_json(cls, d: Dict) -> "ExternalPlurigenusRecord":
        if not isinstance(d, dict):
            raise TypeError(f"record must be an object, got {type(d).__name__}")
        if "label" not in d or "P" not in d:
            raise ValueError("record needs 'label' and 'P'")
        P = {int(n): parse_rational(v) for n, v in d["P"].items()}
        return cls(str(d["label"]), P, metadata=d.get("metadata"))
