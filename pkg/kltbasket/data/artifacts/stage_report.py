from typing import Dict, List, Optional, Tuple

from .artifact import Artifact
from .basket import Basket

BASKET_SIZES = (1, 2, 3, 4, 5, 6)


class EliminationRecord(Artifact):
    """
    :ivar stage:    the filter that removed the basket
    :ivar witness:  the failing pair (a, b) for the product filter, None otherwise
    """
    __slots__ = Artifact.__slots__ + (
        "basket",
        "stage",
        "witness",
    )

    def __init__(self, basket: Basket, stage: str, witness: Optional[Tuple[int, int]] = None):
        self.basket = basket
        self.stage = stage
        self.witness = tuple(witness) if witness is not None else None

    def __str__(self):
        w = f" witness={self.witness}" if self.witness else ""
        return f"<EliminationRecord: {self.stage} {self.basket.label()}{w}>"

    def __repr__(self):
        return self.__str__()

    def to_json(self) -> Dict:
        return {
            "basket": self.basket.to_json(),
            "stage": self.stage,
            "witness": list(self.witness) if self.witness else None,
        }

    @classmethod
    def from_json(cls, d: Dict) -> "EliminationRecord":
        w = d.get("witness")
        return cls(Basket.from_json(d["basket"]), d["stage"], tuple(w) if w else None)


class StageReport(Artifact):
    """
    Survivor counts per filter stage, keyed by basket size, with the eliminated baskets and
    the final survivors.
    """
    __slots__ = Artifact.__slots__ + (
        "stages",
        "counts",
        "eliminated",
        "survivors",
        "delta_sign",
    )

    def __init__(self, stages: List[str] = None, counts: Dict[str, Dict[int, int]] = None,
                 eliminated: List[EliminationRecord] = None, survivors: List[Basket] = None,
                 delta_sign: int = None):
        self.stages = stages or []
        self.counts = counts or {}
        self.eliminated = eliminated or []
        self.survivors = survivors or []
        self.delta_sign = delta_sign

    def __str__(self):
        return f"<StageReport: stages={len(self.stages)} survivors={len(self.survivors)}>"

    def __repr__(self):
        return self.__str__()

    def __hash__(self):
        return hash(tuple(self.stages))

    def record(self, stage: str, baskets: List[Basket]):
        counts = {n: 0 for n in BASKET_SIZES}
        for b in baskets:
            counts[len(b)] += 1
        self.stages.append(stage)
        self.counts[stage] = counts

    def count_tuple(self, stage: str, sizes=(2, 3, 4)) -> Tuple[int, ...]:
        return tuple(self.counts[stage][n] for n in sizes)

    def total(self, stage: str) -> int:
        return sum(self.counts[stage].values())

    def is_monotone(self) -> bool:
        totals = [self.total(s) for s in self.stages]
        return all(a >= b for a, b in zip(totals, totals[1:]))

    def diff(self, expected: Dict[str, Tuple[int, ...]], sizes=(2, 3, 4)) -> Dict:
        """
        Compares the recorded counts against expected per-size counts.

        @param expected:    stage -> counts for `sizes`
        @return:            stage -> size -> {"before": expected, "after": recorded}, mismatches only
        """
        diff_dict = {}
        for stage, exp in expected.items():
            if stage not in self.counts:
                continue
            for n, e in zip(sizes, exp):
                got = self.counts[stage][n]
                if got == e:
                    continue
                diff_dict.setdefault(stage, {})[n] = {"before": e, "after": got}
        return diff_dict

    def to_json(self) -> Dict:
        return {
            "stages": list(self.stages),
            "counts": {s: {str(n): c for n, c in self.counts[s].items()} for s in self.stages},
            "eliminated": [r.to_json() for r in self.eliminated],
            "survivors": [b.to_json() for b in self.survivors],
            "delta_sign": self.delta_sign,
        }

    @classmethod
    def from_json(cls, d: Dict) -> "StageReport":
        return cls(
            list(d.get("stages", [])),
            {s: {int(n): int(c) for n, c in cs.items()} for s, cs in d.get("counts", {}).items()},
            [EliminationRecord.from_json(r) for r in d.get("eliminated", [])],
            [Basket.from_json(b) for b in d.get("survivors", [])],
            delta_sign=d.get("delta_sign"),
        )
