from fractions import Fraction
from typing import Dict, Iterable, List, Sequence, Tuple

from .artifact import Artifact
from ...geometry.hj import (
    HJSeq, InvalidSequenceError, canonical_chain, coprime_pair, pair_from_seq, seq_from_pair,
    validate_seq,
)


class InvalidGermError(ValueError):
    pass


class Germ(Artifact):
    """
    A klt surface germ given by the dual graph of its minimal resolution. Derived invariants
    are memoized in `_cache` and never take part in equality.
    """
    __slots__ = Artifact.__slots__ + (
        "_cache",
    )

    def __init__(self):
        self._cache = {}

    @property
    def cache(self) -> Dict:
        if self._cache is None:
            self._cache = {}
        return self._cache

    def key(self) -> Tuple:
        raise NotImplementedError()

    def weights(self) -> Tuple[int, ...]:
        """
        @return: the negated self-intersections of the exceptional curves
        """
        raise NotImplementedError()

    def adjacency(self) -> List[List[int]]:
        raise NotImplementedError()

    def num_curves(self) -> int:
        return len(self.weights())

    def label(self) -> str:
        raise NotImplementedError()

    def canonical(self) -> "Germ":
        return self

    def __eq__(self, other):
        return isinstance(other, Germ) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __lt__(self, other: "Germ"):
        return self.label() < other.label()

    def __str__(self):
        return f"<{self.__class__.__name__}: {self.label()}>"

    def __repr__(self):
        return self.__str__()

    @classmethod
    def from_json(cls, d: Dict) -> "Germ":
        """
        Decodes {"type": "A", "seq": [...]} or {"type": "fork", "e0": k, "branches": [[r, q], ...]}.
        """
        if not isinstance(d, dict):
            raise TypeError(f"germ encoding must be an object, got {type(d).__name__}")
        kind = d.get("type")
        try:
            if kind == "A":
                return CyclicGerm(d["seq"])
            if kind == "fork":
                branches = d["branches"]
                if len(branches) != 3:
                    raise InvalidGermError(f"a fork needs 3 branches, got {len(branches)}")
                return ForkGerm.from_pairs(d["e0"], [tuple(p) for p in branches])
        except KeyError as e:
            raise InvalidGermError(f"germ encoding misses field {e.args[0]!r}") from None
        except InvalidSequenceError as e:
            raise InvalidGermError(str(e)) from None
        raise InvalidGermError(f"unknown germ type {kind!r}")


class CyclicGerm(Germ):
    __slots__ = Germ.__slots__ + (
        "chain",
    )

    def __init__(self, chain: Iterable[int]):
        super(CyclicGerm, self).__init__()
        chain = validate_seq(chain)
        if not chain:
            raise InvalidGermError("a cyclic germ needs a nonempty chain")
        self.chain: HJSeq = chain

    def key(self) -> Tuple:
        return "A", canonical_chain(self.chain)

    def weights(self) -> Tuple[int, ...]:
        return self.chain

    def adjacency(self) -> List[List[int]]:
        n = len(self.chain)
        return [[j for j in (i - 1, i + 1) if 0 <= j < n] for i in range(n)]

    def canonical(self) -> "CyclicGerm":
        c = canonical_chain(self.chain)
        return self if c == self.chain else CyclicGerm(c)

    def label(self) -> str:
        return "[" + ",".join(str(e) for e in canonical_chain(self.chain)) + "]"

    def to_json(self) -> Dict:
        return {"type": "A", "seq": list(canonical_chain(self.chain))}


class ForkGerm(Germ):
    """
    Star-shaped graph: a center of weight e0 with three branches, each read outward from the
    center. Branches are kept sorted by their pairs (r, q).
    """
    __slots__ = Germ.__slots__ + (
        "e0",
        "branches",
    )

    def __init__(self, e0: int, branches: Sequence[Iterable[int]]):
        super(ForkGerm, self).__init__()
        if isinstance(e0, bool) or not isinstance(e0, int) or e0 < 2:
            raise InvalidGermError(f"fork center weight {e0!r} is not an integer >= 2")
        if len(branches) != 3:
            raise InvalidGermError(f"a fork needs 3 branches, got {len(branches)}")

        bs = []
        for b in branches:
            b = validate_seq(b)
            if not b:
                raise InvalidGermError("fork branches must be nonempty")
            bs.append(b)
        bs.sort(key=lambda b: tuple(pair_from_seq(b)))

        self.e0 = e0
        self.branches: Tuple[HJSeq, HJSeq, HJSeq] = tuple(bs)
        self._check_admissible()

    @classmethod
    def from_pairs(cls, e0: int, pairs: Sequence[Tuple[int, int]]) -> "ForkGerm":
        branches = []
        for p in pairs:
            if len(p) != 2:
                raise InvalidGermError(f"branch pair {list(p)} must have two entries")
            r, q = p
            try:
                branches.append(seq_from_pair(r, q))
            except InvalidSequenceError as e:
                raise InvalidGermError(f"branch {list(p)}: {e}") from None
        return cls(e0, branches)

    def pairs(self) -> Tuple[Tuple[int, int], ...]:
        return tuple(tuple(pair_from_seq(b)) for b in self.branches)

    def center_excess(self) -> Fraction:
        """
        e = e0 - sum q_i/r_i, the negated self-intersection of the center once every branch
        is contracted.
        """
        return self.e0 - sum(Fraction(q, r) for r, q in self.pairs())

    def _check_admissible(self):
        (r1, _), (r2, _), (r3, _) = self.pairs()
        if not (r1 == 2 and (r2 == 2 or (r2 == 3 and r3 <= 5))):
            raise InvalidGermError(f"fork branches not platonic: {(r1, r2, r3)}")
        if self.center_excess() <= 0:
            raise InvalidGermError(f"fork {self.label()} is not negative definite")

    def key(self) -> Tuple:
        return "fork", self.e0, self.branches

    def weights(self) -> Tuple[int, ...]:
        w = [self.e0]
        for b in self.branches:
            w.extend(b)
        return tuple(w)

    def adjacency(self) -> List[List[int]]:
        adj = [[]]
        offset = 1
        for b in self.branches:
            for i in range(len(b)):
                adj.append([])
                prev = 0 if i == 0 else offset + i - 1
                adj[offset + i].append(prev)
                adj[prev].append(offset + i)
            offset += len(b)
        return adj

    def branch_offset(self, branch: int) -> int:
        """
        @param branch:  0-based branch index
        @return:        graph index of the branch curve adjacent to the center
        """
        return 1 + sum(len(b) for b in self.branches[:branch])

    def label(self) -> str:
        return f"[{self.e0};" + ";".join(f"({r},{q})" for r, q in self.pairs()) + "]"

    def to_json(self) -> Dict:
        return {"type": "fork", "e0": self.e0, "branches": [list(p) for p in self.pairs()]}


def germ_from_label(s: str) -> Germ:
    """
    Parses the bracket notation "[2,7,2,2,2]" or "[2;(2,1);(3,2);(5,3)]".
    """
    s = s.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise InvalidGermError(f"malformed germ label {s!r}")
    body = s[1:-1]
    try:
        if ";" in body:
            head, *rest = body.split(";")
            pairs = []
            for part in rest:
                r, q = part.strip().strip("()").split(",")
                pairs.append((int(r), int(q)))
            return ForkGerm.from_pairs(int(head), pairs)
        return CyclicGerm(int(e) for e in body.split(","))
    except (TypeError, ValueError) as e:
        if isinstance(e, InvalidGermError):
            raise
        raise InvalidGermError(f"malformed germ label {s!r}: {e}") from None


def coprime_germ(r: int, q: int) -> CyclicGerm:
    coprime_pair(r, q)
    return CyclicGerm(seq_from_pair(r, q))
