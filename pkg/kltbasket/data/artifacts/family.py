from typing import Dict, Iterable, List, Optional, Tuple

from .artifact import Artifact
from .germ import CyclicGerm, ForkGerm, Germ, InvalidGermError
from ...geometry.hj import HJSeq, seq_from_pair, validate_seq


class GermFamily(Artifact):
    """
    A one-parameter family of germs; member(s) inserts s curves of weight 2 at a fixed place
    of a template.
    """
    __slots__ = Artifact.__slots__
    kind = None

    def member(self, s: int) -> Germ:
        raise NotImplementedError()

    def contains(self, g: Germ) -> Optional[int]:
        """
        @return: the parameter s with member(s) == g, or None
        """
        raise NotImplementedError()

    def template_positions(self, s: int) -> List[int]:
        """
        @return: graph indices, in member(s), of the curves that are not inserted 2's
        """
        raise NotImplementedError()

    def min_curves(self) -> int:
        return self.member(0).num_curves()

    def excess(self) -> int:
        """
        sum (e - 2) over the template; inserted curves add nothing.
        """
        return sum(e - 2 for e in self.member(0).weights())

    def members(self, max_curves: int) -> Iterable[Germ]:
        s = 0
        while self.min_curves() + s <= max_curves:
            yield self.member(s)
            s += 1

    def __str__(self):
        return f"<{self.__class__.__name__}: {self.label()}>"

    def __repr__(self):
        return self.__str__()

    def label(self) -> str:
        raise NotImplementedError()

    @classmethod
    def from_json(cls, d: Dict) -> "GermFamily":
        if not isinstance(d, dict):
            raise TypeError(f"family encoding must be an object, got {type(d).__name__}")
        kind = d.get("kind")
        try:
            if kind == TailFamily.kind:
                return TailFamily(d["prefix"])
            if kind == MiddleFamily.kind:
                return MiddleFamily(d["prefix"], d["suffix"])
            if kind == DIIFamily.kind:
                return DIIFamily(int(d["m"]), int(d.get("v", 0)))
        except KeyError as e:
            raise InvalidGermError(f"family encoding misses field {e.args[0]!r}") from None
        raise InvalidGermError(f"unknown family kind {kind!r}")


def _strip_chain(chain: HJSeq, prefix: HJSeq, suffix: HJSeq) -> Optional[int]:
    n, p, q = len(chain), len(prefix), len(suffix)
    if n < p + q or chain[:p] != prefix or chain[n - q:] != suffix:
        return None
    middle = chain[p:n - q]
    if any(e != 2 for e in middle):
        return None
    return len(middle)


class TailFamily(GermFamily):
    """
    [e_1, ..., e_k, 2, ..., 2] with s trailing 2's. The prefix [2] gives the A_n series.
    """
    __slots__ = GermFamily.__slots__ + (
        "prefix",
    )
    kind = "tail"

    def __init__(self, prefix: Iterable[int]):
        prefix = validate_seq(prefix)
        if not prefix:
            raise InvalidGermError("a tail family needs a nonempty prefix")
        self.prefix: HJSeq = prefix

    def member(self, s: int) -> CyclicGerm:
        return CyclicGerm(self.prefix + (2,) * s)

    def template_positions(self, s: int) -> List[int]:
        return list(range(len(self.prefix)))

    def contains(self, g: Germ) -> Optional[int]:
        if not isinstance(g, CyclicGerm):
            return None
        for chain in (g.chain, g.chain[::-1]):
            s = _strip_chain(chain, self.prefix, ())
            if s is not None:
                return s
        return None

    def label(self) -> str:
        return "[" + ",".join(str(e) for e in self.prefix) + ",2*s]"

    def to_json(self) -> Dict:
        return {"kind": self.kind, "prefix": list(self.prefix)}


class MiddleFamily(GermFamily):
    """
    [e_1, ..., e_k, 2, ..., 2, e_l, ..., e_n] with s inserted 2's.
    """
    __slots__ = GermFamily.__slots__ + (
        "prefix",
        "suffix",
    )
    kind = "middle"

    def __init__(self, prefix: Iterable[int], suffix: Iterable[int]):
        prefix, suffix = validate_seq(prefix), validate_seq(suffix)
        if not prefix or not suffix:
            raise InvalidGermError("a middle family needs a nonempty prefix and suffix")
        self.prefix: HJSeq = prefix
        self.suffix: HJSeq = suffix

    def member(self, s: int) -> CyclicGerm:
        return CyclicGerm(self.prefix + (2,) * s + self.suffix)

    def template_positions(self, s: int) -> List[int]:
        k = len(self.prefix)
        return list(range(k)) + [k + s + j for j in range(len(self.suffix))]

    def contains(self, g: Germ) -> Optional[int]:
        if not isinstance(g, CyclicGerm):
            return None
        for chain in (g.chain, g.chain[::-1]):
            s = _strip_chain(chain, self.prefix, self.suffix)
            if s is not None:
                return s
        return None

    def label(self) -> str:
        return ("[" + ",".join(str(e) for e in self.prefix) + ",2*s,"
                + ",".join(str(e) for e in self.suffix) + "]")

    def to_json(self) -> Dict:
        return {"kind": self.kind, "prefix": list(self.prefix), "suffix": list(self.suffix)}


class DIIFamily(GermFamily):
    """
    Forks [2;(2,1);(2,1);(r,q)] with r - q = m. The third branch is [2]*s + HJ(m+v, v),
    i.e. r = (s+1)m + v and q = sm + v. m = 1 is the Du Val D_n series, third branch [2]*(s+1).
    """
    __slots__ = GermFamily.__slots__ + (
        "m",
        "v",
    )
    kind = "d2"

    def __init__(self, m: int, v: int = 0):
        if m < 1:
            raise InvalidGermError(f"D-II family needs m >= 1, got {m}")
        if m == 1:
            v = 0
        elif not 1 <= v < m:
            raise InvalidGermError(f"D-II family needs 1 <= v < m, got v={v}, m={m}")
        self.m = m
        self.v = v

    def third_pair(self, s: int) -> Tuple[int, int]:
        if self.m == 1:
            return s + 2, s + 1
        return (s + 1) * self.m + self.v, s * self.m + self.v

    def member(self, s: int) -> ForkGerm:
        r, q = self.third_pair(s)
        return ForkGerm(2, [(2,), (2,), seq_from_pair(r, q)])

    def template_positions(self, s: int) -> List[int]:
        # center, the two (2,1) branches and the curves of HJ(m+v, v) at the far end
        tail = 1 if self.m == 1 else len(seq_from_pair(self.m + self.v, self.v))
        n = 3 + s + tail
        return [0, 1, 2] + list(range(n - tail, n))

    def contains(self, g: Germ) -> Optional[int]:
        if not isinstance(g, ForkGerm) or g.e0 != 2:
            return None
        (p1, p2, (r, q)) = g.pairs()
        if p1 != (2, 1) or p2 != (2, 1) or r - q != self.m:
            return None
        if self.m == 1:
            return q - 1
        if q < self.v or (q - self.v) % self.m:
            return None
        return (q - self.v) // self.m

    def label(self) -> str:
        if self.m == 1:
            return "[2;(2,1);(2,1);(s+2,s+1)]"
        return f"[2;(2,1);(2,1);({self.m}(s+1)+{self.v},{self.m}s+{self.v})]"

    def to_json(self) -> Dict:
        return {"kind": self.kind, "m": self.m, "v": self.v}
