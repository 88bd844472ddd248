import json
import logging
import pathlib
from fractions import Fraction
from functools import wraps
from typing import Dict, Iterable, Iterator, List, Optional, Union

from sortedcontainers import SortedKeyList

from .artifacts import GermInvariants
from .rationals import format_rational, parse_rational

_l = logging.getLogger(name=__name__)


#
# Helper Funcs
#

def dirty_checker(f):
    @wraps(f)
    def dirtycheck(self, *args, **kwargs):
        r = f(self, *args, **kwargs)
        if r is True:
            self._dirty = True
        return r

    return dirtycheck


def _gamma_key(inv: GermInvariants):
    return inv.gamma, inv.germ.label()


#
# Universe Defn & Operators
#

class GermUniverse:
    """
    The finite set of germs a basket may be built from, sorted by gamma so that the germs
    with gamma in a window are found by a key range query.

    :ivar a:            mld threshold the universe was built for
    :ivar length_cap:   L, the largest number of exceptional curves of a germ
    :ivar max_excess:   N, the largest sum (e - 2) over the classifier output
    """

    def __init__(self, a: Fraction, length_cap: int = None, max_excess: int = None,
                 germs: Iterable[GermInvariants] = ()):
        self.a = a
        self.length_cap = length_cap
        self.max_excess = max_excess

        self.germs: SortedKeyList = SortedKeyList(key=_gamma_key)
        self._by_key: Dict = {}
        for inv in germs:
            self.add(inv)

        self._dirty = True

    def __len__(self):
        return len(self.germs)

    def __iter__(self) -> Iterator[GermInvariants]:
        return iter(self.germs)

    def __getitem__(self, idx: int) -> GermInvariants:
        return self.germs[idx]

    def __contains__(self, germ):
        return germ.key() in self._by_key

    def __eq__(self, other):
        if isinstance(other, GermUniverse):
            return other.a == self.a and list(other.germs) == list(self.germs)
        return False

    def __str__(self):
        return f"<GermUniverse: a={self.a} germs={len(self.germs)} L={self.length_cap}>"

    def __repr__(self):
        return self.__str__()

    @property
    def dirty(self):
        return self._dirty

    @dirty_checker
    def add(self, inv: GermInvariants) -> bool:
        key = inv.germ.key()
        if key in self._by_key:
            return False
        self._by_key[key] = inv
        self.germs.add(inv)
        return True

    def get(self, germ) -> Optional[GermInvariants]:
        return self._by_key.get(germ.key(), None)

    #
    # Queries
    #

    def gamma_range(self, lo: Fraction, hi: Fraction, start: int = 0) -> List[int]:
        """
        Indices i >= start of the germs with lo <= gamma < hi.
        """
        if lo >= hi:
            return []
        i = max(self.germs.bisect_key_left((lo, "")), start)
        j = self.germs.bisect_key_left((hi, ""))
        return list(range(i, j))

    def gammas(self) -> List[Fraction]:
        return [inv.gamma for inv in self.germs]

    #
    # Dump & Load
    #

    def dump_metadata(self) -> Dict:
        return {
            "a": format_rational(self.a) if self.a is not None else None,
            "length_cap": self.length_cap,
            "max_excess": self.max_excess,
            "size": len(self.germs),
        }

    def dump(self, dst: Union[str, pathlib.Path]):
        """
        Writes JSON-lines: one metadata record, then one germ per line in gamma order.
        """
        dst = pathlib.Path(dst)
        dst.parent.mkdir(parents=True, exist_ok=True)
        with open(dst, "w", encoding="utf-8") as fp:
            fp.write(json.dumps({"metadata": self.dump_metadata()}) + "\n")
            for inv in self.germs:
                fp.write(json.dumps(inv.to_json()) + "\n")
        self._dirty = False

    @classmethod
    def parse(cls, src: Union[str, pathlib.Path]) -> "GermUniverse":
        src = pathlib.Path(src)
        universe = None
        with open(src, "r", encoding="utf-8") as fp:
            for lineno, line in enumerate(fp, 1):
                line = line.strip()
                if not line:
                    continue
                d = json.loads(line)
                if "metadata" in d:
                    meta = d["metadata"]
                    a = parse_rational(meta["a"]) if meta.get("a") is not None else None
                    universe = cls(a, meta.get("length_cap"),
                                   meta.get("max_excess"))
                    continue
                if universe is None:
                    raise ValueError(f"{src}:{lineno}: germ record before the metadata record")
                universe.add(GermInvariants.from_json(d))

        if universe is None:
            _l.warning("%s holds no germs, using an empty universe", src)
            universe = cls(None)
        _l.info("loaded %d germs from %s", len(universe), src)
        universe._dirty = False
        return universe
