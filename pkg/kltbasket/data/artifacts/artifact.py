from fractions import Fraction
from typing import Dict

import toml
from toml.encoder import TomlEncoder

from ..rationals import format_rational


class TomlRationalEncoder(TomlEncoder):
    def __init__(self, _dict=dict, preserve=False):
        super(TomlRationalEncoder, self).__init__(_dict, preserve=preserve)
        self.dump_funcs[Fraction] = lambda v: '"' + format_rational(v) + '"'


def jsonable(v):
    """
    Turns artifact state into plain JSON values: Fractions become "p/q" strings,
    nested artifacts their own JSON form, tuples lists.
    """
    if isinstance(v, Artifact):
        return v.to_json()
    if isinstance(v, Fraction):
        return format_rational(v)
    if isinstance(v, dict):
        return {str(k): jsonable(val) for k, val in v.items()}
    if isinstance(v, (list, tuple)):
        return [jsonable(x) for x in v]
    return v


class Artifact:
    __slots__ = ()

    def __getstate__(self) -> Dict:
        """
        Returns a dict of all the properties of the artifact. With the key as their name
        and the value as their value.

        @return:
        """
        return dict(
            (k, getattr(self, k)) for k in self.__slots__
        )

    def __setstate__(self, state):
        """
        Sets all the properties of the artifact given a dict of keys and values.

        @param state: Dict
        @return:
        """
        for k in self.__slots__:
            setattr(self, k, state.get(k, None))

    def __eq__(self, other):
        if not isinstance(other, self.__class__):
            return False

        for k in self.__slots__:
            if k.startswith("_"):
                continue
            if getattr(self, k) != getattr(other, k):
                return False

        return True

    def __hash__(self):
        return hash(tuple(
            getattr(self, k) for k in self.__slots__ if not k.startswith("_")
        ))

    def dump(self) -> str:
        """
        Returns a string in TOML form of the properties of the current artifact. Rationals are
        written as "p/q" strings.

        @return:
        """
        state = {k: v for k, v in self.to_json().items() if v is not None}
        return toml.dumps(state, encoder=TomlRationalEncoder())

    def to_json(self) -> Dict:
        return {
            k: jsonable(getattr(self, k)) for k in self.__slots__ if not k.startswith("_")
        }

    def copy(self) -> "Artifact":
        cp = self.__class__.__new__(self.__class__)
        cp.__setstate__(self.__getstate__())
        return cp

    @classmethod
    def from_json(cls, d: Dict):
        raise NotImplementedError()

    @classmethod
    def parse(cls, s):
        """
        Parses a TOML form string.

        @param s:
        @return:
        """
        return cls.from_json(toml.loads(s))
