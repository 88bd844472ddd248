import logging
import pathlib
from fractions import Fraction
from typing import Dict, Iterable, Optional, Union

import toml

from .data.artifacts.artifact import Artifact
from .data.rationals import format_rational, parse_rational
from .search import DEFAULT_MLD, DEFAULT_VOL_CAP, KLTBASKET_SUPPORTED_STAGES, STAGES
from .search.filters import DEFAULT_N_MAX

_l = logging.getLogger(name=__name__)

DELTA_SIGNS = {"auto": None, "+1": 1, "-1": -1}
LOG_LEVELS = {"DEBUG", "INFO", "WARNING", "ERROR"}


class RunConfig(Artifact):
    """
    Parameters of a run. Values come from the defaults, then a TOML file, then explicit
    command line flags; every merge is validated.

    :ivar a:            mld threshold of the germ universe
    :ivar vol_cap:      largest K^2 a basket may have
    :ivar n_max:        plurigenera are checked for n <= n_max
    :ivar probes:       family members compared against the exact family limit
    :ivar delta_sign:   "auto", "+1" or "-1"
    """
    __slots__ = Artifact.__slots__ + (
        "a",
        "vol_cap",
        "n_max",
        "shards",
        "out_dir",
        "stages",
        "probes",
        "delta_sign",
        "log_level",
    )

    def __init__(self, a: Fraction = DEFAULT_MLD, vol_cap: Fraction = DEFAULT_VOL_CAP,
                 n_max: int = DEFAULT_N_MAX, shards: int = 1, out_dir: str = "out",
                 stages: Iterable[str] = STAGES, probes: int = 10, delta_sign: str = "auto",
                 log_level: str = "INFO"):
        self.a = a
        self.vol_cap = vol_cap
        self.n_max = n_max
        self.shards = shards
        self.out_dir = out_dir
        self.stages = tuple(stages)
        self.probes = probes
        self.delta_sign = delta_sign
        self.log_level = log_level
        self.validate()

    def __str__(self):
        return f"<RunConfig: a={format_rational(self.a)} vol_cap={format_rational(self.vol_cap)} " \
               f"n_max={self.n_max}>"

    def __repr__(self):
        return self.__str__()

    def validate(self):
        for name in ("a", "vol_cap"):
            v = getattr(self, name)
            if not isinstance(v, Fraction) or v <= 0:
                raise ValueError(f"{name} must be a positive rational, got {v!r}")
        if self.a > 1:
            raise ValueError(f"a must be at most 1, got {format_rational(self.a)}")
        if not isinstance(self.n_max, int) or self.n_max < 2:
            raise ValueError(f"n_max must be an integer >= 2, got {self.n_max!r}")
        if not isinstance(self.shards, int) or self.shards < 1:
            raise ValueError(f"shards must be an integer >= 1, got {self.shards!r}")
        if not isinstance(self.probes, int) or self.probes < 1:
            raise ValueError(f"probes must be an integer >= 1, got {self.probes!r}")
        unknown = [s for s in self.stages if s not in KLTBASKET_SUPPORTED_STAGES]
        if unknown:
            raise ValueError(f"unknown stages {unknown}, expected some of {list(STAGES)}")
        if self.delta_sign not in DELTA_SIGNS:
            raise ValueError(f"delta_sign must be one of {list(DELTA_SIGNS)}, got {self.delta_sign!r}")
        if self.log_level not in LOG_LEVELS:
            raise ValueError(f"log_level must be one of {sorted(LOG_LEVELS)}, got {self.log_level!r}")

    @property
    def sign(self) -> Optional[int]:
        return DELTA_SIGNS[self.delta_sign]

    def merge(self, values: Dict) -> "RunConfig":
        """
        Overrides fields with `values`; None values are skipped so unset flags keep what the
        file or the defaults said.

        @raise ValueError: on an unknown key or an invalid value
        """
        state = self.__getstate__()
        for k, v in values.items():
            if k not in self.__slots__:
                raise ValueError(f"unknown configuration key {k!r}")
            if v is None:
                continue
            state[k] = _coerce(k, v)

        cfg = RunConfig.__new__(RunConfig)
        cfg.__setstate__(state)
        cfg.validate()
        return cfg

    def to_json(self) -> Dict:
        return {
            "a": format_rational(self.a),
            "vol_cap": format_rational(self.vol_cap),
            "n_max": self.n_max,
            "shards": self.shards,
            "out_dir": str(self.out_dir),
            "stages": list(self.stages),
            "probes": self.probes,
            "delta_sign": self.delta_sign,
            "log_level": self.log_level,
        }

    @classmethod
    def from_json(cls, d: Dict) -> "RunConfig":
        return cls().merge(d)

    @classmethod
    def load(cls, path: Union[str, pathlib.Path, None] = None, **overrides) -> "RunConfig":
        """
        Defaults, then the TOML file at `path` if given, then `overrides`.
        """
        cfg = cls()
        if path is not None:
            path = pathlib.Path(path)
            _l.debug("reading configuration from %s", path)
            cfg = cfg.merge(toml.loads(path.read_text(encoding="utf-8")))
        return cfg.merge(overrides)


def _coerce(key: str, v):
    if key in ("a", "vol_cap"):
        return parse_rational(v)
    if key in ("n_max", "shards", "probes"):
        if isinstance(v, bool) or not isinstance(v, int):
            raise ValueError(f"{key} must be an integer, got {v!r}")
        return v
    if key == "stages":
        if isinstance(v, str):
            v = [s.strip() for s in v.split(",") if s.strip()]
        return tuple(v)
    if key == "delta_sign":
        v = str(v)
        return {"1": "+1", "+1": "+1", "-1": "-1"}.get(v, v)
    if key == "log_level":
        return str(v).upper()
    return str(v)
