"""
Checks plurigenus sequences taken from third-party tables: every P_n has to be a non-negative
integer and P_{a+b} >= P_a + P_b - 1 whenever P_a and P_b are positive.
"""
import csv
import json
import logging
import pathlib
from fractions import Fraction
from typing import Dict, List, NamedTuple, Optional, Tuple, Union

from ..data.artifacts import ExternalPlurigenusRecord
from ..data.rationals import parse_rational

_l = logging.getLogger(name=__name__)


class ExternalCheck(NamedTuple):
    label: str
    non_integral: Tuple[int, ...]
    negative: Tuple[int, ...]
    product: Optional[Tuple[int, int]]

    @property
    def ok(self) -> bool:
        return not self.non_integral and not self.negative and self.product is None


class LineError(NamedTuple):
    line: int
    message: str


#
# Readers
#

def _read_csv(path: pathlib.Path) -> Tuple[List[ExternalPlurigenusRecord], List[LineError]]:
    values: Dict[str, Dict[int, Fraction]] = {}
    errors = []
    with open(path, encoding="utf-8", newline="") as fp:
        reader = csv.DictReader(fp)
        missing = {"label", "n", "P"} - set(reader.fieldnames or [])
        if missing:
            raise ValueError(f"{path}: missing columns {sorted(missing)}")
        for row in reader:
            try:
                n = int(row["n"])
                values.setdefault(row["label"], {})[n] = parse_rational(row["P"])
            except (TypeError, ValueError) as e:
                errors.append(LineError(reader.line_num, str(e)))
    return [ExternalPlurigenusRecord(label, P) for label, P in values.items()], errors


def _read_jsonl(path: pathlib.Path) -> Tuple[List[ExternalPlurigenusRecord], List[LineError]]:
    records, errors = [], []
    with open(path, encoding="utf-8") as fp:
        for lineno, line in enumerate(fp, start=1):
            if not line.strip():
                continue
            try:
                records.append(ExternalPlurigenusRecord.from_json(json.loads(line)))
            except (TypeError, ValueError) as e:
                errors.append(LineError(lineno, str(e)))
    return records, errors


def read_external(src: Union[str, pathlib.Path]) -> Tuple[List[ExternalPlurigenusRecord], List[LineError]]:
    """
    Reads CSV (columns label, n, P) or JSON lines ({"label": ..., "P": {"n": "value"}}),
    chosen by the file suffix. Malformed lines are collected, not raised.

    @return: (records, per-line errors)
    """
    path = pathlib.Path(src)
    if path.suffix.lower() == ".csv":
        records, errors = _read_csv(path)
    else:
        records, errors = _read_jsonl(path)
    for err in errors:
        _l.warning("%s:%d: %s", path, err.line, err.message)
    return records, errors


#
# Checks
#

def product_witness(P: Dict[int, Fraction], start: int = 2) -> Optional[Tuple[int, int]]:
    """
    The first (a, b), ordered by a + b then a, with start <= a <= b whose three values are
    all known and violate the product inequality.
    """
    known = [n for n in P if n >= start]
    if not known:
        return None
    top = max(known)
    for total in range(2 * start, top + 1):
        if total not in P:
            continue
        for a in range(start, total // 2 + 1):
            b = total - a
            if a not in P or b not in P:
                continue
            pa, pb = P[a], P[b]
            if pa > 0 and pb > 0 and P[total] < pa + pb - 1:
                return a, b
    return None


def check_record(rec: ExternalPlurigenusRecord, start: int = 2, n_max: Optional[int] = None) -> ExternalCheck:
    """
    @param n_max:   values P_n with n > n_max are ignored; None checks every value
    """
    P = {n: v for n, v in rec.P.items() if n >= start and (n_max is None or n <= n_max)}
    non_integral = tuple(n for n, v in P.items() if v.denominator != 1)
    negative = tuple(n for n, v in P.items() if v < 0)
    return ExternalCheck(rec.label, non_integral, negative, product_witness(P, start))


def filter_external(src: Union[str, pathlib.Path],
                    n_max: Optional[int] = None) -> Tuple[List[ExternalCheck], List[LineError]]:
    records, errors = read_external(src)
    checks = [check_record(r, n_max=n_max) for r in records]
    failed = sum(1 for c in checks if not c.ok)
    _l.info("%d sequences read, %d fail, %d malformed lines", len(checks), failed, len(errors))
    return checks, errors
