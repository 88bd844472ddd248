import logging
import time
from fractions import Fraction
from typing import Callable, Collection, Dict, List, Optional

from rich.progress import track

from . import (
    DEFAULT_VOL_CAP, F2_GAMMA, F3_SQUARE, F4_TAIL, F5_BLACHE, F6_NONTAIL, F7_PRODUCT,
    PUBLISHED_COUNTS, RESIDUAL_K2, STAGES,
)
from .basket_enum import enumerate_baskets
from .filters import (
    DEFAULT_N_MAX, calibrate_delta_sign, f_blache, f_complete_square, f_nontail, f_product,
    f_tail, plurigenus_table, residual_basket,
)
from ..data.artifacts import Basket, EliminationRecord, StageReport
from ..data.universe import GermUniverse

_l = logging.getLogger(name=__name__)


def _predicates(n_max: int, sign: int) -> Dict[str, Callable[[Basket], bool]]:
    return {
        F3_SQUARE: f_complete_square,
        F4_TAIL: f_tail,
        F5_BLACHE: lambda b: f_blache(b, n_max, sign),
        F6_NONTAIL: f_nontail,
    }


def run_pipeline(u: GermUniverse, vol_cap: Fraction = DEFAULT_VOL_CAP, n_max: int = DEFAULT_N_MAX,
                 stages: Collection[str] = STAGES, shards: int = 1, delta_sign: Optional[int] = None,
                 baskets: Optional[List[Basket]] = None) -> StageReport:
    """
    Enumerates the baskets of the universe (filters 1 and 2) and applies filters 3 to 7 in
    order, recording survivor counts per stage and every eliminated basket.

    @param delta_sign:  sign of the plurigenus correction, calibrated when None
    @param baskets:     already enumerated baskets, skipping the enumeration
    @return:            StageReport
    """
    report = StageReport()
    needs_sign = F5_BLACHE in stages or F7_PRODUCT in stages
    sign = delta_sign if delta_sign is not None else (calibrate_delta_sign(n_max) if needs_sign else None)
    report.delta_sign = sign

    if baskets is None:
        baskets = list(enumerate_baskets(u, vol_cap, shards=shards))
    survivors = list(baskets)
    report.record(F2_GAMMA, survivors)
    _l.info("after F1-F2: %s", report.count_tuple(F2_GAMMA))

    predicates = _predicates(n_max, sign)
    for stage in STAGES[2:]:
        if stage not in stages:
            continue
        start = time.time()
        keep = []
        for b in track(survivors, description=stage, transient=True):
            if stage == F7_PRODUCT:
                witness = f_product(plurigenus_table(b, n_max, sign), n_max)
                if witness is not None:
                    report.eliminated.append(EliminationRecord(b, stage, witness))
                    continue
            elif not predicates[stage](b):
                report.eliminated.append(EliminationRecord(b, stage))
                continue
            keep.append(b)

        report.record(stage, keep)
        _l.info("after %s: %s (%.1fs)", stage, report.count_tuple(stage), time.time() - start)
        if not keep and stage != F7_PRODUCT:
            _l.warning("no basket survives %s", stage)
        survivors = keep

    report.survivors = survivors
    mismatch = report.diff(PUBLISHED_COUNTS)
    if mismatch:
        _l.warning("stage counts differ from the published ones: %s", mismatch)
    return report


def is_expected(report: StageReport) -> bool:
    """
    True iff the cascade ran to the end and left exactly the residual basket.
    """
    if F7_PRODUCT not in report.stages or len(report.survivors) != 1:
        return False
    b = report.survivors[0]
    return b == residual_basket() and b.k2 == RESIDUAL_K2
