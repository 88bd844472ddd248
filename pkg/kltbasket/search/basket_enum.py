"""
The germ universe and the enumeration of baskets whose gamma sum lies in the window
[9 - vol_cap, 9), i.e. 0 < K^2 <= vol_cap, and that satisfy the Bogomolov bound.
"""
import logging
import time
from bisect import bisect_left
from fractions import Fraction
from multiprocessing import Pool
from typing import Callable, Iterator, List, Optional, Sequence, Tuple

from rich.progress import track

from . import DEFAULT_MLD, DEFAULT_VOL_CAP
from ..data.artifacts import Basket, ClassifierOutput
from ..data.artifacts.basket import GAMMA_TOTAL
from ..data.universe import GermUniverse
from ..geometry.germ_model import invariants
from ..geometry.mld_classifier import classify_mld

_l = logging.getLogger(name=__name__)

MAX_BASKET_SIZE = 6

# read-only copy of the sorted gamma column inside pool workers
_GAMMAS: List[Fraction] = []


#
# Universe
#

def build_universe(a: Fraction = DEFAULT_MLD, output: ClassifierOutput = None) -> GermUniverse:
    """
    Expands the classifier output up to L = 9 + 6N curves, N the largest sum (e - 2) of the
    output, and attaches exact invariants.

    @param a:       mld threshold
    @param output:  a precomputed classifier output for `a`
    @return:        GermUniverse
    """
    output = output or classify_mld(a)
    n_max = output.max_excess()
    cap = output.length_cap(MAX_BASKET_SIZE)
    _l.info("universe for a=%s: N=%d, L=%d", output.a, n_max, cap)

    universe = GermUniverse(output.a, cap, n_max)
    for g in output.isolated:
        if g.num_curves() <= cap:
            universe.add(invariants(g))
    for f in output.families:
        for g in f.members(cap):
            universe.add(invariants(g))

    _l.info("universe holds %d germs", len(universe))
    return universe


#
# Enumeration
#

def _window(gammas: Sequence[Fraction], lo: Fraction, hi: Fraction, start: int = 0) -> range:
    return range(max(bisect_left(gammas, lo), start), bisect_left(gammas, hi))


def _pairs(gammas: Sequence[Fraction], vol_cap: Fraction) -> List[Tuple[int, int]]:
    out = []
    for i, gi in enumerate(gammas):
        if 2 * gi >= GAMMA_TOTAL:
            break
        rest = GAMMA_TOTAL - gi
        out.extend((i, j) for j in _window(gammas, rest - vol_cap, rest, i))
    return out


def _triples(i_values: Sequence[int], gammas: Sequence[Fraction], vol_cap: Fraction) -> List[Tuple[int, int, int]]:
    """
    Triples i <= j <= k with the last gamma found by a range query. Stops as soon as the
    smallest completion leaves the window.
    """
    out = []
    if not gammas:
        return out
    g_max = gammas[-1]
    for i in i_values:
        gi = gammas[i]
        if 3 * gi >= GAMMA_TOTAL:
            break
        j_lo = max(i, bisect_left(gammas, GAMMA_TOTAL - vol_cap - gi - g_max))
        for j in range(j_lo, len(gammas)):
            gj = gammas[j]
            if gi + 2 * gj >= GAMMA_TOTAL:
                break
            rest = GAMMA_TOTAL - gi - gj
            out.extend((i, j, k) for k in _window(gammas, rest - vol_cap, rest, j))
    return out


def _init_worker(gammas: List[Fraction]):
    global _GAMMAS
    _GAMMAS = gammas


def _triples_shard(args) -> List[Tuple[int, int, int]]:
    shard, shards, vol_cap = args
    start = time.time()
    out = _triples(range(shard, len(_GAMMAS), shards), _GAMMAS, vol_cap)
    _l.debug("shard %d/%d: %d triples in %.1fs", shard, shards, len(out), time.time() - start)
    return out


def _bogomolov_dfs(orders: Sequence[int], gammas: Sequence[Fraction], size: int, vol_cap: Fraction,
                   window: Callable[[Fraction, Fraction], Sequence[int]]) -> List[Tuple[int, ...]]:
    """
    Baskets of `size` >= 4 germs with sum 1/r >= size - 3, chosen in (r, index) order. The
    remaining germs each add at most 1/r of the current one, which bounds the search; the
    last germ comes from the gamma window.

    @param window:  (lo, hi) -> indices of the germs with lo <= gamma < hi
    """
    by_r = sorted(range(len(orders)), key=lambda i: (orders[i], i))
    pos = {idx: p for p, idx in enumerate(by_r)}
    need = size - 3
    out = []

    def dfs(chosen: List[int], start: int, inv_sum: Fraction, gamma_sum: Fraction):
        if len(chosen) == size - 1:
            rest = GAMMA_TOTAL - gamma_sum
            for k in window(rest - vol_cap, rest):
                if pos[k] >= start and inv_sum + Fraction(1, orders[k]) >= need:
                    out.append(tuple(chosen) + (k,))
            return

        left = size - len(chosen)
        for p in range(start, len(by_r)):
            idx = by_r[p]
            if inv_sum + Fraction(left, orders[idx]) < need:
                break
            chosen.append(idx)
            dfs(chosen, p, inv_sum + Fraction(1, orders[idx]), gamma_sum + gammas[idx])
            chosen.pop()

    dfs([], 0, Fraction(0), Fraction(0))
    return out


def enumerate_baskets(u: GermUniverse, vol_cap: Fraction = DEFAULT_VOL_CAP,
                      max_size: int = MAX_BASKET_SIZE, shards: int = 1,
                      sizes: Optional[Sequence[int]] = None) -> Iterator[Basket]:
    """
    All baskets of 1..max_size germs of the universe with 9 - vol_cap <= sum gamma < 9 and
    sum (r - 1)/r <= 3, in canonical order.

    @param shards:  worker processes for the three-germ case, split over the first germ
    """
    if vol_cap <= 0:
        raise ValueError(f"volume cap must be positive, got {vol_cap}")

    invs = list(u)
    gammas = [inv.gamma for inv in invs]
    orders = [inv.r_x for inv in invs]
    sizes = sizes or range(1, max_size + 1)

    found: List[Tuple[int, ...]] = []
    for size in sizes:
        start = time.time()
        if size == 1:
            batch = [(i,) for i in u.gamma_range(GAMMA_TOTAL - vol_cap, GAMMA_TOTAL)]
        elif size == 2:
            batch = _pairs(gammas, vol_cap)
        elif size == 3:
            if shards > 1:
                batch = []
                jobs = [(s, shards, vol_cap) for s in range(shards)]
                with Pool(processes=shards, initializer=_init_worker, initargs=(gammas,)) as pool:
                    for part in track(pool.imap_unordered(_triples_shard, jobs), total=shards,
                                      description="triples", transient=True):
                        batch.extend(part)
            else:
                batch = _triples(range(len(gammas)), gammas, vol_cap)
        else:
            batch = _bogomolov_dfs(orders, gammas, size, vol_cap, u.gamma_range)
        _l.info("size %d: %d baskets (%.1fs)", size, len(batch), time.time() - start)
        found.extend(batch)

    baskets = [
        Basket([invs[i].germ for i in idx], [orders[i] for i in idx], [gammas[i] for i in idx])
        for idx in found
    ]
    baskets.sort()
    yield from baskets
