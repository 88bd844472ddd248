from fractions import Fraction

import pytest

from kltbasket.data.artifacts import Basket, CyclicGerm, ForkGerm, PlurigenusTable
from kltbasket.geometry.germ_model import invariants
from kltbasket.search import DEFAULT_VOL_CAP, RESIDUAL_K2
from kltbasket.search.filters import (
    P_MAX, calibrate_delta_sign, f_blache, f_bogomolov, f_complete_square, f_gamma_window,
    f_nontail, f_product, f_tail, kx2_extracted_family, kx2_from_special, nontail_bound,
    nontail_bounds, plurigenus_table, residual_basket,
)


def _basket(*chains):
    germs = [CyclicGerm(c) for c in chains]
    invs = [invariants(g) for g in germs]
    return Basket(germs, [i.r_x for i in invs], [i.gamma for i in invs])


@pytest.fixture(scope="module")
def residual():
    return residual_basket()


def test_residual_basket(residual):
    assert sorted(residual.orders) == [46, 53, 56]
    assert residual.order_product == 136528
    assert residual.k2 == RESIDUAL_K2 == Fraction(1, 8533)
    assert f_bogomolov(residual)
    assert f_gamma_window(residual)
    assert f_complete_square(residual)
    assert f_tail(residual)
    assert f_nontail(residual)


def test_complete_square_rejects():
    assert not f_complete_square(_basket([3], [3]))


def test_complete_square_uses_the_fork_discriminant():
    d4 = ForkGerm.from_pairs(2, [(2, 1), (2, 1), (2, 1)])
    germs = [d4, CyclicGerm([2, 2])]
    invs = [invariants(g) for g in germs]
    b = Basket(germs, [i.r_x for i in invs], [i.gamma for i in invs])
    assert b.k2 == 3
    # the orders give 8 * 3 * 3 = 72, the discriminants 4 * 3 * 3 = 36
    assert b.order_product * b.k2 == 72
    assert f_complete_square(b)


def test_tail_rejects_short_end_curve():
    # a(E) = 1/7 on the single curve of [14]
    assert not f_tail(_basket([14], [2]))
    assert f_tail(_basket([7], [2]))


def test_special_curve_volume():
    c, e = Fraction(20, 23), Fraction(23, 4)
    assert kx2_from_special(c, e, Fraction(1, 8), Fraction(6, 7)) == Fraction(1, 8533)
    with pytest.raises(ValueError):
        kx2_from_special(c, Fraction(0), Fraction(1, 8), Fraction(0))


def test_extracted_family_volume():
    assert kx2_extracted_family(10) == DEFAULT_VOL_CAP == Fraction(1, 6351)
    assert kx2_extracted_family(9) == 0
    for m in list(range(2, 9)) + list(range(11, 60)):
        k2 = kx2_extracted_family(m)
        assert k2 == Fraction((m - 9) ** 2, (10 * m - 13) * (7 * m + 3)), m
        assert k2 > DEFAULT_VOL_CAP, m
    assert all(kx2_extracted_family(m) >= Fraction(1, 3953) for m in range(2, 9))
    with pytest.raises(ValueError):
        kx2_extracted_family(1)


def test_nontail_bound_is_the_minimum():
    c, e = Fraction(20, 23), Fraction(23, 4)
    lambdas = [Fraction(1, 2), Fraction(1, 20)]
    bound = nontail_bound(c, e, lambdas)
    grid = [P_MAX * Fraction(k, 200) for k in range(201)]
    assert bound <= min(kx2_from_special(c, e, lam, p) for lam in lambdas for p in grid)
    assert 0 < bound < RESIDUAL_K2


def test_nontail_bound_vanishes_when_c_is_reachable():
    assert nontail_bound(Fraction(6, 7), Fraction(56, 15), [Fraction(2, 3)]) == 0


def test_nontail_bounds_of_residual_germ():
    ((index, bound),) = nontail_bounds(CyclicGerm([2, 7, 2, 2, 2]))
    assert index == 2
    assert bound < RESIDUAL_K2
    assert nontail_bounds(CyclicGerm([2, 2])) == []


def test_plurigenus_table_arguments(residual):
    with pytest.raises(ValueError):
        plurigenus_table(residual, n_max=1)
    with pytest.raises(ValueError):
        plurigenus_table(residual, n_max=10, sign=0)


def test_plurigenera_of_residual(residual):
    t = plurigenus_table(residual, n_max=60)
    assert t.n_max == 60
    assert t[0] == 1
    assert t.first_invalid() is None
    assert f_blache(residual, 60, 1, table=t)
    assert f_blache(residual, 60, 1)
    assert f_product(t, 60) is None


def test_delta_sign():
    assert calibrate_delta_sign(60) == 1


def test_product_witness():
    t = PlurigenusTable(Fraction(0), [Fraction(v) for v in (1, 0, 2, 2, 2)])
    assert f_product(t) == (2, 2)
    t = PlurigenusTable(Fraction(0), [Fraction(v) for v in (1, 0, 2, 2, 3)])
    assert f_product(t) is None
    # P_2 = 0 never takes part
    t = PlurigenusTable(Fraction(0), [Fraction(v) for v in (1, 0, 0, 1, 0)])
    assert f_product(t) is None
