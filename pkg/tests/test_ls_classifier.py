from fractions import Fraction

import pytest

from kltbasket.data.artifacts import CyclicGerm, LSCase, coprime_germ
from kltbasket.geometry.germ_model import discrepancies
from kltbasket.ls import (
    B_MIN, CASE_OFF_S, CASE_ON_S_3, CASE_ON_S_4, COEFF_CAP, EXCLUDED_B_BOUND, EXCLUDED_MINUS_ONE,
    EXCLUDED_MMP, OPEN, RETAINED, RETAINED_2A, RETAINED_2B, RETAINED_2C, S_Y_SQ_MIN, UNLISTED,
)
from kltbasket.ls.ls_classifier import (
    T_MIN, case_from_row, classify_ls, coeff_cap, coefficient_vector, enumerate_ls,
    extended_discrepancies, minus_one_filter, mmp_filter, off_s_candidates, off_s_pair,
    on_s_candidates, s_y_squared, solve_b, table_diff, verdict,
)
from kltbasket.ls.tables import (
    CLASSIFICATION_ROWS, MINUS_ONE_EXCLUSIONS, MMP_EXCLUSIONS, OPEN_ROWS, lookup, table_row,
)

F = Fraction

B_BOUND_ROWS = {"1.4", "1.6", "1.8", "1.9", "1.11", "3.2", "3.3", "3.4", "3.5", "3.9", "3.12", "3.14"}

EXPECTED_VERDICTS = {
    "1.1": RETAINED_2B,
    "1.5": RETAINED_2A,
    "1.7": RETAINED_2C,
    "2.1": EXCLUDED_MINUS_ONE,
    "3.1": OPEN,
    **{label: EXCLUDED_B_BOUND for label in B_BOUND_ROWS},
    **{label: EXCLUDED_MINUS_ONE for label in MINUS_ONE_EXCLUSIONS},
    **{label: EXCLUDED_MMP for label in MMP_EXCLUSIONS},
}


@pytest.fixture(scope="module")
def rows():
    return {row.label: case_from_row(row) for row in CLASSIFICATION_ROWS}


def test_table_shape():
    assert len(CLASSIFICATION_ROWS) == 29
    assert set(EXPECTED_VERDICTS) == {row.label for row in CLASSIFICATION_ROWS}
    assert table_row("3.1").off_s == (11, 5)
    assert lookup(((2, 1), (5, 4), (7, 3))).label == "1.1"
    assert lookup(((2, 1), (5, 4), (7, 3)), (4, 1)).label == "3.6"
    with pytest.raises(KeyError):
        table_row("4.1")


def test_solve_b():
    assert solve_b([F(1), F(4), F(18, 7)], [2, 5, 7]) == F(10, 11)
    # (K_X + S).S < 0
    assert solve_b([F(1), F(1)], [2, 2]) is None
    # irrational root
    assert solve_b([F(1), F(4), F(2)], [2, 5, 7]) is None


def test_threshold_is_consistent():
    assert B_MIN * B_MIN / (1 - B_MIN) == T_MIN
    assert F(6, 7) < B_MIN < F(7, 8)


def test_s_y_squared(rows):
    assert s_y_squared(rows["1.1"]) == 0
    assert s_y_squared(rows["1.2"]) == 1
    assert s_y_squared(rows["2.2"]) == 9
    assert s_y_squared(rows["3.5"]) == 4


@pytest.mark.parametrize("label", ["3.1", "3.2", "3.3", "3.4"])
def test_rows_with_a_minus_one_strict_transform(rows, label):
    c = rows[label]
    assert s_y_squared(c) == -1
    # the (-1)-curve filter cannot apply when S_Y itself may be the curve
    assert minus_one_filter(c.b, coefficient_vector(c), c.s_y_sq)


def test_enumeration_keeps_minus_one_rows():
    labels = {c.label for c in enumerate_ls(order_cap=7)}
    assert {"3.1", "3.2", "3.3", "3.4"} <= labels


def test_extended_discrepancies():
    assert extended_discrepancies((3, 1), F(10, 11)) == [F(7, 11)]
    assert extended_discrepancies((4, 1), F(10, 11)) == [F(8, 11)]
    assert extended_discrepancies((9, 5), F(15, 17)) == [F(28, 34), F(26, 34)]
    for r, q in ((7, 3), (22, 19), (11, 5), (46, 25)):
        assert extended_discrepancies((r, q), F(0)) == list(discrepancies(coprime_germ(r, q)).b)


def test_coeff_cap_is_attained():
    for c in on_s_candidates(30):
        if c.b_cap >= 1:
            continue
        assert c.b_cap > B_MIN
        assert max(extended_discrepancies(c.pair, c.b_cap)) == COEFF_CAP
        assert all(x < COEFF_CAP for x in extended_discrepancies(c.pair, (B_MIN + c.b_cap) / 2))


def test_coeff_cap_of_a_single_curve():
    # [3]: b_1 = (1 + b)/3, never reaches 6/7
    assert coeff_cap(3, 1) == 1


def test_rows_resolve(rows):
    for label, c in rows.items():
        orders = [r for r, _ in c.pairs]
        assert solve_b(c.gammas, orders) == c.b, label
        y = s_y_squared(c)
        assert y.denominator == 1 and y >= S_Y_SQ_MIN, label
        assert all(x < COEFF_CAP for x in coefficient_vector(c)), label


def test_row_cases(rows):
    assert rows["1.1"].case == CASE_ON_S_3
    assert rows["2.2"].case == CASE_ON_S_4
    assert rows["3.6"].case == CASE_OFF_S
    assert rows["3.6"].off_s == CyclicGerm([4])


@pytest.mark.parametrize("label", sorted(MINUS_ONE_EXCLUSIONS))
def test_minus_one_exclusions(rows, label):
    c = rows[label]
    expected = MINUS_ONE_EXCLUSIONS[label]
    assert coefficient_vector(c) == list(expected.coeffs)
    assert s_y_squared(c) == expected.s_y_sq
    assert not minus_one_filter(c.b, expected.coeffs, expected.s_y_sq)


@pytest.mark.parametrize("label", sorted(MMP_EXCLUSIONS))
def test_mmp_exclusions(rows, label):
    c = rows[label]
    expected = MMP_EXCLUSIONS[label]
    coeffs = coefficient_vector(c)
    assert coeffs[:-1] == list(expected.on_s_coeffs)
    assert coeffs[-1] == expected.b41
    assert minus_one_filter(c.b, coeffs, c.s_y_sq)
    assert not mmp_filter(c.b, expected.on_s_coeffs, expected.b41)


def test_minus_one_curve_on_s():
    assert minus_one_filter(F(10, 11), [F(2, 3)], F(-1))


def test_open_row_has_a_unit_coefficient(rows):
    assert F(1, 11) in coefficient_vector(rows["3.1"])
    assert OPEN_ROWS == {"3.1"}


def test_verdicts(rows):
    for label, c in rows.items():
        assert verdict(c) == EXPECTED_VERDICTS[label], label


def test_unlabelled_case_is_unlisted():
    c = LSCase(CASE_ON_S_3, [(2, 1), (3, 1), (7, 1)], F(9, 10), [F(1)] * 3, F(0))
    assert verdict(c) == UNLISTED


def test_candidates_cover_the_table():
    on_s = {c.pair for c in on_s_candidates(40)}
    off_s = {off_s_pair(o.germ) for o in off_s_candidates()}
    for row in CLASSIFICATION_ROWS:
        assert set(row.pairs) <= on_s, row.label
        if row.off_s is not None:
            assert row.off_s in off_s, row.label


def test_off_s_candidates():
    off = off_s_candidates()
    assert all(o.order <= 42 for o in off)
    assert [o.order for o in off] == sorted(o.order for o in off)
    assert all(max(discrepancies(o.germ).b) < COEFF_CAP for o in off)
    forks = [o for o in off if off_s_pair(o.germ) is None]
    assert forks
    assert off_s_pair(CyclicGerm([2, 2, 2, 2, 3])) == (11, 5)


def _check_enumeration(cases):
    labels = [c.label for c in cases]
    assert sorted(labels, key=str) == sorted((row.label for row in CLASSIFICATION_ROWS), key=str)
    missing, extra = table_diff(cases)
    assert missing == [] and extra == []
    classify_ls(cases)
    survivors = {c.label for c in cases if c.verdict in RETAINED or c.verdict == OPEN}
    assert survivors == {"1.1", "1.5", "1.7", "3.1"}


def test_enumeration_with_small_points_on_s():
    _check_enumeration(enumerate_ls(order_cap=40))


@pytest.mark.slow
def test_full_enumeration():
    _check_enumeration(enumerate_ls())
