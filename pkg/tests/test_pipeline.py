import json
from fractions import Fraction

import pytest

from kltbasket.data.artifacts import Basket, CyclicGerm, EliminationRecord
from kltbasket.data.universe import GermUniverse
from kltbasket.geometry.germ_model import invariants
from kltbasket.reports import ELIMINATED_FILE, PRODUCT_FILE, STAGE_REPORT_FILE, SURVIVORS_FILE
from kltbasket.reports.writers import basket_table, product_rows, stage_table, write_pipeline_reports
from kltbasket.search import (
    DEFAULT_MLD, F2_GAMMA, F3_SQUARE, F6_NONTAIL, F7_PRODUCT, PUBLISHED_COUNTS, STAGES,
)
from kltbasket.search.basket_enum import build_universe
from kltbasket.search.filters import DEFAULT_N_MAX, plurigenus_table, residual_basket
from kltbasket.search.pipeline import is_expected, run_pipeline


def _basket(*chains):
    germs = [CyclicGerm(c) for c in chains]
    invs = [invariants(g) for g in germs]
    return Basket(germs, [i.r_x for i in invs], [i.gamma for i in invs])


@pytest.fixture(scope="module")
def report():
    baskets = [residual_basket(), _basket([3], [3])]
    return run_pipeline(GermUniverse(Fraction(5, 46)), n_max=120, baskets=baskets)


def test_cascade_ends_in_residual_basket(report):
    assert report.stages == [F2_GAMMA] + list(STAGES[2:])
    assert report.delta_sign == 1
    assert is_expected(report)
    assert report.is_monotone()


def test_elimination_is_recorded(report):
    assert report.count_tuple(F2_GAMMA) == (1, 1, 0)
    assert report.count_tuple(F3_SQUARE) == (0, 1, 0)
    (rec,) = report.eliminated
    assert rec.stage == F3_SQUARE
    assert rec.witness is None
    assert "F3" in report.diff({F3_SQUARE: (0, 0, 0)})


def test_partial_cascade_is_not_expected():
    r = run_pipeline(GermUniverse(Fraction(5, 46)), stages=("F1", "F2", "F3"),
                     baskets=[residual_basket()])
    assert r.delta_sign is None
    assert r.stages == [F2_GAMMA, F3_SQUARE]
    assert not is_expected(r)


def test_du_val_universe_has_no_baskets():
    u = build_universe(Fraction(1))
    r = run_pipeline(u, stages=("F1", "F2"))
    assert r.total(F2_GAMMA) == 0
    assert not is_expected(r)


def test_reports(report, tmp_path):
    paths = write_pipeline_reports(report, tmp_path)
    summary = json.loads((tmp_path / STAGE_REPORT_FILE).read_text(encoding="utf-8"))
    assert summary["stages"][0] == F2_GAMMA
    assert summary["delta_sign"] == 1

    survivors = (tmp_path / SURVIVORS_FILE).read_text(encoding="utf-8").splitlines()
    assert len(survivors) == 1
    assert json.loads(survivors[0])["K2"] == "1/8533"

    eliminated = (tmp_path / ELIMINATED_FILE).read_text(encoding="utf-8").splitlines()
    assert eliminated[0] == "basket,stage,K2,witness_a,witness_b"
    assert eliminated[1].startswith('"{[3], [3]}",F3,')
    assert paths["product"] == tmp_path / PRODUCT_FILE
    product = (tmp_path / "appendix_b.csv").read_text(encoding="utf-8").splitlines()
    assert product == ["germ1,germ2,germ3,K2,witness_a,witness_b"]


def test_product_rows():
    b = _basket([2, 7, 2, 2, 2], [3])
    rows = product_rows([EliminationRecord(b, F7_PRODUCT, (2, 3)), EliminationRecord(b, F3_SQUARE)])
    assert len(rows) == 1
    germ1, germ2, germ3, k2, a, w = rows[0]
    assert {germ1, germ2} == {"[2, 2, 2, 7, 2]", "[3]"}
    assert germ3 == ""
    assert (a, w) == (2, 3)


def test_product_rows_ignore_orientation():
    rows = [
        product_rows([EliminationRecord(_basket(chain, [3]), F7_PRODUCT, (2, 3))])[0]
        for chain in ([2, 2, 5, 2, 3], [3, 2, 5, 2, 2])
    ]
    assert rows[0] == rows[1]
    assert "[2, 2, 5, 2, 3]" in rows[0]


def test_console_tables(report):
    assert stage_table(report).row_count == len(report.stages)
    assert basket_table(report.survivors).row_count == 1


@pytest.fixture(scope="module")
def full_report():
    return run_pipeline(build_universe(DEFAULT_MLD))


@pytest.mark.slow
def test_full_cascade_leaves_the_residual_basket(full_report):
    assert full_report.is_monotone()
    assert is_expected(full_report)
    assert all(rec.basket != residual_basket() for rec in full_report.eliminated)


@pytest.mark.slow
def test_full_cascade_counts(full_report):
    assert full_report.diff(PUBLISHED_COUNTS) == {}


@pytest.mark.slow
def test_full_cascade_product_witnesses(full_report):
    records = [rec for rec in full_report.eliminated if rec.stage == F7_PRODUCT]
    assert len(records) == full_report.total(F6_NONTAIL) - 1
    for rec in records:
        a, b = rec.witness
        t = plurigenus_table(rec.basket, DEFAULT_N_MAX, full_report.delta_sign)
        assert t[a] > 0 and t[b] > 0
        assert t[a + b] < t[a] + t[b] - 1
