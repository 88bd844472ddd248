import json
from fractions import Fraction

import pytest

from kltbasket.data.artifacts import ExternalPlurigenusRecord
from kltbasket.reports.external import check_record, filter_external, product_witness, read_external

F = Fraction

CSV_TEXT = """label,n,P
s1,2,1
s1,3,1
s1,4,2
s2,2,2
s2,4,2
bad,x,1
"""


def test_product_witness():
    assert product_witness({2: F(2), 3: F(0), 4: F(2)}) == (2, 2)
    assert product_witness({2: F(2), 4: F(3)}) is None
    # P_3 unknown, so (2, 3) cannot be checked
    assert product_witness({2: F(2), 5: F(0)}) is None
    assert product_witness({}) is None


def test_check_record():
    c = check_record(ExternalPlurigenusRecord("x", {1: F(1, 3), 2: F(1, 2), 3: F(-1), 4: F(1)}))
    assert c.non_integral == (2,)
    assert c.negative == (3,)
    assert c.product is None
    assert not c.ok
    assert check_record(ExternalPlurigenusRecord("y", {2: F(1), 3: F(1)})).ok


def test_csv(tmp_path):
    src = tmp_path / "p.csv"
    src.write_text(CSV_TEXT, encoding="utf-8")
    checks, errors = filter_external(src)
    by_label = {c.label: c for c in checks}
    assert set(by_label) == {"s1", "s2"}
    assert by_label["s1"].ok
    assert by_label["s2"].product == (2, 2)
    assert [e.line for e in errors] == [7]


def test_csv_needs_columns(tmp_path):
    src = tmp_path / "p.csv"
    src.write_text("label,value\ns1,1\n", encoding="utf-8")
    with pytest.raises(ValueError):
        read_external(src)


def test_jsonl(tmp_path):
    src = tmp_path / "p.jsonl"
    lines = [
        json.dumps({"label": "s1", "P": {"2": "1", "3": "1", "4": "2"}}),
        "",
        "not json",
        json.dumps({"label": "s2"}),
        json.dumps({"label": "s3", "P": {"2": "3/2"}}),
    ]
    src.write_text("\n".join(lines) + "\n", encoding="utf-8")
    records, errors = read_external(src)
    assert [r.label for r in records] == ["s1", "s3"]
    assert [e.line for e in errors] == [3, 4]
    assert records[0].n_max() == 4
    assert check_record(records[1]).non_integral == (2,)


def test_planted_violation(tmp_path):
    src = tmp_path / "table.csv"
    src.write_text("label,n,P\nt,2,3\nt,3,3\nt,5,4\n", encoding="utf-8")
    (check,), errors = filter_external(src)
    assert errors == []
    # 4 < 3 + 3 - 1
    assert check.product == (2, 3)
    assert not check.non_integral and not check.negative


def test_fractional_second_plurigenus(tmp_path):
    src = tmp_path / "table.jsonl"
    src.write_text(json.dumps({"label": "t", "P": {"2": "-15/11", "3": "1"}}) + "\n", encoding="utf-8")
    (check,), _ = filter_external(src)
    assert check.non_integral == (2,)
    assert check.negative == (2,)
    assert not check.ok


def test_values_past_n_max_are_ignored(tmp_path):
    src = tmp_path / "table.csv"
    src.write_text("label,n,P\nt,2,3\nt,3,3\nt,5,4\nt,6,1/2\n", encoding="utf-8")
    (check,), _ = filter_external(src, n_max=4)
    assert check.ok
    (check,), _ = filter_external(src, n_max=5)
    assert check.product == (2, 3)
    assert check.non_integral == ()
    (check,), _ = filter_external(src)
    assert check.non_integral == (6,)
