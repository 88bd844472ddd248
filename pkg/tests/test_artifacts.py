from fractions import Fraction

import pytest

from kltbasket.data.artifacts import (
    Basket, CyclicGerm, EliminationRecord, ExternalPlurigenusRecord, ForkGerm, Germ,
    GermInvariants, InvalidGermError, LSCase, PlurigenusTable, StageReport, germ_from_label,
)
from kltbasket.geometry.germ_model import invariants

F = Fraction


@pytest.mark.parametrize("d", [
    {"type": "A"},
    {"type": "A", "seq": [1]},
    {"type": "A", "seq": []},
    {"type": "fork", "e0": 2, "branches": [[2, 1]]},
    {"type": "fork", "e0": 2, "branches": [[2, 1], [3, 1], [7, 1]]},
    {"type": "fork", "e0": 2, "branches": [[2, 1], [2, 1], [4, 2]]},
    {"type": "Z"},
])
def test_germ_decoding_errors(d):
    with pytest.raises(InvalidGermError):
        Germ.from_json(d)


def test_germ_decoding_needs_an_object():
    with pytest.raises(TypeError):
        Germ.from_json([3])


def test_germ_labels():
    g = germ_from_label("[2;(2,1);(3,2);(5,3)]")
    assert isinstance(g, ForkGerm)
    assert g.label() == "[2;(2,1);(3,2);(5,3)]"
    assert germ_from_label(" [2,7,2,2,2] ") == CyclicGerm([2, 2, 2, 7, 2])
    assert CyclicGerm([2, 7, 2, 2, 2]).label() == "[2,2,2,7,2]"
    for bad in ("2,3", "[a]", "[2;(2,1)]", "[]"):
        with pytest.raises(InvalidGermError):
            germ_from_label(bad)


def test_fork_branches_are_sorted():
    a = ForkGerm.from_pairs(2, [(3, 1), (2, 1), (3, 2)])
    b = ForkGerm.from_pairs(2, [(2, 1), (3, 2), (3, 1)])
    assert a == b
    assert a.pairs() == ((2, 1), (3, 1), (3, 2))
    assert hash(a) == hash(b)


def test_germ_json():
    g = ForkGerm.from_pairs(3, [(2, 1), (2, 1), (5, 2)])
    assert Germ.from_json(g.to_json()) == g
    assert CyclicGerm([3, 2]).to_json() == {"type": "A", "seq": [2, 3]}


def test_invariants_toml():
    inv = invariants(CyclicGerm([2, 7, 2, 2, 2]))
    assert GermInvariants.parse(inv.dump()) == inv


def test_basket():
    b = Basket([CyclicGerm([3]), CyclicGerm([2])], [3, 2], [F(2, 3), F(1)])
    assert b.label() == "{[2], [3]}"
    assert b.orders == (2, 3)
    assert b.k2 == F(22, 3)
    assert b.bogomolov_sum() == F(7, 6)
    assert Basket.from_json(b.to_json()) == b
    with pytest.raises(ValueError):
        Basket([CyclicGerm([3])], [3, 2], [F(2, 3)])


def test_stage_report_json():
    b = Basket([CyclicGerm([3])], [3], [F(2, 3)])
    r = StageReport()
    r.record("F2", [b])
    r.eliminated.append(EliminationRecord(b, "F7", (2, 3)))
    back = StageReport.from_json(r.to_json())
    assert back.counts == r.counts
    assert back.eliminated[0].witness == (2, 3)
    assert r.diff({"F2": (0, 0, 0)}) == {}
    assert r.diff({"F2": (1, 0, 0)}) == {"F2": {2: {"before": 1, "after": 0}}}


def test_ls_case():
    c = LSCase(3, [(2, 1), (3, 1), (7, 3)], F(10, 11), [F(1), F(2, 3), F(18, 7), F(2)], F(1),
               off_s=CyclicGerm([2, 2, 2, 2, 3]), label="3.1")
    assert c.off_s_label() == "(11,5)"
    assert c.pairs_label() == "[(2,1),(3,1),(7,3),(11,5)]"
    back = LSCase.from_json(c.to_json())
    assert back == c
    assert back.label == "3.1"
    assert back.s_y_sq == F(1)


def test_plurigenus_table():
    t = PlurigenusTable(F(0), [F(1), F(0), F(2), F(1, 2), F(-1)])
    assert t.first_invalid() == 3
    assert t.first_invalid(4) == 4
    assert PlurigenusTable.from_json(t.to_json()).P == t.P


def test_external_record():
    with pytest.raises(ValueError):
        ExternalPlurigenusRecord.from_json({"label": "x"})
    with pytest.raises(TypeError):
        ExternalPlurigenusRecord.from_json(["x"])
    r = ExternalPlurigenusRecord.from_json({"label": "x", "P": {"4": "2", "2": "1"}})
    assert list(r.P) == [2, 4]
    assert r.to_json() == {"label": "x", "P": {"2": "1", "4": "2"}}
