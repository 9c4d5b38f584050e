import pytest

from ted import CostModel, from_table, unit_model
from ted.costs import MAX_COST, CostError


def test_unit_model():
    c = unit_model()
    assert c.delete("a") == 1
    assert c.relabel("a", "a") == 0
    assert c.relabel("a", "b") == 1
    assert c.declared_symmetric and c.declared_zero_diagonal and c.is_unit


FULL = {"del_default": 1, "rel_default_eq": 0, "rel_default_neq": 1}


def test_table_defaults_and_overrides():
    c = from_table({**FULL, "del_default": 2})
    assert c.delete("x") == 2
    c = from_table({**FULL, "rel": {"a|b": 5}})
    assert c.relabel("a", "b") == 5
    assert c.relabel("b", "a") == 1
    assert not c.declared_symmetric
    c = from_table({**FULL, "del": {"gap": 3}})
    assert c.delete("gap") == 3 and c.delete("other") == 1


def test_negative_cost_rejected():
    with pytest.raises(CostError, match="negative cost"):
        from_table({**FULL, "rel": {"a|b": -1}})
    with pytest.raises(CostError, match="negative cost"):
        CostModel(del_default=-2)


@pytest.mark.parametrize("missing", sorted(FULL))
def test_incomplete_table(missing):
    doc = {k: v for k, v in FULL.items() if k != missing}
    with pytest.raises(CostError, match="incomplete cost table"):
        from_table(doc)


@pytest.mark.parametrize(
    "doc",
    [
        {**FULL, "extra": 1},
        {**FULL, "rel": {"ab": 1}},
        {**FULL, "rel": {"a|": 1}},
        {**FULL, "del": [1]},
        {**FULL, "del_default": 1.5},
        {**FULL, "del_default": True},
        {**FULL, "del_default": MAX_COST + 1},
        [1, 2],
    ],
)
def test_malformed_tables(doc):
    with pytest.raises(CostError):
        from_table(doc)


def test_nonzero_diagonal_allowed():
    c = from_table({**FULL, "rel": {"a|a": 4}})
    assert c.relabel("a", "a") == 4
    assert not c.declared_zero_diagonal
