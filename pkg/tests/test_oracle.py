import random

import pytest

from naive import Evaluator, all_trees
from ted import Tree, from_table, gen_path, gen_random, oracle_distance, parse_bracket
from ted.oracle import OracleLimitError, enumerate_mappings


def test_trivial_values():
    assert oracle_distance(Tree.empty(), Tree.empty()) == 0
    assert oracle_distance(parse_bracket("a"), parse_bracket("b")) == 1
    assert oracle_distance(parse_bracket("a(b,c)"), parse_bracket("a(c)")) == 1


def test_mapping_counts_by_hand():
    one = parse_bracket("a")
    assert len(list(enumerate_mappings(one, one))) == 2
    # empty, four single pairs, and the full pairing
    assert len(list(enumerate_mappings(gen_path(2), gen_path(2)))) == 6
    cherry = parse_bracket("a(b,c)")
    # node 0 maps to the root only with consistent order; b and c cannot swap
    maps = set(enumerate_mappings(cherry, cherry))
    assert ((1, 2), (2, 1)) not in maps
    assert ((0, 1),) in maps


def test_mappings_are_tai_mappings():
    for f in all_trees(4, include_empty=False):
        for g in all_trees(4, include_empty=False):
            fi, gi = f.index, g.index
            for mapping in enumerate_mappings(f, g):
                for (v1, w1) in mapping:
                    for (v2, w2) in mapping:
                        assert (v1 < v2) == (w1 < w2)
                        assert fi.is_ancestor(v1, v2) == gi.is_ancestor(w1, w2)


def test_size_guard():
    with pytest.raises(OracleLimitError, match="oracle size limit"):
        oracle_distance(gen_path(9), gen_path(1))


def test_agrees_with_set_recursion_under_asymmetric_costs():
    costs = from_table({
        "del_default": 2, "rel_default_eq": 0, "rel_default_neq": 3,
        "del": {"b": 1}, "rel": {"a|b": 1, "b|a": 4, "a|a": 1},
    })
    rng = random.Random(9)
    for i in range(300):
        f = gen_random(rng.randint(0, 6), i, 3, ("a", "b"))
        g = gen_random(rng.randint(0, 6), i + 10**6, 3, ("a", "b"))
        ev = Evaluator(f, g, costs.delete, costs.relabel)
        assert oracle_distance(f, g, costs) == ev.run("sz")
