import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from naive import naive_count, string_edit_distance
from ted import (
    DeleteFromF,
    DeleteFromG,
    Direction,
    RandomStrategy,
    Relabel,
    Subforest,
    Tree,
    apply_script,
    distance,
    distance_dmrw,
    distance_klein,
    distance_strategy,
    distance_sz,
    edit_script,
    from_table,
    gen_comb,
    gen_comb_mirror,
    gen_path,
    gen_random,
    klein_strategy,
    oracle_distance,
    parse_bracket,
    right_strategy,
    unit_model,
)
from ted.forest import TreeError, subtree_minus_root

SOLVERS = [distance_sz, distance_klein, distance_dmrw]


def label_path(word):
    return Tree.from_parents(list(word), [i - 1 for i in range(len(word))]) if word else Tree.empty()


def all_costs(f, g, costs=None):
    out = [s(f, g, costs).cost for s in SOLVERS]
    out.append(distance_strategy(f, g, costs, right_strategy).cost)
    out.append(distance_strategy(f, g, costs, RandomStrategy(7)).cost)
    return out


# -- fixed examples ------------------------------------------------------------

def test_empty_pairs():
    e = Tree.empty()
    f = parse_bracket("a(b,c(d))")
    assert all_costs(e, e) == [0] * 5
    assert all_costs(f, e) == [4] * 5
    assert all_costs(e, f) == [4] * 5


def test_deleting_a_leaf():
    assert all_costs(parse_bracket("a(b,c)"), parse_bracket("a(c)")) == [1] * 5


def test_kitten_sitting():
    assert all_costs(label_path("kitten"), label_path("sitting")) == [3] * 5


@pytest.mark.parametrize("n, m", [(0, 3), (4, 1), (5, 5), (9, 2)])
def test_uniform_paths(n, m):
    assert all_costs(gen_path(n), gen_path(m)) == [abs(n - m)] * 5


def test_deletion_costs_from_model():
    costs = from_table({"del_default": 3, "rel_default_eq": 0, "rel_default_neq": 1, "del": {"x": 5}})
    g = parse_bracket("x(y,y)")
    assert all_costs(Tree.empty(), g, costs) == [11] * 5


def test_auto_is_dmrw():
    f, g = gen_comb(8), gen_comb_mirror(8)
    assert distance(f, g, algorithm="auto").stats == distance_dmrw(f, g).stats
    with pytest.raises(ValueError):
        distance(f, g, algorithm="zhang")


# -- subproblem counts against the set-based recursion --------------------------

def test_sz_count_on_paths():
    cost, count, _ = naive_count(gen_path(4), gen_path(3), "sz")
    assert (cost, count) == (1, 20)
    assert distance_sz(gen_path(4), gen_path(3)).stats.subproblem_count == 20


@pytest.mark.parametrize("algorithm", ["sz", "klein", "dmrw"])
def test_memo_keys_match_set_recursion(algorithm):
    rng = random.Random(hash(algorithm) % 1000)
    for i in range(120):
        f = gen_random(rng.randint(0, 9), i, rng.randint(1, 4), ("a", "b"))
        g = gen_random(rng.randint(0, 9), i + 500, rng.randint(1, 4), ("a", "b"))
        cost, count, pairs = naive_count(f, g, algorithm)
        res = distance(f, g, None, algorithm)
        assert res.cost == cost
        assert res.stats.subproblem_count == count
        expect = set()
        for fs, gs in pairs:
            a, b = Subforest.from_nodes(f, fs), Subforest.from_nodes(g, gs)
            expect.add((a.a, a.b, b.a, b.b))
        assert res.memo_keys() == expect


def test_klein_strategy_matches_klein_solver():
    for i in range(40):
        f = gen_random(12 + i % 5, i, 3)
        g = gen_random(6 + i % 4, i + 99, 3)
        via_strategy = distance_strategy(f, g, None, klein_strategy)
        assert via_strategy.memo_keys() == distance_klein(f, g).memo_keys()


def test_random_strategy_is_a_pure_function():
    s = RandomStrategy(3)
    f = Subforest.whole(gen_path(3))
    g = Subforest.whole(gen_path(2))
    assert s(f, g) == s(f, g)
    assert {RandomStrategy(k)(f, g) for k in range(20)} == {Direction.LEFT, Direction.RIGHT}


# -- cross-checks --------------------------------------------------------------

def test_oracle_agreement_with_asymmetric_costs():
    costs = from_table({
        "del_default": 2, "rel_default_eq": 0, "rel_default_neq": 3,
        "del": {"b": 1}, "rel": {"a|b": 1, "b|a": 4, "b|b": 2},
    })
    for i in range(200):
        f = gen_random(i % 6, i, 3, ("a", "b"))
        g = gen_random((i // 6) % 6, i + 7, 3, ("a", "b"))
        want = oracle_distance(f, g, costs)
        assert all_costs(f, g, costs) == [want] * 5


def test_string_reduction_small():
    rng = random.Random(1)
    for _ in range(50):
        s = "".join(rng.choice("ACGT") for _ in range(rng.randint(0, 12)))
        t = "".join(rng.choice("ACGT") for _ in range(rng.randint(0, 12)))
        assert distance_dmrw(label_path(s), label_path(t)).cost == string_edit_distance(s, t)


def test_swapping_inputs():
    for i in range(30):
        f = gen_random(5 + i, i, 4, ("a", "b"))
        g = gen_random(20, i + 1, 2, ("a", "b", "c"))
        assert distance_dmrw(f, g).cost == distance_dmrw(g, f).cost


tree_strategy = st.builds(
    lambda n, seed, k: gen_random(n, seed, k, ("a", "b", "c")),
    st.integers(0, 25), st.integers(0, 10**6), st.integers(1, 5),
)


@settings(max_examples=60, deadline=None)
@given(tree_strategy, tree_strategy, tree_strategy)
def test_metric_properties(f, g, h):
    d = lambda x, y: distance_dmrw(x, y).cost
    assert d(f, f) == 0
    assert d(f, g) == d(g, f)
    assert d(f, h) <= d(f, g) + d(g, h)
    assert abs(f.n - g.n) <= d(f, g) <= f.n + g.n


def test_deep_path_python_engine():
    f, g = gen_path(5000), gen_path(3)
    res = distance(f, g, None, "sz", backend="python")
    assert res.cost == 4997


# -- every reachable subproblem is memoized ------------------------------------

def test_every_rootless_subtree_pair_is_memoized():
    for i in range(15):
        f = gen_random(3 + i % 10, i, 3)
        g = gen_random(2 + (i * 7) % 11, i + 40, 3)
        for solve in SOLVERS:
            res = solve(f, g)
            for v in range(f.n):
                for w in range(g.n):
                    assert res.has_pair(subtree_minus_root(f, v), subtree_minus_root(g, w))


# -- edit scripts --------------------------------------------------------------

def test_identical_trees_give_empty_script():
    t = parse_bracket("a(b,c(d))")
    s = edit_script(t, t)
    assert s.ops == [] and s.total_cost == 0


def test_single_leaf_deletion_script():
    s = edit_script(parse_bracket("a(b,c)"), parse_bracket("a(c)"))
    assert s.ops == [DeleteFromF(1, 1)]
    assert s.total_cost == 1


def test_insertion_into_empty():
    s = edit_script(Tree.empty(), parse_bracket("a"))
    assert s.ops == [DeleteFromG(0, 1)]


def test_relabel_in_script():
    s = edit_script(parse_bracket("a(b)"), parse_bracket("a(c)"))
    assert s.ops == [Relabel(1, 1, "b", "c", 1)]


def test_apply_script_examples():
    f = parse_bracket("a(b,c)")
    empty = edit_script(f, f)
    assert apply_script(f, empty) == f
    s = edit_script(f, parse_bracket("a(c)"))
    assert apply_script(f, s) == parse_bracket("a(c)")


def test_apply_script_dangling_reference():
    f = parse_bracket("a(b,c)")
    s = edit_script(f, parse_bracket("a(c)"))
    s.ops = [DeleteFromF(7, 1)]
    with pytest.raises(TreeError, match="dangling node reference"):
        apply_script(f, s)


@pytest.mark.parametrize("algorithm", ["sz", "klein", "dmrw"])
def test_scripts_rebuild_target(algorithm):
    costs = from_table({"del_default": 2, "rel_default_eq": 0, "rel_default_neq": 3, "rel": {"a|b": 1}})
    rng = random.Random(len(algorithm))
    for i in range(60):
        f = gen_random(rng.randint(0, 30), i, 4, ("a", "b", "c"))
        g = gen_random(rng.randint(0, 30), i + 3, 4, ("a", "b", "c"))
        for model in (unit_model(), costs):
            s = edit_script(f, g, model, algorithm)
            assert s.total_cost == distance(f, g, model, algorithm).cost
            assert apply_script(f, s) == g
            touched_f = [op.node for op in s.ops if isinstance(op, DeleteFromF)]
            touched_f += [op.node_f for op in s.ops if isinstance(op, Relabel)]
            touched_g = [op.node for op in s.ops if isinstance(op, DeleteFromG)]
            touched_g += [op.node_g for op in s.ops if isinstance(op, Relabel)]
            assert len(touched_f) == len(set(touched_f))
            assert len(touched_g) == len(set(touched_g))
            fi, gi = f.index, g.index
            for v1, w1 in s.mapping:
                for v2, w2 in s.mapping:
                    assert (v1 < v2) == (w1 < w2)
                    assert fi.is_ancestor(v1, v2) == gi.is_ancestor(w1, w2)
