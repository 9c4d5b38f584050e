"""Tree edit distance by decomposition strategies.

All solvers evaluate the same root-deletion recursion: the two end roots of
the current pair of subforests are either matched or one of them is
deleted.  They differ only in which end (left or right) each subproblem
consumes:

* ``distance_sz`` always consumes the right end (Shasha-Zhang);
* ``distance_klein`` takes the left end when the leftmost tree of the larger
  input's subforest is no bigger than its rightmost tree (Klein);
* ``distance_dmrw`` first solves every TopLight subtree of the currently
  larger side against the other tree, then applies Klein's rule driven by
  the larger side, reusing all memoized results.

Every solver returns an exact integer cost plus counts of the distinct
subproblems it touched.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any, Callable, Union

from . import _pyengine as pe
from .backend import get_backend
from .costs import CostModel, unit_model
from .forest import Subforest, Tree, TreeError
from .instrumentation import RunStats
from ._problem import Problem

ALGORITHMS = ("sz", "klein", "dmrw")


class Direction(enum.IntEnum):
    RIGHT = pe.RIGHT
    LEFT = pe.LEFT


Strategy = Callable[[Subforest, Subforest], Direction]


def right_strategy(f: Subforest, g: Subforest) -> Direction:
    """Shasha-Zhang: always the rightmost roots."""
    return Direction.RIGHT


def klein_strategy(f: Subforest, g: Subforest) -> Direction:
    """Klein's rule with the first argument as the deciding forest."""
    if f.is_empty:
        return Direction.RIGHT
    return Direction.LEFT if f.left_tree_size <= f.right_tree_size else Direction.RIGHT


class RandomStrategy:
    """Seeded coin flip per subforest pair; the same pair always gets the same side."""

    def __init__(self, seed: int = 0):
        self.seed = seed

    def __call__(self, f: Subforest, g: Subforest) -> Direction:
        return Direction(pe.random_direction(self.seed, f.a, f.b, g.a, g.b))

    def __repr__(self):
        return f"RandomStrategy({self.seed})"


@dataclass
class DistanceResult:
    cost: int
    stats: RunStats
    algorithm: str
    _memo: Any = field(default=None, repr=False, compare=False)
    _problem: Any = field(default=None, repr=False, compare=False)

    def memo_keys(self) -> set[tuple[int, int, int, int]]:
        """Every memoized pair as ``(fa, fb, ga, gb)`` tight encodings."""
        return set(self._memo.keys())

    def has_pair(self, f: Subforest, g: Subforest) -> bool:
        return (f.a, f.b, g.a, g.b) in self._memo


def _stats(memo, problem) -> RunStats:
    fc, gc = memo.side_counts()
    return RunStats(
        subproblem_count=len(memo),
        peak_memo_entries=len(memo),
        f_subforest_count=fc,
        g_subforest_count=gc,
        n=problem.n,
        m=problem.m,
    )


def _finish(memo, problem, algorithm) -> DistanceResult:
    cost, _ = memo.lookup(0, 0, 0, 0)
    return DistanceResult(cost, _stats(memo, problem), algorithm, memo, problem)


def _solve(f: Tree, g: Tree, costs: CostModel | None, algorithm: str, backend=None):
    if algorithm not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algorithm!r}; pick one of {ALGORITHMS}")
    problem = Problem(f, g, costs or unit_model())
    memo = get_backend(backend).solve(problem, algorithm)
    return _finish(memo, problem, algorithm)


def distance_sz(f: Tree, g: Tree, costs: CostModel | None = None, *, backend=None) -> DistanceResult:
    return _solve(f, g, costs, "sz", backend)


def distance_klein(f: Tree, g: Tree, costs: CostModel | None = None, *, backend=None) -> DistanceResult:
    return _solve(f, g, costs, "klein", backend)


def distance_dmrw(f: Tree, g: Tree, costs: CostModel | None = None, *, backend=None) -> DistanceResult:
    return _solve(f, g, costs, "dmrw", backend)


def distance(f: Tree, g: Tree, costs: CostModel | None = None, algorithm: str = "dmrw", *, backend=None) -> DistanceResult:
    if algorithm == "auto":
        algorithm = "dmrw"
    return _solve(f, g, costs, algorithm, backend)


def distance_strategy(
    f: Tree, g: Tree, costs: CostModel | None = None, strategy: Strategy = right_strategy, *, backend=None
) -> DistanceResult:
    """Evaluate the recursion with an arbitrary strategy.

    ``strategy(f_sub, g_sub)`` receives the current pair of non-empty
    subforests and returns a :class:`Direction`.  A :class:`RandomStrategy`
    is evaluated natively by the selected backend; any other callable runs
    on the pure-Python engine.
    """
    problem = Problem(f, g, costs or unit_model())
    if type(strategy) is RandomStrategy:
        memo = get_backend(backend).solve(problem, "random", strategy.seed)
        return _finish(memo, problem, repr(strategy))
    memo = pe.PyMemo(problem)

    def decide(fa, fb, ga, gb):
        d = strategy(Subforest(f, fa, fb), Subforest(g, ga, gb))
        return int(Direction(d))

    pe.run(problem, memo, 0, 0, 0, 0, pe.MODE_CUSTOM, decide)
    return _finish(memo, problem, getattr(strategy, "__name__", repr(strategy)))


# -- edit scripts --------------------------------------------------------------

@dataclass(frozen=True)
class DeleteFromF:
    node: int
    cost: int


@dataclass(frozen=True)
class DeleteFromG:
    """Deleting a node of G, i.e. inserting it into F."""

    node: int
    cost: int


@dataclass(frozen=True)
class Relabel:
    node_f: int
    node_g: int
    old: str
    new: str
    cost: int


Op = Union[DeleteFromF, DeleteFromG, Relabel]


@dataclass
class EditScript:
    ops: list
    total_cost: int
    mapping: list = field(default_factory=list)
    source: Tree | None = None
    target: Tree | None = None

    def __iter__(self):
        return iter(self.ops)

    def __len__(self):
        return len(self.ops)


def _sort_key(op):
    if isinstance(op, DeleteFromF):
        return (0, op.node, 0)
    if isinstance(op, Relabel):
        return (1, op.node_f, op.node_g)
    return (2, op.node, 0)


def backtrack(result: DistanceResult) -> EditScript:
    """Turn the memo of a finished run into an optimal edit script."""
    problem, memo = result._problem, result._memo
    f, g = problem.f.tree, problem.g.tree
    costs = problem.costs
    F = pe._SideOps(problem.f.lists)
    G = pe._SideOps(problem.g.lists)
    n, m = problem.n, problem.m
    ops: list = []
    mapping = []
    stack = [(0, 0, 0, 0)]
    while stack:
        fa, fb, ga, gb = stack.pop()
        if fa == n:
            ops.extend(DeleteFromG(w, costs.delete(g.labels[w])) for w in Subforest(g, ga, gb).nodes())
            continue
        if ga == m:
            ops.extend(DeleteFromF(v, costs.delete(f.labels[v])) for v in Subforest(f, fa, fb).nodes())
            continue
        hit = memo.lookup(fa, fb, ga, gb)
        if hit is None:
            raise RuntimeError("memo is missing a subproblem on the optimal path")
        _, code = hit
        kind, d = code & 3, code >> 2
        fr = F.right_root(fb)
        gr = G.right_root(gb)
        if d == pe.RIGHT:
            x, y = fr, gr
        else:
            x, y = fa, ga
        if kind == pe.KIND_DEL_F:
            ops.append(DeleteFromF(x, costs.delete(f.labels[x])))
            stack.append((*(F.del_right(fa, fb, fr) if d == pe.RIGHT else F.del_left(fa, fb, fr)), ga, gb))
        elif kind == pe.KIND_DEL_G:
            ops.append(DeleteFromG(y, costs.delete(g.labels[y])))
            stack.append((fa, fb, *(G.del_right(ga, gb, gr) if d == pe.RIGHT else G.del_left(ga, gb, gr))))
        else:
            mapping.append((x, y))
            c = costs.relabel(f.labels[x], g.labels[y])
            if c or f.labels[x] != g.labels[y]:
                ops.append(Relabel(x, y, f.labels[x], g.labels[y], c))
            stack.append((*F.minus_root(x), *G.minus_root(y)))
            if d == pe.RIGHT:
                rest = (*F.drop_right_tree(fa, fb, fr), *G.drop_right_tree(ga, gb, gr))
            else:
                rest = (*F.drop_left_tree(fa, fb, fr), *G.drop_left_tree(ga, gb, gr))
            stack.append(rest)
    ops.sort(key=_sort_key)
    mapping.sort()
    return EditScript(ops, sum(op.cost for op in ops), mapping, f, g)


def edit_script(
    f: Tree, g: Tree, costs: CostModel | None = None, algorithm: str = "dmrw", *, backend=None
) -> EditScript:
    result = distance(f, g, costs, algorithm, backend=backend)
    script = backtrack(result)
    if script.total_cost != result.cost:
        raise RuntimeError("backtracked script cost disagrees with the distance")
    return script


class _Node:
    __slots__ = ("label", "children", "image")

    def __init__(self, label, children=None, image=-1):
        self.label = label
        self.children = children if children is not None else []
        self.image = image


def apply_script(f: Tree, script: EditScript) -> Tree:
    """Carry out ``script`` on ``f`` and return the resulting tree.

    F-deletions splice a node's children into its parent, relabels rewrite
    labels, and G-deletions are replayed as insertions using the shape of
    ``script.target``.  Surviving nodes of ``f`` are paired with the
    non-inserted nodes of the target in preorder, which is how any
    order-preserving mapping pairs them.
    """
    deleted = set()
    relabel = {}
    inserted = set()
    g = script.target
    for op in script.ops:
        if isinstance(op, DeleteFromF):
            if not 0 <= op.node < f.n:
                raise TreeError(f"dangling node reference: F node {op.node}")
            deleted.add(op.node)
        elif isinstance(op, Relabel):
            if not 0 <= op.node_f < f.n:
                raise TreeError(f"dangling node reference: F node {op.node_f}")
            relabel[op.node_f] = op.new
        elif isinstance(op, DeleteFromG):
            if g is None or not 0 <= op.node < g.n:
                raise TreeError(f"dangling node reference: G node {op.node}")
            inserted.add(op.node)
        else:
            raise TypeError(f"unknown edit operation {op!r}")
    if deleted & set(relabel):
        raise TreeError("a node is both deleted and relabeled")

    top = _Node(None)
    handle: dict[int, _Node] = {}
    survivors = []
    for v in range(f.n):
        p = f.index.parent[v]
        while p != -1 and p in deleted:
            p = f.index.parent[p]
        if v in deleted:
            continue
        node = _Node(relabel.get(v, f.labels[v]))
        handle[v] = node
        survivors.append(node)
        (handle[p] if p != -1 else top).children.append(node)

    if g is not None and inserted:
        kept = [w for w in range(g.n) if w not in inserted]
        if len(kept) != len(survivors):
            raise TreeError("script does not pair the surviving nodes with the target")
        g_handle = {}
        for w, node in zip(kept, survivors):
            node.image = w
            g_handle[w] = node
        gidx = g.index
        for w in sorted(inserted):
            p = gidx.parent[w]
            holder = g_handle[p] if p != -1 else top
            kids = holder.children
            inside = [i for i, c in enumerate(kids) if w < c.image < w + gidx.size[w]]
            pos = inside[0] if inside else sum(1 for c in kids if c.image < w)
            new = _Node(g.labels[w], [kids[i] for i in inside], w)
            holder.children = kids[:pos] + [new] + [c for i, c in enumerate(kids[pos:], pos) if i not in inside]
            g_handle[w] = new

    if not top.children:
        return Tree.empty()
    if len(top.children) > 1:
        raise TreeError("edits leave a forest, not a tree")

    return Tree.from_nested(_iter_nested(top.children[0]))


def _iter_nested(root: _Node):
    # Iterative conversion so deep paths do not hit the recursion limit.
    out: dict[int, tuple] = {}
    order = []
    stack = [root]
    while stack:
        node = stack.pop()
        order.append(node)
        stack.extend(node.children)
    for node in reversed(order):
        out[id(node)] = (node.label, [out[id(c)] for c in node.children])
    return out[id(root)]
