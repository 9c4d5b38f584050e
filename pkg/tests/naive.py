"""Reference implementations over explicit node sets.

Nothing here uses the package's tight (a, b) encoding or its engines: a
forest is a frozenset of preorder ids, roots are found by scanning parents,
and every subproblem is evaluated by plain recursion.  Tests compare the
package's counts, keys and costs against these.
"""
from __future__ import annotations

import sys
from functools import lru_cache

from ted import Tree

sys.setrecursionlimit(10000)


class Shape:
    """Parent/children/size tables computed directly from a Tree."""

    def __init__(self, t: Tree):
        self.t = t
        self.n = t.n
        self.children = [list(c) for c in t.children]
        self.parent = [-1] * t.n
        for v, kids in enumerate(self.children):
            for c in kids:
                self.parent[c] = v
        self.size = [1] * t.n
        for v in range(t.n - 1, -1, -1):
            for c in self.children[v]:
                self.size[v] += self.size[c]

    def subtree(self, v):
        return frozenset(range(v, v + self.size[v]))

    def roots(self, nodes):
        return sorted(v for v in nodes if self.parent[v] not in nodes)

    def heavy(self, v):
        best = None
        for c in self.children[v]:
            if best is None or self.size[c] > self.size[best]:
                best = c
        return best

    def toplight(self, v):
        out = []
        x = v
        while x is not None:
            h = self.heavy(x)
            out.extend(c for c in self.children[x] if c != h)
            x = h
        return out


def delete_root(shape: Shape, nodes, side):
    roots = shape.roots(nodes)
    r = roots[0] if side == "L" else roots[-1]
    return nodes - {r}, r


def end_tree(shape: Shape, nodes, side):
    roots = shape.roots(nodes)
    r = roots[0] if side == "L" else roots[-1]
    return shape.subtree(r), r


class Evaluator:
    """Memoized root-deletion recursion on node sets, with a visit log."""

    def __init__(self, f: Tree, g: Tree, delete=lambda x: 1, relabel=lambda x, y: int(x != y)):
        self.F, self.G = Shape(f), Shape(g)
        self.fl, self.gl = f.labels, g.labels
        self.delete, self.relabel = delete, relabel
        self.memo = {}

    def solve(self, fs, gs, choose):
        key = (fs, gs)
        if key in self.memo:
            return self.memo[key]
        if not fs:
            val = sum(self.delete(self.gl[w]) for w in gs)
        elif not gs:
            val = sum(self.delete(self.fl[v]) for v in fs)
        else:
            side = choose(fs, gs)
            f1, x = delete_root(self.F, fs, side)
            g1, y = delete_root(self.G, gs, side)
            tf, _ = end_tree(self.F, fs, side)
            tg, _ = end_tree(self.G, gs, side)
            val = min(
                self.solve(f1, gs, choose) + self.delete(self.fl[x]),
                self.solve(fs, g1, choose) + self.delete(self.gl[y]),
                self.solve(tf - {x}, tg - {y}, choose)
                + self.solve(fs - tf, gs - tg, choose)
                + self.relabel(self.fl[x], self.gl[y]),
            )
        self.memo[key] = val
        return val

    # direction rules

    def right(self, fs, gs):
        return "R"

    def klein_on(self, which):
        shape = self.F if which == "F" else self.G

        def choose(fs, gs):
            nodes = fs if which == "F" else gs
            if not nodes:
                return "R"
            left, _ = end_tree(shape, nodes, "L")
            right, _ = end_tree(shape, nodes, "R")
            return "L" if len(left) <= len(right) else "R"

        return choose

    def run(self, algorithm):
        whole_f = frozenset(range(self.F.n))
        whole_g = frozenset(range(self.G.n))
        if algorithm == "sz":
            return self.solve(whole_f, whole_g, self.right)
        if algorithm == "klein":
            which = "F" if self.F.n >= self.G.n else "G"
            return self.solve(whole_f, whole_g, self.klein_on(which))
        if algorithm == "dmrw":
            if not self.F.n or not self.G.n:
                return self.solve(whole_f, whole_g, self.right)
            return self._dmrw(0, 0)
        raise ValueError(algorithm)

    def _dmrw(self, v, w):
        fs, gs = self.F.subtree(v), self.G.subtree(w)
        if (fs, gs) in self.memo:
            return self.memo[(fs, gs)]
        if self.F.size[v] >= self.G.size[w]:
            for u in self.F.toplight(v):
                self._dmrw(u, w)
            return self.solve(fs, gs, self.klein_on("F"))
        for u in self.G.toplight(w):
            self._dmrw(v, u)
        return self.solve(fs, gs, self.klein_on("G"))


def naive_count(f: Tree, g: Tree, algorithm: str):
    """(cost, distinct subproblem pairs) by the set-based recursion."""
    ev = Evaluator(f, g)
    cost = ev.run(algorithm)
    return cost, len(ev.memo), set(ev.memo)


def string_edit_distance(s: str, t: str) -> int:
    """Classical Levenshtein DP with unit costs."""
    prev = list(range(len(t) + 1))
    for i, a in enumerate(s, 1):
        cur = [i]
        for j, b in enumerate(t, 1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (a != b)))
        prev = cur
    return prev[-1]


def simulate_deletions(t: Tree, order: str):
    """Apply a string of 'L'/'R' root deletions to the whole tree."""
    shape = Shape(t)
    nodes = frozenset(range(t.n))
    for side in order:
        nodes, _ = delete_root(shape, nodes, side)
    return nodes


@lru_cache(maxsize=None)
def shapes(n: int):
    """All ordered tree shapes with exactly n nodes, as nested tuples."""
    if n == 0:
        return ()
    return tuple(("a", list(kids)) for kids in _forests(n - 1))


@lru_cache(maxsize=None)
def _forests(n: int):
    if n == 0:
        return ((),)
    out = []
    for first in range(1, n + 1):
        for head in shapes(first):
            for tail in _forests(n - first):
                out.append((head,) + tail)
    return tuple(out)


def all_trees(max_nodes: int, include_empty=True):
    out = [Tree.empty()] if include_empty else []
    for k in range(1, max_nodes + 1):
        out.extend(Tree.from_nested(s) for s in shapes(k))
    return out
