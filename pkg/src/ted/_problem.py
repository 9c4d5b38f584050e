"""Flat integer arrays describing one distance problem.

Both the compiled kernel and the pure-Python engine work on these arrays
rather than on :class:`~ted.forest.Tree` objects.  Conventions per side:

* node ids are preorder positions ``0..n-1``;
* ``post[v]`` is the zero-based postorder position, ``post_node`` its inverse;
* ``pre_sum[k]`` is the total deletion cost of nodes ``0..k-1``;
* a subforest is the tight pair ``(a, b)`` (see :class:`ted.forest.Subforest`),
  the empty one being ``(n, 0)``.
"""
from __future__ import annotations

from functools import cached_property

import numpy as np

from .costs import CostModel
from .forest import Tree


class Side:
    def __init__(self, tree: Tree, costs: CostModel, label_ids: dict):
        idx = tree.index
        n = tree.n
        self.tree = tree
        self.n = n
        self.size = np.asarray(idx.size, dtype=np.int64)
        self.post = np.asarray([p - 1 for p in idx.post], dtype=np.int64)
        self.post_node = np.asarray(idx.post_node, dtype=np.int64)
        self.parent = np.asarray(idx.parent, dtype=np.int64)
        self.heavy = np.asarray(idx.heavy_child, dtype=np.int64)
        self.label = np.asarray([label_ids[x] for x in tree.labels], dtype=np.int64)
        self.delete = np.asarray([costs.delete(x) for x in tree.labels], dtype=np.int64)
        self.pre_sum = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(self.delete, out=self.pre_sum[1:])

        # Light children hanging off each node's heavy path, flattened CSR-style
        # so the kernel can read TopLight(F_v) for any v.
        tl_ptr = np.zeros(n + 1, dtype=np.int64)
        tl = []
        for v in range(n):
            if v == 0 or _is_light(idx, v):
                tl.extend(idx.toplight(v))
            tl_ptr[v + 1] = len(tl)
        self.toplight_ptr = tl_ptr
        self.toplight = np.asarray(tl, dtype=np.int64)

    @cached_property
    def lists(self):
        """Plain-list copies for the pure-Python engine."""
        return _Lists(self)


class _Lists:
    __slots__ = (
        "n", "size", "post", "post_node", "parent", "label", "delete", "pre_sum",
        "toplight_ptr", "toplight",
    )

    def __init__(self, side: Side):
        self.n = side.n
        for name in self.__slots__[1:]:
            setattr(self, name, getattr(side, name).tolist())


def _is_light(idx, v):
    p = idx.parent[v]
    return p == -1 or idx.heavy_child[p] != v


class Problem:
    """Both sides plus the relabel matrix indexed by label ids."""

    def __init__(self, f: Tree, g: Tree, costs: CostModel):
        f_labels = sorted(set(f.labels))
        g_labels = sorted(set(g.labels))
        f_ids = {x: i for i, x in enumerate(f_labels)}
        g_ids = {x: i for i, x in enumerate(g_labels)}
        self.f = Side(f, costs, f_ids)
        self.g = Side(g, costs, g_ids)
        self.costs = costs
        rel = np.zeros((max(len(f_labels), 1), max(len(g_labels), 1)), dtype=np.int64)
        for x, i in f_ids.items():
            for y, j in g_ids.items():
                rel[i, j] = costs.relabel(x, y)
        self.rel = rel

    @cached_property
    def rel_lists(self):
        return self.rel.tolist()

    @property
    def n(self) -> int:
        return self.f.n

    @property
    def m(self) -> int:
        return self.g.n
