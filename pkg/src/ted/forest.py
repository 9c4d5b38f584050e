"""Ordered labeled trees, traversal indices and the subforest algebra.

Nodes of a :class:`Tree` are numbered by preorder position (``0..n-1``), so a
node id doubles as its zero-based preorder rank.  All decompositions the
distance algorithms rely on (keyroots, heavy paths, TopLight sets) are
precomputed once in a :class:`TreeIndex`.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence


class TreeError(ValueError):
    """Raised for malformed trees and illegal subforest operations."""


def _check_label(label) -> str:
    if not isinstance(label, str) or label == "":
        raise TreeError(f"labels must be non-empty strings, got {label!r}")
    return label


class Tree:
    """Immutable rooted ordered labeled tree.

    Build one with :meth:`from_nested`, :meth:`from_parents` or
    :meth:`empty`.  Node ids are preorder positions, the root is node 0.
    """

    def __init__(self, labels: Sequence[str], children: Sequence[Sequence[int]]):
        # Trusted constructor: callers guarantee preorder numbering.
        self.labels = tuple(labels)
        self.children = tuple(tuple(c) for c in children)

    # -- construction -------------------------------------------------
    @classmethod
    def empty(cls) -> "Tree":
        return cls((), ())

    @classmethod
    def from_nested(cls, nested) -> "Tree":
        """Build from ``(label, [child, ...])`` pairs; ``None`` is the empty tree.

        A bare string is accepted as a leaf.
        """
        if nested is None:
            return cls.empty()
        labels: list[str] = []
        children: list[list[int]] = []
        stack = [(nested, -1)]
        while stack:
            item, parent = stack.pop()
            if isinstance(item, str):
                label, kids = item, ()
            else:
                label, kids = item
            v = len(labels)
            labels.append(_check_label(label))
            children.append([])
            if parent >= 0:
                children[parent].append(v)
            for kid in reversed(list(kids)):
                stack.append((kid, v))
        return cls(labels, children)

    @classmethod
    def from_parents(cls, labels: Sequence[str], parents: Sequence[int]) -> "Tree":
        """Build from a parent array (``-1`` marks the root).

        Children keep the order in which they appear in ``parents``.
        """
        n = len(labels)
        if len(parents) != n:
            raise TreeError("labels and parents differ in length")
        if n == 0:
            return cls.empty()
        kids: list[list[int]] = [[] for _ in range(n)]
        roots = []
        for v, p in enumerate(parents):
            if p == -1:
                roots.append(v)
            elif 0 <= p < n and p != v:
                kids[p].append(v)
            else:
                raise TreeError(f"bad parent {p} for node {v}")
        if len(roots) != 1:
            raise TreeError(f"expected exactly one root, found {len(roots)}")
        return cls.from_children(labels, kids, roots[0])

    @classmethod
    def from_children(cls, labels: Sequence[str], children: Sequence[Sequence[int]], root: int) -> "Tree":
        """Build from arbitrary node ids; the result is renumbered to preorder."""
        n = len(labels)
        seen = [False] * n
        order = []
        stack = [root]
        while stack:
            v = stack.pop()
            if seen[v]:
                raise TreeError("children lists do not form a tree")
            seen[v] = True
            order.append(v)
            stack.extend(reversed(children[v]))
        if len(order) != n:
            raise TreeError("children lists do not reach every node from the root")
        new_id = {old: i for i, old in enumerate(order)}
        return cls(
            [_check_label(labels[old]) for old in order],
            [[new_id[c] for c in children[old]] for old in order],
        )

    # -- basic accessors ----------------------------------------------
    @property
    def n(self) -> int:
        return len(self.labels)

    def __len__(self) -> int:
        return len(self.labels)

    @property
    def root(self):
        return 0 if self.labels else None

    def to_nested(self):
        if not self.labels:
            return None
        built: list = [None] * self.n
        for v in range(self.n - 1, -1, -1):
            built[v] = (self.labels[v], [built[c] for c in self.children[v]])
        return built[0]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Tree):
            return NotImplemented
        return self.labels == other.labels and self.children == other.children

    def __hash__(self) -> int:
        return hash((self.labels, self.children))

    def __repr__(self) -> str:
        from .treeio import emit_bracket

        return f"Tree({emit_bracket(self)!r})" if self.labels else "Tree.empty()"

    @cached_property
    def index(self) -> "TreeIndex":
        return build_index(self)

    def subtree(self, v: int) -> "Tree":
        """Copy of the subtree rooted at ``v`` as a standalone tree."""
        end = v + self.index.size[v]
        return Tree(
            self.labels[v:end],
            [[c - v for c in self.children[u]] for u in range(v, end)],
        )


@dataclass(frozen=True)
class TreeIndex:
    """Traversal ranks and structural decompositions of one tree.

    ``pre`` and ``post`` are 1-based ranks.  ``post_node[k]`` is the node with
    zero-based postorder position ``k``.
    """

    tree: Tree
    pre: tuple[int, ...]
    post: tuple[int, ...]
    post_node: tuple[int, ...]
    size: tuple[int, ...]
    parent: tuple[int, ...]
    depth: tuple[int, ...]
    heavy_child: tuple[int, ...]
    ldepth: tuple[int, ...]
    cdepth: tuple[int, ...]
    keyroots: frozenset
    light: frozenset
    toplight_root: frozenset

    def heavy_path(self, v: int = 0) -> list[int]:
        path = []
        while v != -1:
            path.append(v)
            v = self.heavy_child[v]
        return path

    def toplight(self, v: int = 0) -> list[int]:
        """Roots left after removing the heavy path of the subtree at ``v``.

        Returned in preorder.
        """
        out = []
        children = self.tree.children
        for h in self.heavy_path(v):
            hc = self.heavy_child[h]
            out.extend(c for c in children[h] if c != hc)
        out.sort()
        return out

    def is_ancestor(self, u: int, v: int) -> bool:
        """True when ``u`` is a proper ancestor of ``v``."""
        return u < v < u + self.size[u]


def build_index(t: Tree) -> TreeIndex:
    n = t.n
    children = t.children
    parent = [-1] * n
    depth = [0] * n
    for v in range(n):
        for c in children[v]:
            parent[c] = v
            depth[c] = depth[v] + 1
    size = [1] * n
    for v in range(n - 1, 0, -1):
        size[parent[v]] += size[v]

    post = [0] * n
    post_node = []
    # Postorder by iterative traversal; children visited left to right.
    stack = [(0, False)] if n else []
    while stack:
        v, done = stack.pop()
        if done:
            post[v] = len(post_node) + 1
            post_node.append(v)
        else:
            stack.append((v, True))
            stack.extend((c, False) for c in reversed(children[v]))

    heavy = [-1] * n
    for v in range(n):
        best = -1
        for c in children[v]:
            if best == -1 or size[c] > size[best]:
                best = c
        heavy[v] = best

    ldepth = [0] * n
    cdepth = [0] * n
    light = set()
    keyroots = set()
    for v in range(n):
        p = parent[v]
        is_light = p == -1 or heavy[p] != v
        is_key = p == -1 or children[p][0] != v
        if is_light:
            light.add(v)
        if is_key:
            keyroots.add(v)
        ldepth[v] = (ldepth[p] if p != -1 else 0) + is_light
        cdepth[v] = (cdepth[p] if p != -1 else 0) + is_key

    # TopLight of the whole tree: light children hanging off the root's heavy path.
    toplight = set()
    v = 0 if n else -1
    while v != -1:
        toplight.update(c for c in children[v] if c != heavy[v])
        v = heavy[v]

    return TreeIndex(
        tree=t,
        pre=tuple(range(1, n + 1)),
        post=tuple(post),
        post_node=tuple(post_node),
        size=tuple(size),
        parent=tuple(parent),
        depth=tuple(depth),
        heavy_child=tuple(heavy),
        ldepth=tuple(ldepth),
        cdepth=tuple(cdepth),
        keyroots=frozenset(keyroots),
        light=frozenset(light),
        toplight_root=frozenset(toplight),
    )


@dataclass(frozen=True)
class Subforest:
    """A forest reachable from ``tree`` by deleting leftmost/rightmost roots.

    The encoding is tight: ``a`` nodes precede the leftmost root in preorder
    and ``b`` nodes follow the rightmost root in postorder, so the remaining
    node set is ``{v : pre(v) > a and post(v) <= n - b}``.  The empty forest
    is always ``(n, 0)``.  Common ancestors of the two end roots fall in both
    the deleted prefix and the deleted suffix, so ``a + b`` can exceed the
    number of deletions performed.
    """

    tree: Tree
    a: int
    b: int

    def __post_init__(self):
        n = self.tree.n
        if not (0 <= self.a <= n and 0 <= self.b <= n):
            raise TreeError(f"subforest bounds ({self.a}, {self.b}) out of range")
        if self.a == n:
            if self.b != 0:
                raise TreeError("the empty subforest is encoded as (n, 0)")
            return
        idx = self.tree.index
        r = idx.post_node[n - 1 - self.b]
        if r < self.a or idx.post[self.a] > n - self.b:
            raise TreeError(f"({self.a}, {self.b}) is not a tight subforest encoding")

    @classmethod
    def whole(cls, tree: Tree) -> "Subforest":
        return cls(tree, 0, 0)

    @classmethod
    def empty(cls, tree: Tree) -> "Subforest":
        return cls(tree, tree.n, 0)

    @classmethod
    def from_nodes(cls, tree: Tree, nodes: Iterable[int]) -> "Subforest":
        """Encode an explicit node set; raises if it is not a reachable subforest."""
        nodes = set(nodes)
        if not nodes:
            return cls.empty(tree)
        idx = tree.index
        a = min(nodes)
        b = tree.n - max(idx.post[v] for v in nodes)
        s = cls(tree, a, b)
        if set(s.nodes()) != nodes:
            raise TreeError("node set is not a subforest")
        return s

    # -- queries -------------------------------------------------------
    @property
    def is_empty(self) -> bool:
        return self.a == self.tree.n

    def __bool__(self) -> bool:
        return not self.is_empty

    def _need(self):
        if self.is_empty:
            raise TreeError("empty subforest has no roots")

    @property
    def leftmost_root(self) -> int:
        self._need()
        return self.a

    @property
    def rightmost_root(self) -> int:
        self._need()
        return self.tree.index.post_node[self.tree.n - 1 - self.b]

    @property
    def is_single_tree(self) -> bool:
        return self.leftmost_root == self.rightmost_root

    @property
    def left_tree_size(self) -> int:
        return self.tree.index.size[self.leftmost_root]

    @property
    def right_tree_size(self) -> int:
        return self.tree.index.size[self.rightmost_root]

    def _ancestors_inside(self, r: int) -> Iterator[int]:
        # Proper ancestors of r whose preorder position is past the left end.
        parent = self.tree.index.parent
        u = parent[r]
        while u > self.a:
            yield u
            u = parent[u]

    def nodes(self) -> list[int]:
        if self.is_empty:
            return []
        r = self.rightmost_root
        skip = set(self._ancestors_inside(r))
        end = r + self.tree.index.size[r]
        return [v for v in range(self.a, end) if v not in skip]

    def __len__(self) -> int:
        if self.is_empty:
            return 0
        r = self.rightmost_root
        return r + self.tree.index.size[r] - self.a - sum(1 for _ in self._ancestors_inside(r))

    def roots(self) -> list[int]:
        out = []
        s = self
        while s:
            out.append(s.leftmost_root)
            s = s.without_left_tree()
        return out

    # -- structural deletions -------------------------------------------
    def _with_left(self, x: int) -> "Subforest":
        # x is a candidate new leftmost root; skip ancestors of the rightmost root.
        idx = self.tree.index
        r = self.rightmost_root
        while idx.is_ancestor(x, r):
            x += 1
        return Subforest(self.tree, x, self.b)

    def _with_right(self, y: int) -> "Subforest":
        idx = self.tree.index
        l = self.a
        while idx.is_ancestor(y, l):
            y = idx.post_node[idx.post[y] - 2]
        return Subforest(self.tree, self.a, self.tree.n - idx.post[y])

    def delete_left(self) -> "Subforest":
        if self.is_empty:
            raise TreeError("deletion from empty forest")
        l, r = self.a, self.rightmost_root
        if l == r:
            return subtree_minus_root(self.tree, l)
        if self.tree.index.size[l] > 1:
            return Subforest(self.tree, l + 1, self.b)
        return self._with_left(l + 1)

    def delete_right(self) -> "Subforest":
        if self.is_empty:
            raise TreeError("deletion from empty forest")
        idx = self.tree.index
        l, r = self.a, self.rightmost_root
        if l == r:
            return subtree_minus_root(self.tree, r)
        if idx.size[r] > 1:
            return Subforest(self.tree, self.a, self.b + 1)
        return self._with_right(idx.post_node[idx.post[r] - 2])

    def without_left_tree(self) -> "Subforest":
        if self.is_empty:
            raise TreeError("deletion from empty forest")
        l, r = self.a, self.rightmost_root
        if l == r:
            return Subforest.empty(self.tree)
        return self._with_left(l + self.tree.index.size[l])

    def without_right_tree(self) -> "Subforest":
        if self.is_empty:
            raise TreeError("deletion from empty forest")
        idx = self.tree.index
        l, r = self.a, self.rightmost_root
        if l == r:
            return Subforest.empty(self.tree)
        return self._with_right(idx.post_node[idx.post[r] - idx.size[r] - 1])


def subtree_subforest(tree: Tree, v: int) -> Subforest:
    """``F_v`` as a subforest of ``tree``."""
    return Subforest(tree, v, tree.n - tree.index.post[v])


def subtree_minus_root(tree: Tree, v: int) -> Subforest:
    """``F_v - v``; empty when ``v`` is a leaf."""
    idx = tree.index
    if idx.size[v] == 1:
        return Subforest.empty(tree)
    return Subforest(tree, v + 1, tree.n - idx.post[v] + 1)


rootless_subtree = subtree_minus_root


def delete_left(s: Subforest) -> Subforest:
    return s.delete_left()


def delete_right(s: Subforest) -> Subforest:
    return s.delete_right()


def leftmost_root(s: Subforest) -> int:
    return s.leftmost_root


def rightmost_root(s: Subforest) -> int:
    return s.rightmost_root


def is_single_tree(s: Subforest) -> bool:
    return s.is_single_tree


def left_tree_size(s: Subforest) -> int:
    return s.left_tree_size


def right_tree_size(s: Subforest) -> int:
    return s.right_tree_size
