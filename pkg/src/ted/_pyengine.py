"""Pure-Python memoized evaluation of the root-deletion recursion.

This is the fallback backend; ``_kernel.pyx`` implements the same
procedures over C arrays and must produce identical memo tables.

Memo layout shared by both backends: the key of the pair of tight
subforests ``(fa, fb)`` / ``(ga, gb)`` is
``(fa * (n + 1) + fb) * (m + 1) ** 2 + ga * (m + 1) + gb`` and the value is
``cost * 8 + code`` where ``code = kind | (direction << 2)``.
"""
from __future__ import annotations

RIGHT, LEFT = 0, 1
KIND_BASE, KIND_DEL_F, KIND_DEL_G, KIND_MATCH = 0, 1, 2, 3

MODE_RIGHT, MODE_KLEIN_F, MODE_KLEIN_G, MODE_CUSTOM, MODE_RANDOM = 0, 1, 2, 3, 4

MASK64 = 0xFFFFFFFFFFFFFFFF


def mix64(x: int) -> int:
    """splitmix64 finalizer on 64-bit words."""
    x = (x + 0x9E3779B97F4A7C15) & MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & MASK64
    return x ^ (x >> 31)


def random_direction(seed: int, fa, fb, ga, gb) -> int:
    """Seeded coin flip for one subforest pair (same pair, same answer)."""
    h = mix64(seed & MASK64)
    for part in (fa, fb, ga, gb):
        h = mix64(h ^ part)
    return h & 1


class _SideOps:
    """Tight-subforest arithmetic on one side's arrays."""

    __slots__ = ("n", "size", "post", "post_node", "parent", "pre_sum")

    def __init__(self, lists):
        self.n = lists.n
        self.size = lists.size
        self.post = lists.post
        self.post_node = lists.post_node
        self.parent = lists.parent
        self.pre_sum = lists.pre_sum

    def right_root(self, b):
        return self.post_node[self.n - 1 - b]

    def minus_root(self, v):
        if self.size[v] == 1:
            return self.n, 0
        return v + 1, self.n - self.post[v]

    def subtree(self, v):
        return v, self.n - 1 - self.post[v]

    def del_left(self, a, b, r):
        size = self.size
        if a == r:
            return self.minus_root(a)
        if size[a] > 1:
            return a + 1, b
        x = a + 1
        while x < r < x + size[x]:
            x += 1
        return x, b

    def del_right(self, a, b, r):
        size, post, post_node = self.size, self.post, self.post_node
        if a == r:
            return self.minus_root(r)
        if size[r] > 1:
            return a, b + 1
        y = post_node[post[r] - 1]
        while y < a < y + size[y]:
            y = post_node[post[y] - 1]
        return a, self.n - 1 - post[y]

    def drop_left_tree(self, a, b, r):
        size = self.size
        if a == r:
            return self.n, 0
        x = a + size[a]
        while x < r < x + size[x]:
            x += 1
        return x, b

    def drop_right_tree(self, a, b, r):
        size, post, post_node = self.size, self.post, self.post_node
        if a == r:
            return self.n, 0
        y = post_node[post[r] - size[r]]
        while y < a < y + size[y]:
            y = post_node[post[y] - 1]
        return a, self.n - 1 - post[y]

    def forest_cost(self, a, b):
        if a == self.n:
            return 0
        r = self.post_node[self.n - 1 - b]
        total = self.pre_sum[r + self.size[r]] - self.pre_sum[a]
        parent = self.parent
        pre_sum = self.pre_sum
        u = parent[r]
        while u > a:
            total -= pre_sum[u + 1] - pre_sum[u]
            u = parent[u]
        return total


class PyMemo:
    """Memo table of one distance computation."""

    def __init__(self, problem):
        self.n = problem.n
        self.m = problem.m
        self.gspan = (self.m + 1) ** 2
        self.table: dict[int, int] = {}

    def key(self, fa, fb, ga, gb):
        return (fa * (self.n + 1) + fb) * self.gspan + ga * (self.m + 1) + gb

    def decode(self, key):
        fk, gk = divmod(key, self.gspan)
        fa, fb = divmod(fk, self.n + 1)
        ga, gb = divmod(gk, self.m + 1)
        return fa, fb, ga, gb

    def lookup(self, fa, fb, ga, gb):
        v = self.table.get(self.key(fa, fb, ga, gb))
        if v is None:
            return None
        return v >> 3, v & 7

    def __len__(self):
        return len(self.table)

    def __contains__(self, quad):
        return self.key(*quad) in self.table

    def keys(self):
        return [self.decode(k) for k in self.table]

    def side_counts(self):
        gspan = self.gspan
        fs = set()
        gs = set()
        for k in self.table:
            fk, gk = divmod(k, gspan)
            fs.add(fk)
            gs.add(gk)
        return len(fs), len(gs)


def run(problem, memo: PyMemo, fa, fb, ga, gb, mode, decide=None, seed=0):
    """Evaluate the pair ``(fa, fb) x (ga, gb)`` and everything it needs.

    Keys already in ``memo`` are never expanded again.  ``mode`` picks the
    direction rule; ``MODE_CUSTOM`` calls ``decide(fa, fb, ga, gb)`` and
    ``MODE_RANDOM`` flips a coin seeded by ``seed`` and the pair.
    """
    F = _SideOps(problem.f.lists)
    G = _SideOps(problem.g.lists)
    n, m = F.n, G.n
    nf1, ng1, gspan = n + 1, m + 1, memo.gspan
    table = memo.table
    fsize, gsize = F.size, G.size
    fdel, gdel = problem.f.lists.delete, problem.g.lists.delete
    flab, glab = problem.f.lists.label, problem.g.lists.label
    rel = problem.rel_lists
    f_post_node, g_post_node = F.post_node, G.post_node

    stack = [(fa, fb, ga, gb, -1)]
    while stack:
        fa, fb, ga, gb, d = stack.pop()
        key = (fa * nf1 + fb) * gspan + ga * ng1 + gb
        if d < 0:
            if key in table:
                continue
            if fa == n:
                table[key] = G.forest_cost(ga, gb) << 3
                continue
            if ga == m:
                table[key] = F.forest_cost(fa, fb) << 3
                continue
        fr = f_post_node[n - 1 - fb]
        gr = g_post_node[m - 1 - gb]
        if d < 0:
            if mode == MODE_RIGHT:
                d = RIGHT
            elif mode == MODE_KLEIN_F:
                d = LEFT if fsize[fa] <= fsize[fr] else RIGHT
            elif mode == MODE_KLEIN_G:
                d = LEFT if gsize[ga] <= gsize[gr] else RIGHT
            elif mode == MODE_RANDOM:
                d = random_direction(seed, fa, fb, ga, gb)
            else:
                d = decide(fa, fb, ga, gb)
        if d == RIGHT:
            x, y = fr, gr
            fa1, fb1 = F.del_right(fa, fb, fr)
            ga2, gb2 = G.del_right(ga, gb, gr)
            fa4, fb4 = F.drop_right_tree(fa, fb, fr)
            ga4, gb4 = G.drop_right_tree(ga, gb, gr)
        else:
            x, y = fa, ga
            fa1, fb1 = F.del_left(fa, fb, fr)
            ga2, gb2 = G.del_left(ga, gb, gr)
            fa4, fb4 = F.drop_left_tree(fa, fb, fr)
            ga4, gb4 = G.drop_left_tree(ga, gb, gr)
        fa3, fb3 = F.minus_root(x)
        ga3, gb3 = G.minus_root(y)
        k1 = (fa1 * nf1 + fb1) * gspan + ga * ng1 + gb
        k2 = (fa * nf1 + fb) * gspan + ga2 * ng1 + gb2
        k3 = (fa3 * nf1 + fb3) * gspan + ga3 * ng1 + gb3
        k4 = (fa4 * nf1 + fb4) * gspan + ga4 * ng1 + gb4
        v1 = table.get(k1)
        v2 = table.get(k2)
        v3 = table.get(k3)
        v4 = table.get(k4)
        if v1 is None or v2 is None or v3 is None or v4 is None:
            stack.append((fa, fb, ga, gb, d))
            if v4 is None:
                stack.append((fa4, fb4, ga4, gb4, -1))
            if v3 is None:
                stack.append((fa3, fb3, ga3, gb3, -1))
            if v2 is None:
                stack.append((fa, fb, ga2, gb2, -1))
            if v1 is None:
                stack.append((fa1, fb1, ga, gb, -1))
            continue
        best = (v3 >> 3) + (v4 >> 3) + rel[flab[x]][glab[y]]
        kind = KIND_MATCH
        c = (v1 >> 3) + fdel[x]
        if c < best:
            best, kind = c, KIND_DEL_F
        c = (v2 >> 3) + gdel[y]
        if c < best:
            best, kind = c, KIND_DEL_G
        table[key] = (best << 3) | kind | (d << 2)


def run_dmrw(problem, memo: PyMemo):
    """Adaptive recursion: TopLight subtrees of the larger side first, then
    Klein's rule driven by the larger side, reusing everything memoized."""
    n, m = problem.n, problem.m
    if n == 0 or m == 0:
        run(problem, memo, 0, 0, 0, 0, MODE_RIGHT)
        return
    F = problem.f.lists
    G = problem.g.lists
    fops, gops = _SideOps(F), _SideOps(G)
    calls = [(0, 0, -1)]
    while calls:
        v, w, drive = calls.pop()
        fa, fb = fops.subtree(v)
        ga, gb = gops.subtree(w)
        if drive < 0:
            if memo.key(fa, fb, ga, gb) in memo.table:
                continue
            if F.size[v] >= G.size[w]:
                calls.append((v, w, MODE_KLEIN_F))
                lights = F.toplight[F.toplight_ptr[v]:F.toplight_ptr[v + 1]]
                calls.extend((u, w, -1) for u in reversed(lights))
            else:
                calls.append((v, w, MODE_KLEIN_G))
                lights = G.toplight[G.toplight_ptr[w]:G.toplight_ptr[w + 1]]
                calls.extend((v, u, -1) for u in reversed(lights))
        else:
            run(problem, memo, fa, fb, ga, gb, drive)
