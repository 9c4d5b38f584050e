"""Subproblem accounting, bound checks and adversarial tree families."""
from __future__ import annotations

import csv
import io
import math
import random
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .forest import Tree


@dataclass(frozen=True)
class RunStats:
    """Counts from one distance computation.

    A subproblem is a distinct memo key, base cases included.
    """

    subproblem_count: int
    peak_memo_entries: int
    f_subforest_count: int
    g_subforest_count: int
    n: int = 0
    m: int = 0


# -- generators ----------------------------------------------------------------

def _check_size(n, what, *, multiple=1, minimum=0):
    if isinstance(n, bool) or not isinstance(n, int) or n < minimum or n % multiple:
        raise ValueError(f"{what}: invalid size {n!r}")


def gen_path(n: int, label: str = "a") -> Tree:
    _check_size(n, "path")
    return Tree([label] * n, [[v + 1] for v in range(n - 1)] + ([[]] if n else []))


def gen_comb(n: int, label: str = "a") -> Tree:
    """Left-spine comb with ``n // 2`` spine nodes, each carrying a leaf on its right.

    The ``i``-th spine node from the bottom roots a subtree of ``2 * i`` nodes;
    the bottom one has its leaf as only child.
    """
    _check_size(n, "comb", multiple=2, minimum=2)
    return _comb(n // 2, label, mirror=False)


def gen_comb_mirror(n: int, label: str = "a") -> Tree:
    """Right-spine comb: each spine node has a leaf as its left child."""
    _check_size(n, "comb", multiple=2, minimum=2)
    return _comb(n // 2, label, mirror=True)


def _comb(k, label, mirror):
    nested = (label, [label])
    for _ in range(k - 1):
        kids = [label, nested] if mirror else [nested, label]
        nested = (label, kids)
    return Tree.from_nested(nested)


def gen_balanced(k: int, label: str = "a") -> Tree:
    """Complete binary tree of depth ``k`` (``2**(k+1) - 1`` nodes)."""
    _check_size(k, "balanced")
    n = 2 ** (k + 1) - 1
    # heap numbering -> parent array
    parents = [-1] + [(v - 1) // 2 for v in range(1, n)]
    return Tree.from_parents([label] * n, parents)


def gen_zigzag(m: int, label: str = "a") -> Tree:
    """Chain of ``m // 4`` four-node units.

    A unit root ``w`` has left child ``w_l`` and a single leaf as its right
    subtree; ``w_l`` has a leaf as left child and the next unit's root as its
    right child (omitted in the deepest unit).
    """
    _check_size(m, "zigzag", multiple=4, minimum=4)
    nested = (label, [(label, [label]), label])
    for _ in range(m // 4 - 1):
        nested = (label, [(label, [label, nested]), label])
    return Tree.from_nested(nested)


def gen_random(n: int, seed: int = 0, max_children: int = 4, alphabet: Sequence[str] = ("a",)) -> Tree:
    """Random ordered tree with ``n`` nodes, deterministic per arguments.

    Each new node attaches at a random slot under a random node that still
    has fewer than ``max_children`` children.
    """
    _check_size(n, "random")
    if max_children < 1:
        raise ValueError("max_children must be at least 1")
    if n == 0:
        return Tree.empty()
    rng = random.Random(seed)
    kids: list[list[int]] = [[]]
    open_nodes = [0]
    for v in range(1, n):
        i = rng.randrange(len(open_nodes))
        p = open_nodes[i]
        kids[p].insert(rng.randint(0, len(kids[p])), v)
        if len(kids[p]) >= max_children:
            open_nodes[i] = open_nodes[-1]
            open_nodes.pop()
        kids.append([])
        open_nodes.append(v)
    labels = [rng.choice(alphabet) for _ in range(n)]
    return Tree.from_children(labels, kids, 0)


FAMILIES: dict[str, Callable[[int], tuple[Tree, Tree]]] = {
    "comb": lambda s: (gen_comb(s), gen_comb_mirror(s)),
    "balanced": lambda s: (gen_balanced(_depth_for(s)), gen_balanced(_depth_for(s))),
    "zigzag": lambda s: (gen_zigzag(s), gen_zigzag(s)),
    "path": lambda s: (gen_path(s), gen_path(s)),
}


def _depth_for(size: int) -> int:
    k = (size + 1).bit_length() - 2
    if 2 ** (k + 1) - 1 != size:
        raise ValueError(f"balanced family needs sizes of the form 2**(k+1)-1, got {size}")
    return k


# -- bounds --------------------------------------------------------------------

@dataclass(frozen=True)
class BoundCheck:
    passed: bool
    count: int
    bound: float
    margin: float
    empirical_constant: float


def dmrw_bound(n: int, m: int) -> float:
    """Crude upper bound ``4 (n m)^{3/2}`` on relevant subproblems."""
    return 4.0 * (n * m) ** 1.5


def check_dmrw_bounds(stats: RunStats, n: int | None = None, m: int | None = None) -> BoundCheck:
    n = stats.n if n is None else n
    m = stats.m if m is None else m
    if n < m:
        n, m = m, n
    bound = dmrw_bound(n, m)
    count = stats.subproblem_count
    scale = m * m * n * (1 + math.log2(n / m)) if m else 0.0
    return BoundCheck(
        passed=count <= bound,
        count=count,
        bound=bound,
        margin=bound - count,
        empirical_constant=count / scale if scale else math.nan,
    )


def keyroot_bound(t: Tree) -> int:
    """Sum of subtree sizes over keyroots."""
    idx = t.index
    return sum(idx.size[v] for v in idx.keyroots)


def light_bound(t: Tree) -> int:
    """Sum of subtree sizes over light nodes."""
    idx = t.index
    return sum(idx.size[v] for v in idx.light)


def comb_lower_bound(n: int, m: int) -> int:
    """Exact value of sum over spine pairs (i, j) of ``min(2i, 2j) - 1``."""
    return sum(min(2 * i, 2 * j) - 1 for i in range(1, n // 2 + 1) for j in range(1, m // 2 + 1))


# -- growth reports ------------------------------------------------------------

@dataclass
class GrowthReport:
    rows: list = field(default_factory=list)

    def counts(self, algorithm: str) -> list[int]:
        return [r[4] for r in self.rows if r[3] == algorithm]

    def ratios(self, algorithm: str) -> list[float]:
        c = self.counts(algorithm)
        return [b / a for a, b in zip(c, c[1:])]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["instance", "n", "m", "algorithm", "count"])
        w.writerows(self.rows)
        return buf.getvalue()


def growth_report(
    family: str | Callable[[int], tuple[Tree, Tree]],
    sizes: Iterable[int],
    algorithms: Iterable[str] = ("dmrw",),
    *,
    backend=None,
) -> GrowthReport:
    from .algorithms import distance

    sizes = list(sizes)
    if sizes != sorted(sizes):
        raise ValueError("sizes must be ascending")
    make = FAMILIES[family] if isinstance(family, str) else family
    name = family if isinstance(family, str) else getattr(family, "__name__", "custom")
    rows = []
    for s in sizes:
        f, g = make(s)
        for algo in algorithms:
            res = distance(f, g, None, algo, backend=backend)
            rows.append((f"{name}-{s}", f.n, g.n, algo, res.stats.subproblem_count))
    rows.sort(key=lambda r: (r[3], r[1]))
    return GrowthReport(rows)
