"""Exhaustive reference: minimum cost over all valid node mappings.

Enumerates every one-to-one mapping between the nodes of two trees that
preserves ancestry and left-to-right order, and charges relabels for mapped
pairs and deletions for everything unmapped.  Exponential; only for tiny
trees.  It shares no code with the recursive solvers on purpose.
"""
from __future__ import annotations

from .costs import CostModel, unit_model
from .forest import Tree

ORACLE_MAX_NODES = 8


class OracleLimitError(ValueError):
    pass


def _ranks(t: Tree):
    post = [0] * t.n
    counter = 0

    def visit(v):
        nonlocal counter
        for c in t.children[v]:
            visit(c)
        post[v] = counter
        counter += 1

    if t.n:
        visit(0)
    return post


def enumerate_mappings(f: Tree, g: Tree):
    """Yield every valid mapping as a tuple of ``(v, w)`` pairs."""
    fpost, gpost = _ranks(f), _ranks(g)
    n, m = f.n, g.n
    pairs: list[tuple[int, int]] = []

    def extend(v, last_w):
        if v == n:
            yield tuple(pairs)
            return
        yield from extend(v + 1, last_w)
        for w in range(last_w + 1, m):
            # preorder is monotone by construction; postorder must agree too
            if all((fpost[v2] > fpost[v]) == (gpost[w2] > gpost[w]) for v2, w2 in pairs):
                pairs.append((v, w))
                yield from extend(v + 1, w)
                pairs.pop()

    yield from extend(0, -1)


def oracle_distance(f: Tree, g: Tree, costs: CostModel | None = None) -> int:
    if f.n > ORACLE_MAX_NODES or g.n > ORACLE_MAX_NODES:
        raise OracleLimitError(
            f"oracle size limit: both trees need at most {ORACLE_MAX_NODES} nodes"
        )
    costs = costs or unit_model()
    fdel = [costs.delete(x) for x in f.labels]
    gdel = [costs.delete(x) for x in g.labels]
    base = sum(fdel) + sum(gdel)
    best = base
    for mapping in enumerate_mappings(f, g):
        c = base
        for v, w in mapping:
            c += costs.relabel(f.labels[v], g.labels[w]) - fdel[v] - gdel[w]
        best = min(best, c)
    return best
