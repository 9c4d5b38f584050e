"""Command-line front end: ``ted dist | script | gen | count | rna | selftest``.

Tree arguments are file paths; an argument naming no existing file is
parsed as inline bracket (or JSON) text.  Results go to stdout, diagnostics
to stderr.  Exit status is 0 on success, 1 when ``selftest`` finds a
mismatch and 2 on bad input.
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys

from .algorithms import ALGORITHMS, DeleteFromF, DeleteFromG, distance, edit_script
from .costs import CostError
from .forest import Tree, TreeError
from .instrumentation import gen_balanced, gen_comb, gen_path, gen_random, gen_zigzag
from .oracle import oracle_distance
from .treeio import emit_bracket, load_cost_table, parse_rna_text, parse_tree_text, quote_label

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT = 0, 1, 2
DEFAULT_MAX_NODES = 100_000


class InputError(Exception):
    """Bad user input; reported on stderr with exit status 2."""


def _max_nodes() -> int:
    raw = os.environ.get("TED_MAX_NODES", str(DEFAULT_MAX_NODES))
    try:
        limit = int(raw)
    except ValueError:
        raise InputError(f"TED_MAX_NODES must be an integer, got {raw!r}") from None
    if limit < 0:
        raise InputError("TED_MAX_NODES must be nonnegative")
    return limit


def _text_of(arg: str) -> str:
    if os.path.isfile(arg):
        try:
            with open(arg, encoding="utf-8") as fh:
                return fh.read()
        except (OSError, UnicodeDecodeError) as exc:
            raise InputError(f"cannot read {arg}: {exc}") from None
    return arg


def _guard(t: Tree, arg: str) -> Tree:
    limit = _max_nodes()
    if t.n > limit:
        raise InputError(f"{arg}: {t.n} nodes exceeds TED_MAX_NODES={limit}")
    return t


def _tree(arg: str) -> Tree:
    try:
        t = parse_tree_text(_text_of(arg))
    except TreeError as exc:
        raise InputError(f"{arg}: {exc}") from None
    return _guard(t, arg)


def _costs(path):
    if path is None:
        return None
    try:
        return load_cost_table(_text_of(path))
    except (CostError, OSError) as exc:
        raise InputError(f"cost table: {exc}") from None


def _algo(name: str) -> str:
    return "dmrw" if name == "auto" else name


def node_path(t: Tree, v: int) -> str:
    """Child-index path from the root, ``"0.1"`` style; the root is ``root``."""
    steps = []
    parent = t.index.parent
    while parent[v] != -1:
        p = parent[v]
        steps.append(t.children[p].index(v))
        v = p
    return ".".join(map(str, reversed(steps))) or "root"


# -- commands ------------------------------------------------------------------

def cmd_dist(args) -> int:
    f, g = _tree(args.f), _tree(args.g)
    res = distance(f, g, _costs(args.costs), _algo(args.algo))
    if args.json:
        print(json.dumps({
            "cost": res.cost,
            "subproblems": res.stats.subproblem_count,
            "n": f.n,
            "m": g.n,
            "algorithm": res.algorithm,
        }, sort_keys=True))
        return EXIT_OK
    print(res.cost)
    if args.stats:
        s = res.stats
        print(f"subproblems {s.subproblem_count}", file=sys.stderr)
        print(f"f_subforests {s.f_subforest_count}", file=sys.stderr)
        print(f"g_subforests {s.g_subforest_count}", file=sys.stderr)
    return EXIT_OK


def cmd_script(args) -> int:
    f, g = _tree(args.f), _tree(args.g)
    script = edit_script(f, g, _costs(args.costs), _algo(args.algo))
    for op in script.ops:
        if isinstance(op, DeleteFromF):
            print(f"del-f {node_path(f, op.node)}")
        elif isinstance(op, DeleteFromG):
            print(f"del-g {node_path(g, op.node)}")
        else:
            print(f"rel {node_path(f, op.node_f)} {node_path(g, op.node_g)} "
                  f"{quote_label(op.old)} {quote_label(op.new)}")
    print(f"cost {script.total_cost}")
    return EXIT_OK


_GENERATORS = {
    "path": gen_path,
    "comb": gen_comb,
    "zigzag": gen_zigzag,
}


def cmd_gen(args) -> int:
    size = args.size
    limit = _max_nodes()
    if size > limit:
        raise InputError(f"size {size} exceeds TED_MAX_NODES={limit}")
    try:
        if args.family == "random":
            t = gen_random(size, args.seed)
        elif args.family == "balanced":
            k = (size + 1).bit_length() - 2
            if size < 1 or 2 ** (k + 1) - 1 != size:
                raise ValueError(f"balanced: size must be 2**(k+1)-1, got {size}")
            t = gen_balanced(k)
        else:
            t = _GENERATORS[args.family](size)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    print(emit_bracket(t))
    return EXIT_OK


def cmd_count(args) -> int:
    f, g = _tree(args.f), _tree(args.g)
    costs = _costs(args.costs)
    names = [a.strip() for a in args.algo_list.split(",") if a.strip()]
    if not names:
        raise InputError("--algo-list is empty")
    for name in names:
        if name not in ALGORITHMS and name != "auto":
            raise InputError(f"unknown algorithm {name!r}")
    for name in names:
        res = distance(f, g, costs, _algo(name))
        print(f"{name} {res.stats.subproblem_count}")
    return EXIT_OK


def cmd_rna(args) -> int:
    try:
        t = parse_rna_text(_text_of(args.structure))
    except TreeError as exc:
        raise InputError(f"{args.structure}: {exc}") from None
    print(emit_bracket(_guard(t, args.structure)))
    return EXIT_OK


def cmd_selftest(args) -> int:
    rng = random.Random(args.seed)
    failures = 0
    for i in range(args.rounds):
        f = gen_random(rng.randint(0, 5), rng.randrange(2**32), 3, ("a", "b"))
        g = gen_random(rng.randint(0, 5), rng.randrange(2**32), 3, ("a", "b"))
        want = oracle_distance(f, g)
        got = {name: distance(f, g, None, name).cost for name in ALGORITHMS}
        if any(c != want for c in got.values()):
            failures += 1
            print(f"mismatch on {emit_bracket(f)!r} vs {emit_bracket(g)!r}: "
                  f"oracle {want}, got {got}", file=sys.stderr)
    print(f"selftest: {args.rounds - failures}/{args.rounds} pairs agree with the oracle")
    return EXIT_MISMATCH if failures else EXIT_OK


# -- argument parsing ----------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ted", description="Ordered tree edit distance.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    algos = list(ALGORITHMS) + ["auto"]

    def pair(name, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("f", help="first tree: file path or inline bracket text")
        sp.add_argument("g", help="second tree: file path or inline bracket text")
        sp.add_argument("--costs", help="cost table: JSON file or inline JSON")
        return sp

    d = pair("dist", "print the edit distance")
    d.add_argument("--algo", choices=algos, default="auto")
    d.add_argument("--json", action="store_true", help="print a JSON object")
    d.add_argument("--stats", action="store_true", help="report subproblem counts on stderr")
    d.set_defaults(run=cmd_dist)

    s = pair("script", "print an optimal edit script")
    s.add_argument("--algo", choices=algos, default="auto")
    s.set_defaults(run=cmd_script)

    c = pair("count", "print subproblem counts per algorithm")
    c.add_argument("--algo-list", default=",".join(ALGORITHMS),
                   help="comma-separated algorithms (default: all)")
    c.set_defaults(run=cmd_count)

    gsp = sub.add_parser("gen", help="print a generated tree")
    gsp.add_argument("family", choices=["comb", "zigzag", "balanced", "path", "random"])
    gsp.add_argument("size", type=int)
    gsp.add_argument("--seed", type=int, default=0)
    gsp.set_defaults(run=cmd_gen)

    r = sub.add_parser("rna", help="convert dot-bracket structure to a tree")
    r.add_argument("structure", help="dot-bracket string, or a file with an optional sequence line")
    r.set_defaults(run=cmd_rna)

    t = sub.add_parser("selftest", help="compare all algorithms with the brute-force oracle")
    t.add_argument("--rounds", type=int, default=200)
    t.add_argument("--seed", type=int, default=0)
    t.set_defaults(run=cmd_selftest)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.run(args)
    except InputError as exc:
        print(f"ted: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
