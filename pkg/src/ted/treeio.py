"""Text formats: bracket trees, JSON trees, RNA dot-bracket, cost tables.

Bracket grammar::

    tree  := label [ '(' tree (',' tree)* ')' ]
    label := [A-Za-z0-9_.-]+  |  '"' (escaped chars) '"'

Whitespace around tokens is ignored.  Blank text denotes the empty tree.
"""
from __future__ import annotations

import json
import os
import re
from typing import Mapping

from .costs import CostError, CostModel, from_table
from .forest import Tree, TreeError

_BARE = re.compile(r"[A-Za-z0-9_.\-]+")


class ParseError(TreeError):
    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)


# -- bracket text ----------------------------------------------------------------

def _skip_ws(text, i):
    while i < len(text) and text[i].isspace():
        i += 1
    return i


def _read_label(text, i):
    if i >= len(text):
        raise ParseError("expected a label, found end of input", i)
    if text[i] == '"':
        out = []
        j = i + 1
        while j < len(text):
            ch = text[j]
            if ch == "\\":
                if j + 1 >= len(text):
                    raise ParseError("dangling escape", j)
                out.append(text[j + 1])
                j += 2
            elif ch == '"':
                if not out:
                    raise ParseError("empty label", i)
                return "".join(out), j + 1
            else:
                out.append(ch)
                j += 1
        raise ParseError("unterminated quoted label", i)
    m = _BARE.match(text, i)
    if not m:
        if text[i] in "(),":
            raise ParseError(f"empty label before {text[i]!r}", i)
        raise ParseError(f"unexpected character {text[i]!r}", i)
    return m.group(), m.end()


def parse_bracket(text: str) -> Tree:
    i = _skip_ws(text, 0)
    if i == len(text):
        return Tree.empty()
    labels: list[str] = []
    children: list[list[int]] = []
    # stack of (node id, position of its '(')
    open_nodes: list[tuple[int, int]] = []
    while True:
        label, i = _read_label(text, i)
        v = len(labels)
        labels.append(label)
        children.append([])
        if open_nodes:
            children[open_nodes[-1][0]].append(v)
        i = _skip_ws(text, i)
        if i < len(text) and text[i] == "(":
            open_nodes.append((v, i))
            i = _skip_ws(text, i + 1)
            continue
        # close finished groups
        while True:
            if i < len(text) and text[i] == ",":
                if not open_nodes:
                    raise ParseError("',' outside of a child list", i)
                i = _skip_ws(text, i + 1)
                break
            if i < len(text) and text[i] == ")":
                if not open_nodes:
                    raise ParseError("unbalanced ')'", i)
                open_nodes.pop()
                i = _skip_ws(text, i + 1)
                continue
            if i == len(text):
                if open_nodes:
                    raise ParseError("unbalanced '('", open_nodes[-1][1])
                return Tree(labels, children)
            raise ParseError(f"unexpected character {text[i]!r}", i)


def quote_label(label: str) -> str:
    """Label as bracket text, quoted only when it is not a bare word."""
    if _BARE.fullmatch(label):
        return label
    return '"' + label.replace("\\", "\\\\").replace('"', '\\"') + '"'


def emit_bracket(t: Tree) -> str:
    if t.n == 0:
        return ""
    parts = []
    # (node, next child index)
    stack = [(0, 0)]
    parts.append(quote_label(t.labels[0]))
    while stack:
        v, k = stack.pop()
        kids = t.children[v]
        if k < len(kids):
            parts.append("(" if k == 0 else ",")
            stack.append((v, k + 1))
            c = kids[k]
            parts.append(quote_label(t.labels[c]))
            stack.append((c, 0))
        elif kids:
            parts.append(")")
    return "".join(parts)


# -- JSON trees ----------------------------------------------------------------

def tree_from_json(doc) -> Tree:
    """Decode ``{"label": str, "children": [...]}`` (``null`` is the empty tree)."""
    if doc is None:
        return Tree.empty()
    labels, children = [], []
    stack = [(doc, -1)]
    while stack:
        item, parent = stack.pop()
        if not isinstance(item, Mapping) or "label" not in item:
            raise ParseError("JSON tree nodes need a 'label' field")
        kids = item.get("children", [])
        if not isinstance(kids, list):
            raise ParseError("'children' must be a list")
        v = len(labels)
        labels.append(item["label"])
        children.append([])
        if parent >= 0:
            children[parent].append(v)
        stack.extend((k, v) for k in reversed(kids))
    if not all(isinstance(x, str) and x for x in labels):
        raise ParseError("JSON tree labels must be non-empty strings")
    return Tree(labels, children)


def tree_to_json(t: Tree):
    if t.n == 0:
        return None
    built = [None] * t.n
    for v in range(t.n - 1, -1, -1):
        built[v] = {"label": t.labels[v], "children": [built[c] for c in t.children[v]]}
    return built[0]


def parse_tree_text(text: str) -> Tree:
    """Bracket text, or a JSON tree when the text starts with ``{`` or is ``null``."""
    stripped = text.strip()
    if stripped.startswith("{") or stripped == "null":
        try:
            doc = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON tree: {exc.msg}", exc.pos) from None
        return tree_from_json(doc)
    return parse_bracket(text)


def read_tree(path: str | os.PathLike) -> Tree:
    with open(path, encoding="utf-8") as fh:
        return parse_tree_text(fh.read())


# -- RNA dot-bracket -------------------------------------------------------------

def parse_dot_bracket(structure: str, sequence: str | None = None) -> Tree:
    """Secondary structure -> ordered tree under a synthetic ``root``.

    Each base pair becomes an internal node, each unpaired base a leaf.  Without
    ``sequence`` the labels are ``pair`` and ``base``; with it, pairs are
    labelled ``X-Y`` and unpaired bases by their nucleotide.
    """
    structure = structure.strip()
    if sequence is not None:
        sequence = sequence.strip()
        if len(sequence) != len(structure):
            raise ParseError("sequence and structure differ in length")
    labels = ["root"]
    children: list[list[int]] = [[]]
    stack: list[tuple[int, int]] = [(0, -1)]
    for i, ch in enumerate(structure):
        parent = stack[-1][0]
        if ch == ".":
            v = len(labels)
            labels.append(sequence[i] if sequence else "base")
            children.append([])
            children[parent].append(v)
        elif ch == "(":
            v = len(labels)
            labels.append("pair")
            children.append([])
            children[parent].append(v)
            stack.append((v, i))
        elif ch == ")":
            if len(stack) == 1:
                raise ParseError("unbalanced ')'", i)
            v, opened = stack.pop()
            if sequence:
                labels[v] = f"{sequence[opened]}-{sequence[i]}"
        else:
            raise ParseError(f"unexpected character {ch!r} in dot-bracket", i)
    if len(stack) > 1:
        raise ParseError("unbalanced '('", stack[-1][1])
    return Tree(labels, children)


def parse_rna_text(text: str) -> Tree:
    """One line of structure, or a sequence line followed by a structure line."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith(">")]
    if len(lines) == 1:
        return parse_dot_bracket(lines[0])
    if len(lines) == 2:
        return parse_dot_bracket(lines[1], lines[0])
    raise ParseError("expected a structure line, optionally preceded by a sequence line")


# -- cost tables ---------------------------------------------------------------

def load_cost_table(document) -> CostModel:
    """Accepts a decoded mapping, JSON text, or a path to a JSON file."""
    if isinstance(document, Mapping):
        return from_table(document)
    if isinstance(document, os.PathLike) or (
        isinstance(document, str) and not document.lstrip().startswith("{")
    ):
        with open(document, encoding="utf-8") as fh:
            document = fh.read()
    try:
        doc = json.loads(document)
    except json.JSONDecodeError as exc:
        raise CostError(f"cost table is not valid JSON: {exc.msg}") from None
    return from_table(doc)
