"""Topological rooted trees and their textual dialect.

A topological tree is a rooted tree in which no vertex has exactly one
child.  Leaves are unlabeled.  The dialect is::

    tree := "L" | "(" tree ("," tree)+ ")"

with an optional trailing ``;``.  ASCII whitespace between tokens is
accepted on input and never produced on output.

Trees are immutable and may share subtrees, so a generator can build
``f_n`` in memory linear in ``n``.  Every traversal here is iterative; a
caterpillar of depth 10**5 parses, prints and measures without touching
the interpreter's recursion limit.
"""
from __future__ import annotations

import sys
from typing import Iterable, Iterator, Sequence

from .errors import TreeSyntaxError, UnaryVertexError

__all__ = [
    "TopTree",
    "LEAF",
    "parse",
    "serialize",
    "leaf_count",
    "height",
    "vertex_count",
    "iter_tree_lines",
    "read_trees",
]

_WHITESPACE = " \t\r\n\f\v"


class TopTree:
    """An immutable rooted tree without outdegree-1 vertices.

    ``children`` is a tuple of subtrees (empty for a leaf).  Child order is
    kept for plain serialization and leaf indexing but carries no meaning
    for isomorphism.  Leaf count, height and vertex count are computed once
    at construction from the children's values.
    """

    __slots__ = ("children", "n_leaves", "height", "n_vertices")

    def __init__(self, children: Iterable["TopTree"] = ()):
        kids = tuple(children)
        if len(kids) == 1:
            raise UnaryVertexError("a vertex has exactly one child")
        for k in kids:
            if not isinstance(k, TopTree):
                raise TypeError(f"children must be TopTree, got {type(k).__name__}")
        set_ = object.__setattr__
        set_(self, "children", kids)
        if kids:
            set_(self, "n_leaves", sum(k.n_leaves for k in kids))
            set_(self, "height", 1 + max(k.height for k in kids))
            set_(self, "n_vertices", 1 + sum(k.n_vertices for k in kids))
        else:
            set_(self, "n_leaves", 1)
            set_(self, "height", 0)
            set_(self, "n_vertices", 1)

    def __setattr__(self, name, value):
        raise AttributeError("TopTree is immutable")

    def __delattr__(self, name):
        raise AttributeError("TopTree is immutable")

    @property
    def is_leaf(self) -> bool:
        return not self.children

    def __repr__(self) -> str:
        if self.n_vertices > 200:
            return f"<TopTree leaves={self.n_leaves} height={self.height}>"
        return f"TopTree({serialize(self)!r})"


LEAF = TopTree()


def leaf_count(tree: TopTree) -> int:
    return tree.n_leaves


def height(tree: TopTree) -> int:
    """Greatest number of edges on a root-to-leaf path."""
    return tree.height


def vertex_count(tree: TopTree) -> int:
    return tree.n_vertices


def parse(text: str) -> TopTree:
    """Parse one tree in the dialect, optionally ending in ``;``.

    Raises :class:`TreeSyntaxError` for malformed text and
    :class:`UnaryVertexError` for a parenthesized group with one member.
    """
    n = len(text)
    pos = 0
    # Each open group is a list of finished children.
    stack: list[list[TopTree]] = []
    result: TopTree | None = None
    expect_tree = True

    def skip(p: int) -> int:
        while p < n and text[p] in _WHITESPACE:
            p += 1
        return p

    while True:
        pos = skip(pos)
        if result is not None and not stack:
            break
        if pos >= n:
            raise TreeSyntaxError("unexpected end of input", pos)
        ch = text[pos]
        if expect_tree:
            if ch == "L":
                node = LEAF
                pos += 1
            elif ch == "(":
                stack.append([])
                pos += 1
                continue
            else:
                raise TreeSyntaxError(f"expected 'L' or '(', found {ch!r}", pos)
            if stack:
                stack[-1].append(node)
                expect_tree = False
            else:
                result = node
        else:
            if ch == ",":
                expect_tree = True
                pos += 1
            elif ch == ")":
                kids = stack.pop()
                if len(kids) == 1:
                    raise UnaryVertexError(f"group with a single member closed at offset {pos}")
                node = TopTree(kids)
                pos += 1
                if stack:
                    stack[-1].append(node)
                else:
                    result = node
            else:
                raise TreeSyntaxError(f"expected ',' or ')', found {ch!r}", pos)

    if pos < n and text[pos] == ";":
        pos = skip(pos + 1)
    if pos != n:
        raise TreeSyntaxError(f"trailing characters {text[pos:pos + 10]!r}", pos)
    return result


def _write_tokens(tree: TopTree, out: list[str]) -> None:
    stack: list[object] = [tree]
    append = out.append
    while stack:
        item = stack.pop()
        if isinstance(item, str):
            append(item)
            continue
        if not item.children:
            append("L")
            continue
        append("(")
        stack.append(")")
        kids = item.children
        for i in range(len(kids) - 1, -1, -1):
            stack.append(kids[i])
            if i:
                stack.append(",")


def serialize(tree: TopTree, canonical: bool = False) -> str:
    """Write ``tree`` in the dialect.

    Without ``canonical`` the stored child order is kept; with it the
    output is the tree's canonical code.
    """
    if canonical:
        from .codes import canonical_code

        return canonical_code(tree)
    out: list[str] = []
    _write_tokens(tree, out)
    return "".join(out)


def iter_tree_lines(lines: Iterable[str]) -> Iterator[tuple[int, TopTree]]:
    """Yield ``(line_number, tree)`` for every non-blank, non-comment line.

    Line numbers are 1-based and count every physical line.
    """
    for lineno, line in enumerate(lines, start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        try:
            yield lineno, parse(stripped)
        except TreeSyntaxError as exc:
            raise TreeSyntaxError(f"line {lineno}: {exc}") from None
        except UnaryVertexError as exc:
            raise UnaryVertexError(f"line {lineno}: {exc}") from None


def read_trees(source: str) -> list[tuple[int, TopTree]]:
    """Read a tree file; ``-`` means standard input."""
    if source == "-":
        return list(iter_tree_lines(sys.stdin))
    with open(source, encoding="utf-8") as fh:
        return list(iter_tree_lines(fh))
