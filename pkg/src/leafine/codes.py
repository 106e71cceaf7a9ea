"""Canonical codes and the interning table behind them.

A canonical code is the dialect text of a tree in which the children of
every vertex are written in a fixed total order: shorter code first, ties
broken by plain string comparison.  Two trees get the same code exactly
when they are isomorphic as rooted trees.

Enumeration works on integer ids rather than strings.  :class:`CodeTable`
stores each distinct shape once, keyed by the sorted tuple of its
children's ids, so a candidate is deduplicated by one dict lookup.  The
text is only produced when asked for.
"""
from __future__ import annotations

from typing import Iterable

from .trees import TopTree

__all__ = ["CodeTable", "LEAF_ID", "canonical_code", "is_isomorphic", "is_valid_code"]

LEAF_ID = 0

# Codes up to this many characters are cached as strings and built by
# joining cached child texts; longer ones are streamed so a deep chain
# costs linear rather than quadratic time.
_JOIN_LIMIT = 4096


class CodeTable:
    """Interning table of rooted-tree shapes.

    Id 0 is the single leaf.  An internal shape is identified by the tuple
    of its children's ids in ascending numeric order; that tuple is a
    complete description of the child multiset, so equal tuples mean
    isomorphic trees and vice versa.
    """

    def __init__(self):
        self.index: dict[tuple[int, ...], int] = {}
        self.children: list[tuple[int, ...]] = [()]
        self.leaves: list[int] = [1]
        self.length: list[int] = [1]
        self._text: dict[int, str] = {LEAF_ID: "L"}
        self._order: dict[int, tuple[int, ...]] = {}

    def __len__(self) -> int:
        return len(self.children)

    def intern(self, key: tuple[int, ...]) -> int:
        """Return the id for children ``key`` (sorted ascending, len >= 2)."""
        cid = self.index.get(key)
        if cid is None:
            cid = self._add(key)
        return cid

    def _add(self, key: tuple[int, ...]) -> int:
        cid = len(self.children)
        self.index[key] = cid
        self.children.append(key)
        leaves = self.leaves
        length = self.length
        self.leaves.append(sum(leaves[k] for k in key))
        self.length.append(sum(length[k] for k in key) + len(key) + 1)
        return cid

    def merge(self, ids: Iterable[int]) -> int:
        """Id of a root whose branches are the given shapes."""
        key = tuple(sorted(ids))
        if len(key) < 2:
            raise ValueError("a merged vertex needs at least two branches")
        return self.intern(key)

    def intern_tree(self, tree: TopTree) -> int:
        """Intern every subtree of ``tree`` and return the root's id."""
        memo: dict[int, int] = {}
        stack: list[tuple[TopTree, bool]] = [(tree, False)]
        while stack:
            node, expanded = stack.pop()
            if id(node) in memo:
                continue
            if not node.children:
                memo[id(node)] = LEAF_ID
                continue
            if expanded:
                key = tuple(sorted(memo[id(k)] for k in node.children))
                memo[id(node)] = self.intern(key)
            else:
                stack.append((node, True))
                for k in node.children:
                    if id(k) not in memo:
                        stack.append((k, False))
        return memo[id(tree)]

    def to_tree(self, cid: int) -> TopTree:
        """Build a tree with the shape ``cid``, children in canonical order."""
        built: dict[int, TopTree] = {LEAF_ID: TopTree()}
        stack = [cid]
        while stack:
            c = stack[-1]
            if c in built:
                stack.pop()
                continue
            missing = [k for k in self.children[c] if k not in built]
            if missing:
                stack.extend(missing)
            else:
                stack.pop()
                built[c] = TopTree(built[k] for k in self.ordered_children(c))
        return built[cid]

    def ordered_children(self, cid: int) -> tuple[int, ...]:
        """Children of ``cid`` in the canonical (length, text) order."""
        order = self._order.get(cid)
        if order is not None:
            return order
        kids = self.children[cid]
        length = self.length
        by_len = sorted(kids, key=length.__getitem__)
        tie = any(
            length[a] == length[b] and a != b for a, b in zip(by_len, by_len[1:])
        )
        if tie:
            by_len.sort(key=lambda k: (length[k], self.text(k)))
        order = tuple(by_len)
        self._order[cid] = order
        return order

    def text(self, cid: int) -> str:
        """The canonical code of shape ``cid``."""
        s = self._text.get(cid)
        if s is not None:
            return s
        if self.length[cid] <= _JOIN_LIMIT:
            return self._joined_text(cid)
        return self._streamed_text(cid)

    def _joined_text(self, cid: int) -> str:
        cache = self._text
        stack = [cid]
        while stack:
            c = stack[-1]
            if c in cache:
                stack.pop()
                continue
            missing = [k for k in self.children[c] if k not in cache]
            if missing:
                stack.extend(missing)
                continue
            stack.pop()
            cache[c] = "(" + ",".join(cache[k] for k in self.ordered_children(c)) + ")"
        return cache[cid]

    def _streamed_text(self, cid: int) -> str:
        out: list[str] = []
        append = out.append
        stack: list[object] = [cid]
        while stack:
            item = stack.pop()
            if isinstance(item, str):
                append(item)
                continue
            if self.length[item] <= _JOIN_LIMIT:
                append(self._joined_text(item))
                continue
            kids = self.ordered_children(item)
            append("(")
            stack.append(")")
            for i in range(len(kids) - 1, -1, -1):
                stack.append(kids[i])
                if i:
                    stack.append(",")
        s = "".join(out)
        self._text[cid] = s
        return s

    def texts(self, ids: Iterable[int]) -> set[str]:
        return {self.text(c) for c in ids}


def canonical_code(tree: TopTree, table: CodeTable | None = None) -> str:
    """Canonical code of ``tree``; equal codes mean isomorphic trees."""
    table = CodeTable() if table is None else table
    return table.text(table.intern_tree(tree))


def is_isomorphic(a: TopTree, b: TopTree) -> bool:
    if a.n_leaves != b.n_leaves or a.height != b.height:
        return False
    table = CodeTable()
    return table.intern_tree(a) == table.intern_tree(b)


def is_valid_code(code: str) -> bool:
    """Check the canonical-code grammar, including child order.

    Used by tests and the ``verify`` command to audit emitted codes.
    """
    from .errors import TreeSyntaxError, UnaryVertexError
    from .trees import parse

    try:
        tree = parse(code)
    except (TreeSyntaxError, UnaryVertexError):
        return False
    return not code.endswith(";") and canonical_code(tree) == code
