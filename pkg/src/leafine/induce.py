"""Leaf-induced subtrees by direct construction and by exhaustive search.

Leaves are indexed 0, 1, ... in depth-first order over the stored child
order, so the leaves below any vertex form a contiguous index range and a
leaf subset is naturally a bitmask.

:func:`induce` builds the induced tree of one selection.  Unary vertices
are never materialized: a vertex keeps itself only when at least two of
its children contribute, otherwise it passes its single surviving branch
straight up.

:func:`induced_code_ids` is the exhaustive oracle.  It visits every
nonempty mask in increasing order.  The induced shape of a mask is
resolved from the shapes of its restrictions to the root's branches, and
those come from per-branch lookup tables indexed by the branch's own
submask.  Each subset still gets its own induction, just without
re-walking the tree.
"""
from __future__ import annotations

from bisect import bisect_left
from itertools import product
from typing import Iterable, Iterator

from .codes import LEAF_ID, CodeTable
from .errors import BudgetExceeded, EmptySelection, IndexOutOfRange
from .trees import LEAF, TopTree

__all__ = [
    "DEFAULT_BUDGET",
    "induce",
    "selection_from_mask",
    "induced_code_ids",
    "enumerate_bruteforce",
    "count_bruteforce",
    "count_labeled",
]

DEFAULT_BUDGET = 1 << 24

_EMPTY = -1


def _check_selection(tree: TopTree, sel: Iterable[int]) -> list[int]:
    picked = sorted(set(sel))
    if not picked:
        raise EmptySelection("leaf selection is empty")
    if picked[0] < 0 or picked[-1] >= tree.n_leaves:
        bad = picked[0] if picked[0] < 0 else picked[-1]
        raise IndexOutOfRange(f"leaf index {bad} outside 0..{tree.n_leaves - 1}")
    return picked


def induce(tree: TopTree, sel: Iterable[int]) -> TopTree:
    """Topological tree induced by the leaves ``sel`` of ``tree``.

    The result has exactly ``len(set(sel))`` leaves.  Subtrees containing
    no selected leaf are skipped by range lookup, so the cost is bounded by
    the selected root-to-leaf paths plus their immediate siblings.
    """
    picked = _check_selection(tree, sel)
    # (node, first leaf index, expanded); shared subtrees are revisited
    # because their offset differs.
    stack: list[tuple[TopTree, int, bool]] = [(tree, 0, False)]
    out: list[TopTree | None] = []
    while stack:
        node, offset, expanded = stack.pop()
        if not expanded:
            lo = bisect_left(picked, offset)
            if lo == len(picked) or picked[lo] >= offset + node.n_leaves:
                out.append(None)
                continue
            if not node.children:
                out.append(LEAF)
                continue
            stack.append((node, offset, True))
            # Push children so they finish left to right.
            starts = []
            off = offset
            for k in node.children:
                starts.append(off)
                off += k.n_leaves
            for k, s in zip(reversed(node.children), reversed(starts)):
                stack.append((k, s, False))
            continue
        d = len(node.children)
        parts = out[-d:]
        del out[-d:]
        kept = [p for p in parts if p is not None]
        if len(kept) == 1:
            out.append(kept[0])
        else:
            out.append(TopTree(kept))
    return out[0]


def selection_from_mask(mask: int) -> list[int]:
    sel = []
    i = 0
    while mask:
        if mask & 1:
            sel.append(i)
        mask >>= 1
        i += 1
    return sel


def _combine(tables: list[list[int]], table: CodeTable) -> Iterator[int]:
    """Yield the shape id for every mask over the concatenated children.

    ``tables[i][m]`` is the shape of child ``i`` restricted to submask
    ``m`` (``_EMPTY`` for ``m == 0``).  Child 0 holds the lowest bits.
    Masks come out in increasing order starting from 0.
    """
    index = table.index
    intern = table._add
    if len(tables) == 2:
        low, high = tables
        for b in high:
            if b == _EMPTY:
                yield from low
                continue
            for a in low:
                if a == _EMPTY:
                    yield b
                    continue
                key = (a, b) if a <= b else (b, a)
                cid = index.get(key)
                if cid is None:
                    cid = intern(key)
                yield cid
        return
    for combo in product(*reversed(tables)):
        picks = [c for c in combo if c != _EMPTY]
        if not picks:
            yield _EMPTY
        elif len(picks) == 1:
            yield picks[0]
        else:
            key = tuple(sorted(picks))
            cid = index.get(key)
            if cid is None:
                cid = intern(key)
            yield cid


def _branch_table(node: TopTree, table: CodeTable, memo: dict[int, list[int]]) -> list[int]:
    """Shape id of ``node`` restricted to each of its 2**leaves submasks."""
    stack = [(node, False)]
    while stack:
        n, expanded = stack.pop()
        if id(n) in memo:
            continue
        if not n.children:
            memo[id(n)] = [_EMPTY, LEAF_ID]
        elif expanded:
            memo[id(n)] = list(_combine([memo[id(k)] for k in n.children], table))
        else:
            stack.append((n, True))
            stack.extend((k, False) for k in n.children if id(k) not in memo)
    return memo[id(node)]


def induced_code_ids(tree: TopTree, table: CodeTable, limit: int = DEFAULT_BUDGET) -> Iterator[int]:
    """Yield the induced shape id of every nonempty leaf mask, in mask order.

    The i-th value (starting at 1) belongs to the selection whose bitmask is
    ``i``.  Raises :class:`BudgetExceeded` before any work when the tree has
    more than ``limit`` nonempty subsets.
    """
    subsets = (1 << tree.n_leaves) - 1
    if subsets > limit:
        raise BudgetExceeded(
            f"{tree.n_leaves} leaves give {subsets} subsets, budget is {limit}"
        )
    if not tree.children:
        return iter((LEAF_ID,))
    memo: dict[int, list[int]] = {}
    tables = [_branch_table(k, table, memo) for k in tree.children]
    it = _combine(tables, table)
    next(it)  # mask 0
    return it


def enumerate_bruteforce(tree: TopTree, limit: int = DEFAULT_BUDGET) -> set[str]:
    """Canonical codes of all leaf-induced subtrees, by trying every subset."""
    table = CodeTable()
    return table.texts(set(induced_code_ids(tree, table, limit)))


def count_bruteforce(tree: TopTree, limit: int = DEFAULT_BUDGET) -> int:
    table = CodeTable()
    return len(set(induced_code_ids(tree, table, limit)))


def count_labeled(tree: TopTree) -> int:
    """Number of leaf-induced subtrees when isomorphic ones are not merged."""
    return (1 << tree.n_leaves) - 1
