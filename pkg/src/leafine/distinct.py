"""Distinct leaf-induced subtrees by dynamic programming over the tree.

For a vertex ``v`` let ``D(v)`` be the shapes induced by leaf subsets
below ``v`` and ``R(v)`` those whose leaves reach at least two children of
``v``, so that ``v`` itself survives as the root.  Then::

    D(leaf) = R(leaf) = {L}
    R(v) = { root over picks : S subset of children, |S| >= 2,
             one pick from D(c) for each c in S }
    D(v) = R(v) united with D(c) for every child c

No leaf subset is ever enumerated; the cost is driven by the size of the
products.  Shapes live in a :class:`~leafine.codes.CodeTable`, so the
dedup of a candidate is one dict lookup on a sorted id tuple.
"""
from __future__ import annotations

from itertools import combinations, product
from math import factorial, prod

from .codes import LEAF_ID, CodeTable
from .errors import DistinctSetOverflow, SingleLeafTree
from .trees import TopTree

__all__ = [
    "DEFAULT_CAP",
    "distinct_ids",
    "distinct_codes",
    "count_distinct",
    "root_containing_codes",
]

DEFAULT_CAP = 10**7


def _overflow(cap: int, what: str) -> DistinctSetOverflow:
    return DistinctSetOverflow(f"{what} exceeds the cap of {cap} distinct codes")


def _root_sets(kid_sets: list[set[int]], table: CodeTable, cap: int) -> set[int]:
    index = table.index
    add = table._add
    children = table.children
    out: set[int] = set()
    for size in range(2, len(kid_sets) + 1):
        for group in combinations(kid_sets, size):
            # Each pick multiset arises from at most size! ordered tuples,
            # so this many distinct shapes are guaranteed to appear.
            if prod(len(g) for g in group) // factorial(size) > cap:
                raise _overflow(cap, "root-containing set")
            if size == 2:
                left, right = group
                for b in right:
                    for a in left:
                        key = (a, b) if a <= b else (b, a)
                        cid = index.get(key)
                        if cid is None:
                            cid = add(key)
                            if len(children) > cap:
                                raise _overflow(cap, "interned code count")
                        out.add(cid)
                continue
            for picks in product(*group):
                key = tuple(sorted(picks))
                cid = index.get(key)
                if cid is None:
                    cid = add(key)
                    if len(children) > cap:
                        raise _overflow(cap, "interned code count")
                out.add(cid)
    return out


def distinct_ids(tree: TopTree, table: CodeTable, cap: int = DEFAULT_CAP) -> tuple[set[int], set[int]]:
    """Return ``(D(root), R(root))`` as sets of ids in ``table``."""
    memo: dict[int, tuple[set[int], set[int]]] = {}
    leaf_sets = ({LEAF_ID}, {LEAF_ID})
    stack = [(tree, False)]
    while stack:
        node, expanded = stack.pop()
        if id(node) in memo:
            continue
        if not node.children:
            memo[id(node)] = leaf_sets
        elif expanded:
            kid_sets = [memo[id(k)][0] for k in node.children]
            roots = _root_sets(kid_sets, table, cap)
            every = set(roots)
            for s in kid_sets:
                every |= s
            if len(every) > cap:
                raise _overflow(cap, "distinct set")
            memo[id(node)] = (every, roots)
        else:
            stack.append((node, True))
            stack.extend((k, False) for k in node.children if id(k) not in memo)
    return memo[id(tree)]


def distinct_codes(tree: TopTree, cap: int = DEFAULT_CAP) -> set[str]:
    """Canonical codes of all nonisomorphic leaf-induced subtrees."""
    table = CodeTable()
    every, _ = distinct_ids(tree, table, cap)
    return table.texts(every)


def count_distinct(tree: TopTree, cap: int = DEFAULT_CAP) -> int:
    table = CodeTable()
    every, _ = distinct_ids(tree, table, cap)
    return len(every)


def root_containing_codes(tree: TopTree, cap: int = DEFAULT_CAP) -> set[str]:
    """Codes of induced subtrees in which the root of ``tree`` survives."""
    if not tree.children:
        raise SingleLeafTree("a single vertex has no root-containing selection of two leaves")
    table = CodeTable()
    _, roots = distinct_ids(tree, table, cap)
    return table.texts(roots)
