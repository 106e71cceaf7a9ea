"""Fibonacci numbers and the two Fibonacci tree families.

Both generators build bottom-up and reuse the previous two trees as the
new root's branches, so ``f_n`` takes O(n) memory even though it has
``F(n+2)`` leaves.
"""
from __future__ import annotations

from .trees import LEAF, TopTree

__all__ = ["fibonacci", "leaf_fibonacci", "knuth_fibonacci"]


def fibonacci(n: int) -> int:
    """Exact ``F(n)`` with ``F(0) = 0``, ``F(1) = 1`` (fast doubling)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    a, b = 0, 1  # F(k), F(k+1)
    for bit in bin(n)[2:]:
        c = a * (2 * b - a)
        d = a * a + b * b
        if bit == "1":
            a, b = d, c + d
        else:
            a, b = c, d
    return a


def leaf_fibonacci(n: int) -> TopTree:
    """``f_0`` is a single vertex, ``f_1`` a cherry, ``f_n = (f_{n-1}, f_{n-2})``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return LEAF
    prev, cur = LEAF, TopTree((LEAF, LEAF))
    for _ in range(n - 1):
        prev, cur = cur, TopTree((cur, prev))
    return cur


def knuth_fibonacci(order: int) -> TopTree:
    """Orders 0 and 1 are a single vertex; order n joins orders n-1 and n-2."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    prev, cur = LEAF, LEAF
    for _ in range(order - 1):
        prev, cur = cur, TopTree((cur, prev))
    return cur
