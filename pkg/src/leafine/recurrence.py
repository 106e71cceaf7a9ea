"""Exact evaluation of the leaf-Fibonacci count recurrence.

``A_n`` is the number of nonisomorphic leaf-induced subtrees of ``f_n``::

    A_0 = 1, A_1 = 2
    A_n = 1 + C(1 + A_{n-2}, 2) + A_{n-2} * (A_{n-1} - A_{n-2})

The binomial form keeps everything in integers; doubling it gives
``2 A_n = 2 + A_{n-2} - A_{n-2}**2 + 2 A_{n-2} A_{n-1}``.

The values grow doubly exponentially (``A_30`` has about 318 000 digits),
so :func:`n_sequence` refuses requests whose last term is predicted to
exceed a digit budget.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import DigitsCapExceeded

__all__ = [
    "DEFAULT_DIGITS_CAP",
    "next_term",
    "n_sequence",
    "n_of",
    "check_bounds",
    "ratio_decreasing",
]

DEFAULT_DIGITS_CAP = 10**7

INITIAL = (1, 2)


def next_term(a_prev2: int, a_prev1: int) -> int:
    """``A_n`` from ``A_{n-2}`` and ``A_{n-1}``."""
    return 1 + (1 + a_prev2) * a_prev2 // 2 + a_prev2 * (a_prev1 - a_prev2)


def n_sequence(n_max: int, digits_cap: int | None = DEFAULT_DIGITS_CAP) -> list[int]:
    """``[A_0, ..., A_{n_max}]``.

    ``digits_cap=None`` disables the size guard.
    """
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    if digits_cap is not None and n_max >= 2:
        from .asymptotics import estimated_digits

        predicted = estimated_digits(n_max)
        if predicted > digits_cap:
            raise DigitsCapExceeded(
                f"A_{n_max} would have about {predicted:.3g} digits, cap is {digits_cap}"
            )
    seq = list(INITIAL[: n_max + 1])
    a, b = INITIAL
    for _ in range(2, n_max + 1):
        a, b = b, next_term(a, b)
        seq.append(b)
    return seq


def n_of(n: int, digits_cap: int | None = DEFAULT_DIGITS_CAP) -> int:
    return n_sequence(n, digits_cap)[n]


def check_bounds(seq: Sequence[int]) -> bool:
    """True iff ``2 A_n >= A_{n-1} A_{n-2}`` for n >= 2 and
    ``A_n <= A_{n-1} A_{n-2}`` for n >= 3 hold along ``seq``."""
    if len(seq) < 4:
        raise ValueError("need at least A_0..A_3")
    for n in range(2, len(seq)):
        prod_ = seq[n - 1] * seq[n - 2]
        if 2 * seq[n] < prod_:
            return False
        if n >= 3 and seq[n] > prod_:
            return False
    return True


def ratio_decreasing(seq: Sequence[int], start: int = 3) -> bool:
    """Whether ``A_{n-1}/A_n`` strictly decreases for ``n >= start``."""
    ratios = [Fraction(seq[n - 1], seq[n]) for n in range(start, len(seq))]
    return all(r1 > r2 for r1, r2 in zip(ratios, ratios[1:]))
