"""Doubly exponential asymptotics of the leaf-Fibonacci counts.

Write ``A_n`` for the counts from :mod:`leafine.recurrence` and
``Q_n = log A_n``.  Dividing the recurrence by ``A_{n-1} A_{n-2}`` gives

    Q_n = Q_{n-1} + Q_{n-2} + E_n,
    E_n = log(1 + (2 + A_{n-2} - A_{n-2}**2) / (2 A_{n-1} A_{n-2})),

a Fibonacci-type linear recurrence perturbed by ``E_n``.  Solving it with
``l1 = (1 - sqrt 5)/2`` and ``l2 = (1 + sqrt 5)/2`` yields
``A_n ~ K1 * K2**(l2**n)`` with

    K2 = exp((log 2 + sum_{i>=2} E_i l2**(1-i)) / sqrt 5)
    K1 = exp(-lim_n sum_{i=2}^n E_i l1**(n-i+1) / sqrt 5)

The inner sum of ``K1`` tends to 0 (``|l1| < 1`` and ``E_i -> 0``), so
``K1`` is only exposed as a finite-``n`` truncation and through the
empirical prefactor ``C_n = A_n K2**(-l2**n)``.  Both are reported next
to the published prefactor rather than replacing it.

All reals are :class:`mpmath.mpf` evaluated under ``mp.workprec`` at the
requested number of bits.  Values come back as :class:`Estimate`, a value
with an error half-width covering series truncation and rounding.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from mpmath import mp, mpf

from .errors import (
    InsufficientSequence,
    NonPositiveLogArgument,
    PrecisionInsufficient,
    TailEstimateError,
)
from .fibtrees import fibonacci
from .recurrence import INITIAL, next_term

__all__ = [
    "DEFAULT_PRECISION",
    "DEFAULT_TERMS",
    "PUBLISHED_K1",
    "PUBLISHED_K2",
    "Estimate",
    "K2Estimate",
    "AsymptoticConstants",
    "lambdas",
    "lambda2_power",
    "leaf_exponent",
    "e_term",
    "compute_k2",
    "compute_k1_truncated",
    "prefactor_empirical",
    "compute_constants",
    "predict",
    "estimated_digits",
]

DEFAULT_PRECISION = 256
DEFAULT_TERMS = 30

# Published 14-digit values of the prefactor and base.
PUBLISHED_K1 = "1.00001887227319"
PUBLISHED_K2 = "1.48369689570172"

# |E_i| is not monotone for i <= 5 (E_3 is exactly 0).
_MONOTONE_FROM = 5

_GUARD = 24


@dataclass(frozen=True)
class Estimate:
    """A real value with an absolute error half-width."""

    value: mpf
    error: mpf

    def __float__(self) -> float:
        return float(self.value)

    def interval(self) -> tuple[mpf, mpf]:
        return self.value - self.error, self.value + self.error

    def contains(self, x) -> bool:
        lo, hi = self.interval()
        return lo <= x <= hi


@dataclass(frozen=True)
class K2Estimate(Estimate):
    """K2 together with the series bookkeeping behind it.

    ``terms_used`` can be below the requested count: summation stops once
    the remaining tail is provably below the working precision.
    """

    terms_used: int = 0
    tail_bound: mpf = mpf(0)


@dataclass(frozen=True)
class AsymptoticConstants:
    lambda1: mpf
    lambda2: mpf
    k2: K2Estimate
    k1_truncated: Estimate
    k1_index: int
    terms_used: int
    precision: int


def lambdas(precision: int = DEFAULT_PRECISION) -> tuple[mpf, mpf]:
    """``((1 - sqrt 5)/2, (1 + sqrt 5)/2)``."""
    with mp.workprec(precision):
        root5 = mp.sqrt(5)
        return (1 - root5) / 2, (1 + root5) / 2


def lambda2_power(n: int, precision: int = DEFAULT_PRECISION) -> mpf:
    """``l2**n`` as ``F(n) l2 + F(n-1)``, rounded once.

    Repeated multiplication would carry a relative error growing with
    ``n``, which ``K2**(l2**n)`` then amplifies.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        with mp.workprec(precision):
            return mpf(1)
    fn, fn1 = fibonacci(n), fibonacci(n - 1)
    with mp.workprec(precision + _GUARD):
        root5 = mp.sqrt(5)
        v = fn * (1 + root5) / 2 + fn1
    with mp.workprec(precision):
        return +v


def leaf_exponent(n: int, precision: int = DEFAULT_PRECISION) -> mpf:
    """``(3 sqrt 5 - 5)/2 * F(n+2)``, the exponent written via the leaf count of ``f_n``.

    It differs from ``l2**n`` by ``l1**(n+2) / l2**2``.
    """
    leaves = fibonacci(n + 2)
    with mp.workprec(precision + _GUARD):
        v = (3 * mp.sqrt(5) - 5) / 2 * leaves
    with mp.workprec(precision):
        return +v


def _check_len(seq: Sequence[int], needed: int) -> None:
    if len(seq) <= needed:
        raise InsufficientSequence(f"need A_0..A_{needed}, got {len(seq)} terms")


def e_term(i: int, seq: Sequence[int], precision: int = DEFAULT_PRECISION) -> mpf:
    """``E_i = log(A_i / (A_{i-1} A_{i-2}))`` computed from ``A_{i-2}, A_{i-1}``.

    The numerator of ``A_i/(A_{i-1}A_{i-2}) - 1`` is formed exactly, so
    ``E_3`` is exactly 0 and tiny late terms keep full relative accuracy.
    """
    if i < 2:
        raise ValueError("E_i is defined for i >= 2")
    _check_len(seq, i - 1)
    a2, a1 = seq[i - 2], seq[i - 1]
    numer = 2 + a2 - a2 * a2
    with mp.workprec(precision + _GUARD):
        x = mpf(numer) / (2 * mpf(a1) * mpf(a2))
        if x <= -1:
            raise NonPositiveLogArgument(f"log argument for E_{i} is not positive")
        v = mp.log1p(x)
    with mp.workprec(precision):
        return +v


def _tail_sup(t: int, errs: dict[int, mpf]) -> mpf:
    """Estimate ``sup_{m > t} |E_m|``.

    Past the early irregular terms this is ``|E_{t+1}|``, which requires
    the terms to be decreasing there; that is checked, not assumed.
    """
    if t + 1 <= _MONOTONE_FROM:
        return max(abs(errs[m]) for m in range(t + 1, _MONOTONE_FROM + 2))
    if abs(errs[t + 1]) > abs(errs[t]):
        raise TailEstimateError(f"|E_{t + 1}| > |E_{t}|; tail estimate unreliable")
    return abs(errs[t + 1])


def compute_k2(terms: int = DEFAULT_TERMS, precision: int = DEFAULT_PRECISION) -> K2Estimate:
    """``K2`` from the series truncated after ``E_terms``.

    Returns the value, an error half-width (truncation plus rounding), the
    number of terms actually summed and the bound on the omitted tail,
    ``sup|E| * l2**(1-t) / (1 - 1/l2)``.
    """
    if terms < 2:
        raise ValueError("terms must be >= 2")
    work = precision + _GUARD
    seq = list(INITIAL)
    errs: dict[int, mpf] = {}

    def err(m: int) -> mpf:
        while len(seq) < m:
            seq.append(next_term(seq[-2], seq[-1]))
        if m not in errs:
            errs[m] = e_term(m, seq, work)
        return errs[m]

    with mp.workprec(work):
        root5 = mp.sqrt(5)
        l2 = (1 + root5) / 2
        damp = 1 / (1 - 1 / l2)
        negligible = mpf(2) ** -(precision + 8)
        total = mp.log(2)
        weight = mpf(1)  # l2**(1-i)
        used = terms
        tail = mpf(0)
        for i in range(2, terms + 1):
            weight /= l2
            total += err(i) * weight
            for m in range(i + 1, max(i + 1, _MONOTONE_FROM + 1) + 1):
                err(m)
            tail = _tail_sup(i, errs) * weight * damp
            if tail < negligible and i < terms:
                used = i
                break
        value = mp.exp(total / root5)
        trunc = value * mp.expm1(tail / root5)
        rounding = value * mpf(2) ** -(precision - 4)
    with mp.workprec(precision):
        return K2Estimate(+value, +(trunc + rounding), used, +tail)


def compute_k1_truncated(n: int, seq: Sequence[int], precision: int = DEFAULT_PRECISION) -> Estimate:
    """``exp(-sum_{i=2}^n E_i l1**(n-i+1) / sqrt 5)`` at this finite ``n``."""
    if n < 2:
        raise ValueError("n must be >= 2")
    _check_len(seq, n - 1)
    work = precision + _GUARD
    with mp.workprec(work):
        root5 = mp.sqrt(5)
        l1 = (1 - root5) / 2
        s = mpf(0)
        for i in range(2, n + 1):
            s += e_term(i, seq, work) * l1 ** (n - i + 1)
        value = mp.exp(-s / root5)
        error = value * n * mpf(2) ** -(precision - 4)
    with mp.workprec(precision):
        return Estimate(+value, +error)


def prefactor_empirical(n: int, k2, seq: Sequence[int], precision: int = DEFAULT_PRECISION) -> Estimate:
    """``C_n = A_n * K2**(-l2**n)``, the finite-``n`` prefactor.

    ``k2`` is an :class:`Estimate` or a bare mpf (then only its rounding is
    counted).  Its relative error is multiplied by ``l2**n`` in the
    exponent; :class:`PrecisionInsufficient` is raised when the resulting
    half-width exceeds 1e-6.
    """
    _check_len(seq, n)
    # l2**n multiplies log K2; keep enough bits for its integer part too.
    work = precision + _GUARD + int(0.7 * n)
    with mp.workprec(work):
        if isinstance(k2, Estimate):
            k2_value, k2_error = k2.value, k2.error
        else:
            k2_value = mpf(k2)
            k2_error = abs(k2_value) * mpf(2) ** -(precision - 4)
        power = lambda2_power(n, work)
        log_c = mp.log(seq[n]) - power * mp.log(k2_value)
        value = mp.exp(log_c)
        rel = power * k2_error / k2_value
        error = value * mp.expm1(rel) + value * mpf(2) ** -(precision - 4)
    if error > mpf("1e-6"):
        raise PrecisionInsufficient(
            f"C_{n} error half-width {mp.nstr(error, 3)} exceeds 1e-6; raise precision or terms"
        )
    with mp.workprec(precision):
        return Estimate(+value, +error)


def compute_constants(
    precision: int = DEFAULT_PRECISION,
    terms: int = DEFAULT_TERMS,
    k1_index: int = 16,
) -> AsymptoticConstants:
    l1, l2 = lambdas(precision)
    k2 = compute_k2(terms, precision)
    seq = list(INITIAL)
    while len(seq) < k1_index:
        seq.append(next_term(seq[-2], seq[-1]))
    k1 = compute_k1_truncated(k1_index, seq, precision)
    return AsymptoticConstants(
        lambda1=l1,
        lambda2=l2,
        k2=k2,
        k1_truncated=k1,
        k1_index=k1_index,
        terms_used=k2.terms_used,
        precision=precision,
    )


def predict(n: int, constants: AsymptoticConstants, k1_mode: str = "paper", by_leaves: bool = False) -> mpf:
    """Asymptotic estimate ``K1 * K2**e`` of ``A_n``.

    ``e`` is ``l2**n``, or with ``by_leaves`` the leaf-count form
    ``(3 sqrt 5 - 5)/2 * |f_n|``.  ``k1_mode`` is ``"paper"`` for the
    published prefactor or ``"unity"`` for ``K1 = 1``.
    """
    if k1_mode not in ("paper", "unity"):
        raise ValueError(f"unknown k1 mode {k1_mode!r}")
    prec = constants.precision
    work = prec + _GUARD + int(0.7 * n)
    with mp.workprec(work):
        k1 = mpf(PUBLISHED_K1) if k1_mode == "paper" else mpf(1)
        e = leaf_exponent(n, work) if by_leaves else lambda2_power(n, work)
        v = k1 * mp.exp(e * mp.log(constants.k2.value))
    with mp.workprec(prec):
        return +v


@lru_cache(maxsize=1)
def _log10_k2() -> float:
    with mp.workprec(64):
        return float(mp.log10(compute_k2(12, 64).value))


def estimated_digits(n: int) -> float:
    """Approximate decimal digit count of ``A_n`` (inf when it overflows a float)."""
    try:
        return ((1 + math.sqrt(5)) / 2) ** n * _log10_k2() + 1
    except OverflowError:
        return math.inf
