"""
Magnus expansion of free group words into truncated noncommutative series.

``x_i -> 1 + X_i`` and ``x_i^k -> sum_p C(k, p) X_i^p`` (generalized binomial
coefficients, so negative k is handled by the same formula). A series is a
dict from monomials (tuples of variable indices) to integer coefficients.
"""

from __future__ import annotations

from collections import defaultdict
from functools import lru_cache
from typing import Sequence

from .errors import AlphabetMismatch, MagnusInconclusive
from .words import FREE, Word

Series = dict[tuple[int, ...], int]


@lru_cache(maxsize=4096)
def binom(k: int, p: int) -> int:
    """``k (k-1) ... (k-p+1) / p!`` for any integer k."""
    num = 1
    den = 1
    for q in range(p):
        num *= k - q
        den *= q + 1
    return num // den


def _times_power(series: Series, var: int, k: int, degree: int) -> Series:
    out: Series = defaultdict(int)
    for mono, c in series.items():
        for p in range(degree - len(mono) + 1):
            b = binom(k, p)
            if b == 0:
                break
            out[mono + (var,) * p] += c * b
    return {m: c for m, c in out.items() if c}


def expansion(w: Word, degree: int) -> Series:
    """Magnus series of ``w`` truncated above ``degree``."""
    series: Series = {(): 1}
    for g, e in w:
        if g.family != FREE:
            raise AlphabetMismatch(f"{g} is not a free generator")
        series = _times_power(series, g.index, e, degree)
    return series


def multiply(p: Series, q: Series, degree: int) -> Series:
    out: Series = defaultdict(int)
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            if len(m1) + len(m2) <= degree:
                out[m1 + m2] += c1 * c2
    return {m: c for m, c in out.items() if c}


def leading_monomial(series: Series, precedence: Sequence[int]) -> tuple[tuple[int, ...], int] | None:
    """First nonzero non-constant monomial in graded-lex order, with its coefficient."""
    rank = {var: pos for pos, var in enumerate(precedence)}
    best = None
    for mono, c in series.items():
        if not mono or not c:
            continue
        key = (len(mono), tuple(rank.get(v, len(rank) + v) for v in mono))
        if best is None or key < best[0]:
            best = (key, mono, c)
    return None if best is None else (best[1], best[2])


def degree_schedule(length: int) -> list[int]:
    """2, 4, 8, ... capped at ``length``, always ending at ``length``."""
    degrees = []
    d = 2
    while d < length:
        degrees.append(d)
        d *= 2
    degrees.append(max(length, 1))
    return degrees


def magnus_sign(rank: int, precedence: Sequence[int] | None, w: Word) -> int:
    """Sign (-1, 0, +1) of the Magnus bi-order on the free group of the given rank."""
    for g, _ in w:
        if g.family != FREE or not 1 <= g.index <= rank:
            raise AlphabetMismatch(f"{g} is not a generator of free:{rank}")
    if w.is_identity():
        return 0
    precedence = list(precedence or range(1, rank + 1))
    for degree in degree_schedule(w.length):
        lead = leading_monomial(expansion(w, degree), precedence)
        if lead is not None:
            return 1 if lead[1] > 0 else -1
    raise MagnusInconclusive(f"no nonzero Magnus coefficient up to degree {w.length} for {w}")
