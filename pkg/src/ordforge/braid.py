"""
Artin braid groups: word problem and Dehornoy sign by handle reduction.

Braid words are stored spelled out as signed integers, ``+i`` for sigma_i and
``-i`` for its inverse. A sigma_i-handle is a factor ``s_i^e v s_i^-e`` whose
interior ``v`` only uses generators of index greater than i. Reducing it
replaces every ``s_{i+1}^d`` in ``v`` by ``s_{i+1}^-e s_i^d s_{i+1}^e`` and drops
the two ends. We always reduce the handle whose right end comes first; such a
handle never contains a sigma_{i+1}-handle, so it is permitted, and the process
terminates (Dehornoy). A handle-free word uses its lowest generator with one
sign only, which gives the sigma-positive / sigma-negative classification.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, NamedTuple, Sequence

from .errors import (
    AlphabetMismatch,
    MixedSignsAtLowestIndex,
    ReductionBudgetExceeded,
)
from .words import BRAID, Gen, Word

DEFAULT_STEP_CAP = 10**6


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if self.strands < 2:
            raise ValueError("a braid group needs at least 2 strands")
        for c in self.letters:
            if c == 0 or abs(c) >= self.strands:
                raise AlphabetMismatch(f"generator s{abs(c)} not in B_{self.strands}")

    @classmethod
    def from_word(cls, w: Word, strands: int) -> BraidWord:
        letters = []
        for g, e in w:
            if g.family != BRAID:
                raise AlphabetMismatch(f"{g} is not a braid generator")
            step = g.index if e > 0 else -g.index
            letters.extend([step] * abs(e))
        return cls(strands, tuple(letters))

    def to_word(self) -> Word:
        return Word((Gen(BRAID, abs(c)), 1 if c > 0 else -1) for c in self.letters)

    def __mul__(self, other: BraidWord) -> BraidWord:
        if other.strands != self.strands:
            raise AlphabetMismatch("braids on different numbers of strands")
        return BraidWord(self.strands, self.letters + other.letters)

    def __invert__(self) -> BraidWord:
        return BraidWord(self.strands, tuple(-c for c in reversed(self.letters)))

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return str(self.to_word())


class SigmaClass(NamedTuple):
    """``sign`` is +1 / -1 / 0; ``main_index`` is the lowest generator index (None if trivial)."""

    sign: int
    main_index: int | None = None

    @property
    def trivial(self) -> bool:
        return self.sign == 0

    def __str__(self) -> str:
        if self.sign == 0:
            return "Trivial"
        kind = "SigmaPositive" if self.sign > 0 else "SigmaNegative"
        return f"{kind}({self.main_index})"


TRIVIAL = SigmaClass(0)


def _find_handle(w: list[int], start: int) -> tuple[int, int] | None:
    """Leftmost-ending handle with right end at position >= start."""
    for j in range(start, len(w)):
        i = abs(w[j])
        k = j - 1
        while k >= 0 and abs(w[k]) > i:
            k -= 1
        if k >= 0 and w[k] == -w[j]:
            return k, j
    return None


def _reduce_handle(w: list[int], k: int, j: int) -> list[int]:
    i = abs(w[k])
    e = 1 if w[k] > 0 else -1
    out = []
    for c in w[k + 1 : j]:
        if abs(c) == i + 1:
            d = 1 if c > 0 else -1
            out.extend((-e * (i + 1), d * i, e * (i + 1)))
        else:
            out.append(c)
    return out


def _run(
    letters: Sequence[int],
    step_cap: int,
    on_step: Callable[[tuple[int, ...]], None] | None,
) -> tuple[int, ...]:
    w = list(letters)
    start = 0
    steps = 0
    while True:
        found = _find_handle(w, start)
        if found is None:
            return tuple(w)
        k, j = found
        w[k : j + 1] = _reduce_handle(w, k, j)
        start = k
        steps += 1
        if steps > step_cap:
            raise ReductionBudgetExceeded(f"handle reduction exceeded {step_cap} steps")
        if on_step is not None:
            on_step(tuple(w))


@lru_cache(maxsize=1 << 16)
def _handle_free(letters: tuple[int, ...], step_cap: int) -> tuple[int, ...]:
    return _run(letters, step_cap, None)


def handle_reduce(
    w: BraidWord,
    step_cap: int = DEFAULT_STEP_CAP,
    on_step: Callable[[tuple[int, ...]], None] | None = None,
    debug: bool = False,
) -> BraidWord:
    """
    Reduce ``w`` to a handle-free word representing the same braid.

    ``on_step`` is called with the letters after every reduction step. With
    ``debug=True`` each step is checked to preserve the strand permutation
    and the exponent sum.
    """
    if debug:
        perm0, sum0 = permutation(w), sum(1 if c > 0 else -1 for c in w.letters)

        def check(letters, _user=on_step):
            step = BraidWord(w.strands, letters)
            if permutation(step) != perm0:
                raise AssertionError(f"handle step changed the permutation: {step}")
            if sum(1 if c > 0 else -1 for c in letters) != sum0:
                raise AssertionError(f"handle step changed the exponent sum: {step}")
            if _user is not None:
                _user(letters)

        return BraidWord(w.strands, _run(w.letters, step_cap, check))
    if on_step is not None:
        return BraidWord(w.strands, _run(w.letters, step_cap, on_step))
    return BraidWord(w.strands, _handle_free(w.letters, step_cap))


def classify_reduced(letters: Sequence[int]) -> SigmaClass:
    if not letters:
        return TRIVIAL
    low = min(abs(c) for c in letters)
    signs = {c > 0 for c in letters if abs(c) == low}
    if len(signs) != 1:
        raise MixedSignsAtLowestIndex(f"handle-free word mixes signs of s{low}")
    return SigmaClass(1 if signs.pop() else -1, low)


def sigma_class(w: BraidWord, step_cap: int = DEFAULT_STEP_CAP) -> SigmaClass:
    return classify_reduced(handle_reduce(w, step_cap).letters)


def braid_equal(w1: BraidWord, w2: BraidWord) -> bool:
    if w1.strands != w2.strands:
        raise AlphabetMismatch("braids on different numbers of strands")
    if permutation(w1) != permutation(w2):
        return False
    return sigma_class(w1 * ~w2).trivial


def permutation(w: BraidWord) -> tuple[int, ...]:
    """
    Image of ``w`` in the symmetric group, as the tuple ``(p(1), ..., p(n))``.

    sigma_i maps to the transposition (i, i+1) and products compose as
    functions, so ``s1 s2`` gives 1 -> 2 -> 3 -> 1.
    """
    perm = list(range(1, w.strands + 1))
    for c in w.letters:
        i = abs(c)
        perm[i - 1], perm[i] = perm[i], perm[i - 1]
    return tuple(perm)


def half_twist(strands: int) -> BraidWord:
    letters = []
    for k in range(1, strands):
        letters.extend(range(k, 0, -1))
    return BraidWord(strands, tuple(letters))


def full_twist(strands: int) -> BraidWord:
    delta = half_twist(strands)
    return delta * delta
