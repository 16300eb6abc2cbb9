"""
Words over the generator alphabets used throughout the package.

A word is an immutable sequence of syllables ``(Gen, exponent)``. Words are kept
freely reduced at all times: adjacent syllables never share a generator and no
exponent is zero. No group relations are applied here; that is the job of the
group contexts in :mod:`ordforge.groups`.

Text grammar::

    a[i]       EG generator a_i (any integer i)
    a, b       Klein bottle generators
    x1, x2...  free generators (x and y are aliases of x1 and x2)
    s1, s2...  braid generators
    t u v z    extension letters

each optionally followed by ``^k`` with k a nonzero integer. Tokens are
separated by whitespace; the empty string and ``1`` denote the identity.
"""

from __future__ import annotations

import re
from typing import Iterable, Iterator, NamedTuple

from .errors import AlphabetMismatch, ParseError

EG = "a"
KLEIN = "k"
FREE = "x"
BRAID = "s"
EXTENSION_LETTERS = ("t", "u", "v", "z")
BASE_FAMILIES = (EG, KLEIN, FREE, BRAID)


class Gen(NamedTuple):
    family: str
    index: int = 0

    def __str__(self) -> str:
        if self.family == EG:
            return f"a[{self.index}]"
        if self.family == KLEIN:
            return "ab"[self.index - 1]
        if self.family in (FREE, BRAID):
            return f"{self.family}{self.index}"
        return self.family


def a(i: int) -> Gen:
    return Gen(EG, i)


def x(i: int) -> Gen:
    return Gen(FREE, i)


def s(i: int) -> Gen:
    return Gen(BRAID, i)


KLEIN_A = Gen(KLEIN, 1)
KLEIN_B = Gen(KLEIN, 2)
T, U, V, Z = (Gen(c) for c in EXTENSION_LETTERS)


def _reduce(letters: Iterable[tuple[Gen, int]]) -> tuple[tuple[Gen, int], ...]:
    stack: list[tuple[Gen, int]] = []
    for gen, e in letters:
        if e == 0:
            continue
        if stack and stack[-1][0] == gen:
            merged = stack[-1][1] + e
            if merged:
                stack[-1] = (gen, merged)
            else:
                stack.pop()
        else:
            stack.append((gen, e))
    return tuple(stack)


class Word:
    """Immutable, freely reduced word. ``*`` concatenates, ``~`` inverts."""

    __slots__ = ("letters", "_hash")

    def __init__(self, letters: Iterable[tuple[Gen, int]] = ()):
        self.letters = _reduce(letters)
        self._hash = hash(self.letters)

    @classmethod
    def gen(cls, g: Gen, e: int = 1) -> Word:
        return cls(((g, e),))

    @classmethod
    def parse(cls, text: str) -> Word:
        return parse_word(text)

    def __iter__(self) -> Iterator[tuple[Gen, int]]:
        return iter(self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __getitem__(self, i):
        return self.letters[i]

    @property
    def length(self) -> int:
        """Letter length: the sum of absolute exponents."""
        return sum(abs(e) for _, e in self.letters)

    def is_identity(self) -> bool:
        return not self.letters

    def families(self) -> set[str]:
        return {g.family for g, _ in self.letters}

    def __mul__(self, other: Word) -> Word:
        return concat(self, other)

    def __invert__(self) -> Word:
        return invert(self)

    def __pow__(self, n: int) -> Word:
        if n < 0:
            return Word(invert(self).letters * -n)
        return Word(self.letters * n)

    def __eq__(self, other) -> bool:
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: Word) -> bool:
        return sort_key(self) < sort_key(other)

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return " ".join(str(g) if e == 1 else f"{g}^{e}" for g, e in self.letters)

    def __repr__(self) -> str:
        return f"Word({str(self)!r})"


IDENTITY = Word()


def sort_key(w: Word) -> tuple:
    """Shortlex key under the token order (family, index, exponent)."""
    return (w.length, len(w.letters), w.letters)


def _base_families(w: Word) -> set[str]:
    return {g.family for g, _ in w.letters if g.family in BASE_FAMILIES}


def concat(w1: Word, w2: Word) -> Word:
    fams = _base_families(w1) | _base_families(w2)
    if len(fams) > 1:
        raise AlphabetMismatch(f"cannot concatenate words over {sorted(fams)}")
    return Word(w1.letters + w2.letters)


def invert(w: Word) -> Word:
    return Word((g, -e) for g, e in reversed(w.letters))


def free_reduce(letters: Word | Iterable[tuple[Gen, int]]) -> Word:
    """Cancel adjacent inverse pairs; accepts a Word or any raw syllable sequence."""
    if isinstance(letters, Word):
        letters = letters.letters
    return Word(letters)


def expand(w: Word) -> list[tuple[Gen, int]]:
    """Spell a word out as a list of ``(gen, +-1)`` letters."""
    out = []
    for g, e in w.letters:
        step = 1 if e > 0 else -1
        out.extend([(g, step)] * abs(e))
    return out


_TOKEN = re.compile(
    r"""\s*(?:
        a\[\s*(?P<eg>[+-]?\d+)\s*\]
      | (?P<fam>[xs])(?P<idx>\d+)
      | (?P<letter>[abxytuvz])
      | (?P<one>1)
    )(?:\^(?P<exp>[+-]?\d+))?""",
    re.VERBOSE,
)


def parse_word(text: str) -> Word:
    pos = 0
    letters = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"cannot parse word at {text[pos:]!r}")
        exp = int(m["exp"]) if m["exp"] is not None else 1
        if exp == 0:
            raise ParseError(f"zero exponent in {m.group().strip()!r}")
        if m["eg"] is not None:
            gen = Gen(EG, int(m["eg"]))
        elif m["fam"]:
            idx = int(m["idx"])
            if idx < 1:
                raise ParseError(f"generator index must be positive: {m.group().strip()!r}")
            gen = Gen(FREE if m["fam"] == "x" else BRAID, idx)
        elif m["letter"]:
            c = m["letter"]
            gen = {"a": KLEIN_A, "b": KLEIN_B, "x": Gen(FREE, 1), "y": Gen(FREE, 2)}.get(c) or Gen(c)
        else:
            gen = None
        if gen is not None:
            letters.append((gen, exp))
        pos = m.end()
    return Word(letters)


def parse_word_list(text: str) -> list[Word]:
    """Comma-separated list of words, as used for ball generator sets."""
    if not text.strip():
        return []
    return [parse_word(part) for part in text.split(",")]
