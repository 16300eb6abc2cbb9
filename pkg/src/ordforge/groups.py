"""
Concrete groups with solvable word problems.

Every context offers ``normal_form``, ``equal``, ``multiply`` and ``inverse`` on
:class:`~ordforge.words.Word` values. The EG group

    G = < a_i (i in Z) | [a_i, a_j] = 1 for |i - j| > 1,  a_{i+1} a_i a_{i+1}^-1 = a_i^-1 >

has normal forms ``a_{r1}^{d1} ... a_{rk}^{dk}`` with ``r1 < ... < rk``. Its
extensions (by an automorphism t, by u and v, by a central z) are handled by
carrying a small state of extension exponents next to an EG normal form.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, NamedTuple, Sequence

from . import braid as _braid
from .errors import (
    AlphabetMismatch,
    BallBudgetExceeded,
    IdentityHasNoLeadingTerm,
    ParseError,
    UnsupportedGroup,
    WindowExceeded,
)
from .words import (
    BRAID,
    EG,
    FREE,
    IDENTITY,
    KLEIN,
    KLEIN_A,
    KLEIN_B,
    T,
    U,
    V,
    Z,
    Gen,
    Word,
    concat,
    invert,
)

DEFAULT_WINDOW = 32
DEFAULT_BALL_BUDGET = 200_000


class LeadingTerm(NamedTuple):
    suffix: int
    exponent: int

    def __str__(self) -> str:
        return f"a[{self.suffix}]^{self.exponent}"


# --------------------------------------------------------------------------
# EG normal forms on raw syllables (index, exponent)


def _eg_insert(nf: list[list[int]], i: int, d: int) -> None:
    """Right-multiply the sorted syllable list ``nf`` by ``a_i^d`` in place."""
    pos = len(nf)
    while pos and nf[pos - 1][0] > i:
        j, e = nf[pos - 1]
        if j == i + 1 and e % 2:
            d = -d
        pos -= 1
    if pos and nf[pos - 1][0] == i:
        nf[pos - 1][1] += d
        if nf[pos - 1][1] == 0:
            del nf[pos - 1]
    else:
        nf.insert(pos, [i, d])


def _eg_word(nf: Iterable[Sequence[int]]) -> Word:
    return Word((Gen(EG, i), d) for i, d in nf)


# --------------------------------------------------------------------------
# Group contexts


class Group:
    """Common interface. Subclasses are frozen dataclasses, hence hashable."""

    descriptor: str = "?"
    has_normal_form = True

    def allowed(self, g: Gen) -> bool:
        raise NotImplementedError

    def check_word(self, w: Word) -> Word:
        for g, _ in w:
            if not self.allowed(g):
                raise AlphabetMismatch(f"generator {g} does not belong to {self.descriptor}")
        return w

    def normal_form(self, w: Word) -> Word:
        raise NotImplementedError

    def equal(self, w1: Word, w2: Word) -> bool:
        return self.normal_form(w1) == self.normal_form(w2)

    def is_identity(self, w: Word) -> bool:
        return self.equal(w, IDENTITY)

    def multiply(self, *ws: Word) -> Word:
        out = IDENTITY
        for w in ws:
            out = concat(out, w)
        return self.normal_form(out)

    def inverse(self, w: Word) -> Word:
        return self.normal_form(invert(w))

    def power(self, w: Word, n: int) -> Word:
        return self.normal_form(w**n)

    def conjugate(self, g: Word, h: Word) -> Word:
        """``h g h^-1``."""
        return self.multiply(h, g, invert(h))

    def hash_key(self, w: Word):
        return self.normal_form(w)

    def default_generators(self) -> list[Word]:
        raise NotImplementedError

    def decompose(self, w: Word) -> SemidirectForm:
        raise UnsupportedGroup(f"{self.descriptor} has no semidirect layout")

    def __str__(self) -> str:
        return self.descriptor


@dataclass(frozen=True)
class FreeGroup(Group):
    rank: int

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError("free group rank must be at least 1")

    @property
    def descriptor(self) -> str:
        return f"free:{self.rank}"

    @property
    def abelian(self) -> bool:
        return self.rank == 1

    def allowed(self, g: Gen) -> bool:
        return g.family == FREE and 1 <= g.index <= self.rank

    def normal_form(self, w: Word) -> Word:
        return self.check_word(w)

    def multiply(self, *ws: Word) -> Word:
        out = IDENTITY
        for w in ws:
            out = concat(out, w)
        return out

    def default_generators(self) -> list[Word]:
        return [Word.gen(Gen(FREE, i)) for i in range(1, self.rank + 1)]


@dataclass(frozen=True)
class KleinBottle(Group):
    """``D = <a, b | b^-1 a b = a^-1>``; normal form ``a^m b^n``."""

    descriptor = "klein"

    def allowed(self, g: Gen) -> bool:
        return g.family == KLEIN

    def exponents(self, w: Word) -> tuple[int, int]:
        m = n = 0
        for g, e in self.check_word(w):
            if g == KLEIN_A:
                m += -e if n % 2 else e
            else:
                n += e
        return m, n

    def normal_form(self, w: Word) -> Word:
        m, n = self.exponents(w)
        return Word(((KLEIN_A, m), (KLEIN_B, n)))

    def default_generators(self) -> list[Word]:
        return [Word.gen(KLEIN_A), Word.gen(KLEIN_B)]


@dataclass(frozen=True)
class EGGroup(Group):
    """The EG group, confined to generator indices in ``[-window, window]``."""

    window: int = DEFAULT_WINDOW

    @property
    def descriptor(self) -> str:
        return "eg"

    def allowed(self, g: Gen) -> bool:
        return g.family == EG

    def check_index(self, i: int) -> None:
        if abs(i) > self.window:
            raise WindowExceeded(f"index {i} outside window [-{self.window}, {self.window}]")

    def syllables(self, w: Word) -> list[list[int]]:
        nf: list[list[int]] = []
        for g, e in w:
            if g.family != EG:
                raise AlphabetMismatch(f"generator {g} does not belong to eg")
            self.check_index(g.index)
            _eg_insert(nf, g.index, e)
        return nf

    def normal_form(self, w: Word) -> Word:
        return _eg_word(self.syllables(w))

    def leading_term(self, w: Word) -> LeadingTerm:
        nf = self.syllables(w)
        if not nf:
            raise IdentityHasNoLeadingTerm("the identity has no leading term")
        return LeadingTerm(*nf[-1])

    def default_generators(self) -> list[Word]:
        return [Word.gen(Gen(EG, i)) for i in (-1, 0, 1)]


def leading_term(w: Word, ctx: EGGroup | None = None) -> LeadingTerm:
    return (ctx or EGGroup()).leading_term(w)


# --------------------------------------------------------------------------
# Automorphisms of EG


@dataclass(frozen=True)
class TAction:
    """
    An automorphism of EG given on generators: ``image(i)`` is ``a_i^t`` (that
    is ``t^-1 a_i t``) and ``inverse_image(i)`` its image under ``t^-1``.
    """

    name: str
    image: Callable[[int], Word]
    inverse_image: Callable[[int], Word]
    description: str = ""

    def rule(self, power: int) -> Callable[[int], Word]:
        return self.image if power > 0 else self.inverse_image

    def apply(self, w: Word, power: int = 1, ctx: EGGroup | None = None) -> Word:
        ctx = ctx or EGGroup()
        return _eg_word(self.apply_syllables(ctx.syllables(w), power, ctx))

    def apply_syllables(self, nf: list[list[int]], power: int, ctx: EGGroup) -> list[list[int]]:
        rule = self.rule(power)
        for _ in range(abs(power)):
            out: list[list[int]] = []
            for i, d in nf:
                img = rule(i)
                for _ in range(abs(d)):
                    for g, e in img if d > 0 else invert(img):
                        ctx.check_index(g.index)
                        _eg_insert(out, g.index, e)
            nf = out
        return nf

    def __str__(self) -> str:
        return self.name


def _gen_word(i: int, e: int = 1) -> Word:
    return Word.gen(Gen(EG, i), e)


SHIFT = TAction("shift", lambda i: _gen_word(i + 1), lambda i: _gen_word(i - 1), "a_i -> a_{i+1}")
UNSHIFT = TAction("unshift", lambda i: _gen_word(i - 1), lambda i: _gen_word(i + 1), "a_i -> a_{i-1}")
SHIFT_INV = TAction(
    "shiftinv", lambda i: _gen_word(i + 1, -1), lambda i: _gen_word(i - 1, -1), "a_i -> a_{i+1}^-1"
)
INVERT = TAction("invert", lambda i: _gen_word(i, -1), lambda i: _gen_word(i, -1), "a_i -> a_i^-1")

BUILTIN_ACTIONS = {act.name: act for act in (SHIFT, UNSHIFT, SHIFT_INV, INVERT)}


def apply_taction(act: TAction, w: Word, power: int, ctx: EGGroup | None = None) -> Word:
    return act.apply(w, power, ctx)


def check_taction(act: TAction, ctx: EGGroup | None = None, window: int | None = None) -> list[str]:
    """
    Check that ``act`` preserves the EG relations and that its two rules are
    mutually inverse for generator indices in ``[-window, window]``.
    Returns a list of failure descriptions (empty when valid).
    """
    ctx = ctx or EGGroup()
    if window is None:
        window = max(ctx.window // 2, 1)
    failures = []

    def img(i: int, power: int = 1) -> Word:
        return act.apply(_gen_word(i), power, ctx)

    for i in range(-window, window + 1):
        lhs = ctx.multiply(img(i + 1), img(i), invert(img(i + 1)))
        if lhs != ctx.inverse(img(i)):
            failures.append(f"relation a[{i + 1}] a[{i}] a[{i + 1}]^-1 = a[{i}]^-1 not preserved")
        for j in (i + 2, i + 3):
            if ctx.multiply(img(i), img(j)) != ctx.multiply(img(j), img(i)):
                failures.append(f"commutation of a[{i}], a[{j}] not preserved")
        for power in (1, -1):
            if act.apply(img(i, power), -power, ctx) != _gen_word(i):
                failures.append(f"rules are not mutually inverse at a[{i}]")
    return failures


def leading_suffix_offsets(act: TAction, ctx: EGGroup, window: int, power: int = 1) -> dict[int, int]:
    """``suffix(a_i^(t^power)) - i`` for every i whose image stays in the window."""
    offsets = {}
    for i in range(-window, window + 1):
        try:
            lt = ctx.leading_term(act.apply(_gen_word(i), power, ctx))
        except WindowExceeded:
            continue
        offsets[i] = lt.suffix - i
    return offsets


# --------------------------------------------------------------------------
# Extensions of EG and direct products with Z


@dataclass(frozen=True)
class SemidirectForm:
    """
    Extension letters with their exponents, plus the base part.

    ``layout`` says how to read the element back: ``"pre"`` means
    letters then base (``t^n c``, ``z^n c``), ``"post"`` means base then
    letters (``c u^j v^k``).
    """

    components: tuple[tuple[Gen, int], ...]
    base: Word
    layout: str

    def exponent(self, letter: Gen) -> int:
        for g, e in self.components:
            if g == letter:
                return e
        raise KeyError(letter)

    @property
    def quotient_exponents(self) -> tuple[int, ...]:
        return tuple(e for _, e in self.components)

    def recompose(self) -> Word:
        letters = Word(self.components)
        return letters * self.base if self.layout == "pre" else self.base * letters


class _EGExtension(Group):
    base: EGGroup

    def normal_form(self, w: Word) -> Word:
        return self.decompose(w).recompose()

    def leading_term(self, w: Word) -> LeadingTerm:
        return self.base.leading_term(self.decompose(w).base)


@dataclass(frozen=True)
class SemidirectByT(_EGExtension):
    """``EG x| <t>`` with ``t^-1 a_i t = action(a_i)``; layout ``t^n c``."""

    action: TAction = SHIFT
    base: EGGroup = field(default_factory=EGGroup)

    @property
    def descriptor(self) -> str:
        return f"eg:t={self.action.name}"

    def allowed(self, g: Gen) -> bool:
        return g.family == EG or g == T

    def decompose(self, w: Word) -> SemidirectForm:
        n = 0
        c: list[list[int]] = []
        for g, e in self.check_word(w):
            if g == T:
                # t^n c t^e = t^(n+e) (t^-e c t^e)
                c = self.action.apply_syllables(c, e, self.base)
                n += e
            else:
                self.base.check_index(g.index)
                _eg_insert(c, g.index, e)
        return SemidirectForm(((T, n),), _eg_word(c), "pre")

    def default_generators(self) -> list[Word]:
        return [Word.gen(T), _gen_word(0)]


@dataclass(frozen=True)
class UVExtension(_EGExtension):
    """
    ``GU = <G, u>`` with ``u^-1 a_i u = a_i^-1`` (layout ``c u^j``), or
    ``J = <G, u, v>`` adding ``v^-1 a_i v = a_{i+1}``, ``v^-1 u v = u^-1``
    (layout ``c u^j v^k``).
    """

    variant: str = "J"
    base: EGGroup = field(default_factory=EGGroup)

    def __post_init__(self):
        if self.variant not in ("GU", "J"):
            raise ValueError(f"unknown variant {self.variant!r}")

    @property
    def descriptor(self) -> str:
        return self.variant.lower()

    def allowed(self, g: Gen) -> bool:
        return g.family == EG or g == U or (g == V and self.variant == "J")

    def decompose(self, w: Word) -> SemidirectForm:
        c: list[list[int]] = []
        j = k = 0
        for g, e in self.check_word(w):
            if g == U:
                # v^k u^e v^-k = u^((-1)^k e)
                j += -e if k % 2 else e
            elif g == V:
                k += e
            else:
                # u^j v^k a_i^e v^-k u^-j = a_{i-k}^((-1)^j e)
                i = g.index - k
                self.base.check_index(i)
                _eg_insert(c, i, -e if j % 2 else e)
        comps = ((U, j),) if self.variant == "GU" else ((U, j), (V, k))
        return SemidirectForm(comps, _eg_word(c), "post")

    def default_generators(self) -> list[Word]:
        if self.variant == "GU":
            return [_gen_word(0), _gen_word(1), Word.gen(U)]
        return [_gen_word(0), Word.gen(U), Word.gen(V)]


@dataclass(frozen=True)
class DirectWithZ(Group):
    """``Z x base`` with the central letter z; layout ``z^n c``."""

    base: Group = field(default_factory=lambda: FreeGroup(2))

    def __post_init__(self):
        if not self.base.has_normal_form:
            raise UnsupportedGroup("DirectWithZ needs a base group with normal forms")

    @property
    def descriptor(self) -> str:
        return f"zx:{self.base.descriptor}"

    def allowed(self, g: Gen) -> bool:
        return g == Z or self.base.allowed(g)

    def decompose(self, w: Word) -> SemidirectForm:
        self.check_word(w)
        n = sum(e for g, e in w if g == Z)
        c = self.base.normal_form(Word((g, e) for g, e in w if g != Z))
        return SemidirectForm(((Z, n),), c, "pre")

    def normal_form(self, w: Word) -> Word:
        return self.decompose(w).recompose()

    def center_split(self, w: Word) -> tuple[str, Word | int]:
        """
        Locate ``w`` in the chain ``<z> <= Z(G) <= G``: returns
        ``("outer", c)`` if w is not central (c represents wZ(G)),
        ``("center", c)`` if w is central but not in <z> (c represents w<z>),
        and ``("z", n)`` if ``w = z^n``.
        """
        form = self.decompose(w)
        n, c = form.exponent(Z), form.base
        if c.is_identity():
            return "z", n
        if getattr(self.base, "abelian", False):
            return "center", c
        if isinstance(self.base, FreeGroup):
            return "outer", c
        raise UnsupportedGroup(f"center of {self.base.descriptor} is not available")

    def default_generators(self) -> list[Word]:
        return [Word.gen(Z)] + self.base.default_generators()


@dataclass(frozen=True)
class BraidGroup(Group):
    strands: int
    has_normal_form = False

    def __post_init__(self):
        if self.strands < 2:
            raise ValueError("a braid group needs at least 2 strands")

    @property
    def descriptor(self) -> str:
        return f"braid:{self.strands}"

    def allowed(self, g: Gen) -> bool:
        return g.family == BRAID and 1 <= g.index < self.strands

    def to_braid(self, w: Word) -> _braid.BraidWord:
        return _braid.BraidWord.from_word(self.check_word(w), self.strands)

    def normal_form(self, w: Word) -> Word:
        raise UnsupportedGroup("braid groups have no normal form here; use handle reduction")

    def equal(self, w1: Word, w2: Word) -> bool:
        return _braid.braid_equal(self.to_braid(w1), self.to_braid(w2))

    def multiply(self, *ws: Word) -> Word:
        out = IDENTITY
        for w in ws:
            out = concat(out, w)
        return self.check_word(out)

    def inverse(self, w: Word) -> Word:
        return invert(self.check_word(w))

    def power(self, w: Word, n: int) -> Word:
        return self.check_word(w**n)

    def hash_key(self, w: Word):
        b = self.to_braid(w)
        return _braid.permutation(b), sum(1 if c > 0 else -1 for c in b.letters)

    def default_generators(self) -> list[Word]:
        return [Word.gen(Gen(BRAID, i)) for i in range(1, self.strands)]


# --------------------------------------------------------------------------
# Module-level API


def normal_form(ctx: Group, w: Word) -> Word:
    return ctx.normal_form(w)


def equal(ctx: Group, w1: Word, w2: Word) -> bool:
    return ctx.equal(w1, w2)


def decompose(ctx: Group, w: Word) -> SemidirectForm:
    return ctx.decompose(w)


def parse_group(text: str, window: int | None = None) -> Group:
    """Parse a descriptor such as ``free:2``, ``klein``, ``eg:t=shift``, ``j``, ``zx:free:2``, ``braid:3``."""
    text = text.strip().lower()
    eg = EGGroup(window if window is not None else DEFAULT_WINDOW)
    if text.startswith("zx:"):
        return DirectWithZ(parse_group(text[3:], window))
    head, _, rest = text.partition(":")
    try:
        if head == "free":
            return FreeGroup(int(rest))
        if head == "braid":
            return BraidGroup(int(rest))
    except ValueError as exc:
        raise ParseError(f"bad group descriptor {text!r}: {exc}") from None
    if text == "klein":
        return KleinBottle()
    if text == "eg":
        return eg
    if head == "eg" and rest.startswith("t="):
        name = rest[2:]
        if name not in BUILTIN_ACTIONS:
            raise ParseError(f"unknown t-action {name!r}; known: {', '.join(BUILTIN_ACTIONS)}")
        return SemidirectByT(BUILTIN_ACTIONS[name], eg)
    if text in ("gu", "j"):
        return UVExtension(text.upper(), eg)
    raise ParseError(f"unknown group descriptor {text!r}")


# --------------------------------------------------------------------------
# Cayley balls


def ball_with_radii(
    ctx: Group,
    gens: Sequence[Word],
    radius: int,
    budget: int = DEFAULT_BALL_BUDGET,
) -> list[tuple[Word, int]]:
    """
    Breadth-first enumeration of the ball of ``radius`` over ``gens`` and their
    inverses. Returns ``(representative, word length)`` pairs, ordered by
    length and then by the lexicographically least shortest generator
    sequence (tokens ordered g1, g1^-1, g2, g2^-1, ...).

    Groups with normal forms use the normal form as representative and as
    dedup key. Braid groups bucket by (permutation, exponent sum) and test
    equality pairwise inside a bucket; their representative is the reduced
    product of the canonical generator sequence.
    """
    if radius < 0:
        raise ValueError("radius must be non-negative")
    tokens: list[Word] = []
    for g in gens:
        ctx.check_word(g)
        if ctx.is_identity(g):
            raise ValueError(f"ball generator {g} is the identity")
        tokens.extend([g, invert(g)])

    normal = ctx.has_normal_form
    identity = ctx.normal_form(IDENTITY) if normal else IDENTITY
    seen: dict = {}
    found: list[tuple[Word, int]] = [(identity, 0)]
    _remember(ctx, seen, identity, normal)
    frontier = [identity]
    candidates = 0
    for r in range(1, radius + 1):
        nxt = []
        for w in frontier:
            for tok in tokens:
                candidates += 1
                if candidates > budget:
                    raise BallBudgetExceeded(f"ball exceeded {budget} candidates at radius {r}")
                cand = ctx.multiply(w, tok)
                if _remember(ctx, seen, cand, normal):
                    nxt.append(cand)
                    found.append((cand, r))
        frontier = nxt
    return found


def _remember(ctx: Group, seen: dict, w: Word, normal: bool) -> bool:
    key = ctx.hash_key(w)
    if normal:
        if key in seen:
            return False
        seen[key] = w
        return True
    bucket = seen.setdefault(key, [])
    if any(ctx.equal(w, other) for other in bucket):
        return False
    bucket.append(w)
    return True


def ball(ctx: Group, gens: Sequence[Word], radius: int, budget: int = DEFAULT_BALL_BUDGET) -> list[Word]:
    return [w for w, _ in ball_with_radii(ctx, gens, radius, budget)]


def sgn(n: int) -> int:
    return (n > 0) - (n < 0)

