"""
Right orders and bi-orders as sign oracles.

An order is described by a tree of :class:`OrderSpec` nodes. Every node answers
``sign(ctx, w)``: whether ``w`` lies in the positive cone, is the identity, or
has its inverse in the cone. The order itself is ``g < h`` iff ``h g^-1`` is
positive.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum, IntEnum
from functools import lru_cache
from typing import Any, Callable, Mapping

from . import magnus
from .braid import BraidWord, sigma_class
from .errors import (
    IncompatibleSpec,
    InvalidAction,
    MissingImage,
    NotEventuallyShifting,
    ParseError,
    UnsupportedGroup,
    WindowExceeded,
)
from .groups import (
    BraidGroup,
    DirectWithZ,
    EGGroup,
    FreeGroup,
    Group,
    KleinBottle,
    SemidirectByT,
    TAction,
    UVExtension,
    _gen_word,
    leading_suffix_offsets,
    parse_group,
    sgn,
)
from .words import BRAID, FREE, Gen, Word, invert


class Sign(IntEnum):
    Negative = -1
    Identity = 0
    Positive = 1

    def __neg__(self) -> Sign:
        return Sign(-int(self))

    def __str__(self) -> str:
        return self.name


class Comparison(Enum):
    Less = "Less"
    Equal = "Equal"
    Greater = "Greater"

    def __str__(self) -> str:
        return self.value


def _sign(n: int) -> Sign:
    return Sign(sgn(n))


# --------------------------------------------------------------------------
# Order spec nodes


class OrderSpec:
    bi_order = False

    def check(self, ctx: Group) -> None:
        """Raise IncompatibleSpec unless this spec can order ``ctx``."""

    def sign(self, ctx: Group, w: Word) -> Sign:
        raise NotImplementedError

    def to_json(self) -> Any:
        raise NotImplementedError

    def __str__(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def _require(ctx: Group, kind: type | tuple, spec: OrderSpec) -> None:
    if not isinstance(ctx, kind):
        raise IncompatibleSpec(f"{type(spec).__name__} cannot order {ctx.descriptor}")


@dataclass(frozen=True)
class KleinOrder(OrderSpec):
    """``a^m b^n`` is positive by the sign of n (times eps_b), else of m (times eps_a)."""

    eps_a: int = 1
    eps_b: int = 1

    def __post_init__(self):
        if self.eps_a not in (1, -1) or self.eps_b not in (1, -1):
            raise ValueError("eps_a and eps_b must be +1 or -1")

    def check(self, ctx):
        _require(ctx, KleinBottle, self)

    def sign(self, ctx, w):
        m, n = ctx.exponents(w)
        if n:
            return _sign(n * self.eps_b)
        return _sign(m * self.eps_a)

    def to_json(self):
        return {"klein": {"eps_a": self.eps_a, "eps_b": self.eps_b}}


# -- EG orders and the construction for automorphisms t -----------------------


class PgtData:
    """
    Sign assignment on the a_i that is invariant under an automorphism t of EG.

    ``offset`` is the leading-suffix shift n > 0 of ``a_i -> a_i^s`` where s is
    t (orientation +1) or t^-1 (orientation -1). a_0 .. a_{n-1} are positive;
    higher indices follow by iterating ``u -> leading_term(u^s)`` from
    ``a_{i mod n}``, lower ones by iterating with ``s^-1``.
    """

    def __init__(self, action: TAction, offset: int, orientation: int, ctx: EGGroup, window: int):
        self.action = action
        self.offset = offset
        self.orientation = orientation
        self.ctx = ctx
        self.window = window
        self.memo: dict[int, int] = {i: 1 for i in range(offset)}

    def eps(self, i: int) -> int:
        if i in self.memo:
            return self.memo[i]
        n = self.offset
        r0 = i % n
        steps = (i - r0) // n
        direction = self.orientation if steps > 0 else -self.orientation
        idx, exp = r0, 1
        for k in range(1, abs(steps) + 1):
            image = self.action.apply(_gen_word(idx, exp), direction, self.ctx)
            idx, exp = self.ctx.leading_term(image)
            expected = r0 + (k if steps > 0 else -k) * n
            if idx != expected:
                raise InvalidAction(f"leading suffix {idx} where {expected} was expected")
            self.memo.setdefault(idx, 1 if exp > 0 else -1)
        return self.memo[i]

    def __repr__(self) -> str:
        return f"PgtData({self.action.name}, n={self.offset}, orientation={self.orientation:+d})"


def pgt_build(action: TAction, window: int = 8, ctx: EGGroup | None = None) -> PgtData:
    """
    Build the t-invariant sign assignment for ``action`` and check leading
    suffix regularity (``suffix(a_i^t) = i + n``) on ``[-window, window]``.
    """
    ctx = ctx or EGGroup(max(2 * window, 32))
    fwd = leading_suffix_offsets(action, ctx, window, 1)
    back = leading_suffix_offsets(action, ctx, window, -1)
    for offsets in (fwd, back):
        if len(set(offsets.values())) > 1:
            raise InvalidAction(f"leading suffix offsets of {action.name} are not constant: {sorted(set(offsets.values()))}")
    n_fwd = fwd.get(0, 0)
    n_back = back.get(0, 0)
    if n_fwd > 0:
        return PgtData(action, n_fwd, 1, ctx, window)
    if n_back > 0:
        return PgtData(action, n_back, -1, ctx, window)
    raise NotEventuallyShifting(f"{action.name} does not move leading suffixes on the window")


class SignAssignment:
    """The choice eps(i) = +1 or -1 of whether a_i or a_i^-1 is positive."""

    def __init__(self, kind: str, explicit: Mapping[int, int] | None = None, pgt: PgtData | None = None):
        if kind not in ("plus", "minus", "explicit", "pgt"):
            raise ValueError(f"unknown sign assignment {kind!r}")
        self.kind = kind
        self.explicit = dict(explicit or {})
        self.pgt = pgt

    def __call__(self, i: int) -> int:
        if self.kind == "plus":
            return 1
        if self.kind == "minus":
            return -1
        if self.kind == "explicit":
            if i not in self.explicit:
                raise WindowExceeded(f"no sign assigned to a[{i}]")
            return self.explicit[i]
        return self.pgt.eps(i)

    def _key(self):
        return (self.kind, tuple(sorted(self.explicit.items())), id(self.pgt))

    def __eq__(self, other):
        return isinstance(other, SignAssignment) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def to_json(self):
        if self.kind == "explicit":
            return {"explicit": {str(k): v for k, v in sorted(self.explicit.items())}}
        if self.kind == "pgt":
            return "pgt"
        return self.kind


@dataclass(frozen=True)
class EGOrder(OrderSpec):
    """sign(g) = eps(r) * sign(d) where a_r^d is the leading term of g."""

    eps: SignAssignment = field(default_factory=lambda: SignAssignment("plus"))

    def check(self, ctx):
        _require(ctx, EGGroup, self)

    def sign(self, ctx, w):
        nf = ctx.syllables(w)
        if not nf:
            return Sign.Identity
        r, d = nf[-1]
        return _sign(self.eps(r) * d)

    def to_json(self):
        return {"eg": self.eps.to_json()}


@dataclass(frozen=True)
class MagnusBiOrder(OrderSpec):
    rank: int = 2
    precedence: tuple[int, ...] | None = None
    bi_order = True

    def __post_init__(self):
        if self.precedence is not None and sorted(self.precedence) != list(range(1, self.rank + 1)):
            raise ValueError(f"precedence must be a permutation of 1..{self.rank}")

    def check(self, ctx):
        _require(ctx, FreeGroup, self)
        if ctx.rank > self.rank:
            raise IncompatibleSpec(f"Magnus order of rank {self.rank} cannot order {ctx.descriptor}")

    def sign(self, ctx, w):
        return Sign(magnus.magnus_sign(self.rank, self.precedence, w))

    def to_json(self):
        body: dict = {"rank": self.rank}
        if self.precedence:
            body["precedence"] = list(self.precedence)
        return {"magnus": body}


def magnus_sign(rank: int, precedence, w: Word) -> Sign:
    return Sign(magnus.magnus_sign(rank, precedence, w))


@dataclass(frozen=True)
class FreeDiscrete(OrderSpec):
    """
    Discrete right order on a free group with the distinguished generator x
    least positive: ``g = x^n c`` with n the exponent sum of x; compare c
    first (inner order), then n.
    """

    rank: int = 2
    distinguished: int = 1
    inner: OrderSpec | None = None

    def __post_init__(self):
        if not 1 <= self.distinguished <= self.rank:
            raise ValueError("distinguished generator out of range")
        if self.inner is None:
            object.__setattr__(self, "inner", MagnusBiOrder(self.rank))

    def check(self, ctx):
        _require(ctx, FreeGroup, self)
        if ctx.rank != self.rank:
            raise IncompatibleSpec(f"FreeDiscrete of rank {self.rank} cannot order {ctx.descriptor}")
        self.inner.check(ctx)

    def sign(self, ctx, w):
        x = Gen(FREE, self.distinguished)
        n = sum(e for g, e in w if g == x)
        c = Word(((x, -n),) + w.letters)
        if c.is_identity():
            return _sign(n)
        return sign(self.inner, ctx, c)

    def to_json(self):
        return {"freediscrete": {"rank": self.rank, "distinguished": self.distinguished, "inner": self.inner.to_json()}}


@dataclass(frozen=True)
class Lemma34(OrderSpec):
    """
    ``g = t^n c`` (c in the base): compare c with the inner order, then n.
    Discrete with t least positive whenever conjugation by t preserves the
    inner order.
    """

    group: Group
    inner: OrderSpec

    def check(self, ctx):
        _require(ctx, (SemidirectByT, DirectWithZ), self)
        if ctx.descriptor != self.group.descriptor:
            raise IncompatibleSpec(f"order built for {self.group.descriptor}, used on {ctx.descriptor}")
        self.inner.check(ctx.base)

    def sign(self, ctx, w):
        form = ctx.decompose(w)
        if form.base.is_identity():
            return _sign(form.quotient_exponents[0])
        return sign(self.inner, ctx.base, form.base)

    def to_json(self):
        return {"lemma34": {"group": self.group.descriptor, "inner": self.inner.to_json()}}


@dataclass(frozen=True)
class CentralExt(OrderSpec):
    """
    Three-tier order on a group with central element z: first by the coset of
    the center, then by the coset of <z> in the center, then by the power of z.
    """

    central_quotient: OrderSpec | None = None
    center_quotient: OrderSpec | None = None
    z_order: int = 1

    @property
    def bi_order(self) -> bool:
        return all(q is None or q.bi_order for q in (self.central_quotient, self.center_quotient))

    def check(self, ctx):
        _require(ctx, DirectWithZ, self)
        base = ctx.base
        if getattr(base, "abelian", False):
            if self.center_quotient is None:
                raise IncompatibleSpec("abelian base: an order on Z(G)/<z> ('center') is required")
            self.center_quotient.check(base)
        elif isinstance(base, FreeGroup):
            if self.central_quotient is None:
                raise IncompatibleSpec("an order on G/Z(G) ('quotient') is required")
            self.central_quotient.check(base)
        else:
            raise IncompatibleSpec(f"center of {base.descriptor} is not available")

    def sign(self, ctx, w):
        tier, val = ctx.center_split(w)
        if tier == "outer":
            return sign(self.central_quotient, ctx.base, val)
        if tier == "center":
            return sign(self.center_quotient, ctx.base, val)
        return _sign(val * self.z_order)

    def to_json(self):
        body: dict = {"z_order": self.z_order}
        if self.central_quotient is not None:
            body["quotient"] = self.central_quotient.to_json()
        if self.center_quotient is not None:
            body["center"] = self.center_quotient.to_json()
        return {"centralext": body}


@dataclass(frozen=True)
class Dehornoy(OrderSpec):
    strands: int

    def check(self, ctx):
        _require(ctx, BraidGroup, self)
        if ctx.strands != self.strands:
            raise IncompatibleSpec(f"Dehornoy({self.strands}) cannot order {ctx.descriptor}")

    def sign(self, ctx, w):
        return Sign(sigma_class(BraidWord.from_word(w, self.strands)).sign)

    def to_json(self):
        return {"dehornoy": self.strands}


def substitute_morphism(images: Mapping[Gen, Word], w: Word) -> Word:
    """Homomorphic substitution of generator images, freely reduced."""
    letters = []
    for g, e in w:
        if g not in images:
            raise MissingImage(f"no image for {g}")
        letters.extend((images[g] ** e).letters)
    return Word(letters)


CRISP_PARIS_IMAGES = {
    Gen(FREE, 1): Word.gen(Gen(BRAID, 1), 2),
    Gen(FREE, 2): Word.gen(Gen(BRAID, 2), 2),
}


@dataclass(frozen=True)
class CrispParis(OrderSpec):
    """Dehornoy order pulled back along ``x -> s1^2, y -> s2^2`` into B_3."""

    def check(self, ctx):
        _require(ctx, FreeGroup, self)
        if ctx.rank != 2:
            raise IncompatibleSpec("CrispParis orders free:2 only")

    def sign(self, ctx, w):
        image = substitute_morphism(CRISP_PARIS_IMAGES, w)
        return Sign(sigma_class(BraidWord.from_word(image, 3)).sign)

    def to_json(self):
        return {"crispparis": {}}


@dataclass(frozen=True)
class QuotientFirst(OrderSpec):
    """
    Lexicographic order on an extension: the exponent vector of the extension
    letters decides (last letter most significant); the kernel order breaks
    the tie.
    """

    kernel: OrderSpec

    def check(self, ctx):
        _require(ctx, (SemidirectByT, UVExtension, DirectWithZ), self)
        self.kernel.check(ctx.base)

    def sign(self, ctx, w):
        form = ctx.decompose(w)
        for e in reversed(form.quotient_exponents):
            if e:
                return _sign(e)
        return sign(self.kernel, ctx.base, form.base)

    def to_json(self):
        return {"quotientfirst": {"kernel": self.kernel.to_json()}}


# -- membership predicates for convex subgroups --------------------------------


def membership(pred: str, ctx: Group) -> Callable[[Word], bool]:
    """
    Decide membership for a named subgroup:

    ``power:<gen>``  the cyclic subgroup generated by one generator letter
    ``kernel``       the base of an extension (all extension exponents zero)
    """
    if pred == "kernel":
        if not isinstance(ctx, (SemidirectByT, UVExtension, DirectWithZ)):
            raise UnsupportedGroup(f"{ctx.descriptor} has no kernel")
        return lambda w: not any(ctx.decompose(w).quotient_exponents)
    if pred.startswith("power:"):
        from .words import parse_word

        letter = parse_word(pred[6:])
        if len(letter) != 1 or abs(letter[0][1]) != 1:
            raise ParseError(f"power: needs a single generator, got {pred[6:]!r}")
        gen = letter[0][0]
        ctx.check_word(letter)
        if not ctx.has_normal_form:
            raise UnsupportedGroup(f"membership in <{gen}> is not decidable here for {ctx.descriptor}")

        def member(w: Word) -> bool:
            nf = ctx.normal_form(w)
            return len(nf) == 0 or (len(nf) == 1 and nf[0][0] == gen)

        return member
    raise ParseError(f"unknown membership predicate {pred!r}")


@dataclass(frozen=True)
class Refine(OrderSpec):
    """Outer order, replaced by the inner order on a convex subgroup."""

    outer: OrderSpec
    member: str
    inner: OrderSpec

    def check(self, ctx):
        self.outer.check(ctx)
        self.inner.check(ctx)
        membership(self.member, ctx)

    def sign(self, ctx, w):
        if membership(self.member, ctx)(w):
            return sign(self.inner, ctx, w)
        return sign(self.outer, ctx, w)

    def to_json(self):
        return {"refine": {"outer": self.outer.to_json(), "member": self.member, "inner": self.inner.to_json()}}


@dataclass(frozen=True)
class Reverse(OrderSpec):
    inner: OrderSpec

    @property
    def bi_order(self) -> bool:
        return self.inner.bi_order

    def check(self, ctx):
        self.inner.check(ctx)

    def sign(self, ctx, w):
        return -sign(self.inner, ctx, w)

    def to_json(self):
        return {"reverse": self.inner.to_json()}


# --------------------------------------------------------------------------
# Public oracle API


@lru_cache(maxsize=1 << 18)
def _cached_sign(spec: OrderSpec, ctx: Group, w: Word) -> Sign:
    return spec.sign(ctx, w)


def sign(spec: OrderSpec, ctx: Group, w: Word) -> Sign:
    ctx.check_word(w)
    return _cached_sign(spec, ctx, w)


def compare(spec: OrderSpec, ctx: Group, f: Word, g: Word) -> Comparison:
    """Less iff g f^-1 is positive."""
    s = sign(spec, ctx, ctx.multiply(g, invert(f)))
    if s is Sign.Positive:
        return Comparison.Less
    if s is Sign.Negative:
        return Comparison.Greater
    return Comparison.Equal


def less(spec: OrderSpec, ctx: Group, f: Word, g: Word) -> bool:
    return compare(spec, ctx, f, g) is Comparison.Less


# --------------------------------------------------------------------------
# JSON configuration


def _group_of(body: Mapping, ctx: Group | None) -> Group:
    if "group" in body:
        declared = parse_group(body["group"], getattr(getattr(ctx, "base", ctx), "window", None))
        if ctx is not None and declared.descriptor != ctx.descriptor:
            raise IncompatibleSpec(f"order is for {declared.descriptor}, group is {ctx.descriptor}")
        return ctx if ctx is not None else declared
    if ctx is None:
        raise IncompatibleSpec("no group given for this order")
    return ctx


def order_from_json(obj: Any, ctx: Group | None = None, action: TAction | None = None) -> OrderSpec:
    """
    Build an order spec from its JSON form and validate it against ``ctx``.

    ``action`` is the automorphism an ``{"eg": "pgt"}`` node refers to; it is
    filled in automatically below ``lemma34`` and ``quotientfirst``.
    """
    if isinstance(obj, str):
        obj = json.loads(obj)
    if not isinstance(obj, dict) or len(obj) != 1:
        raise ParseError(f"an order spec is a one-key JSON object, got {obj!r}")
    ((key, body),) = obj.items()
    if ctx is not None and action is None and isinstance(ctx, SemidirectByT):
        action = ctx.action

    if key == "klein":
        spec = KleinOrder(int(body.get("eps_a", 1)), int(body.get("eps_b", 1)))
    elif key == "eg":
        spec = EGOrder(_assignment(body, ctx, action))
    elif key == "magnus":
        rank = int(body.get("rank", getattr(ctx, "rank", 2)))
        prec = body.get("precedence")
        spec = MagnusBiOrder(rank, tuple(prec) if prec else None)
    elif key == "freediscrete":
        rank = int(body.get("rank", getattr(ctx, "rank", 2)))
        inner = order_from_json(body["inner"], FreeGroup(rank)) if "inner" in body else None
        spec = FreeDiscrete(rank, int(body.get("distinguished", 1)), inner)
    elif key == "lemma34":
        group = _group_of(body, ctx)
        inner_action = group.action if isinstance(group, SemidirectByT) else None
        spec = Lemma34(group, order_from_json(body.get("inner", {"eg": "pgt"}), group.base, inner_action))
        ctx = ctx or group
    elif key == "dehornoy":
        strands = body if isinstance(body, int) else int(body.get("strands", getattr(ctx, "strands", 3)))
        spec = Dehornoy(strands)
    elif key == "crispparis":
        spec = CrispParis()
    elif key == "centralext":
        group = _group_of(body, ctx)
        if not isinstance(group, DirectWithZ):
            raise IncompatibleSpec("centralext needs a zx:<group> group")
        spec = CentralExt(
            order_from_json(body["quotient"], group.base) if "quotient" in body else None,
            order_from_json(body["center"], group.base) if "center" in body else None,
            int(body.get("z_order", 1)),
        )
        ctx = ctx or group
    elif key == "quotientfirst":
        group = _group_of(body, ctx)
        inner_action = group.action if isinstance(group, SemidirectByT) else None
        spec = QuotientFirst(order_from_json(body.get("kernel", {"eg": "plus"}), group.base, inner_action))
        ctx = ctx or group
    elif key == "refine":
        spec = Refine(
            order_from_json(body["outer"], ctx, action),
            body["member"],
            order_from_json(body["inner"], ctx, action),
        )
    elif key == "reverse":
        spec = Reverse(order_from_json(body, ctx, action))
    else:
        raise ParseError(f"unknown order node {key!r}")
    if ctx is not None:
        spec.check(ctx)
    return spec


def _assignment(body: Any, ctx: Group | None, action: TAction | None) -> SignAssignment:
    if body in ("plus", "+", 1):
        return SignAssignment("plus")
    if body in ("minus", "-", -1):
        return SignAssignment("minus")
    if body == "pgt" or (isinstance(body, dict) and "pgt" in body):
        if action is None:
            raise IncompatibleSpec("an 'eg: pgt' order needs a group with a t-action")
        window = body["pgt"].get("window", 8) if isinstance(body, dict) else 8
        eg = ctx if isinstance(ctx, EGGroup) else EGGroup()
        return SignAssignment("pgt", pgt=pgt_build(action, window, eg))
    if isinstance(body, dict) and "explicit" in body:
        return SignAssignment("explicit", {int(k): int(v) for k, v in body["explicit"].items()})
    raise ParseError(f"unknown EG sign assignment {body!r}")

