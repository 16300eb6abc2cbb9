"""
Ball-scale verification of order properties.

Every check enumerates a Cayley ball, evaluates a predicate exhaustively (or on
a seeded uniform sample when the pair count exceeds the budget) and returns a
:class:`VerificationReport`. A ``Pass`` is evidence on the ball, not a proof.
"""

from __future__ import annotations

import functools
import json
import random
import time
from dataclasses import dataclass, field
from enum import Enum
from itertools import product
from typing import Any, Callable, Sequence

from .errors import NoDiscretenessWitness
from .groups import DEFAULT_BALL_BUDGET, Group, TAction, ball
from .orders import Comparison, OrderSpec, Sign, compare, membership, sign
from .words import Word

DEFAULT_PAIR_BUDGET = 1_000_000
DEFAULT_SEED = 0


class Verdict(Enum):
    Pass = "Pass"
    CounterexampleFound = "CounterexampleFound"
    Inconclusive = "Inconclusive"

    def __str__(self) -> str:
        return self.value


@dataclass
class VerificationReport:
    check: str
    params: dict[str, Any]
    verdict: Verdict
    witness: dict[str, Word] | None = None
    stats: dict[str, Any] = field(default_factory=dict)
    details: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict is Verdict.Pass

    def to_dict(self, timing: bool = False) -> dict[str, Any]:
        stats = dict(self.stats)
        if not timing:
            stats.pop("wall_time", None)
        return {
            "check": self.check,
            "params": self.params,
            "verdict": self.verdict.value,
            "witness": None if self.witness is None else {k: str(v) for k, v in self.witness.items()},
            "stats": stats,
            "details": _jsonable(self.details),
        }

    def to_json(self, timing: bool = False) -> str:
        return json.dumps(self.to_dict(timing), sort_keys=True)

    def to_text(self) -> str:
        lines = [f"{self.check}: {self.verdict}"]
        if self.witness:
            lines.append("  witness: " + ", ".join(f"{k} = {v}" for k, v in self.witness.items()))
        for k, v in self.details.items():
            lines.append(f"  {k}: {_jsonable(v)}")
        stats = ", ".join(f"{k}={v}" for k, v in self.stats.items())
        lines.append(f"  stats: {stats}")
        return "\n".join(lines)


def _jsonable(v):
    if isinstance(v, Word):
        return str(v)
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, Enum):
        return str(v)
    return v


def _params(check_spec: OrderSpec, ctx: Group, gens: Sequence[Word], radius, **extra) -> dict[str, Any]:
    params = {
        "group": ctx.descriptor,
        "order": check_spec.to_json(),
        "gens": [str(g) for g in gens],
        "radius": radius,
    }
    params.update(extra)
    return params


def _pairs(left: Sequence, right: Sequence, budget: int, seed: int) -> tuple[list, str]:
    total = len(left) * len(right)
    if total <= budget:
        return list(product(left, right)), "exhaustive"
    rng = random.Random(seed)
    picks = sorted(rng.sample(range(total), budget))
    return [(left[k // len(right)], right[k % len(right)]) for k in picks], "sampled"


class _Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = round(time.perf_counter() - self.start, 4)


# --------------------------------------------------------------------------


def check_cone_axioms(
    spec: OrderSpec,
    ctx: Group,
    gens: Sequence[Word],
    radius: int,
    budget: int = DEFAULT_BALL_BUDGET,
    pair_budget: int = DEFAULT_PAIR_BUDGET,
    seed: int = DEFAULT_SEED,
) -> VerificationReport:
    """Trichotomy on every ball element and closure of the cone under products of ball pairs."""
    spec.check(ctx)
    with _Timer() as timer:
        elems = ball(ctx, gens, radius, budget)
        witness = None
        failure = None
        positives = []
        for g in elems:
            s = sign(spec, ctx, g)
            if (s is Sign.Identity) != ctx.is_identity(g):
                witness, failure = {"g": g}, "sign is Identity exactly for the identity"
                break
            if sign(spec, ctx, ctx.inverse(g)) != -s:
                witness, failure = {"g": g}, "exactly one of g, g^-1 is positive"
                break
            if s is Sign.Positive:
                positives.append(g)
        pairs, mode = _pairs(positives, positives, pair_budget, seed)
        if witness is None:
            for u, v in pairs:
                if sign(spec, ctx, ctx.multiply(u, v)) is not Sign.Positive:
                    witness, failure = {"u": u, "v": v}, "product of positives is positive"
                    break
    report = VerificationReport(
        "cone",
        _params(spec, ctx, gens, radius, pair_budget=pair_budget, seed=seed),
        Verdict.Pass if witness is None else Verdict.CounterexampleFound,
        witness,
        {"elements": len(elems), "positives": len(positives), "pairs": len(pairs), "mode": mode, "wall_time": timer.elapsed},
    )
    if failure:
        report.details["violated"] = failure
    return report


def check_conjugation_invariance(
    spec: OrderSpec,
    ctx: Group,
    gens: Sequence[Word],
    radius: int,
    budget: int = DEFAULT_BALL_BUDGET,
    pair_budget: int = DEFAULT_PAIR_BUDGET,
    seed: int = DEFAULT_SEED,
) -> VerificationReport:
    """sign(h g h^-1) = sign(g) for ball pairs (g, h)."""
    spec.check(ctx)
    with _Timer() as timer:
        elems = ball(ctx, gens, radius, budget)
        pairs, mode = _pairs(elems, elems, pair_budget, seed)
        witness = None
        for g, h in pairs:
            if sign(spec, ctx, ctx.conjugate(g, h)) != sign(spec, ctx, g):
                witness = {"g": g, "h": h}
                break
    return VerificationReport(
        "biorder",
        _params(spec, ctx, gens, radius, pair_budget=pair_budget, seed=seed),
        Verdict.Pass if witness is None else Verdict.CounterexampleFound,
        witness,
        {"elements": len(elems), "pairs": len(pairs), "mode": mode, "wall_time": timer.elapsed},
    )


# --------------------------------------------------------------------------
# Discreteness


@dataclass
class DiscretenessWitness:
    a: Word
    radius_verified: int
    gap_checked: bool
    betweenness_checked: bool
    convexity_checked: bool
    failures: dict[str, dict[str, Word]] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.gap_checked and self.betweenness_checked and self.convexity_checked


def _least(spec: OrderSpec, ctx: Group, elems: Sequence[Word]) -> Word | None:
    best = None
    for g in elems:
        if sign(spec, ctx, g) is Sign.Positive and (best is None or compare(spec, ctx, g, best) is Comparison.Less):
            best = g
    return best


def _in_cyclic(ctx: Group, a: Word, h: Word, bound: int) -> bool:
    return any(ctx.equal(h, ctx.power(a, k)) for k in range(-bound, bound + 1))


def min_positive(
    spec: OrderSpec,
    ctx: Group,
    gens: Sequence[Word],
    radius: int,
    budget: int = DEFAULT_BALL_BUDGET,
) -> DiscretenessWitness | None:
    """
    Least positive element of the ball, with three checks: nothing in the ball
    lies strictly between 1 and a; for g in the half-radius ball nothing lies
    strictly between g and a g; and <a> is convex inside the ball.
    """
    spec.check(ctx)
    elems = ball(ctx, gens, radius, budget)
    a = _least(spec, ctx, elems)
    if a is None:
        return None

    def lt(f, g):
        return compare(spec, ctx, f, g) is Comparison.Less

    failures: dict[str, dict[str, Word]] = {}
    one = elems[0]
    for g in elems:
        if lt(one, g) and lt(g, a):
            failures["gap"] = {"g": g}
            break

    for g in ball(ctx, gens, radius // 2, budget):
        ag = ctx.multiply(a, g)
        if not (lt(ctx.multiply(ctx.inverse(a), g), g) and lt(g, ag)):
            failures["betweenness"] = {"g": g}
            break
        hit = next((h for h in elems if lt(g, h) and lt(h, ag)), None)
        if hit is not None:
            failures["betweenness"] = {"g": g, "h": hit}
            break

    bound = max(radius, 1)
    lo, hi = ctx.power(a, -bound), ctx.power(a, bound)
    for h in elems:
        if lt(lo, h) and lt(h, hi) and not _in_cyclic(ctx, a, h, bound):
            failures["convexity"] = {"h": h}
            break

    return DiscretenessWitness(
        a,
        radius,
        "gap" not in failures,
        "betweenness" not in failures,
        "convexity" not in failures,
        failures,
    )


def min_positive_report(spec, ctx, gens, radius, budget: int = DEFAULT_BALL_BUDGET) -> VerificationReport:
    with _Timer() as timer:
        wit = min_positive(spec, ctx, gens, radius, budget)
    params = _params(spec, ctx, gens, radius)
    if wit is None:
        return VerificationReport("discrete", params, Verdict.Inconclusive, None, {"wall_time": timer.elapsed}, {"min_positive": None})
    details = {
        "min_positive": wit.a,
        "gap_checked": wit.gap_checked,
        "betweenness_checked": wit.betweenness_checked,
        "convexity_checked": wit.convexity_checked,
    }
    witness = None
    if not wit.ok:
        name, found = next(iter(wit.failures.items()))
        details["violated"] = name
        witness = {"a": wit.a, **found}
    return VerificationReport(
        "discrete",
        params,
        Verdict.Pass if wit.ok else Verdict.CounterexampleFound,
        witness,
        {"wall_time": timer.elapsed},
        details,
    )


def density_evidence(
    spec: OrderSpec,
    ctx: Group,
    gens: Sequence[Word] | Callable[[int], Sequence[Word]],
    radii: Sequence[int],
    budget: int = DEFAULT_BALL_BUDGET,
) -> VerificationReport:
    """
    Pass when the least positive element of the ball strictly decreases from
    each radius to the next; Inconclusive when it stabilizes (as it must for a
    discrete order) or no positive element exists.

    ``gens`` may also be a function of the radius, for sweeps where the
    generator set grows with it (e.g. a window of EG generators).
    """
    if list(radii) != sorted(set(radii)):
        raise ValueError("radii must be strictly increasing")
    spec.check(ctx)
    with _Timer() as timer:
        gens_at = gens if callable(gens) else (lambda r: gens)
        minima = [_least(spec, ctx, ball(ctx, gens_at(r), r, budget)) for r in radii]
    verdict = Verdict.Pass
    stalled = None
    for k in range(1, len(minima)):
        prev, cur = minima[k - 1], minima[k]
        if prev is None or cur is None or compare(spec, ctx, cur, prev) is not Comparison.Less:
            verdict = Verdict.Inconclusive
            stalled = radii[k]
            break
    if minima and minima[-1] is None:
        verdict = Verdict.Inconclusive
    details = {"min_positive_by_radius": {str(r): m for r, m in zip(radii, minima)}}
    if stalled is not None:
        details["stabilized_at_radius"] = stalled
    if callable(gens):
        params = _params(spec, ctx, [], list(radii))
        params["gens"] = {str(r): [str(g) for g in gens_at(r)] for r in radii}
    else:
        params = _params(spec, ctx, gens, list(radii))
    return VerificationReport("dense", params, verdict, None, {"wall_time": timer.elapsed}, details)


def check_convex_subgroup(
    spec: OrderSpec,
    ctx: Group,
    member: str | Callable[[Word], bool],
    gens: Sequence[Word],
    radius: int,
    budget: int = DEFAULT_BALL_BUDGET,
) -> VerificationReport:
    """x < y < z with x, z members implies y is a member, for all ball triples."""
    spec.check(ctx)
    pred_name = member if isinstance(member, str) else getattr(member, "__name__", "custom")
    is_member = membership(member, ctx) if isinstance(member, str) else member
    with _Timer() as timer:
        elems = ball(ctx, gens, radius, budget)
        key = functools.cmp_to_key(lambda f, g: {Comparison.Less: -1, Comparison.Equal: 0, Comparison.Greater: 1}[compare(spec, ctx, f, g)])
        ordered = sorted(elems, key=key)
        flags = [is_member(w) for w in ordered]
        witness = None
        last_member = None
        gap = None
        for pos, (w, m) in enumerate(zip(ordered, flags)):
            if m:
                if gap is not None and last_member is not None:
                    witness = {"x": ordered[last_member], "y": ordered[gap], "z": w}
                    break
                last_member, gap = pos, None
            elif last_member is not None and gap is None:
                gap = pos
    return VerificationReport(
        "convex",
        _params(spec, ctx, gens, radius, member=pred_name),
        Verdict.Pass if witness is None else Verdict.CounterexampleFound,
        witness,
        {"elements": len(elems), "members": sum(flags), "wall_time": timer.elapsed},
    )


def check_lemma32(
    spec: OrderSpec,
    ctx: Group,
    gens: Sequence[Word],
    radius: int,
    budget: int = DEFAULT_BALL_BUDGET,
) -> VerificationReport:
    """For the least positive a and every positive ball element g, a g a^-1 and a^-1 g a are positive."""
    wit = min_positive(spec, ctx, gens, radius, budget)
    if wit is None or not wit.gap_checked:
        raise NoDiscretenessWitness("no least positive element with a clean gap check on this ball")
    a = wit.a
    with _Timer() as timer:
        elems = ball(ctx, gens, radius, budget)
        witness = None
        checked = 0
        for g in elems:
            if sign(spec, ctx, g) is not Sign.Positive:
                continue
            checked += 1
            for h in (a, ctx.inverse(a)):
                if sign(spec, ctx, ctx.conjugate(g, h)) is not Sign.Positive:
                    witness = {"a": a, "g": g, "conjugator": h}
                    break
            if witness:
                break
    return VerificationReport(
        "lemma32",
        _params(spec, ctx, gens, radius),
        Verdict.Pass if witness is None else Verdict.CounterexampleFound,
        witness,
        {"elements": len(elems), "positives_checked": checked, "wall_time": timer.elapsed},
        {"min_positive": a},
    )


def check_automorphism_invariance(
    spec: OrderSpec,
    ctx: Group,
    action: TAction,
    gens: Sequence[Word],
    radius: int,
    budget: int = DEFAULT_BALL_BUDGET,
) -> VerificationReport:
    """sign(phi(g)) = sign(g) and sign(phi^-1(g)) = sign(g) for ball elements g of an EG order."""
    spec.check(ctx)
    with _Timer() as timer:
        elems = ball(ctx, gens, radius, budget)
        witness = None
        for g in elems:
            s = sign(spec, ctx, g)
            for power in (1, -1):
                if sign(spec, ctx, action.apply(g, power, ctx)) != s:
                    witness = {"g": g}
                    break
            if witness:
                break
    return VerificationReport(
        "tinvariant",
        _params(spec, ctx, gens, radius, action=action.name),
        Verdict.Pass if witness is None else Verdict.CounterexampleFound,
        witness,
        {"elements": len(elems), "wall_time": timer.elapsed},
    )
