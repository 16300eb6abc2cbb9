"""
ordforge command line.

    ordforge nf --group eg "a[1] a[0]"
    ordforge sign --group braid:3 --order '{"dehornoy":3}' "s2 s1^-1"
    ordforge min-positive --group klein --order '{"klein":{"eps_a":1,"eps_b":1}}' --gens "a,b" --radius 4
    ordforge verify cone --group klein --order '{"klein":{}}' --gens "a,b" --radius 4
    ordforge verify --suite checks.json
    ordforge pgt-epsilon --group eg:t=shift --window 8

Exit status: 0 on success or Pass, 1 when a counterexample is found, 2 on usage
or computation errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any

from . import braid as braid_mod
from .errors import OrdforgeError
from .groups import DEFAULT_BALL_BUDGET, BraidGroup, EGGroup, Group, SemidirectByT, ball_with_radii, parse_group
from .orders import compare, order_from_json, pgt_build, sign
from .verify import (
    DEFAULT_PAIR_BUDGET,
    DEFAULT_SEED,
    Verdict,
    VerificationReport,
    check_automorphism_invariance,
    check_cone_axioms,
    check_conjugation_invariance,
    check_convex_subgroup,
    check_lemma32,
    density_evidence,
    min_positive_report,
)
from .words import parse_word, parse_word_list

CHECKS = ("cone", "biorder", "discrete", "dense", "convex", "lemma32", "tinvariant")
SCHEMA_PATH = Path(__file__).with_name("output.schema.json")

DEFAULTS = {
    "radius": 3,
    "window": None,
    "budget": DEFAULT_BALL_BUDGET,
    "pairs": DEFAULT_PAIR_BUDGET,
    "seed": DEFAULT_SEED,
}


class UsageError(Exception):
    pass


def _load_order(source: str | dict | None, ctx: Group, action=None):
    if source is None:
        raise UsageError("--order is required for this command")
    if isinstance(source, dict):
        return order_from_json(source, ctx, action)
    text = source.strip()
    if not text.startswith("{"):
        path = Path(text.removeprefix("@"))
        if not path.exists():
            raise UsageError(f"--order is neither JSON nor an existing file: {source!r}")
        text = path.read_text()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"--order is not valid JSON: {exc}") from None
    return order_from_json(obj, ctx, action)


def _group(opts: dict) -> Group:
    if not opts.get("group"):
        raise UsageError("--group is required")
    return parse_group(opts["group"], opts.get("window"))


def _gens(opts: dict, ctx: Group):
    if opts.get("gens") is None:
        return ctx.default_generators()
    return parse_word_list(opts["gens"])


def _word(opts: dict, ctx: Group, key: str = "word"):
    text = opts.get(key)
    if text is None:
        raise UsageError(f"missing {key} argument")
    return ctx.check_word(parse_word(text))


def _int_list(text: str) -> list[int]:
    try:
        return [int(r) for r in str(text).replace(",", " ").split()]
    except ValueError:
        raise UsageError(f"bad integer list {text!r}") from None


# --------------------------------------------------------------------------
# Commands. Each returns (text, json payload, exit status).


def cmd_nf(opts):
    ctx = _group(opts)
    w = _word(opts, ctx)
    nf = ctx.normal_form(w)
    return str(nf), {"group": ctx.descriptor, "input": str(w), "normal_form": str(nf)}, 0


def cmd_sign(opts):
    ctx = _group(opts)
    spec = _load_order(opts.get("order"), ctx)
    w = _word(opts, ctx)
    s = sign(spec, ctx, w)
    return str(s), {"group": ctx.descriptor, "order": spec.to_json(), "word": str(w), "sign": str(s)}, 0


def cmd_compare(opts):
    ctx = _group(opts)
    spec = _load_order(opts.get("order"), ctx)
    f, g = _word(opts, ctx, "f"), _word(opts, ctx, "g")
    c = compare(spec, ctx, f, g)
    return str(c), {"group": ctx.descriptor, "order": spec.to_json(), "f": str(f), "g": str(g), "comparison": str(c)}, 0


def cmd_ball(opts):
    ctx = _group(opts)
    gens = _gens(opts, ctx)
    entries = ball_with_radii(ctx, gens, int(opts["radius"]), int(opts["budget"]))
    payload = {
        "group": ctx.descriptor,
        "gens": [str(g) for g in gens],
        "radius": int(opts["radius"]),
        "size": len(entries),
        "elements": [{"word": str(w), "length": r} for w, r in entries],
    }
    return "\n".join(str(w) for w, _ in entries), payload, 0


def cmd_min_positive(opts):
    ctx = _group(opts)
    spec = _load_order(opts.get("order"), ctx)
    report = min_positive_report(spec, ctx, _gens(opts, ctx), int(opts["radius"]), int(opts["budget"]))
    a = report.details.get("min_positive")
    text = "none" if a is None else str(a)
    if report.verdict is Verdict.CounterexampleFound:
        text += f"\n{report.to_text()}"
    return text, report.to_dict(), _status(report)


def cmd_braid_reduce(opts):
    ctx = _group(opts) if opts.get("group") else None
    w = parse_word(opts.get("word") or "")
    strands = ctx.strands if isinstance(ctx, BraidGroup) else max([g.index for g, _ in w] + [1]) + 1
    bw = braid_mod.BraidWord.from_word(w, strands)
    reduced = braid_mod.handle_reduce(bw)
    cls = braid_mod.classify_reduced(reduced.letters)
    payload = {"strands": strands, "input": str(w), "reduced": str(reduced), "sigma_class": str(cls)}
    return f"{reduced}\n{cls}", payload, 0


def cmd_pgt_epsilon(opts):
    ctx = _group(opts)
    if not isinstance(ctx, SemidirectByT):
        raise UsageError("pgt-epsilon needs a group eg:t=<action>")
    window = int(opts.get("window") or 8)
    eg = EGGroup(max(2 * window, ctx.base.window))
    data = pgt_build(ctx.action, window, eg)
    eps = {i: data.eps(i) for i in range(-window, window + 1)}
    values = set(eps.values())
    if len(values) == 1:
        shown = f"{values.pop():+d}"
    else:
        shown = ",".join(f"{v:+d}" for v in eps.values())
    text = f"n={data.offset}; eps={shown} on [{-window},{window}]"
    payload = {
        "action": ctx.action.name,
        "n": data.offset,
        "orientation": data.orientation,
        "window": window,
        "eps": {str(i): v for i, v in eps.items()},
    }
    return text, payload, 0


def run_check(opts: dict) -> VerificationReport:
    check = opts.get("check")
    if check not in CHECKS:
        raise UsageError(f"unknown check {check!r}; choose from {', '.join(CHECKS)}")
    ctx = _group(opts)
    radius = int(opts["radius"])
    budget = int(opts["budget"])
    if check == "tinvariant":
        # the order lives on EG; the group descriptor names the automorphism
        if not isinstance(ctx, SemidirectByT):
            raise UsageError("tinvariant needs a group eg:t=<action>")
        spec = _load_order(opts.get("order"), ctx.base, ctx.action)
        return check_automorphism_invariance(spec, ctx.base, ctx.action, _gens(opts, ctx.base), radius, budget)
    spec = _load_order(opts.get("order"), ctx)
    gens = _gens(opts, ctx)
    if check == "cone":
        return check_cone_axioms(spec, ctx, gens, radius, budget, int(opts["pairs"]), int(opts["seed"]))
    if check == "biorder":
        return check_conjugation_invariance(spec, ctx, gens, radius, budget, int(opts["pairs"]), int(opts["seed"]))
    if check == "discrete":
        return min_positive_report(spec, ctx, gens, radius, budget)
    if check == "dense":
        radii = _int_list(opts["radii"]) if opts.get("radii") else list(range(1, radius + 1))
        return density_evidence(spec, ctx, gens, radii, budget)
    if check == "convex":
        if not opts.get("member"):
            raise UsageError("convex needs --member (e.g. power:x1 or kernel)")
        return check_convex_subgroup(spec, ctx, opts["member"], gens, radius, budget)
    return check_lemma32(spec, ctx, gens, radius, budget)


def _status(report: VerificationReport) -> int:
    return 1 if report.verdict is Verdict.CounterexampleFound else 0


def cmd_verify(opts):
    if opts.get("suite"):
        entries = json.loads(Path(opts["suite"]).read_text())
        if not isinstance(entries, list):
            raise UsageError("a suite file holds a JSON array of checks")
        reports = []
        for entry in entries:
            merged = {**opts, "suite": None, **entry}
            if isinstance(merged.get("order"), dict):
                merged["order"] = json.dumps(merged["order"])
            if isinstance(merged.get("radii"), list):
                merged["radii"] = ",".join(map(str, merged["radii"]))
            reports.append(run_check(merged))
        text = "\n".join(r.to_text() for r in reports)
        status = max((_status(r) for r in reports), default=0)
        return text, {"reports": [r.to_dict(opts.get("timing", False)) for r in reports]}, status
    report = run_check(opts)
    return report.to_text(), report.to_dict(opts.get("timing", False)), _status(report)


COMMANDS = {
    "nf": cmd_nf,
    "sign": cmd_sign,
    "compare": cmd_compare,
    "ball": cmd_ball,
    "min-positive": cmd_min_positive,
    "verify": cmd_verify,
    "braid-reduce": cmd_braid_reduce,
    "pgt-epsilon": cmd_pgt_epsilon,
}


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--group", help="group descriptor: free:N, klein, eg, eg:t=ACTION, gu, j, zx:GROUP, braid:N")
    common.add_argument("--order", help="order spec as inline JSON or a file path")
    common.add_argument("--gens", help="comma-separated generator words for balls")
    common.add_argument("--radius", type=int, default=argparse.SUPPRESS)
    common.add_argument("--window", type=int, default=argparse.SUPPRESS, help="EG index window")
    common.add_argument("--budget", type=int, default=argparse.SUPPRESS, help="ball candidate cap")
    common.add_argument("--pairs", type=int, default=argparse.SUPPRESS, help="pair budget before sampling")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--config", help="JSON file with default flag values")
    common.add_argument("--json", action="store_true", help="emit JSON")
    common.add_argument("--timing", action="store_true", help="include wall times in JSON reports")

    parser = argparse.ArgumentParser(prog="ordforge", description="Exact computation with ordered groups.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("nf", parents=[common], help="normal form").add_argument("word")
    sub.add_parser("sign", parents=[common], help="sign of a word under an order").add_argument("word")
    p = sub.add_parser("compare", parents=[common], help="compare two words")
    p.add_argument("f")
    p.add_argument("g")
    sub.add_parser("ball", parents=[common], help="enumerate a Cayley ball")
    sub.add_parser("min-positive", parents=[common], help="least positive element of a ball")
    p = sub.add_parser("verify", parents=[common], help="run a verification check or a suite")
    p.add_argument("check", nargs="?", help=" | ".join(CHECKS))
    p.add_argument("--member", help="subgroup predicate for convex: power:GEN or kernel")
    p.add_argument("--radii", help="comma-separated radii for dense")
    p.add_argument("--suite", help="JSON array of checks")
    sub.add_parser("braid-reduce", parents=[common], help="handle reduction of a braid word").add_argument("word")
    sub.add_parser("pgt-epsilon", parents=[common], help="t-invariant sign assignment on EG")
    return parser


def _options(args: argparse.Namespace) -> dict[str, Any]:
    opts = dict(DEFAULTS)
    if args.config:
        opts.update(json.loads(Path(args.config).read_text()))
    opts.update({k: v for k, v in vars(args).items() if v is not None and k != "config"})
    if opts.get("check") is None and not opts.get("suite") and args.command == "verify":
        raise UsageError("verify needs a check name or --suite")
    return opts


def run(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    as_json = args.json
    try:
        opts = _options(args)
        text, payload, status = COMMANDS[args.command](opts)
    except (UsageError, OrdforgeError, ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        name = exc.name if isinstance(exc, OrdforgeError) else type(exc).__name__
        message = str(exc).strip("'\"")
        if as_json:
            print(json.dumps({"command": args.command, "ok": False, "error": {"name": name, "message": message}}, sort_keys=True), file=out)
        else:
            print(f"error: {name}: {message}", file=err)
        return 2
    if as_json:
        print(json.dumps({"command": args.command, "ok": True, "result": payload}, sort_keys=True), file=out)
    else:
        print(text, file=out)
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
