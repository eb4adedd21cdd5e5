"""Command-line interface.

Subcommands cover the full workflow: verify a move script or built-in
loop, act on a point file by a generator word, evaluate Plücker minors,
sample valid points, rebuild and validate flag chains, and run the
relation/faithfulness/xi reports as JSON.

Exit codes: 0 when every performed check passes, 1 for a verification
failure, 2 for a usage error, 3 for a degeneracy (including exhausted
sampling).  All output is deterministic given the flags; reports carry
no timestamps.  The environment variable LEGMON_PRIME overrides the
default prime modulus.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import explorer
from .braids import (
    BraidWord,
    IllegalMove,
    MoveScript,
    ScriptSyntaxError,
    builtin_script,
    parse_script,
    verify_loop,
)
from .fields import Field, PrimeField, QQ, default_prime, format_scalar
from .linalg import DegeneracyError
from .moduli import (
    SamplingExhausted,
    flags_from_point,
    get_family,
    pluecker,
    point_dumps,
    point_loads,
    random_point,
    validate_bott_samelson,
    validate_point,
)
from .monodromy import act_word, parse_group_word

EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_USAGE = 2
EXIT_DEGENERACY = 3


class UsageError(ValueError):
    pass


def _resolve_field(args) -> Field:
    if getattr(args, "field", "fp") == "q":
        return QQ
    prime = getattr(args, "prime", None)
    return PrimeField(prime if prime is not None else default_prime())


def _read_text(path: str | None) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _write_text(path: str | None, text: str):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _read_point(path: str | None):
    try:
        return point_loads(_read_text(path))
    except (OSError, json.JSONDecodeError, ValueError) as exc:
        raise UsageError(f"cannot read point file: {exc}") from exc


def _parse_base(text: str, strands: int) -> BraidWord:
    try:
        letters = tuple(int(x) for x in text.replace(",", " ").split())
        return BraidWord(strands, letters)
    except ValueError as exc:
        raise UsageError(f"bad base word: {exc}") from exc


def _cmd_verify_loop(args) -> int:
    if (args.script is None) == (args.builtin is None):
        raise UsageError("choose exactly one of --script or --builtin")
    if args.script is not None:
        if args.base is None or args.strands is None:
            raise UsageError("--script needs --base and --strands")
        base = _parse_base(args.base, args.strands)
        script = parse_script(_read_text(args.script), base, name=args.script)
    else:
        script = builtin_script(args.builtin, s=args.s, k_for_delta=args.k)
    try:
        report = verify_loop(script)
    except IllegalMove as exc:
        for word in exc.trace:
            print(word)
        print(f"illegal move: {exc}")
        return EXIT_VERIFICATION
    print("\n".join(report.to_lines()))
    return EXIT_OK if report.is_loop else EXIT_VERIFICATION


def _cmd_act(args) -> int:
    point = _read_point(args.point)
    try:
        word = parse_group_word(args.word)
        image = act_word(point, word)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    _write_text(args.out, point_dumps(image))
    return EXIT_OK


def _cmd_pluecker(args) -> int:
    point = _read_point(args.point)
    try:
        idx = tuple(int(x) for x in args.idx.split(","))
    except ValueError as exc:
        raise UsageError(f"bad index list {args.idx!r}") from exc
    try:
        value = pluecker(point, idx)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    print(format_scalar(value))
    return EXIT_OK


def _cmd_random_point(args) -> int:
    family = get_family(args.family)
    field = _resolve_field(args)
    point = random_point(family, field, args.seed)
    _write_text(args.out, point_dumps(point))
    return EXIT_OK


def _cmd_flags(args) -> int:
    point = _read_point(args.point)
    validity = validate_point(point)
    if not validity.is_valid:
        print(json.dumps({"valid_point": False, "bott_samelson": False}, indent=2))
        return EXIT_VERIFICATION
    flags = flags_from_point(point)
    ok = validate_bott_samelson(flags, point.family.base_word())
    print(
        json.dumps(
            {
                "valid_point": True,
                "family": point.family.name,
                "flags": len(flags),
                "bott_samelson": ok,
            },
            indent=2,
        )
    )
    return EXIT_OK if ok else EXIT_VERIFICATION


def _cmd_relations(args) -> int:
    report = explorer.verify_relations(
        n_points=args.points,
        seed=args.seed,
        field=_resolve_field(args),
        probe_budget=args.probe_budget,
    )
    _write_text(args.out, explorer.report_dumps(report))
    return EXIT_OK if report.all_pass else EXIT_VERIFICATION


def _cmd_faithful(args) -> int:
    report = explorer.faithfulness_sweep(
        max_syllables=args.max_syllables,
        probe_budget=args.probe_budget,
        n_points=args.points,
        seed=args.seed,
        field=_resolve_field(args),
    )
    _write_text(args.out, explorer.report_dumps(report))
    ok = report.all_separated and report.all_q_verified
    return EXIT_OK if ok else EXIT_VERIFICATION


def _cmd_xi_report(args) -> int:
    report = explorer.xi_pluecker_report(
        n_points=args.points, seed=args.seed, field=_resolve_field(args)
    )
    _write_text(args.out, explorer.report_dumps(report))
    return EXIT_OK if report.structural_all_ok else EXIT_VERIFICATION


def _add_field_flags(sub, include_q: bool = True):
    if include_q:
        sub.add_argument("--field", choices=("fp", "q"), default="fp",
                         help="scalar field (default: fp)")
    sub.add_argument("--prime", type=int, default=None,
                     help="prime modulus (default: LEGMON_PRIME or 2147483647)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="legmon",
        description="Braid-move loop certification and Legendrian-loop "
        "monodromy over exact fields",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("verify-loop", help="replay a move script and check closure")
    sub.add_argument("--script", help="move-script file (DSL)")
    sub.add_argument("--base", help="base word letters for --script, e.g. '1,2,1,2'")
    sub.add_argument("--strands", type=int, help="strand count for --script")
    sub.add_argument("--builtin", choices=("sigma1", "xi1", "xi2", "xi3", "delta_power"))
    sub.add_argument("--s", type=int, default=1, help="window parameter (default 1)")
    sub.add_argument("--k", type=int, default=None, help="k for delta_power")
    sub.set_defaults(func=_cmd_verify_loop)

    sub = subs.add_parser("act", help="apply a generator word to a point")
    sub.add_argument("--point", default=None, help="point JSON file ('-' or omit for stdin)")
    sub.add_argument("--word", required=True,
                     help="tokens A, A2, B, S1, SH(j), X1, X2, X3")
    sub.add_argument("--out", default=None, help="output file (default stdout)")
    sub.set_defaults(func=_cmd_act)

    sub = subs.add_parser("pluecker", help="evaluate one Plücker coordinate")
    sub.add_argument("--point", default=None, help="point JSON file ('-' or omit for stdin)")
    sub.add_argument("--idx", required=True, help="comma-separated indices, e.g. 1,4,7")
    sub.set_defaults(func=_cmd_pluecker)

    sub = subs.add_parser("random-point", help="sample a valid point")
    sub.add_argument("--family", required=True, choices=("T36", "T44"))
    sub.add_argument("--seed", type=int, required=True)
    _add_field_flags(sub)
    sub.add_argument("--out", default=None)
    sub.set_defaults(func=_cmd_random_point)

    sub = subs.add_parser("flags", help="rebuild and validate the flag chain")
    sub.add_argument("--point", default=None, help="point JSON file ('-' or omit for stdin)")
    sub.set_defaults(func=_cmd_flags)

    sub = subs.add_parser("relations", help="report the a^3 and b^2 relation checks")
    sub.add_argument("--points", type=int, default=32)
    sub.add_argument("--seed", type=int, default=7)
    sub.add_argument("--probe-budget", type=int, default=2)
    _add_field_flags(sub)
    sub.add_argument("--out", default=None)
    sub.set_defaults(func=_cmd_relations)

    sub = subs.add_parser("faithful", help="separation sweep over reduced words")
    sub.add_argument("--max-syllables", type=int, default=6)
    sub.add_argument("--probe-budget", type=int, default=4)
    sub.add_argument("--points", type=int, default=32)
    sub.add_argument("--seed", type=int, default=11)
    _add_field_flags(sub, include_q=False)
    sub.add_argument("--out", default=None)
    sub.set_defaults(func=_cmd_faithful)

    sub = subs.add_parser("xi-report", help="Plücker tables for the xi words")
    sub.add_argument("--points", type=int, default=32)
    sub.add_argument("--seed", type=int, default=11)
    _add_field_flags(sub, include_q=False)
    sub.add_argument("--out", default=None)
    sub.set_defaults(func=_cmd_xi_report)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ScriptSyntaxError as exc:
        print(f"script syntax error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SamplingExhausted as exc:
        print(f"sampling exhausted: {exc}", file=sys.stderr)
        return EXIT_DEGENERACY
    except DegeneracyError as exc:
        print(f"degeneracy: {exc}", file=sys.stderr)
        return EXIT_DEGENERACY
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
