"""Command-line entry point: ``weilexp {invariants,witness,verify,predict}``.

Exit codes: 0 success, 1 property violation, 2 usage or validation
error, 3 internal verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import (
    ProfileError,
    UnknownFamily,
    WeilexpError,
    WitnessVanished,
)
from .predict import parse_group, predict
from .profile import (
    ExtensionProfile,
    big_e_m,
    e_of,
    exactness_condition,
    little_e_mr,
    m_invariant,
    m_r_invariant,
)
from .verify import SuiteConfig, dumps, first_failure, report_ok, run_suite
from .witness import borel_witness, verify_witness

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _int_list(text: str) -> tuple:
    text = (text or "").strip()
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"expected a comma-separated list of integers, got {text!r}") from None


def profile_from_args(args) -> ExtensionProfile:
    if getattr(args, "profile", None):
        return ExtensionProfile.from_json(Path(args.profile).read_text())
    if args.p is None:
        raise UsageError("give --p and --exponents, or --profile FILE")
    relations = ()
    if getattr(args, "relations", None):
        data = json.loads(Path(args.relations).read_text())
        relations = data.get("relations", []) if isinstance(data, dict) else data
    return ExtensionProfile(args.p, _int_list(args.exponents), relations)


# -- commands -------------------------------------------------------------------


def cmd_invariants(profile: ExtensionProfile, ranks) -> dict:
    rows = []
    for r in ranks:
        if r < 1:
            raise UsageError(f"ranks must be >= 1, got {r}")
        rows.append({
            "r": r,
            "m_r": m_r_invariant(profile, r),
            "e_mr": little_e_mr(profile, r),
            "E": e_of(profile, r),
            "exactness_condition": exactness_condition(profile, r),
        })
    return {
        "profile": profile.to_dict(),
        "m": m_invariant(profile),
        "E_m": big_e_m(profile),
        "ranks": rows,
    }


def cmd_witness(profile: ExtensionProfile, r: int):
    """Returns ``(report_dict, verified)``."""
    if r < 1:
        raise UsageError(f"rank must be >= 1, got {r}")
    report = borel_witness(profile, r)
    check = verify_witness(report)
    out = report.to_dict()
    out["verified"] = bool(check)
    out["failures"] = check.failures
    return out, bool(check)


def cmd_verify(config: SuiteConfig) -> dict:
    return run_suite(config)


def cmd_predict(profile: ExtensionProfile, group: str, rank: int | None = None) -> dict:
    spec = parse_group(group, rank=rank)
    out = predict(profile, spec).to_dict()
    out["group"] = str(spec)
    return out


# -- rendering ------------------------------------------------------------------


def _text(data, indent=0) -> list:
    pad = "  " * indent
    lines = []
    if isinstance(data, dict):
        for k, v in data.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.extend(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {json.dumps(v)}")
    elif isinstance(data, list):
        for item in data:
            if isinstance(item, dict):
                sub = _text(item, indent + 1)
                lines.append(f"{pad}- " + sub[0].strip())
                lines.extend(sub[1:])
            else:
                lines.append(f"{pad}- {json.dumps(item)}")
    else:
        lines.append(f"{pad}{json.dumps(data)}")
    return lines


def render(data: dict, as_json: bool) -> str:
    if as_json:
        return dumps(data)
    return "\n".join(_text(data)) + "\n"


def emit(data: dict, args) -> None:
    text = render(data, args.json)
    sys.stdout.write(text)
    if args.out:
        Path(args.out).write_text(text)


# -- argument parsing -------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, help="characteristic")
    common.add_argument("--exponents", default="", help="comma list e_1,...,e_l (non-increasing)")
    common.add_argument("--relations", help="JSON file with relations (list, or profile object)")
    common.add_argument("--profile", help="JSON profile file {p, exponents, relations}")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--out", help="also write the output to this file")

    parser = argparse.ArgumentParser(prog="weilexp", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invariants", parents=[common], help="m, m_r, E_m, e_mr, E per rank")
    p.add_argument("--ranks", "--rank", default="1,2,3,4")

    p = sub.add_parser("witness", parents=[common], help="build and check the triangular witness")
    p.add_argument("--rank", "--ranks", type=int, required=True)

    p = sub.add_parser("verify", parents=[common], help="run the property suite")
    p.add_argument("--ranks", "--rank", default="1,2,3,4")
    p.add_argument("--trials", type=int, default=16)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--primes", default="2,3", help="grid primes when no profile is given")
    p.add_argument("--max-degree", type=int, default=2**8, help="grid bound on prod p^e_i")
    p.add_argument("--exhaustive", action="store_true")
    p.add_argument("--selftest-negate", action="store_true", help="inject a known fault")

    p = sub.add_parser("predict", parents=[common], help="predicted exponent for a group")
    p.add_argument("--group", required=True)
    p.add_argument("--rank", "--ranks", type=int)
    return parser


def _run(args) -> int:
    if args.command == "verify":
        profiles = None
        if args.p is not None or args.profile:
            profiles = (profile_from_args(args),)
        try:
            config = SuiteConfig(
                primes=_int_list(args.primes),
                max_degree=args.max_degree,
                ranks=_int_list(args.ranks),
                trials=args.trials,
                seed=args.seed,
                exhaustive=args.exhaustive,
                profiles=profiles,
                negate=args.selftest_negate,
            )
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        report = cmd_verify(config)
        emit(report, args)
        if report_ok(report):
            return EXIT_OK
        bad = first_failure(report)
        print(
            f"FAILED {bad['property']} (reproduce with --seed {bad['seed']}): {bad['details'][:1]}",
            file=sys.stderr,
        )
        return EXIT_VIOLATION

    profile = profile_from_args(args)
    if args.command == "invariants":
        emit(cmd_invariants(profile, _int_list(args.ranks)), args)
        return EXIT_OK
    if args.command == "witness":
        data, ok = cmd_witness(profile, args.rank)
        emit(data, args)
        return EXIT_OK if ok else EXIT_INTERNAL
    if args.command == "predict":
        emit(cmd_predict(profile, args.group, args.rank), args)
        return EXIT_OK
    raise UsageError(f"unknown command {args.command}")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return _run(args)
    except WitnessVanished as exc:
        print(f"error: WitnessVanished: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (UsageError, ProfileError, UnknownFamily, ValueError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except WeilexpError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
