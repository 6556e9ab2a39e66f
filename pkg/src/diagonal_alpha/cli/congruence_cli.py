#!/usr/bin/env python3
"""
Command-line front end.

Results go to stdout in a fixed, ascending, machine-readable form; status
lines, progress bars and logs go to stderr.

Exit codes: 0 success, 1 usage error or refusal (syntax, budget, unsupported
request, precondition), 2 verification mismatch.
"""

import argparse
import json
import sys
from typing import List, Optional

import pandas as pd
from tqdm import tqdm

from ..config.display_config import format_error_message, format_members, format_summary, get_emoji
from ..config.settings_config import setup_logging
from ..engine.alpha_engine import METHOD_CHOICES, AlphaCalculator
from ..engine.cross_check import verify_up_to
from ..errors import (
    BudgetExceededError,
    ConfigurationError,
    InvalidInputError,
    LemmaViolationError,
    PolynomialSyntaxError,
    PreconditionError,
    UnsupportedFamilyError,
    VerificationMismatchError,
)
from ..oracle.brute_force import image, n_set_oracle
from .poly_parser import PolySpec, parse_poly

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_MISMATCH = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected an integer >= 1, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--log-level", default=None, help="Logging level (default WARNING)")
    common.add_argument("--log-dir", default=None, help="Also write a timestamped log file here")
    common.add_argument("--quiet", action="store_true", help="No progress bars or status lines")
    common.add_argument("--seed", type=int, default=None, help="Accepted for compatibility; nothing is random")

    parser = _Parser(prog="diagonal-alpha", description="Image sets A_n and alpha(n) of polynomial congruences")
    commands = parser.add_subparsers(dest="command", parser_class=_Parser)
    commands.required = True

    alpha = commands.add_parser("alpha", parents=[common], help="alpha(n) = |A_n|")
    alpha.add_argument("--poly", required=True, help='Polynomial such as "x^2+y^2"')
    alpha.add_argument("--n", type=_positive_int, required=True)
    alpha.add_argument("--method", choices=METHOD_CHOICES, default="auto")
    alpha.add_argument("--verify", action="store_true", help="Recompute by a second method")
    alpha.add_argument("--json", action="store_true")

    image_set = commands.add_parser("set", parents=[common], help="The image set A_n")
    image_set.add_argument("--poly", required=True)
    image_set.add_argument("--n", type=_positive_int, required=True)
    image_set.add_argument("--format", choices=("json", "csv", "bits", "hex"), default="json")

    nset = commands.add_parser("nset", parents=[common], help="N-sets N_{p^r} for r = 2..L")
    nset.add_argument("--poly", required=True)
    nset.add_argument("--p", type=_positive_int, required=True)
    nset.add_argument("--max-level", type=_positive_int, required=True)
    nset.add_argument("--json", action="store_true")

    surjective = commands.add_parser("surjective", parents=[common], help="Is f onto Z_n?")
    surjective.add_argument("--poly", required=True)
    bounds = surjective.add_mutually_exclusive_group(required=True)
    bounds.add_argument("--n", type=_positive_int)
    bounds.add_argument("--max-n", type=_positive_int)
    surjective.add_argument("--verify", action="store_true")

    table = commands.add_parser("table", parents=[common], help="alpha(n) for n = 1..N")
    table.add_argument("--poly", required=True)
    table.add_argument("--max-n", type=_positive_int, required=True)
    table.add_argument("--out", default=None, help="Write to this path instead of stdout")
    table.add_argument("--bfile", action="store_true", help='Two-column "n alpha" text instead of CSV')

    verify = commands.add_parser("verify", parents=[common], help="Cross-check every method for n = 1..N")
    verify.add_argument("--poly", required=True)
    verify.add_argument("--max-n", type=_positive_int, required=True)

    return parser


def _status(args, message: str) -> None:
    if not args.quiet:
        print(message, file=sys.stderr)


def _show_progress(args) -> bool:
    return not args.quiet and sys.stderr.isatty()


def cmd_alpha(args, spec: PolySpec, calculator: AlphaCalculator) -> int:
    result = calculator.alpha(spec.parsed, args.n, method=args.method, verify=args.verify)
    if args.json:
        payload = {"poly": spec.render(), "n": args.n, "alpha": result.value, "method": result.method.value}
        if result.checked is not None:
            payload["checked"] = {"against": result.checked.against.value, "agree": result.checked.agree}
        print(json.dumps(payload))
    else:
        print(result.value)
        if result.checked is not None:
            _status(args, f"{get_emoji('ok')} {result.method.value} and {result.checked.against.value} agree")
    return EXIT_OK


def cmd_set(args, spec: PolySpec, calculator: AlphaCalculator) -> int:
    residues = image(spec.parsed, args.n)
    if args.format == "json":
        print(residues.to_json_string())
    elif args.format == "csv":
        print(",".join(str(a) for a in residues.members()))
    elif args.format == "hex":
        print(residues.to_hex())
    else:
        print("".join("1" if bit else "0" for bit in residues.bits))
    return EXIT_OK


def cmd_nset(args, spec: PolySpec, calculator: AlphaCalculator) -> int:
    levels = {r: n_set_oracle(spec.parsed, args.p, r).members() for r in range(2, args.max_level + 1)}
    if args.json:
        print(json.dumps({
            "poly": spec.render(),
            "p": args.p,
            "levels": {str(r): members for r, members in levels.items()},
        }))
    else:
        for r, members in levels.items():
            print(f"{r}: {format_members(members, limit=len(members))}")
    return EXIT_OK


def cmd_surjective(args, spec: PolySpec, calculator: AlphaCalculator) -> int:
    if args.n is not None:
        print("true" if calculator.is_surjective(spec.parsed, args.n, verify=args.verify) else "false")
        return EXIT_OK
    for n in tqdm(range(1, args.max_n + 1), desc="surjective", disable=not _show_progress(args)):
        if calculator.is_surjective(spec.parsed, n, verify=args.verify):
            print(n)
    return EXIT_OK


def cmd_table(args, spec: PolySpec, calculator: AlphaCalculator) -> int:
    rows = []
    for n in tqdm(range(1, args.max_n + 1), desc="table", disable=not _show_progress(args)):
        result = calculator.alpha(spec.parsed, n)
        rows.append({"n": n, "alpha": result.value, "method": result.method.value})
    df = pd.DataFrame(rows, columns=["n", "alpha", "method"])

    if args.bfile:
        text = "".join(f"{n} {value}\n" for n, value in zip(df["n"], df["alpha"]))
    else:
        text = df.to_csv(index=False, lineterminator="\n")

    if args.out:
        with open(args.out, "w", encoding="utf-8") as f:
            f.write(text)
        _status(args, f"{get_emoji('ok')} Wrote {len(df)} rows to {args.out}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_verify(args, spec: PolySpec, calculator: AlphaCalculator) -> int:
    report = verify_up_to(spec.parsed, args.max_n, calculator, show_progress=_show_progress(args))
    if report.ok:
        print(format_summary("verify_ok", max_n=args.max_n, checks=report.checks))
        return EXIT_OK
    print(format_summary("verify_failed", detail=report.first.describe()))
    return EXIT_MISMATCH


COMMANDS = {
    "alpha": cmd_alpha,
    "set": cmd_set,
    "nset": cmd_nset,
    "surjective": cmd_surjective,
    "table": cmd_table,
    "verify": cmd_verify,
}


def run(argv: Optional[List[str]] = None) -> int:
    """Parse argv, run one subcommand and return its exit status."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        print(format_error_message("usage", error=e), file=sys.stderr)
        print(parser.format_usage(), file=sys.stderr, end="")
        return EXIT_USAGE
    except SystemExit as e:
        # --help
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    try:
        setup_logging(args.log_level, args.log_dir)
        spec = parse_poly(args.poly)
        return COMMANDS[args.command](args, spec, AlphaCalculator())
    except PolynomialSyntaxError as e:
        print(format_error_message("syntax", source=args.poly, error=e), file=sys.stderr)
    except BudgetExceededError as e:
        print(format_error_message("budget", what=e.what, requested=e.requested, bound=e.bound), file=sys.stderr)
    except UnsupportedFamilyError as e:
        print(format_error_message("unsupported", error=e), file=sys.stderr)
    except PreconditionError as e:
        print(format_error_message("precondition", error=e), file=sys.stderr)
    except ConfigurationError as e:
        print(format_error_message("config", error=e), file=sys.stderr)
    except InvalidInputError as e:
        print(format_error_message("usage", error=e), file=sys.stderr)
    except VerificationMismatchError as e:
        first, second = e.first, e.second
        print(format_error_message(
            "mismatch",
            n=e.n,
            first_method=getattr(getattr(first, "method", None), "value", "rule"),
            first=getattr(first, "value", first),
            second_method=getattr(getattr(second, "method", None), "value", "oracle"),
            second=getattr(second, "value", second),
        ), file=sys.stderr)
        return EXIT_MISMATCH
    except LemmaViolationError as e:
        print(format_error_message("lemma", error=e), file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_USAGE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
