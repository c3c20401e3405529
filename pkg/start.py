"""Single entry point: runs one verification command and prints its report.

Exit codes: 0 all checks passed, 1 a verification failed, 2 usage error.
"""

import argparse
import asyncio
import logging
import sys
from fractions import Fraction

from src.config import settings
from src.structure import PreconditionError
from src.suites import Command, OutputFormat, RunConfig, UsageError, dispatch

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


def setup_logging() -> None:
    logging.basicConfig(
        level=getattr(logging, settings.log_level, logging.INFO),
        format="%(asctime)s [%(levelname)s] %(name)s: %(message)s",
        datefmt="%H:%M:%S",
        stream=sys.stderr,
    )


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a rational number, got {text!r}") from None


def _fraction_list(text: str) -> tuple[Fraction, ...]:
    values = tuple(_fraction(x) for x in text.split(",") if x.strip())
    if not values:
        raise argparse.ArgumentTypeError("--t needs at least one value")
    return values


class _ArgumentParser(argparse.ArgumentParser):
    """argparse exits with status 2 on bad flags; keep it but let run() catch it."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="qfock", description="Exact checks for q(n+1) Fock modules.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--format", choices=[f.value for f in OutputFormat], default=OutputFormat.TEXT.value)

    algebra = sub.add_parser(Command.CHECK_ALGEBRA.value, help="bracket axioms and CAO relations")
    algebra.add_argument("--n", type=int, default=1)
    algebra.add_argument("--inject-sign-fault", action="store_true", help=argparse.SUPPRESS)
    common(algebra)

    report = sub.add_parser(Command.REPORT.value, help="structure of V_p")
    report.add_argument("--n", type=int, default=1)
    report.add_argument("--p", type=int, default=1)
    report.add_argument("--level-cap", type=int, default=None)
    report.add_argument("--weight", type=_int_list, default=None, metavar="a,b,...")
    common(report)

    lemma3 = sub.add_parser(Command.LEMMA3.value, help="the binary-label matrix A(s; t)")
    lemma3.add_argument("--r", type=int, default=2)
    lemma3.add_argument("--s", type=_fraction, default=None)
    lemma3.add_argument("--t", type=_fraction_list, default=None, metavar="t1,t2,...")
    lemma3.add_argument("--samples", type=int, default=settings.numeric.samples)
    lemma3.add_argument("--seed", type=int, default=settings.numeric.seed)
    common(lemma3)

    q2 = sub.add_parser(Command.Q2.value, help="the q(2) case")
    q2.add_argument("--p", type=int, default=1)
    common(q2)

    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    command = Command(args.command)
    cfg = RunConfig(command=command, format=OutputFormat(args.format))
    for name in ("n", "p", "level_cap", "weight", "r", "s", "t", "samples", "seed"):
        if hasattr(args, name):
            setattr(cfg, name, getattr(args, name))
    cfg.sign_fault = getattr(args, "inject_sign_fault", False)
    return cfg


def run(argv: list[str] | None = None) -> int:
    """Parse argv, run the command, print the report; returns the exit code."""
    logger = logging.getLogger(__name__)
    try:
        cfg = config_from_args(build_parser().parse_args(argv))
        report = asyncio.run(dispatch(cfg))
    except (UsageError, PreconditionError) as e:
        print(f"qfock: error: {e}", file=sys.stderr)
        return EXIT_USAGE

    if cfg.format is OutputFormat.JSON:
        print(report.model_dump_json(indent=2))
    else:
        print(report.to_text())

    if not report.passed:
        first = getattr(report, "first_violation", lambda: None)()
        if first is not None:
            logger.error("first violation: %s", first.to_text())
        return EXIT_FAILED
    return EXIT_OK


def main() -> None:
    setup_logging()
    try:
        sys.exit(run())
    except KeyboardInterrupt:
        logging.getLogger(__name__).info("Interrupted by user")
        sys.exit(130)


if __name__ == "__main__":
    main()
