"""Command line entry point: ``frobtrace run``, ``frobtrace verify`` and ``frobtrace list``."""

from __future__ import annotations

import argparse
import sys

from .errors import FrobtraceError
from .session import Options, Session, SessionError, exit_code_for


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="frobtrace", description="Exact prime-characteristic algebra sessions.")
    parser.add_argument("--p", type=int, help="characteristic of the default ring")
    parser.add_argument("--vars", help="comma separated variables of the default ring")
    parser.add_argument("--order", choices=("lex", "grevlex"), default="grevlex")
    parser.add_argument("--max-e", type=int, help="largest Frobenius level searched")
    parser.add_argument("--step-cap", type=int, help="Buchberger reduction step cap")
    parser.add_argument("--json", action="store_true", help="emit one JSON object per output")
    parser.add_argument("--seed", type=int, default=0, help="seed for randomized factor splitting")
    sub = parser.add_subparsers(dest="command")
    run = sub.add_parser("run", help="run a session script (default: stdin)")
    run.add_argument("script", nargs="?", help="script file, or '-' for stdin")
    run.add_argument("-c", dest="code", help="script text given inline")
    verify = sub.add_parser("verify", help="run the bundled example corpus")
    verify.add_argument("id", nargs="?", default="all")
    sub.add_parser("list", help="list the bundled examples")
    return parser


def _options(args: argparse.Namespace) -> Options:
    return Options(
        p=args.p,
        vars=args.vars,
        order=args.order,
        max_e=args.max_e,
        step_cap=args.step_cap,
        json=args.json,
        seed=args.seed,
    )


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    command = args.command or "run"
    if command == "list":
        from .fixtures import fixture_ids

        for fid in fixture_ids():
            print(fid)
        return 0
    if command == "verify":
        script = f"verify {args.id}"
    elif getattr(args, "code", None) is not None:
        script = args.code
    elif getattr(args, "script", None) not in (None, "-"):
        try:
            with open(args.script, encoding="utf-8") as fh:
                script = fh.read()
        except OSError as exc:
            print(f"frobtrace: {exc}", file=sys.stderr)
            return 1
    else:
        script = sys.stdin.read()
    try:
        session = Session(_options(args))
    except FrobtraceError as exc:
        print(f"frobtrace: {exc}", file=sys.stderr)
        return exit_code_for(exc)
    try:
        session.run(script)
    except SessionError as exc:
        sys.stdout.write(session.transcript())
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    sys.stdout.write(session.transcript())
    return 0


if __name__ == "__main__":
    sys.exit(main())
