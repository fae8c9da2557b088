"""codealg command line.

Exit status: 0 on success, 1 when a check fails, 2 on input errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import session
from .algebra import build_algebra
from .errors import (
    CodeAlgebraError,
    DegenerateParams,
    HypothesisViolated,
    LengthMismatch,
    MissingParam,
    NotACodeword,
    ParseError,
)
from .formats import parse_subset, read_inputs
from .miyamoto import DEFAULT_CAP

INPUT_ERRORS = (ParseError, MissingParam, NotACodeword, LengthMismatch, DegenerateParams, OSError)

COMMANDS = ("check", "axes", "fusion", "grade", "group", "strip", "recover", "census")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="codealg", description="Exact computations in code algebras.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--code", help="code file: 'n k' then k generator rows")
    p.add_argument("--params", help="structure parameter file")
    p.add_argument("--S", dest="S", help='codewords "110,101" or generator indices "0,1"')
    p.add_argument("--closure-cap", type=int, default=DEFAULT_CAP)
    p.add_argument("--grading", choices=("auto", "z2", "z2z2"), default="auto")
    p.add_argument("--dump", help="black-box dump file (recover)")
    p.add_argument("--seed", type=int, default=0, help="basis shuffle seed (strip)")
    p.add_argument("--mix", action="store_true", help="dense change of basis (strip)")
    p.add_argument("--max-n", type=int, default=8)
    p.add_argument("--max-k", type=int, default=3)
    p.add_argument("--a-grid", default=",".join(_census().DEFAULT_A))
    p.add_argument("--b-grid", default=",".join(_census().DEFAULT_B))
    p.add_argument("--c-grid", default=",".join(_census().DEFAULT_C))
    p.add_argument("--out", help="write the report here instead of stdout")
    return p


def _census():
    from . import census

    return census


def _session(args):
    if not args.code or not args.params:
        raise ParseError("--code and --params are required")
    code, params = read_inputs(args.code, args.params)
    A = build_algebra(code, params)
    S = parse_subset(args.S, code)
    return A, S


def run(args) -> tuple[list[str], int]:
    cmd = args.command
    if cmd == "census":
        split = lambda s: tuple(x.strip() for x in s.split(",") if x.strip())
        lines, _ = _census().census_lines(
            args.max_n, args.max_k, split(args.a_grid), split(args.b_grid), split(args.c_grid), args.closure_cap
        )
        return lines, 0
    if cmd == "recover":
        from .formats import parse_code
        from .recovery import load_dump

        if not args.dump:
            raise ParseError("--dump is required")
        B = load_dump(Path(args.dump).read_text(), args.dump)
        ref = parse_code(Path(args.code).read_text(), args.code) if args.code else None
        lines, ok = session.recover_lines(B, ref)
        return lines, 0 if ok else 1
    A, S = _session(args)
    if cmd == "check":
        lines, ok = session.hypothesis_lines(A, S)
    elif cmd == "axes":
        lines, ok = session.axes_lines(A, S)
    elif cmd == "fusion":
        lines, ok = session.fusion_lines(A, S)
    elif cmd == "grade":
        lines, ok = session.grade_lines(A, S)
    elif cmd == "group":
        lines, ok = session.group_lines(A, S, args.closure_cap, args.grading)
    else:
        from .recovery import dump, strip

        B = strip(A, [ax.element for ax in session._require_axes(A, S)], args.seed, args.mix)
        return dump(B).splitlines(), 0
    return lines, 0 if ok else 1


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        lines, status = run(args)
    except INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except HypothesisViolated as exc:
        lines = [f"check failed: {exc}"]
        if exc.report is not None:
            lines += exc.report.lines()
        status = 1
    except CodeAlgebraError as exc:
        lines = [f"failed: {type(exc).__name__}: {exc}"]
        status = 1
    text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
