"""Text formats for codes, structure parameters and axis subsets."""

from __future__ import annotations

import re
from pathlib import Path

from . import gf2code as g
from .algebra import StructureParams
from .errors import ParseError
from .scalar import Scalar, is_squarefree, parse_scalar

_KEY = re.compile(r"^(a|b|c|d)((?:\s+[01]+)*)$")


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line


def parse_code(text: str, path=None) -> g.Code:
    """Line 1 "n k", then k generator rows of n bits."""
    rows = list(_lines(text))
    if not rows:
        raise ParseError("empty code file", path)
    no, head = rows[0]
    parts = head.split()
    if len(parts) != 2 or not all(p.isdigit() for p in parts):
        raise ParseError(f"expected 'n k', got {head!r}", path, no)
    n, k = map(int, parts)
    if n < 2:
        raise ParseError(f"code length {n} is below 2", path, no)
    body = rows[1:]
    if len(body) != k:
        where = body[k][0] if len(body) > k else (body[-1][0] if body else no)
        raise ParseError(f"expected {k} generator rows, found {len(body)}", path, where)
    gens = []
    for no, row in body:
        if len(row) != n or set(row) - {"0", "1"}:
            raise ParseError(f"bad generator row {row!r} (need {n} characters from 0/1)", path, no)
        gens.append(int(row, 2))
    if g.gf2_rank(gens) != k:
        raise ParseError("generator rows are linearly dependent", path, body[-1][0])
    return g.span(gens, n)


def format_code(code: g.Code) -> str:
    lines = [f"{code.n} {code.rank}"]
    lines += [code.fmt(w) for w in code.generators]
    return "\n".join(lines) + "\n"


def parse_params(text: str, path=None, n: int | None = None) -> StructureParams:
    """Parse `key = value` lines; entries may also be separated by ',' or ';'."""
    seen: dict[tuple, int] = {}
    raw: dict[tuple, Scalar | int] = {}
    for no, line in _lines(text):
        for entry in re.split(r"[;,]", line):
            entry = entry.strip()
            if not entry:
                continue
            if entry.count("=") != 1:
                raise ParseError(f"expected 'key = value', got {entry!r}", path, no)
            lhs, rhs = (s.strip() for s in entry.split("="))
            m = _KEY.match(lhs)
            if not m:
                raise ParseError(f"unknown key {lhs!r}", path, no)
            name, words = m.group(1), tuple(m.group(2).split())
            arity = {"a": 0, "d": 0, "c": (0, 1), "b": (0, 2)}[name]
            if len(words) not in (arity if isinstance(arity, tuple) else (arity,)):
                raise ParseError(f"key {lhs!r} takes the wrong number of codewords", path, no)
            if n is not None and any(len(w) != n for w in words):
                raise ParseError(f"codeword in {lhs!r} does not have length {n}", path, no)
            ints = tuple(int(w, 2) for w in words)
            key = (name, frozenset(ints) if name == "b" else ints)
            if name == "b" and len(words) == 2 and ints[0] == ints[1]:
                raise ParseError("b override needs two distinct codewords", path, no)
            if key in seen:
                raise ParseError(f"duplicate key {lhs!r} (first on line {seen[key]})", path, no)
            seen[key] = no
            if name == "d":
                try:
                    d = int(rhs)
                except ValueError:
                    raise ParseError(f"d must be an integer, got {rhs!r}", path, no) from None
                if not is_squarefree(d):
                    raise ParseError(f"d = {d} is not a squarefree integer", path, no)
                raw[key] = d
            else:
                try:
                    raw[key] = parse_scalar(rhs)
                except (ValueError, ArithmeticError) as exc:
                    raise ParseError(f"bad value for {lhs!r}: {exc}", path, no) from None
    d = raw.pop(("d", ()), 1)
    for key, val in raw.items():
        if val.d not in (1, d):
            raise ParseError(f"{key[0]} = {val} lies outside Q(sqrt({d}))", path, seen[key])
    b_over = {k[1]: v for k, v in raw.items() if k[0] == "b" and k[1]}
    c_over = {k[1][0]: v for k, v in raw.items() if k[0] == "c" and k[1]}
    return StructureParams.make(
        a=raw.get(("a", ())),
        b=raw.get(("b", frozenset())),
        c=raw.get(("c", ())),
        d=d,
        b_overrides=b_over,
        c_overrides=c_over,
    )


def format_params(params: StructureParams, n: int) -> str:
    fmt = lambda w: g.word_str(w, n)
    lines = [f"d = {params.d}"]
    for name, val in (("a", params.a), ("b", params.b_default), ("c", params.c_default)):
        if val is not None:
            lines.append(f"{name} = {val}")
    for w, v in sorted(params.c_overrides.items()):
        lines.append(f"c {fmt(w)} = {v}")
    for pair, v in sorted(params.b_overrides.items(), key=lambda kv: sorted(kv[0])):
        x, y = sorted(pair)
        lines.append(f"b {fmt(x)} {fmt(y)} = {v}")
    return "\n".join(lines) + "\n"


def parse_subset(text: str | None, code: g.Code) -> list[int]:
    """Comma-separated codewords ("110,101") or generator-row indices ("0,1")."""
    if text is None or not text.strip():
        return list(code.generators)
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if len(tok) == code.n and not set(tok) - {"0", "1"}:
            w = int(tok, 2)
        elif tok.isdigit() and int(tok) < len(code.generators):
            w = code.generators[int(tok)]
        else:
            raise ParseError(f"S entry {tok!r} is neither a codeword of length {code.n} nor a generator index")
        if w not in code or w == 0 or w == code.ones:
            raise ParseError(f"S entry {tok!r} is not in C*")
        if w not in out:
            out.append(w)
    return out


def read_inputs(code_path, params_path):
    code_path = Path(code_path)
    params_path = Path(params_path)
    code = parse_code(code_path.read_text(), code_path)
    params = parse_params(params_path.read_text(), params_path, code.n)
    return code, params
