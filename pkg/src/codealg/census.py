"""Small-code census: enumerate projective codes and parameters, classify, tabulate."""

from __future__ import annotations

import itertools
from collections import Counter, defaultdict
from dataclasses import dataclass

from . import gf2code as g
from .algebra import StructureParams, build_algebra, check_axis_hypothesis
from .errors import ClosureBudgetExceeded, CodeAlgebraError
from .scalar import parse_scalar

DEFAULT_A = ("-1", "1/8", "1/4")
DEFAULT_B = ("1/4", "-1/2")
DEFAULT_C = ("-2", "-3/4", "1/4")
SURDS = (1, 2, 3, 5, 6, 7, -1, -2, -3)


def projective_codes(max_n: int = 8, max_k: int = 3) -> list[g.Code]:
    """Projective codes (no zero or repeated columns) up to permutation equivalence."""
    out = []
    for k in range(1, max_k + 1):
        points = list(range(1, 1 << k))
        for n in range(max(2, k), min(max_n, len(points)) + 1):
            found: list[g.Code] = []
            for cols in itertools.combinations(points, n):
                if g.gf2_rank(cols) != k:
                    continue
                rows = []
                for r in range(k):
                    w = 0
                    for i, col in enumerate(cols):
                        if col >> (k - 1 - r) & 1:
                            w |= g.bit(i, n)
                    rows.append(w)
                code = g.span(rows, n)
                if any(g.permutation_equivalent(code, c) is not None for c in found):
                    continue
                found.append(code)
            out += found
    return out


def candidate_subsets(code: g.Code) -> list[list[int]]:
    """For each weight, the codewords of C* of that weight, when they generate C."""
    by_w = defaultdict(list)
    for w in code.star:
        by_w[g.weight(w)].append(w)
    out = []
    for wt in sorted(by_w):
        S = sorted(by_w[wt], reverse=True)
        if g.gf2_rank(S) == code.rank:
            out.append(S)
    return out


def _first_field(code, a, b, c, S):
    """Smallest surd from SURDS making the Axis Hypothesis hold, with its algebra."""
    last = None
    for d in SURDS:
        try:
            A = build_algebra(code, StructureParams.make(a=a, b=b, c=c, d=d))
        except CodeAlgebraError:
            return None, None
        rep = check_axis_hypothesis(A, S)
        if rep.ok:
            return A, rep
        field_clauses = {"mu in field", "theta roots in field"}
        if {x.name for x in rep.failures()} - field_clauses:
            return None, rep
        last = rep
    return None, last


@dataclass
class CensusRow:
    code: g.Code
    S: list
    a: object
    b: object
    c: object
    d: int | None
    case: str
    order: int | None
    note: str = ""

    def line(self) -> str:
        wt = g.weight(self.S[0])
        d = "-" if self.d is None else str(self.d)
        order = "-" if self.order is None else str(self.order)
        return (
            f"{self.code.n:>2} {self.code.rank} {str(self.code):<28} |S|={len(self.S):<2} wt={wt} "
            f"a={self.a!s:<5} b={self.b!s:<5} c={self.c!s:<5} d={d:<3} {self.case:<12} {order}"
            + (f"  {self.note}" if self.note else "")
        )


def run_census(max_n=8, max_k=3, a_grid=DEFAULT_A, b_grid=DEFAULT_B, c_grid=DEFAULT_C, cap=10**5):
    from .session import z2_group

    rows = []
    codes = projective_codes(max_n, max_k)
    for code in codes:
        for S in candidate_subsets(code):
            for a, b, c in itertools.product(a_grid, b_grid, c_grid):
                a_, b_, c_ = (parse_scalar(x) for x in (a, b, c))
                A, rep = _first_field(code, a_, b_, c_, S)
                if A is None:
                    bad = rep.failures()[0].name if rep is not None else "degenerate"
                    rows.append(CensusRow(code, S, a_, b_, c_, None, "rejected", None, bad))
                    continue
                try:
                    res = z2_group(A, S, cap)
                    rows.append(CensusRow(code, S, a_, b_, c_, A.d, _case(res.case), res.order))
                except ClosureBudgetExceeded:
                    rows.append(CensusRow(code, S, a_, b_, c_, A.d, "graded", None, "closure cap"))
                except CodeAlgebraError as exc:
                    rows.append(CensusRow(code, S, a_, b_, c_, A.d, "not graded", None, f"{type(exc).__name__}: {exc}"))
    return codes, rows


def _case(summary: str) -> str:
    return summary.split(",")[0] if summary.startswith("case") else summary


def census_lines(max_n=8, max_k=3, a_grid=DEFAULT_A, b_grid=DEFAULT_B, c_grid=DEFAULT_C, cap=10**5):
    codes, rows = run_census(max_n, max_k, a_grid, b_grid, c_grid, cap)
    out = [
        f"census: n <= {max_n}, k <= {max_k}, a in {{{', '.join(a_grid)}}}, "
        f"b in {{{', '.join(b_grid)}}}, c in {{{', '.join(c_grid)}}}",
        f"projective codes up to equivalence: {len(codes)}",
    ]
    out += ["  " + str(c) for c in codes]
    out.append("instances:")
    out += ["  " + r.line() for r in rows]
    tally = Counter(r.case for r in rows)
    orders = defaultdict(set)
    for r in rows:
        if r.order is not None:
            orders[r.case].add(r.order)
    out.append("summary:")
    for case in sorted(tally):
        extra = f", group orders {sorted(orders[case])}" if orders[case] else ""
        out.append(f"  {case}: {tally[case]} instances{extra}")
    hits = [r for r in rows if r.case == "case (3)"]
    out.append(f"case (3) instances found: {len(hits)}")
    out += ["  " + r.line() for r in hits]
    return out, rows
