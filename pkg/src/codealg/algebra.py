"""The code algebra A_C(Lambda) and its hypothesis checkers.

Basis order: toral elements t_1..t_n at indices 0..n-1, then one codeword
element e^alpha per alpha in C* (canonical codeword order).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from . import gf2code as g
from .elements import Element, TableAlgebra
from .errors import DegenerateParams, MissingParam, NotACodeword
from .report import Report
from .scalar import ONE, Scalar, as_scalar, solve_theta, sqrt_in_field
from .errors import DegenerateRoots, FieldTooSmall


@dataclass(frozen=True, eq=False)
class StructureParams:
    """Regular structure parameters: global a, pairwise b, per-codeword c."""

    a: Scalar | None = None
    b_default: Scalar | None = None
    b_overrides: Mapping[frozenset, Scalar] = field(default_factory=dict)
    c_default: Scalar | None = None
    c_overrides: Mapping[int, Scalar] = field(default_factory=dict)
    d: int = 1

    @classmethod
    def make(cls, a=None, b=None, c=None, d=1, b_overrides=None, c_overrides=None):
        conv = lambda x: None if x is None else as_scalar(x)
        bo = {frozenset(k): as_scalar(v) for k, v in (b_overrides or {}).items()}
        co = {int(k): as_scalar(v) for k, v in (c_overrides or {}).items()}
        return cls(conv(a), conv(b), bo, conv(c), co, d)

    def b(self, alpha: int, beta: int) -> Scalar:
        v = self.b_overrides.get(frozenset((alpha, beta)), self.b_default)
        if v is None:
            raise MissingParam(f"no value for b between codewords {alpha} and {beta}")
        return v

    def c(self, alpha: int) -> Scalar:
        v = self.c_overrides.get(alpha, self.c_default)
        if v is None:
            raise MissingParam(f"no value for c at codeword {alpha}")
        return v

    def replace(self, **kw) -> StructureParams:
        fields = dict(
            a=self.a,
            b_default=self.b_default,
            b_overrides=dict(self.b_overrides),
            c_default=self.c_default,
            c_overrides=dict(self.c_overrides),
            d=self.d,
        )
        fields.update(kw)
        return StructureParams(**fields)


class CodeAlgebra(TableAlgebra):
    def __init__(self, code: g.Code, params: StructureParams, table, consulted):
        self.code = code
        self.params = params
        self.n = code.n
        self.words = code.star
        self.word_index = {w: code.n + k for k, w in enumerate(self.words)}
        self.dim = code.n + len(self.words)
        self._table = table
        self.consulted = consulted

    @property
    def a(self) -> Scalar:
        return self.params.a

    @property
    def d(self) -> int:
        return self.params.d

    def toral(self, i: int) -> Element:
        return Element.basis(i)

    def t(self, alpha: int) -> Element:
        """t_alpha = sum of t_i over supp(alpha)."""
        return Element({i: 1 for i in g.support(alpha, self.n)})

    def e(self, alpha: int, coeff=1) -> Element:
        try:
            return Element.basis(self.word_index[alpha], coeff)
        except KeyError:
            raise NotACodeword(f"{self.code.fmt(alpha)} is not in C*") from None

    def basis_name(self, i: int) -> str:
        if i < self.n:
            return f"t{i + 1}"
        return "e^" + self.code.fmt(self.words[i - self.n])

    def fmt(self, u: Element) -> str:
        if not u:
            return "0"
        parts = []
        for i, x in u.key:
            s = str(x)
            if s == "1":
                term = self.basis_name(i)
            elif s == "-1":
                term = "-" + self.basis_name(i)
            elif any(ch in s[1:] for ch in "+-") or "/" in s or "sqrt" in s:
                term = f"({s})*{self.basis_name(i)}"
            else:
                term = f"{s}*{self.basis_name(i)}"
            parts.append(term)
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"CodeAlgebra({self.code}, dim={self.dim})"


def build_algebra(code: g.Code, params: StructureParams, check_nondegenerate: bool = True) -> CodeAlgebra:
    """Assemble the multiplication table of A_C(Lambda)."""
    n = code.n
    if n < 2:
        raise ValueError("code length must be at least 2")
    if params.a is None:
        raise MissingParam("structure parameter a is missing")
    words = code.star
    for w in list(params.c_overrides) + [x for k in params.b_overrides for x in k]:
        if w not in words:
            raise NotACodeword(f"parameter override names {code.fmt(w)}, which is not in C*")
    idx = {w: n + k for k, w in enumerate(words)}
    dim = n + len(words)
    empty = Element()
    table = [[empty] * dim for _ in range(dim)]
    consulted = {"a": params.a, "b": {}, "c": {}}
    a = params.a
    for i in range(n):
        table[i][i] = Element.basis(i)
    for alpha in words:
        ia = idx[alpha]
        ea = Element.basis(ia, a)
        for i in g.support(alpha, n):
            table[i][ia] = table[ia][i] = ea
        c = params.c(alpha)
        consulted["c"][alpha] = c
        table[ia][ia] = Element({i: c for i in g.support(alpha, n)})
        comp = code.complement(alpha)
        for beta in words:
            if beta <= alpha or beta == comp:
                continue
            b = params.b(alpha, beta)
            consulted["b"][frozenset((alpha, beta))] = b
            table[ia][idx[beta]] = table[idx[beta]][ia] = Element.basis(idx[alpha ^ beta], b)
    if check_nondegenerate:
        if not a:
            raise DegenerateParams("a = 0")
        for alpha, c in consulted["c"].items():
            if not c:
                raise DegenerateParams(f"c = 0 at codeword {code.fmt(alpha)}")
        for pair, b in consulted["b"].items():
            if not b:
                x, y = sorted(pair)
                raise DegenerateParams(f"b = 0 for {code.fmt(x)}, {code.fmt(y)}")
    return CodeAlgebra(code, params, table, consulted)


def multiply(A: CodeAlgebra, u: Element, v: Element) -> Element:
    return A.mul(u, v)


# ---------------------------------------------------------------------------
# hypothesis checks


def _check_subset(A: CodeAlgebra, S: Iterable[int]) -> list[int]:
    S = list(S)
    for alpha in S:
        if alpha not in A.word_index:
            raise NotACodeword(f"{A.code.fmt(alpha)} is not in C*")
    return S


def check_regularity(A: CodeAlgebra, S: Iterable[int]) -> Report:
    """S-intersection regularity of the parameters, with witnesses."""
    S = _check_subset(A, S)
    code = A.code
    fmt = code.fmt
    rep = Report("S-intersection regularity")
    classes = {alpha: g.partition_classes(code, alpha) for alpha in S}
    bad = None
    for x in S:
        for y in S:
            if set(classes[x]) != set(classes[y]):
                bad = (x, y)
                break
        if bad:
            break
    if bad:
        x, y = bad
        rep.add(
            "P_alpha equal across S",
            False,
            f"P({fmt(x)}) = {sorted(classes[x])} but P({fmt(y)}) = {sorted(classes[y])}",
        )
    else:
        rep.add("P_alpha equal across S", True, "vacuous" if len(S) < 2 else "")

    def constant_clause(name, which):
        seen: dict = {}
        for alpha in S:
            left = which(alpha)
            if left is None:
                continue
            for p, betas in classes[alpha].items():
                for beta in betas:
                    val = A.params.b(left, beta)
                    if p not in seen:
                        seen[p] = (val, left, beta)
                    elif seen[p][0] != val:
                        v0, l0, b0 = seen[p]
                        rep.add(
                            name,
                            False,
                            f"p={p}: b({fmt(l0)},{fmt(b0)}) = {v0} but b({fmt(left)},{fmt(beta)}) = {val}",
                        )
                        return
        rep.add(name, True)

    constant_clause("b constant on weight-partition classes", lambda alpha: alpha)
    if code.has_ones:
        constant_clause("b constant on classes (complement variant)", code.complement)
    else:
        rep.add("b constant on classes (complement variant)", True, "1 not in C")
    rep.add("a global", True, "collapsed storage")
    rep.add("c constant on each support", True, "collapsed storage")
    return rep


def idempotent_constants(A: CodeAlgebra, alpha: int):
    """(lambda, mu) for the small idempotents at alpha; mu is None when absent."""
    w = g.weight(alpha)
    lam = ONE / (A.a * (2 * w))
    mu_sq = (lam - lam * lam) / A.params.c(alpha)
    return lam, sqrt_in_field(mu_sq, A.d)


def xi_value(A: CodeAlgebra, alpha: int, beta: int, mu: Scalar) -> Scalar:
    """xi_beta = lambda a (|alpha| - 2|alpha & beta|) / (2 mu b_{alpha,beta})."""
    w = g.weight(alpha)
    lam = ONE / (A.a * (2 * w))
    k = g.weight(alpha & beta)
    return lam * A.a * (w - 2 * k) / (mu * A.params.b(alpha, beta) * 2)


def check_axis_hypothesis(A: CodeAlgebra, S: Iterable[int]) -> Report:
    S = _check_subset(A, S)
    code = A.code
    fmt = code.fmt
    rep = Report("Axis Hypothesis")
    reg = check_regularity(A, S)
    rep.add("S-intersection regular", reg.ok, "; ".join(f"{c.name}: {c.detail}" for c in reg.failures()))
    rep.add("characteristic", True, "characteristic 0: char != 2 and char does not divide |alpha|")

    mus = {}
    mu_bad = []
    lam_vals = {}
    for alpha in S:
        lam, mu = idempotent_constants(A, alpha)
        lam_vals[alpha] = lam
        if mu is None:
            mu_bad.append(alpha)
        else:
            mus[alpha] = mu

    xi_bad = []
    theta_bad = []
    for alpha, mu in mus.items():
        if not mu:
            continue
        for betas in g.partition_classes(code, alpha).values():
            for beta in betas:
                xi = xi_value(A, alpha, beta, mu)
                try:
                    solve_theta(xi, A.d)
                except DegenerateRoots:
                    xi_bad.append((alpha, beta, xi))
                except FieldTooSmall:
                    theta_bad.append((alpha, beta, xi))
    detail = ""
    if xi_bad:
        alpha, beta, xi = xi_bad[0]
        detail = f"xi = {xi} at alpha={fmt(alpha)}, beta={fmt(beta)}"
    elif mu_bad:
        detail = "not evaluated where mu is absent"
    rep.add("xi^2 != -1", not xi_bad, detail)

    bad_half = [x for x in S if A.a == Fraction(1, 2 * g.weight(x))]
    rep.add(
        "a != 1/(2|alpha|)",
        not bad_half,
        f"a = {A.a} gives lambda = 1, mu = 0 at {fmt(bad_half[0])}" if bad_half else "",
    )
    bad_third = [x for x in S if A.a == Fraction(1, 3 * g.weight(x))]
    rep.add(
        "a != 1/(3|alpha|)",
        not bad_third,
        f"a = {A.a}: adjoint not semisimple at {fmt(bad_third[0])}" if bad_third else "",
    )
    rep.add(
        "mu in field",
        not mu_bad,
        f"FieldTooSmall: (lambda - lambda^2)/c has no root in Q(sqrt({A.d})) at {fmt(mu_bad[0])}"
        if mu_bad
        else "",
    )
    rep.add(
        "theta roots in field",
        not theta_bad,
        f"FieldTooSmall: xi^2 + 1 = {theta_bad[0][2] ** 2 + 1} has no root in Q(sqrt({A.d}))"
        if theta_bad
        else "",
    )
    for alpha in S:
        rep.values[f"lambda[{fmt(alpha)}]"] = lam_vals[alpha]
        rep.values[f"mu[{fmt(alpha)}]"] = mus.get(alpha, "absent")
    return rep
