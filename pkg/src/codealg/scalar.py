"""Exact arithmetic in Q and in a single quadratic extension Q(sqrt d).

A :class:`Scalar` is stored as ``(p + q*sqrt(d)) / r`` with integers
``p, q, r``, ``r > 0`` and ``gcd(p, q, r) = 1``.  Pure rationals always carry
``d = 1`` so that equality and hashing do not depend on the field they were
produced in.  Mixing two irrational scalars over different ``d`` raises
:class:`FieldTooSmall`: only one surd is ever available.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import DegenerateRoots, DivisionByZero, FieldTooSmall


def squarefree_split(k: int) -> tuple[int, int]:
    """Return ``(s, d)`` with ``k = s*s*d`` and ``d`` square-free (sign kept in d)."""
    if k == 0:
        return 0, 0
    sign = -1 if k < 0 else 1
    k = abs(k)
    s = 1
    f = 2
    while f * f <= k:
        while k % (f * f) == 0:
            k //= f * f
            s *= f
        f += 1
    return s, sign * k


def is_squarefree(d: int) -> bool:
    return d != 0 and squarefree_split(d)[1] == d


class Scalar:
    __slots__ = ("_p", "_q", "_r", "_d", "_hash")

    def __init__(self, rational=0, surd=0, d: int = 1):
        if isinstance(rational, Scalar):
            if surd:
                raise TypeError("cannot combine a Scalar rational part with a surd part")
            self._set(rational._p, rational._q, rational._r, rational._d)
            return
        a = Fraction(rational)
        b = Fraction(surd)
        if b and not is_squarefree(d):
            raise ValueError(f"d must be a square-free integer, got {d}")
        r = a.denominator * b.denominator // math.gcd(a.denominator, b.denominator)
        self._set(a.numerator * (r // a.denominator), b.numerator * (r // b.denominator), r, d)

    def _set(self, p, q, r, d):
        if d == 1:
            p, q = p + q, 0
        if r < 0:
            p, q, r = -p, -q, -r
        g = math.gcd(p, q, r)
        if g != 1:
            p //= g
            q //= g
            r //= g
        if q == 0:
            d = 1
        self._p = p
        self._q = q
        self._r = r
        self._d = d
        self._hash = None

    @classmethod
    def _raw(cls, p, q, r, d):
        s = cls.__new__(cls)
        s._set(p, q, r, d)
        return s

    # -- accessors -----------------------------------------------------

    @property
    def rational_part(self) -> Fraction:
        return Fraction(self._p, self._r)

    @property
    def surd_part(self) -> Fraction:
        return Fraction(self._q, self._r)

    @property
    def d(self) -> int:
        return self._d

    def is_rational(self) -> bool:
        return self._q == 0

    def conjugate(self) -> Scalar:
        return Scalar._raw(self._p, -self._q, self._r, self._d)

    def norm(self) -> Fraction:
        """Field norm x * conj(x), a rational."""
        return Fraction(self._p * self._p - self._d * self._q * self._q, self._r * self._r)

    # -- arithmetic ----------------------------------------------------

    def _common_d(self, other: Scalar) -> int:
        if self._q == 0:
            return other._d
        if other._q == 0 or other._d == self._d:
            return self._d
        raise FieldTooSmall(
            f"scalars over sqrt({self._d}) and sqrt({other._d}) need two independent surds"
        )

    def __add__(self, other):
        if isinstance(other, int):
            return Scalar._raw(self._p + other * self._r, self._q, self._r, self._d)
        other = as_scalar(other)
        d = self._common_d(other)
        r1, r2 = self._r, other._r
        if r1 == r2:
            return Scalar._raw(self._p + other._p, self._q + other._q, r1, d)
        return Scalar._raw(self._p * r2 + other._p * r1, self._q * r2 + other._q * r1, r1 * r2, d)

    __radd__ = __add__

    def __neg__(self):
        return Scalar._raw(-self._p, -self._q, self._r, self._d)

    def __sub__(self, other):
        return self + (-as_scalar(other))

    def __rsub__(self, other):
        return as_scalar(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            return Scalar._raw(self._p * other, self._q * other, self._r, self._d)
        other = as_scalar(other)
        if self._q == 0 and other._q == 0:
            return Scalar._raw(self._p * other._p, 0, self._r * other._r, 1)
        d = self._common_d(other)
        p1, q1, p2, q2 = self._p, self._q, other._p, other._q
        return Scalar._raw(p1 * p2 + d * q1 * q2, p1 * q2 + q1 * p2, self._r * other._r, d)

    __rmul__ = __mul__

    def inverse(self) -> Scalar:
        if self._p == 0 and self._q == 0:
            raise DivisionByZero("division by zero scalar")
        n = self._p * self._p - self._d * self._q * self._q
        return Scalar._raw(self._r * self._p, -self._r * self._q, n, self._d)

    def __truediv__(self, other):
        return self * as_scalar(other).inverse()

    def __rtruediv__(self, other):
        return as_scalar(other) * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else self.inverse()
        result = ONE
        for _ in range(abs(k)):
            result = result * base
        return result

    # -- comparison, hashing -------------------------------------------

    def __bool__(self):
        return self._p != 0 or self._q != 0

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return (self._p, self._q, self._r, self._d) == (other._p, other._q, other._r, other._d)
        if isinstance(other, (int, Fraction)):
            return self._q == 0 and Fraction(self._p, self._r) == other
        if isinstance(other, str):
            return self == parse_scalar(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self._q == 0:
                self._hash = hash(Fraction(self._p, self._r))
            else:
                self._hash = hash((self._p, self._q, self._r, self._d))
        return self._hash

    def sort_key(self):
        return (self._q != 0, Fraction(self._p, self._r), Fraction(self._q, self._r), self._d)

    # -- text ------------------------------------------------------------

    def __str__(self):
        a = Fraction(self._p, self._r)
        if self._q == 0:
            return str(a)
        b = Fraction(self._q, self._r)
        mag = abs(b)
        surd = f"sqrt({self._d})" if mag == 1 else f"{mag}*sqrt({self._d})"
        if a == 0:
            return surd if b > 0 else "-" + surd
        return f"{a}{'+' if b > 0 else '-'}{surd}"

    def __repr__(self):
        return f"Scalar('{self}')"


ZERO = Scalar(0)
ONE = Scalar(1)
HALF = Scalar(Fraction(1, 2))


def as_scalar(x) -> Scalar:
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Fraction)):
        return Scalar(x)
    if isinstance(x, str):
        return parse_scalar(x)
    raise TypeError(f"cannot interpret {x!r} as a Scalar")


def surd(d: int) -> Scalar:
    """The element sqrt(d)."""
    s, core = squarefree_split(d)
    if core == 1:
        return Scalar(s)
    return Scalar(0, s, core)


_TERM = re.compile(r"([+-]?)(?:(\d+(?:/\d+)?)(?:\*sqrt\((-?\d+)\))?|sqrt\((-?\d+)\))")


def parse_scalar(text: str) -> Scalar:
    """Parse ``p/q``, ``p/q+r/s*sqrt(d)``, ``-sqrt(2)`` and integer shorthand."""
    s = re.sub(r"\s*([+\-*/()])\s*", r"\1", text.strip())
    if not s:
        raise ValueError("empty scalar")
    if any(ch.isspace() for ch in s):
        raise ValueError(f"malformed scalar {text!r}")
    pos = 0
    total = ZERO
    first = True
    for m in _TERM.finditer(s):
        if m.start() != pos or (not first and not m.group(1)):
            raise ValueError(f"malformed scalar {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        coeff, radicand = m.group(2), m.group(3) or m.group(4)
        value = Scalar(Fraction(coeff)) if coeff else ONE
        if radicand is not None:
            value = value * surd(int(radicand))
        total = total + value * sign
        pos = m.end()
        first = False
    if pos != len(s):
        raise ValueError(f"malformed scalar {text!r}")
    return total


def _rational_sqrt(x: Fraction):
    if x < 0:
        return None
    if x == 0:
        return Fraction(0)
    n, m = x.numerator, x.denominator
    rn, rm = math.isqrt(n), math.isqrt(m)
    if rn * rn == n and rm * rm == m:
        return Fraction(rn, rm)
    return None


def _canonical_root(a: Fraction, b: Fraction, d: int) -> Scalar:
    if a < 0 or (a == 0 and b < 0):
        a, b = -a, -b
    if d == 1 or b == 0:
        return Scalar(a + (b if d == 1 else 0))
    return Scalar(a, b, d)


def sqrt_in_field(x, d: int | None = None) -> Scalar | None:
    """Square root of ``x`` in Q(sqrt d), or None when there is none.

    The root with nonnegative rational part is returned; when that part is
    zero, the one with nonnegative surd coefficient.
    """
    x = as_scalar(x)
    if d is None:
        d = x.d
    if not x.is_rational() and x.d != d:
        raise FieldTooSmall(f"{x} does not lie in Q(sqrt({d}))")
    if d != 1 and not is_squarefree(d):
        raise ValueError(f"d must be square-free, got {d}")
    u, v = x.rational_part, x.surd_part
    if v == 0:
        a = _rational_sqrt(u)
        if a is not None:
            return _canonical_root(a, Fraction(0), d)
        if d == 1:
            return None
        b = _rational_sqrt(u / d)
        if b is not None:
            return _canonical_root(Fraction(0), b, d)
        return None
    # (a + b sqrt d)^2 = u + v sqrt d with a, b != 0:
    # a^2 = (u +- sqrt(u^2 - d v^2)) / 2, b = v / (2a)
    root_norm = _rational_sqrt(u * u - d * v * v)
    if root_norm is None:
        return None
    for cand in ((u + root_norm) / 2, (u - root_norm) / 2):
        a = _rational_sqrt(cand)
        if a:
            return _canonical_root(a, v / (2 * a), d)
    return None


@dataclass(frozen=True)
class QuadraticRoots:
    theta_plus: Scalar
    theta_minus: Scalar
    xi: Scalar


def solve_theta(xi, d: int | None = None) -> QuadraticRoots:
    """Both roots of x^2 + 2 xi x - 1 = 0, with theta_plus = -xi + sqrt(xi^2 + 1)."""
    xi = as_scalar(xi)
    disc = xi * xi + 1
    if not disc:
        raise DegenerateRoots(f"xi = {xi} has xi^2 = -1; the roots coincide")
    root = sqrt_in_field(disc, d)
    if root is None:
        raise FieldTooSmall(f"xi^2 + 1 = {disc} has no square root in Q(sqrt({d if d is not None else disc.d}))")
    return QuadraticRoots(-xi + root, -xi - root, xi)


_OPS = {
    "add": lambda a, b: a + b,
    "sub": lambda a, b: a - b,
    "mul": lambda a, b: a * b,
    "div": lambda a, b: a / b,
}


def arith(a, op: str, b) -> Scalar:
    """Apply one of add/sub/mul/div to two scalars."""
    try:
        fn = _OPS[op]
    except KeyError:
        raise ValueError(f"unknown operation {op!r}") from None
    return fn(as_scalar(a), as_scalar(b))
