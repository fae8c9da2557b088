"""Sparse algebra elements and table-driven commutative multiplication."""

from __future__ import annotations

from .errors import BasisMismatch
from .scalar import ZERO, Scalar, as_scalar


class Element:
    """A sparse vector: basis index -> nonzero Scalar."""

    __slots__ = ("_c", "_key")

    def __init__(self, coeffs=None):
        c = {}
        if coeffs:
            for i, x in dict(coeffs).items():
                x = as_scalar(x)
                if x:
                    c[int(i)] = x
        self._c = c
        self._key = None

    @classmethod
    def _wrap(cls, c: dict) -> Element:
        e = cls.__new__(cls)
        e._c = {i: x for i, x in c.items() if x}
        e._key = None
        return e

    @classmethod
    def basis(cls, i: int, coeff=1) -> Element:
        return cls._wrap({i: as_scalar(coeff)})

    @classmethod
    def from_dense(cls, vec) -> Element:
        return cls._wrap({i: as_scalar(x) for i, x in enumerate(vec) if x})

    def to_dense(self, dim: int) -> list[Scalar]:
        v = [ZERO] * dim
        for i, x in self._c.items():
            v[i] = x
        return v

    def __getitem__(self, i: int) -> Scalar:
        return self._c.get(i, ZERO)

    def items(self):
        return self._c.items()

    def support(self) -> list[int]:
        return sorted(self._c)

    def __len__(self):
        return len(self._c)

    def __bool__(self):
        return bool(self._c)

    def __add__(self, other: Element) -> Element:
        c = dict(self._c)
        for i, x in other._c.items():
            y = c.get(i)
            c[i] = x if y is None else y + x
        return Element._wrap(c)

    def __neg__(self) -> Element:
        return Element._wrap({i: -x for i, x in self._c.items()})

    def __sub__(self, other: Element) -> Element:
        return self + (-other)

    def scale(self, s) -> Element:
        s = as_scalar(s)
        if not s:
            return Element()
        return Element._wrap({i: x * s for i, x in self._c.items()})

    def __mul__(self, s):
        if isinstance(s, Element):
            return NotImplemented
        return self.scale(s)

    __rmul__ = __mul__

    @property
    def key(self):
        if self._key is None:
            self._key = tuple(sorted(self._c.items()))
        return self._key

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        inner = ", ".join(f"{i}: {x}" for i, x in self.key)
        return f"Element({{{inner}}})"


def linear_combination(terms) -> Element:
    acc: dict[int, Scalar] = {}
    for coeff, el in terms:
        coeff = as_scalar(coeff)
        if not coeff:
            continue
        for i, x in el.items():
            y = coeff * x
            z = acc.get(i)
            acc[i] = y if z is None else z + y
    return Element._wrap(acc)


class TableAlgebra:
    """Commutative algebra given by products of basis vectors.

    Subclasses fill ``self.dim`` and ``self._table`` where ``_table[i][j]``
    is the Element ``b_i * b_j``.
    """

    dim: int
    _table: list[list[Element]]

    def product(self, i: int, j: int) -> Element:
        return self._table[i][j]

    def _check(self, u: Element):
        for i, _ in u.items():
            if not 0 <= i < self.dim:
                raise BasisMismatch(f"basis index {i} outside dimension {self.dim}")

    def mul(self, u: Element, v: Element) -> Element:
        self._check(u)
        self._check(v)
        acc: dict[int, Scalar] = {}
        table = self._table
        for i, x in u.items():
            row = table[i]
            for j, y in v.items():
                prod = row[j]
                if not prod:
                    continue
                xy = x * y
                for k, z in prod.items():
                    w = xy * z
                    cur = acc.get(k)
                    acc[k] = w if cur is None else cur + w
        return Element._wrap(acc)

    def adjoint(self, u: Element) -> list[list[Scalar]]:
        """Dense matrix (rows) of v -> u*v in the basis."""
        cols = [self.mul(u, Element.basis(j)).to_dense(self.dim) for j in range(self.dim)]
        return [list(r) for r in zip(*cols)]

    def is_commutative(self) -> bool:
        return all(
            self._table[i][j] == self._table[j][i]
            for i in range(self.dim)
            for j in range(i + 1, self.dim)
        )
