"""Exact computations in code algebras built from binary linear codes."""

from .algebra import CodeAlgebra, StructureParams, build_algebra
from .axes import small_idempotent
from .gf2code import Code, span
from .scalar import Scalar, parse_scalar

__all__ = ["Code", "CodeAlgebra", "Scalar", "StructureParams", "build_algebra", "parse_scalar", "small_idempotent", "span"]
