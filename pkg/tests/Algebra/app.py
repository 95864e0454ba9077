"""Cached Lie algebras and algebra tables used for testing."""
# standard library
from functools import lru_cache

# first-party
from chevalley_algebra.algcore import AlgebraTable, build_algebra
from chevalley_algebra.chevalley import LieAlgebra, build_chevalley
from chevalley_algebra.rootsys import build_root_system, parse_type


@lru_cache(maxsize=None)
def lie_algebra(name: str) -> LieAlgebra:
    """Return the Chevalley basis of a type, built once per session."""
    return build_chevalley(build_root_system(parse_type(name)))


@lru_cache(maxsize=None)
def algebra_table(name: str) -> AlgebraTable:
    """Return the complete table of A(g), built once per session."""
    return build_algebra(lie_algebra(name), threads=1)
