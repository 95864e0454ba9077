"""Exact construction and verification of the commutative algebra A(g) of a split simple Lie
algebra over Q."""
# flake8: noqa
# first-party
from chevalley_algebra.algcore import AlgebraTable, build_algebra, split_by_counit
from chevalley_algebra.chevalley import LieAlgebra, build_chevalley
from chevalley_algebra.construction2 import Representation, load_rep, natural_rep_sl3, save_rep
from chevalley_algebra.rootsys import RootDatum, RootSystemSpec, build_root_system, parse_type
from chevalley_algebra.unitize import TableAlgebra, UnitizedAlgebra, make_unitized, unique_c_scan
from chevalley_algebra.utils import (
    TOOL_VERSION,
    ChevalleyAlgebraError,
    ConsistencyError,
    ValidationError,
)
from chevalley_algebra.verify import VerificationReport, VerificationSuite

__version__ = TOOL_VERSION
