"""Exact counting and parameterization of the irreducible representations
of finite groups of Lie type in their defining characteristic, starting
from a pair of root datum matrices and a Frobenius twist."""

from .catalog import SimpleSpec, table2_count
from .covering import CoveringData, build_covering, kernel_of_covering, residue_analysis
from .exactmat import IntMatrix, smith_normal_form
from .params import ParamSummary, parameterize, semisimple_class_count
from .rootdata import (
    FrobeniusDatum,
    RootDatum,
    ValidationError,
    standard_datum,
    validate_frobenius,
    validate_root_datum,
)
from .torsion import ResidueClass, TorsionVector
from .torus import FiniteAbelianGroup

__version__ = "0.1.0"

__all__ = [
    "IntMatrix", "smith_normal_form", "RootDatum", "FrobeniusDatum",
    "ValidationError", "validate_root_datum", "validate_frobenius",
    "standard_datum", "TorsionVector", "ResidueClass", "FiniteAbelianGroup",
    "CoveringData", "build_covering", "kernel_of_covering", "residue_analysis",
    "ParamSummary", "parameterize", "semisimple_class_count",
    "SimpleSpec", "table2_count", "__version__",
]
