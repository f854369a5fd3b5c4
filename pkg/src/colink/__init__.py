"""Exact computation toolkit for coloured link polynomials and homology."""

__version__ = "0.1.0"

from .laurent import LaurentPoly, qbinom
from .multipoly import MultiPoly
from .sparse import SparseMatrix
from .snf import smith_normal_form
from .homology import GradedModuleDecomp, graded_homology_over_line, homology_over_field

__all__ = [
    "LaurentPoly",
    "MultiPoly",
    "SparseMatrix",
    "smith_normal_form",
    "GradedModuleDecomp",
    "graded_homology_over_line",
    "homology_over_field",
    "qbinom",
]
