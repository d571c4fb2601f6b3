"""Exact matrix models of the classical symmetric-space direct systems."""

from .analysis import (
    check_admissible,
    check_embedding_form,
    check_maximal_abelian,
    check_theta,
    centralizer_m,
    compare_pictures,
    eigensplit,
    restricted_root_decomposition,
    verify_row,
)
from .realizations import MatrixRealization, realize

__all__ = [
    "MatrixRealization",
    "realize",
    "check_theta",
    "eigensplit",
    "centralizer_m",
    "check_maximal_abelian",
    "restricted_root_decomposition",
    "check_embedding_form",
    "check_admissible",
    "compare_pictures",
    "verify_row",
]
