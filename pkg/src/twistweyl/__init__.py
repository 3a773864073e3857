"""Exact computations with twisted current algebras, their local graded Weyl modules and Demazure modules."""
from __future__ import annotations

__version__ = "0.1.0"

from .folding import FoldedAlgebra, fold  # noqa: E402
from .modules import (  # noqa: E402
    CyclicModule,
    ModuleError,
    UnstabilizedError,
    build_demazure,
    build_weyl,
    graded_character,
    integral_lattice,
    restrict_untwisted,
    simple_top,
    verify_restriction,
    verify_wd,
)

__all__ = [
    "CyclicModule",
    "FoldedAlgebra",
    "ModuleError",
    "UnstabilizedError",
    "build_demazure",
    "build_weyl",
    "fold",
    "graded_character",
    "integral_lattice",
    "restrict_untwisted",
    "simple_top",
    "verify_restriction",
    "verify_wd",
]
