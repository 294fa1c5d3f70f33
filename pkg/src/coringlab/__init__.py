"""Exact computations with corings, comodules, comatrix corings and their Morita contexts."""

from .exact import Field
from .algebra import Algebra, AlgebraMorphism, Bimodule, InputError, tensor
from .coring import Comodule, Coring, grouplike_comodule, sweedler_coring, trivial_coring
from .galois import comatrix_coring, canonical_map, galois_report
from .fixture import ParseError, load_fixture, parse_fixture
from .report import run_checks

__all__ = [
    "Field", "Algebra", "AlgebraMorphism", "Bimodule", "InputError", "tensor",
    "Comodule", "Coring", "grouplike_comodule", "sweedler_coring", "trivial_coring",
    "comatrix_coring", "canonical_map", "galois_report",
    "ParseError", "load_fixture", "parse_fixture", "run_checks",
]
