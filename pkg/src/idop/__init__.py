"""Exact arithmetic, canonical forms and structural decompositions for
polynomial integro-differential operators, with a truncated-matrix oracle and
an exact rational dimension engine."""

from fractions import Fraction as Rational

from .element import (
    Atom,
    B1Element,
    Element1,
    atom_mul,
    b1_mul,
    eunit_atom,
    from_atoms,
    graded_atom,
)
from .expr import ExprSyntaxError, parse_element, parse_poly
from .oracle import (
    RowReducer,
    TruncMatrix,
    consistent,
    exact_rank,
    to_matrix,
    to_matrix_monomial,
    to_matrix_n,
    up,
)
from .structure import (
    CensusLabel,
    MultiplicityReport,
    SplitTriple,
    bimodule_filtration_dims,
    census,
    kernel_witness_check,
    multiplicity_report,
    q_dims,
    socle_level,
    socle_member,
    split,
)
from .tensor import (
    BnElement,
    ElementN,
    add_n,
    apply_n,
    bn_mul,
    lift,
    mul_n,
    project_bn,
    scale_n,
    to_element1,
)

__version__ = "0.1.0"

__all__ = [
    "Atom",
    "B1Element",
    "BnElement",
    "CensusLabel",
    "Element1",
    "ElementN",
    "ExprSyntaxError",
    "MultiplicityReport",
    "Rational",
    "RowReducer",
    "SplitTriple",
    "TruncMatrix",
    "add_n",
    "apply_n",
    "atom_mul",
    "b1_mul",
    "bimodule_filtration_dims",
    "bn_mul",
    "census",
    "consistent",
    "eunit_atom",
    "exact_rank",
    "from_atoms",
    "graded_atom",
    "kernel_witness_check",
    "lift",
    "mul_n",
    "multiplicity_report",
    "parse_element",
    "parse_poly",
    "project_bn",
    "q_dims",
    "scale_n",
    "socle_level",
    "socle_member",
    "split",
    "to_element1",
    "to_matrix",
    "to_matrix_monomial",
    "to_matrix_n",
    "up",
]
