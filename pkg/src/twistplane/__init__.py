"""Exact construction, verification and classification of graded twisted
tensor products of K[x] and K[y], encoded as infinite band matrices."""

from .algebra import GF, RATIONAL, BiPoly, Field, find_q_root, find_r_root, pq_polys, r_poly
from .bandmatrix import BandMatrix, ShiftOp, eq_on_window, mul, shift
from .families import (
    FamilyParams,
    branch_2n,
    build_anda,
    build_bnl,
    build_generic,
    build_ore,
    build_particular,
    normalize_a,
)
from .seqlab import QBSeq, enumerate_prefixes, extensions, failure_witness, is_quasi_balanced
from .verify import (
    check_fundamental,
    check_gamma_axioms,
    check_mtilde,
    classify,
    gamma_table,
)

__all__ = [
    "GF", "RATIONAL", "BiPoly", "Field", "find_q_root", "find_r_root", "pq_polys", "r_poly",
    "BandMatrix", "ShiftOp", "eq_on_window", "mul", "shift",
    "FamilyParams", "branch_2n", "build_anda", "build_bnl", "build_generic", "build_ore",
    "build_particular", "normalize_a",
    "QBSeq", "enumerate_prefixes", "extensions", "failure_witness", "is_quasi_balanced",
    "check_fundamental", "check_gamma_axioms", "check_mtilde", "classify", "gamma_table",
]

__version__ = "0.1.0"
