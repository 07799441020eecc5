from .bipoly import BiPoly
from .field import GF, RATIONAL, Field, Scalar, field_of
from .obstruction import (
    DEFAULT_BOUND,
    RootFinding,
    find_q_root,
    find_r_root,
    pq_polys,
    pq_values,
    r_poly,
    r_value,
)

__all__ = [
    "BiPoly",
    "DEFAULT_BOUND",
    "Field",
    "GF",
    "RATIONAL",
    "RootFinding",
    "Scalar",
    "field_of",
    "find_q_root",
    "find_r_root",
    "pq_polys",
    "pq_values",
    "r_poly",
    "r_value",
]
