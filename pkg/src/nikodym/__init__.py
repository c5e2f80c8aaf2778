"""Exact computation with Nikodym and Kakeya sets in AG(n, q)."""

from .bound2d import audit, nikodym_2d_lower_bound
from .geometry import GeomSpec, Line, make_geometry
from .gf import FieldSpec, field_of_order, make_field
from .polymethod import dvir_kakeya_bound, proof_trace, theorem1_bound, vanishing_poly
from .search import brute_force_oracle, min_kakeya, min_nikodym
from .sets import PointSet, read_pointset, write_pointset
from .verify import is_kakeya, is_nikodym, verify_witnesses

__all__ = [
    "FieldSpec", "GeomSpec", "Line", "PointSet",
    "audit", "brute_force_oracle", "dvir_kakeya_bound", "field_of_order", "is_kakeya",
    "is_nikodym", "make_field", "make_geometry", "min_kakeya", "min_nikodym",
    "nikodym_2d_lower_bound", "proof_trace", "read_pointset", "theorem1_bound",
    "vanishing_poly", "verify_witnesses", "write_pointset",
]
