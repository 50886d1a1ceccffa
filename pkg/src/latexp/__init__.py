"""Diophantine exponents of lattices: exact forms, certified enumeration and transference checks."""

from .exact import FieldElement, NumberField, nf_create
from .lattice import (
    FormsMatrix,
    Lattice,
    LatticePoint,
    complementary_dual_wedge,
    dual,
    gamma,
    lattice_from_forms,
    lattice_from_json,
    normalize_det,
    pi_value,
    wedge_coeffs,
)
from .enumeration import (
    Box,
    EnumerationBudget,
    norm_minimum_estimate,
    points_in_box,
    record_points,
)
from .exponents import estimate_omega, spectrum_value, transference_lower_bound
from .transfer import Parallelepiped, check_theorem2, pseudo_compound

__version__ = "0.1.0"

__all__ = [
    "Box", "EnumerationBudget", "FieldElement", "FormsMatrix", "Lattice", "LatticePoint",
    "NumberField", "Parallelepiped", "check_theorem2", "complementary_dual_wedge", "dual",
    "estimate_omega", "gamma", "lattice_from_forms", "lattice_from_json", "nf_create",
    "norm_minimum_estimate", "normalize_det", "pi_value", "points_in_box", "pseudo_compound",
    "record_points", "spectrum_value", "transference_lower_bound", "wedge_coeffs",
]
