"""Circulant graphs of given degree and diameter: constructions, bounds and searches."""

from .bounds import (
    bounds_record,
    cj_lower_bound,
    lee_sphere_size,
    mac_upper_bound,
    predicted_leading_terms,
)
from .errors import CircddError, InputError, VerificationError
from .families import (
    ExtremalStatus,
    FamilyRecord,
    construct_family,
    family_order,
    isomorphism_factor,
    verify_family,
)
from .graph import CirculantGraph, GeneratorSet, diameter, distance_profile, make_graph
from .lattice import covering_check, lattice_basis, orthant_representatives, quotient_multipliers
from .search import SearchLimits, canonical_form, enumerate_generator_sets, search_extremal
from .spectra import apply_multiplier, inertia, multiplier_isomorphic, spectrum

__version__ = "0.1.0"

__all__ = [
    "CircddError", "InputError", "VerificationError",
    "GeneratorSet", "CirculantGraph", "make_graph", "diameter", "distance_profile",
    "lee_sphere_size", "mac_upper_bound", "cj_lower_bound", "bounds_record", "predicted_leading_terms",
    "ExtremalStatus", "FamilyRecord", "construct_family", "family_order", "isomorphism_factor",
    "verify_family",
    "SearchLimits", "canonical_form", "enumerate_generator_sets", "search_extremal",
    "spectrum", "inertia", "apply_multiplier", "multiplier_isomorphic",
    "lattice_basis", "quotient_multipliers", "orthant_representatives", "covering_check",
]
