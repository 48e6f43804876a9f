"""Construct, verify and search for J-group structures.

A J-structure on a group G is a witness w in G and a self-map f with
f(x*w) = f(x)*x for every x.
"""

__version__ = "0.1.0"

from .groups import (
    FiniteGroup,
    centralizer,
    element_order,
    make_cyclic,
    make_dihedral,
    make_direct_product,
    make_metacyclic,
    make_symmetric,
    make_unitriangular_mod,
    parse_group_spec,
)
from .jsearch import SearchOptions, SearchOutcome, certify_non_jgroup, search_bruteforce, search_coset
from .jstruct import JStructure, check_witness_necessary, verify_axiom

__all__ = [
    "FiniteGroup",
    "JStructure",
    "SearchOptions",
    "SearchOutcome",
    "centralizer",
    "certify_non_jgroup",
    "check_witness_necessary",
    "element_order",
    "make_cyclic",
    "make_dihedral",
    "make_direct_product",
    "make_metacyclic",
    "make_symmetric",
    "make_unitriangular_mod",
    "parse_group_spec",
    "search_bruteforce",
    "search_coset",
    "verify_axiom",
]
