"""
Exact computations around deformation spaces of Galois representations
valued in (possibly disconnected) reductive groups: root data, Levi
subgroups, Chevalley algebras over finite fields, local Galois cohomology
counts, component groups, group extensions and semisimplification.
"""

from .ff import GF, FiniteField
from .root_datum import (
    BasedRootDatum,
    GenReductiveDatum,
    LatticeWithAction,
    build_simple,
    dim_G,
    dim_Z,
    etale_pi1_cover,
    gl,
    is_pi1_etale,
    parse_type,
    pi1_derived,
    product,
    torus,
)

__version__ = "0.1.0"

__all__ = [
    "GF",
    "FiniteField",
    "BasedRootDatum",
    "GenReductiveDatum",
    "LatticeWithAction",
    "build_simple",
    "dim_G",
    "dim_Z",
    "etale_pi1_cover",
    "gl",
    "is_pi1_etale",
    "parse_type",
    "pi1_derived",
    "product",
    "torus",
]
