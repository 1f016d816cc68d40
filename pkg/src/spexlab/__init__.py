"""spexlab: spectral extremal graphs of fan-free families.

Constructions of the extremal families, path and fan detection, exact and
numerical spectral radii, walk-count orderings, isomorph-free enumeration
and brute-force verification at desk scale.
"""

from __future__ import annotations

__version__ = "0.1.0"

from .graph import (
    Graph,
    GraphError,
    Graph6Error,
    canonical_form,
    canonical_graph,
    canonical_labeling,
    complement,
    components,
    disjoint_union,
    graph6_decode,
    graph6_encode,
    induced,
    is_connected,
    is_isomorphic,
    join,
)
from .polynomial import IntPolynomial, RootInterval, compare_largest_roots, count_roots, largest_real_root
from .spectral import (
    QuotientMatrix,
    SpectralResult,
    UndecidedComparison,
    char_poly_exact,
    equitable_quotient,
    join_bound,
    rewiring_check,
    rho_compare_exact,
    rho_polynomial,
    spectral_radius,
)
from .walks import WalkProfile, ex_filter, ex_infinity, walk_closed_forms, walk_compare, walk_profile

__all__ = [name for name in dir() if not name.startswith("_")]
