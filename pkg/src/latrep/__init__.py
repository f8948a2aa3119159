"""latrep: repair of approximate homomorphisms between finite lattices.

Core pipeline: a map between finite distributive lattices that only
approximately preserves joins (errors measured by an error-function pair or
by a lattice neighborhood system) is turned into an exact join
homomorphism provably close to the input.  Everything is verified at desk
scale by brute-force oracles.
"""
from .core import Check, Lattice, validate_lattice
from .builders import (
    birkhoff_embedding,
    boolean_algebra,
    chain,
    divisor_lattice,
    join_irreducibles,
    product,
)
from .maps import (
    LatticeMap,
    check_join_hom,
    check_meet_hom,
    check_monotone,
    check_sub_join,
    check_sub_meet,
    check_super_join,
    check_super_meet,
    constant_map,
    identity_map,
    pointwise_leq,
)
from .sandwich import sandwich_join, sandwich_lattice_hom, sandwich_variant
from .stabilize import (
    ErrorPair,
    check_approx_join,
    lower_envelope,
    stabilize_join,
    upper_envelope,
    validate_error_pair,
)
from .neighborhoods import (
    Congruence,
    NeighborhoodSystem,
    check_neighborhood_approx,
    congruence_system,
    principal_ideal_system,
    prime_support_system,
    pullback_system,
    stabilize_with_neighborhoods,
    validate_congruence,
    validate_neighborhood_system,
)
from .monotone import (
    FiniteRealFunction,
    check_eps_decreasing,
    check_eps_increasing,
    check_pal,
    repair_decreasing,
    repair_increasing,
    repair_quasi_monotone,
    sup_error,
)
from .oracles import (
    brute_force_envelope,
    complement_table,
    enumerate_join_homs,
    naive_boolean_correction,
    sandwich_exists_brute,
)
from . import errors

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
