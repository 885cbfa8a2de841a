"""Exact computations in finitary incidence algebras of finite posets."""

from .decompose import (
    Decomposition,
    DecompositionChecks,
    ProperDecision,
    TheoremReport,
    canonical_decompose,
    commutator_value_lattice,
    commutator_values,
    derivation_space,
    is_proper,
    lie_n_derivation_space,
    sample_lie_n_derivation,
    verify_theorem,
)
from .elements import (
    FiElement,
    basis_element,
    format_element,
    identity_element,
    parse_element,
)
from .errors import GuardExceeded, MismatchError, ParseError
from .lie import (
    CheckReport,
    derivation_constraint_system,
    is_derivation,
    is_lie_n_derivation,
    lie_n_constraint_system,
    nested_commutator,
)
from .linsolve import (
    LinSystem,
    SolutionModule,
    exact_det,
    sample_solution,
    smith_normal_form,
    solve,
)
from .maps import LinMap, format_map, inner_derivation, parse_map
from .oracle import (
    LemmaReport,
    LEMMAS,
    check_lemma,
    enumerate_linmaps,
    random_instance,
)
from .poset import Poset, antichain, chain, diamond, n_poset, parse_poset
from .rings import INTEGERS, RATIONALS, ModRing, Ring, parse_ring

__all__ = [
    "CheckReport",
    "Decomposition",
    "DecompositionChecks",
    "FiElement",
    "GuardExceeded",
    "INTEGERS",
    "LEMMAS",
    "LemmaReport",
    "LinMap",
    "LinSystem",
    "MismatchError",
    "ModRing",
    "ParseError",
    "Poset",
    "ProperDecision",
    "RATIONALS",
    "Ring",
    "SolutionModule",
    "TheoremReport",
    "antichain",
    "basis_element",
    "canonical_decompose",
    "chain",
    "check_lemma",
    "commutator_value_lattice",
    "commutator_values",
    "derivation_constraint_system",
    "derivation_space",
    "diamond",
    "enumerate_linmaps",
    "exact_det",
    "format_element",
    "format_map",
    "identity_element",
    "inner_derivation",
    "is_derivation",
    "is_lie_n_derivation",
    "is_proper",
    "lie_n_constraint_system",
    "lie_n_derivation_space",
    "n_poset",
    "nested_commutator",
    "parse_element",
    "parse_map",
    "parse_poset",
    "parse_ring",
    "random_instance",
    "sample_lie_n_derivation",
    "sample_solution",
    "smith_normal_form",
    "solve",
    "verify_theorem",
]
