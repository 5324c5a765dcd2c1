"""Exact finite-scale engine for causal sites, frameworks, finite topologies,
discrete Minkowski causal structure and Wallman-type approximation."""
from __future__ import annotations

from .causal_site import (
    AxiomReport,
    CausalSite,
    Violation,
    check_axioms,
    cutting,
    from_poset,
    maximal_centered,
    n_set,
    weakest_causal,
    weakly_causal_topology,
)
from .errors import (
    AxiomError,
    CapExceeded,
    CausalTopoError,
    CoverNotOpen,
    CycleError,
    DimensionMismatch,
    EmptyGenerator,
    MissingBottom,
    MissingJoins,
    NoBottom,
    NotT1,
    OutOfCarrier,
    SchemaError,
    SeparationFailure,
    SizeCapExceeded,
    UnknownElement,
    UnknownEvent,
)
from .fintop import (
    DualSequence,
    FiniteTopSpace,
    degroot_dual,
    dual_sequence,
    from_closed_subbase,
    is_homeomorphic,
    is_T0 as space_is_T0,
    is_T1,
    saturated_sets,
    specialization,
)
from .framework import Framework, FrameworkMap, are_isomorphic, dual, is_T0, is_topological_model, t0_quotient
from .minkowski import EventSet, build_causal_site, build_region_family, causal_leq, multi_diamond, point_correspondence
from .order import Poset, atoms, disjoint_sum, order_report, poset_from_cover, way_below

__all__ = [
    "annotations",
    "AxiomReport",
    "CausalSite",
    "Violation",
    "check_axioms",
    "cutting",
    "from_poset",
    "maximal_centered",
    "n_set",
    "weakest_causal",
    "weakly_causal_topology",
    "DualSequence",
    "FiniteTopSpace",
    "degroot_dual",
    "dual_sequence",
    "from_closed_subbase",
    "is_homeomorphic",
    "space_is_T0",
    "is_T1",
    "saturated_sets",
    "specialization",
    "Framework",
    "FrameworkMap",
    "are_isomorphic",
    "dual",
    "is_T0",
    "is_topological_model",
    "t0_quotient",
    "EventSet",
    "build_causal_site",
    "build_region_family",
    "causal_leq",
    "multi_diamond",
    "point_correspondence",
    "Poset",
    "atoms",
    "disjoint_sum",
    "order_report",
    "poset_from_cover",
    "way_below",
    "CausalTopoError",
    "CycleError",
    "UnknownElement",
    "UnknownEvent",
    "NoBottom",
    "MissingBottom",
    "MissingJoins",
    "CapExceeded",
    "SizeCapExceeded",
    "OutOfCarrier",
    "CoverNotOpen",
    "DimensionMismatch",
    "EmptyGenerator",
    "SeparationFailure",
    "NotT1",
    "AxiomError",
    "SchemaError",
]

__version__ = "0.1.0"
