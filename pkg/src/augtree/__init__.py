"""Girth-constrained augmented trees and the extremal gadgets grown from them."""

from .construct import (
    BoundTooLarge,
    BudgetExceeded,
    ConstructionPlan,
    PlanOnly,
    PlanStep,
    build_base,
    build_reduced_color_aligned,
    compose,
    expand_girth,
    height_bound,
    pad_with_root,
    plan_and_build,
    reduce,
)
from .coloring import smallcup_color, smallcup_sharp, two_common_color
from .gadgets import (
    GadgetBundle,
    Gk_witness,
    Jk_witness,
    Witness,
    WitnessError,
    build_Gk,
    build_Hk_smallunion,
    build_hypergraph,
    build_Jk,
    build_listcap,
    hyper_witness,
    run_trials,
    witness,
)
from .paths import f_path, full_path, phi, pigeonhole_select
from .structures import (
    AugmentedTree,
    Graph,
    Hypergraph,
    ListAssignment,
    NotBipartite,
    Orientation,
    bipartition,
    flatten,
    validate_augmented_tree,
)
from .verify import (
    check_orientation,
    check_proper,
    forced_cycle_girth_cap,
    girth,
    height_bound_seq,
    hypergraph_girth,
    list_color_search,
    mad_exact,
)

__version__ = "0.1.0"
