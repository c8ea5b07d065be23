"""Subgroups of free groups as folded core labeled digraphs.

Construction by folding, membership, free bases, rank and index,
conjugacy, intersections via product graphs, malnormality, Whitehead
free-factor detection, algebraic extensions and closures.
"""

from .errors import (
    AlphabetMismatchError,
    FreeGroupsError,
    InvalidInputError,
    NotAMemberError,
    ResourceLimitError,
    WordParseError,
)
from .extensions import (
    ExtensionVerdict,
    IsolationResult,
    PrincipalQuotient,
    algebraic_closure,
    algebraic_extensions,
    is_algebraic_extension,
    is_algebraically_closed,
    is_isolated,
    isolation_length_bound,
    isolator,
    malnormal_closure,
    principal_quotients,
    relative_image,
)
from .graph import (
    BasedGraph,
    Morphism,
    Subgraph,
    XDigraph,
    based_isomorphism,
    canonical_morphism,
    connected_components,
    core,
    fold_all,
    graph_from_json,
    graph_to_json,
    is_folded,
    is_regular,
    isomorphic,
    product,
    regular_complete,
    to_dot,
    trace_path,
    type_graph,
)
from .intersect import (
    ComponentReport,
    component_analysis,
    hanna_neumann_check,
    intersection,
    is_cyclonormal,
    is_immersed,
    is_malnormal,
)
from .subgroup import (
    Basis,
    HallCompletion,
    SpanningTree,
    SubgroupGraph,
    basis,
    conjugacy_equivalent,
    conjugate,
    conjugate_into,
    contains,
    coset_representatives,
    expand_in_basis,
    full_group,
    hall_completion,
    index,
    is_nielsen_reduced,
    is_normal,
    join,
    power_in,
    rank,
    rebase_inside,
    relative_index,
    rewrite_in_basis,
    schreier_check,
    spanning_tree,
    spanning_tree_from_edges,
    stallings_graph,
    trivial_subgroup,
)
from .whitehead import (
    WhiteheadAuto,
    apply_auto,
    enumerate_whitehead,
    is_free_factor,
    is_free_factor_of_ambient,
    transform_subgroup,
)
from .words import (
    Alphabet,
    Word,
    cyclic_reduce,
    format_word,
    free_reduce,
    invert,
    multiply,
    parse_word,
    reduced_words,
)

__all__ = [name for name in dir() if not name.startswith("_")]
