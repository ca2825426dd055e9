"""Finite combinatorial flows, T-homotopy checks and zig-zag certificates."""

from .branchmerge import GermQuotient, branching_space, germ_counts, germs_at, merging_space
from .errors import FlowShadowError
from .flow import (
    Flow,
    FlowMorphism,
    final_states,
    find_isomorphism,
    flow_from_poset,
    flow_from_set,
    globe,
    identity,
    initial_states,
    make_flow,
    opposite,
    restriction,
    state_order,
    surrounded,
    weak_s_homotopy_shadow,
)
from .poset import (
    Poset,
    PosetMorphism,
    antichain,
    canonical_form,
    chain,
    class_T_check,
    covers,
    cube,
    is_bounded,
    is_isomorphic,
    make_poset,
    product,
    subdivide,
    unsubdivide,
    witness_elements,
)
from .presentation import (
    FlowPresentation,
    add_relation,
    attach_edge,
    flow_presentation,
    make_presentation,
    poset_presentation,
    realize,
    subdivide_edge,
)
from .thomotopy import (
    SubdivisionForm,
    TdiReport,
    factorize_old,
    generalized_generator,
    is_full_directed_ball,
    subdivision_form,
    tdi_shadow,
)
from .zigzag import Move, ZigzagCertificate, bfs_equivalent, legal_moves, pasiso_check

__version__ = "0.1.0"
