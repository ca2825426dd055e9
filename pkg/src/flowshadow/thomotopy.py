"""T-homotopy checks on finite flows.

``tdi_shadow`` tests the three defining conditions of an (old) T-homotopy
equivalence on path classes.  Because path spaces are replaced by finite sets
of classes, a negative verdict refutes T-homotopy while a positive verdict is
only a necessary condition.

``subdivision_form`` recognizes morphisms that subdivide indecomposable
paths into chains, and ``factorize_old`` splits such a morphism into a
generalized move followed by a bijective (weak S-homotopy) morphism.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from typing import Mapping

from .branchmerge import branching_space, germs_at, merging_space
from .errors import LoopError, MorphismError, NotASubdivision, NotInClassT
from .flow import (
    Flow,
    FlowMorphism,
    _pair_id,
    flow_from_poset,
    restriction,
    state_order,
    surrounded,
)
from .poset import PosetMorphism, class_T_check, is_bounded
from .presentation import _subdivide, flow_presentation, realize_with_classes

__all__ = [
    "SubdivisionForm",
    "TdiReport",
    "tdi_shadow",
    "subdivision_form",
    "is_full_directed_ball",
    "generalized_generator",
    "factorize_old",
    "subdivision_factorization",
]


@dataclass(frozen=True)
class SubdivisionForm:
    subdivided_edges: Mapping  # indecomposable path of X -> number of pieces
    new_states: frozenset
    chains: Mapping = field(default_factory=dict, compare=False)  # path -> new states in order

    def __post_init__(self):
        object.__setattr__(self, "subdivided_edges", dict(self.subdivided_edges))
        object.__setattr__(self, "new_states", frozenset(self.new_states))
        object.__setattr__(self, "chains", dict(self.chains))
        assert sum(n - 1 for n in self.subdivided_edges.values()) == len(self.new_states)


@dataclass(frozen=True)
class TdiReport:
    restriction_iso: bool
    singleton_germs: Mapping  # new state -> (branching count, merging count)
    surrounded_ok: bool

    @property
    def germs_ok(self) -> bool:
        return all(c == (1, 1) for c in self.singleton_germs.values())

    @property
    def verdict(self) -> bool:
        return self.restriction_iso and self.germs_ok and self.surrounded_ok

    def format(self) -> str:
        b = lambda v: "true" if v else "false"  # noqa: E731
        return (
            f"tdi: restriction_iso={b(self.restriction_iso)} germs_ok={b(self.germs_ok)} "
            f"surrounded={b(self.surrounded_ok)} verdict={b(self.verdict)}"
        )


def tdi_shadow(f: FlowMorphism) -> TdiReport:
    X, Y = f.source, f.target
    image = frozenset(f.state_map.values())
    R = restriction(Y, image)
    injective = len(image) == len(X.states)
    paths_bijective = (
        len(set(f.path_map.values())) == len(X.paths) == len(R.paths)
    )
    bq, mq = branching_space(Y), merging_space(Y)
    counts = {
        a: (len(germs_at(bq, a)), len(germs_at(mq, a)))
        for a in sorted(Y.states - image)
    }
    return TdiReport(injective and paths_bijective, counts, surrounded(Y, Y.states, image))


def _fold(Y: Flow, paths):
    return reduce(Y.mul, paths)


def subdivision_factorization(f: FlowMorphism):
    """``(form, g, h)`` when ``f`` subdivides indecomposable paths, else None.

    New states must carry one branching and one merging germ and sit on
    chains of indecomposables between old states; each chain must be the
    image of an indecomposable path of the source.  The candidate is then
    rebuilt from a presentation of the source and compared with ``f``.
    """
    X, Y = f.source, f.target
    image = set(f.state_map.values())
    if len(image) != len(X.states):
        return None
    if not (X.is_loopless() and Y.is_loopless()):
        return None
    new = sorted(Y.states - image)
    bq, mq = branching_space(Y), merging_space(Y)
    ind = set(Y.indecomposables)
    for z in new:
        if len(germs_at(bq, z)) != 1 or len(germs_at(mq, z)) != 1:
            return None
        if len([p for p in Y.incoming(z) if p in ind]) != 1:
            return None
        if len([p for p in Y.outgoing(z) if p in ind]) != 1:
            return None

    back = {}
    for p, q in f.path_map.items():
        if q in back:
            return None
        back[q] = p

    # follow each chain of new states from an old state to an old state
    pieces, chain_states, seen = {}, {}, set()
    for e in sorted(ind):
        if Y.source(e) not in image or Y.target(e) in image:
            continue
        edges, states = [e], []
        while Y.target(edges[-1]) not in image:
            z = Y.target(edges[-1])
            states.append(z)
            edges.append(next(p for p in Y.outgoing(z) if p in ind))
        p = back.get(_fold(Y, edges))
        if p is None or p not in X.indecomposables or p in pieces:
            return None
        pieces[p], chain_states[p] = edges, states
        seen.update(states)
    if seen != set(new):
        return None

    pres, word_of = flow_presentation(X)
    subst = {}
    for p in sorted(pieces):
        pres, _, subst[p] = _subdivide(pres, p, len(pieces[p]))
    Z, cls = realize_with_classes(pres)

    def expand(w):
        out = ()
        for x in w:
            out += subst[x] if x in subst else (x,)
        return out

    g_paths = {p: cls[expand(word_of[p])] for p in X.paths}
    g = FlowMorphism(X, Z, {a: a for a in X.states}, g_paths)

    h_states = {a: f.state_map[a] for a in X.states}
    edge_image = {}
    for e in pres.edges:
        edge_image[e] = f.path_map.get(e)
    for p in pieces:
        for i, lab in enumerate(subst[p]):
            edge_image[lab] = pieces[p][i]
        for i, z in enumerate(chain_states[p]):
            h_states[f"{p}#{i + 1}"] = z
    h_paths = {}
    for w, c in cls.items():
        val = _fold(Y, [edge_image[e] for e in w])
        if h_paths.setdefault(c, val) != val:
            return None
    try:
        h = FlowMorphism(Z, Y, h_states, h_paths)
        fg = g.then(h)
    except MorphismError:
        return None
    if not _bijective(h) or fg.state_map != f.state_map or fg.path_map != f.path_map:
        return None
    form = SubdivisionForm(
        {p: len(pieces.get(p, [p])) for p in X.indecomposables},
        new,
        {p: tuple(s) for p, s in chain_states.items()},
    )
    return form, g, h


def _bijective(h: FlowMorphism) -> bool:
    return (
        len(set(h.state_map.values())) == len(h.source.states) == len(h.target.states)
        and len(set(h.path_map.values())) == len(h.source.paths) == len(h.target.paths)
    )


def subdivision_form(f: FlowMorphism) -> SubdivisionForm | None:
    data = subdivision_factorization(f)
    return None if data is None else data[0]


def factorize_old(f: FlowMorphism):
    """Write a subdivision morphism ``f: X -> Y`` as ``h . g``.

    ``g: X -> Z`` glues a chain ``F(chain(n+1))`` in place of every edge cut
    into ``n`` pieces; ``h: Z -> Y`` is bijective on states and paths.
    """
    data = subdivision_factorization(f)
    if data is None:
        raise NotASubdivision("morphism is not a subdivision of indecomposable paths")
    _, g, h = data
    return g, h


def is_full_directed_ball(X: Flow) -> bool:
    if not X.is_loopless():
        return False
    try:
        P = state_order(X)
    except LoopError:
        return False
    if not is_bounded(P):
        return False
    for a in P.labels:
        for b in P.labels:
            n = len(X.between(a, b))
            if n != (1 if P.lt(a, b) else 0):
                return False
    return True


def generalized_generator(f: PosetMorphism) -> FlowMorphism:
    """The flow morphism ``F(f): F(P1) -> F(P2)`` of a class-T poset map."""
    if not class_T_check(f):
        raise NotInClassT("poset map is not in class T")
    X, Y = flow_from_poset(f.source), flow_from_poset(f.target)
    paths = {_pair_id(a, b): _pair_id(f(a), f(b)) for a, b in f.source.relation}
    return FlowMorphism(X, Y, dict(f.mapping), paths)
