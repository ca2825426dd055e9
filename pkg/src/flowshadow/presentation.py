"""Flows presented by generating edges and relations between edge words.

Realization enumerates every composable edge word (finitely many, since the
edge graph is acyclic) and quotients by the congruence generated by the
relations.  The class of a word is named by its shortest, then
lexicographically least, representative joined with ``.``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from ._unionfind import UnionFind
from .errors import (
    CyclicPresentation,
    EndpointMismatch,
    InvalidSize,
    LabelClash,
    LoopError,
    UnknownEdge,
    UnknownState,
)
from .flow import Flow, FlowMorphism
from .poset import Poset

__all__ = [
    "FlowPresentation",
    "make_presentation",
    "realize",
    "realize_with_classes",
    "attach_edge",
    "add_relation",
    "subdivide_edge",
    "poset_presentation",
    "flow_presentation",
    "word_id",
    "parse_word",
]


def parse_word(w) -> tuple:
    if isinstance(w, str):
        return tuple(w.split("."))
    return tuple(w)


def word_id(w: Sequence) -> str:
    return ".".join(w)


def _word_key(w):
    return (len(w), w)


def _norm_relation(w1, w2):
    return tuple(sorted((tuple(w1), tuple(w2))))


@dataclass(frozen=True)
class FlowPresentation:
    states: frozenset
    edges: Mapping  # edge id -> (source, target)
    relations: frozenset  # normalized pairs of words
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "states", frozenset(self.states))
        object.__setattr__(self, "edges", {e: tuple(st) for e, st in dict(self.edges).items()})
        object.__setattr__(
            self,
            "relations",
            frozenset(_norm_relation(parse_word(a), parse_word(b)) for a, b in self.relations),
        )
        for e, (s, t) in self.edges.items():
            if s not in self.states or t not in self.states:
                raise UnknownState(f"edge {e} : {s} -> {t} uses an unknown state")
        cyc = _find_cycle(self.states, self.edges)
        if cyc:
            raise CyclicPresentation("edge graph has a cycle through " + " -> ".join(cyc))
        for w1, w2 in self.relations:
            e1, e2 = self.endpoints(w1), self.endpoints(w2)
            if e1 != e2:
                raise EndpointMismatch(
                    f"relation {word_id(w1)} = {word_id(w2)}: endpoints {e1} and {e2} differ"
                )

    def __hash__(self):
        return hash((self.states, frozenset(self.edges.items()), self.relations))

    def endpoints(self, word) -> tuple:
        word = parse_word(word)
        if not word:
            raise EndpointMismatch("empty edge word")
        for e in word:
            if e not in self.edges:
                raise UnknownEdge(f"unknown edge {e!r}")
        for a, b in zip(word, word[1:]):
            if self.edges[a][1] != self.edges[b][0]:
                raise EndpointMismatch(f"word {word_id(word)} is not composable at {a}.{b}")
        return self.edges[word[0]][0], self.edges[word[-1]][1]

    @property
    def edge_ids(self) -> tuple:
        return tuple(sorted(self.edges))

    def sorted_relations(self) -> list:
        return sorted(self.relations)


def _find_cycle(states, edges):
    succ = {s: [] for s in states}
    for e in sorted(edges):
        s, t = edges[e]
        succ[s].append(t)
    color = dict.fromkeys(states, 0)
    stack_path: list = []

    def visit(v):
        color[v] = 1
        stack_path.append(v)
        for w in succ[v]:
            if color[w] == 1:
                return stack_path[stack_path.index(w):] + [w]
            if color[w] == 0:
                found = visit(w)
                if found:
                    return found
        stack_path.pop()
        color[v] = 2
        return None

    for v in sorted(states):
        if color[v] == 0:
            found = visit(v)
            if found:
                return found
    return None


def make_presentation(states, edges, relations=(), name="") -> FlowPresentation:
    return FlowPresentation(frozenset(states), edges, frozenset(relations), name)


def _enumerate_words(pr: FlowPresentation) -> list:
    out_edges: dict = {}
    for e in pr.edge_ids:
        out_edges.setdefault(pr.edges[e][0], []).append(e)
    words = []
    stack = [(e,) for e in reversed(pr.edge_ids)]
    while stack:
        w = stack.pop()
        words.append(w)
        for e in reversed(out_edges.get(pr.edges[w[-1]][1], [])):
            stack.append(w + (e,))
    return words


def realize_with_classes(pr: FlowPresentation, rng: random.Random | None = None):
    """Realize ``pr`` and also return the map from every edge word to its
    path class id.  ``rng`` shuffles the enumeration order (the result does
    not depend on it)."""
    words = _enumerate_words(pr)
    rels = [(a, b) for a, b in pr.relations] + [(b, a) for a, b in pr.relations]
    if rng is not None:
        rng.shuffle(words)
        rng.shuffle(rels)
    uf = UnionFind(words)
    # one rewrite step u.l.v <-> u.r.v generates the congruence
    for w in words:
        for lhs, rhs in rels:
            k = len(lhs)
            for i in range(len(w) - k + 1):
                if w[i:i + k] == lhs:
                    uf.union(w, w[:i] + rhs + w[i + k:])
    rep = {}
    for group in uf.groups():
        best = min(group, key=_word_key)
        for w in group:
            rep[w] = best
    class_of = {w: word_id(r) for w, r in rep.items()}
    reps = sorted(set(rep.values()), key=_word_key)
    paths = {word_id(r): pr.endpoints(r) for r in reps}
    by_source: dict = {}
    for r in reps:
        by_source.setdefault(pr.edges[r[0]][0], []).append(r)
    comp = {}
    for r in reps:
        for s in by_source.get(pr.edges[r[-1]][1], []):
            comp[(word_id(r), word_id(s))] = class_of[r + s]
    return Flow(pr.states, paths, comp, pr.name), class_of


def realize(pr: FlowPresentation, rng: random.Random | None = None) -> Flow:
    return realize_with_classes(pr, rng)[0]


def attach_edge(pr: FlowPresentation, a, b, edge_id) -> FlowPresentation:
    if edge_id in pr.edges:
        raise LabelClash(f"edge id {edge_id!r} already used")
    for s in (a, b):
        if s not in pr.states:
            raise UnknownState(f"unknown state {s!r}")
    edges = dict(pr.edges)
    edges[edge_id] = (a, b)
    return FlowPresentation(pr.states, edges, pr.relations, pr.name)


def add_relation(pr: FlowPresentation, w1, w2) -> FlowPresentation:
    w1, w2 = parse_word(w1), parse_word(w2)
    if pr.endpoints(w1) != pr.endpoints(w2):
        raise EndpointMismatch(f"{word_id(w1)} and {word_id(w2)} do not share endpoints")
    return FlowPresentation(pr.states, pr.edges, pr.relations | {(w1, w2)}, pr.name)


def _subdivide(pr: FlowPresentation, e, n: int):
    if e not in pr.edges:
        raise UnknownEdge(f"unknown edge {e!r}")
    if n < 2:
        raise InvalidSize(f"subdivision needs n >= 2, got {n}")
    s, t = pr.edges[e]
    new_states = [f"{e}#{i}" for i in range(1, n)]
    new_edges = [f"{e}/{i}" for i in range(1, n + 1)]
    for lab in new_states:
        if lab in pr.states:
            raise LabelClash(f"state {lab!r} already present")
    for lab in new_edges:
        if lab in pr.edges:
            raise LabelClash(f"edge {lab!r} already present")
    nodes = [s] + new_states + [t]
    edges = {k: v for k, v in pr.edges.items() if k != e}
    for i, lab in enumerate(new_edges):
        edges[lab] = (nodes[i], nodes[i + 1])
    chain_word = tuple(new_edges)

    def substitute(w):
        out = ()
        for x in w:
            out += chain_word if x == e else (x,)
        return out

    rels = {(substitute(a), substitute(b)) for a, b in pr.relations}
    result = FlowPresentation(pr.states | set(new_states), edges, rels, pr.name)
    return result, substitute, chain_word


def subdivide_edge(pr: FlowPresentation, e, n: int):
    """Replace edge ``e`` by a chain of ``n`` edges ``e/1 .. e/n`` through new
    states ``e#1 .. e#(n-1)``.

    Returns the new presentation and the induced morphism between the
    realizations, which sends the class of ``e`` to the class of the chain.
    """
    result, substitute, _ = _subdivide(pr, e, n)
    X, cls_x = realize_with_classes(pr)
    Y, cls_y = realize_with_classes(result)
    path_map = {cls_x[w]: cls_y[substitute(w)] for w in cls_x}
    f = FlowMorphism(X, Y, {a: a for a in X.states}, path_map)
    return result, f


def _saturated_chains(P: Poset, a, b):
    if b in P.upper_covers[a]:
        yield (a, b)
    for c in P.upper_covers[a]:
        if P.lt(c, b):
            for rest in _saturated_chains(P, c, b):
                yield (a,) + rest


def poset_presentation(P: Poset) -> FlowPresentation:
    """Cover edges ``a-b`` with every pair of saturated chains related."""
    edges = {f"{a}-{b}": (a, b) for a, b in P.covers}
    rels = set()
    for a, b in sorted(P.relation):
        words = sorted(
            tuple(f"{x}-{y}" for x, y in zip(ch, ch[1:])) for ch in _saturated_chains(P, a, b)
        )
        for w1, w2 in itertools.combinations(words, 2):
            rels.add((w1, w2))
    return FlowPresentation(P.elements, edges, rels, P.name)


def flow_presentation(X: Flow):
    """Present a loopless flow by its indecomposable path classes.

    Returns ``(presentation, word_of)`` where ``word_of[p]`` is a fixed
    factorization of ``p`` into indecomposables.  The realization of the
    presentation is isomorphic to ``X`` via ``p -> class of word_of[p]``.
    """
    if not X.is_loopless():
        raise LoopError("only loopless flows can be presented by their indecomposables")
    factor = {}
    for (p, q), r in sorted(X.compose.items()):
        factor.setdefault(r, (p, q))
    word_of: dict = {}

    def word(p):
        if p not in word_of:
            if p in factor:
                a, b = factor[p]
                word_of[p] = word(a) + word(b)
            else:
                word_of[p] = (p,)
        return word_of[p]

    for p in X.path_ids:
        word(p)
    edges = {p: X.paths[p] for p in X.indecomposables}
    rels = set()
    for (p, q), r in X.compose.items():
        lhs = word_of[p] + word_of[q]
        if lhs != word_of[r]:
            rels.add((lhs, word_of[r]))
    return FlowPresentation(X.states, edges, rels, X.name), word_of
