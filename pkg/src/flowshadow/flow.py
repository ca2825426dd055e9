"""Finite flows with discrete path spaces.

A flow here keeps, for every ordered pair of states, a finite set of path
classes together with an associative composition defined on every
composable pair.  Path ids are opaque strings.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

from .errors import (
    AssociativityError,
    EndpointError,
    LoopError,
    MissingComposite,
    MorphismError,
    UnknownPath,
    UnknownState,
)
from .poset import Poset, make_poset

__all__ = [
    "Flow",
    "FlowMorphism",
    "make_flow",
    "flow_from_set",
    "flow_from_poset",
    "globe",
    "restriction",
    "surrounded",
    "state_order",
    "initial_states",
    "final_states",
    "weak_s_homotopy_shadow",
    "opposite",
    "identity",
    "find_isomorphism",
]


@dataclass(frozen=True, eq=True)
class Flow:
    states: frozenset
    paths: Mapping  # path id -> (source, target)
    compose: Mapping  # (p, q) -> p*q
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "states", frozenset(self.states))
        object.__setattr__(self, "paths", {p: tuple(st) for p, st in dict(self.paths).items()})
        object.__setattr__(self, "compose", {tuple(k): v for k, v in dict(self.compose).items()})
        self._validate()

    def __hash__(self):
        return hash((self.states, frozenset(self.paths.items()), frozenset(self.compose.items())))

    def _validate(self):
        for p, (s, t) in self.paths.items():
            if s not in self.states or t not in self.states:
                raise UnknownState(f"path {p} : {s} -> {t} uses an unknown state")
        for (p, q), r in self.compose.items():
            for x in (p, q, r):
                if x not in self.paths:
                    raise UnknownPath(f"compose {p} {q} = {r} names unknown path {x}")
            if self.target(p) != self.source(q):
                raise EndpointError(f"compose {p} {q}: target of {p} is not the source of {q}")
            if self.source(r) != self.source(p) or self.target(r) != self.target(q):
                raise EndpointError(
                    f"compose {p} {q} = {r}: {r} must run {self.source(p)} -> {self.target(q)}"
                )
        for p, q in self.composable_pairs:
            if (p, q) not in self.compose:
                raise MissingComposite(f"no composite given for composable pair ({p}, {q})")
        for p, q in self.composable_pairs:
            pq = self.compose[(p, q)]
            for r in self.outgoing(self.target(q)):
                left = self.compose[(pq, r)]
                right = self.compose[(p, self.compose[(q, r)])]
                if left != right:
                    raise AssociativityError(
                        f"({p}*{q})*{r} = {left} but {p}*({q}*{r}) = {right}"
                    )

    def source(self, p):
        return self.paths[p][0]

    def target(self, p):
        return self.paths[p][1]

    @cached_property
    def labels(self) -> tuple:
        return tuple(sorted(self.states))

    @cached_property
    def path_ids(self) -> tuple:
        return tuple(sorted(self.paths))

    @cached_property
    def _out(self):
        d = defaultdict(list)
        for p in self.path_ids:
            d[self.source(p)].append(p)
        return d

    @cached_property
    def _in(self):
        d = defaultdict(list)
        for p in self.path_ids:
            d[self.target(p)].append(p)
        return d

    @cached_property
    def _between(self):
        d = defaultdict(list)
        for p in self.path_ids:
            d[self.paths[p]].append(p)
        return d

    def outgoing(self, a) -> tuple:
        return tuple(self._out.get(a, ()))

    def incoming(self, a) -> tuple:
        return tuple(self._in.get(a, ()))

    def between(self, a, b) -> tuple:
        return tuple(self._between.get((a, b), ()))

    @cached_property
    def composable_pairs(self) -> tuple:
        return tuple((p, q) for p in self.path_ids for q in self.outgoing(self.target(p)))

    def mul(self, p, q):
        return self.compose[(p, q)]

    @cached_property
    def indecomposables(self) -> tuple:
        """Path classes that are not the composite of two path classes."""
        composites = set(self.compose.values())
        return tuple(p for p in self.path_ids if p not in composites)

    def is_loopless(self) -> bool:
        return all(s != t for s, t in self.paths.values())


@dataclass(frozen=True)
class FlowMorphism:
    """A state map and a path-class map preserving endpoints and composition."""

    source: Flow
    target: Flow
    state_map: Mapping
    path_map: Mapping

    def __post_init__(self):
        object.__setattr__(self, "state_map", dict(self.state_map))
        object.__setattr__(self, "path_map", dict(self.path_map))
        X, Y = self.source, self.target
        if set(self.state_map) != set(X.states):
            raise MorphismError("state map is not defined exactly on the source states")
        if set(self.path_map) != set(X.paths):
            raise MorphismError("path map is not defined exactly on the source paths")
        for a, b in self.state_map.items():
            if b not in Y.states:
                raise MorphismError(f"state {a} is sent to unknown state {b}")
        for p, fp in self.path_map.items():
            if fp not in Y.paths:
                raise MorphismError(f"path {p} is sent to unknown path {fp}")
            s, t = X.paths[p]
            if Y.paths[fp] != (self.state_map[s], self.state_map[t]):
                raise MorphismError(f"path {p} : {s} -> {t} is sent to {fp} with wrong endpoints")
        for (p, q), r in X.compose.items():
            if Y.mul(self.path_map[p], self.path_map[q]) != self.path_map[r]:
                raise MorphismError(f"composite {p}*{q} = {r} is not preserved")

    def then(self, other: "FlowMorphism") -> "FlowMorphism":
        """The composite ``other`` after ``self``."""
        if other.source != self.target:
            raise MorphismError("morphisms are not composable")
        return FlowMorphism(
            self.source,
            other.target,
            {a: other.state_map[b] for a, b in self.state_map.items()},
            {p: other.path_map[q] for p, q in self.path_map.items()},
        )

    def inverse(self) -> "FlowMorphism":
        if not weak_s_homotopy_shadow(self):
            raise MorphismError("only bijective morphisms can be inverted")
        return FlowMorphism(
            self.target,
            self.source,
            {b: a for a, b in self.state_map.items()},
            {q: p for p, q in self.path_map.items()},
        )


def make_flow(states: Iterable, paths: Mapping, compose: Mapping, name: str = "") -> Flow:
    return Flow(frozenset(states), paths, compose, name)


def flow_from_set(S: Iterable, name: str = "") -> Flow:
    return Flow(frozenset(S), {}, {}, name)


def _pair_id(a, b) -> str:
    return f"({a},{b})"


def flow_from_poset(P: Poset, name: str | None = None) -> Flow:
    """One path class ``(a,b)`` per strict pair ``a < b``."""
    paths = {_pair_id(a, b): (a, b) for a, b in P.relation}
    comp = {}
    for a, b in P.relation:
        for c in P.above[b]:
            comp[(_pair_id(a, b), _pair_id(b, c))] = _pair_id(a, c)
    return Flow(P.elements, paths, comp, P.name if name is None else name)


def globe(Z: Iterable, name: str = "") -> Flow:
    """Two states ``0`` and ``1`` and one path ``0 -> 1`` per element of Z."""
    return Flow(frozenset({"0", "1"}), {z: ("0", "1") for z in Z}, {}, name)


def _check_states(X: Flow, A) -> frozenset:
    A = frozenset(A)
    unknown = A - X.states
    if unknown:
        raise UnknownState(f"unknown states {sorted(unknown)}")
    return A


def restriction(X: Flow, A: Iterable) -> Flow:
    A = _check_states(X, A)
    paths = {p: st for p, st in X.paths.items() if st[0] in A and st[1] in A}
    comp = {k: v for k, v in X.compose.items() if k[0] in paths and k[1] in paths}
    return Flow(A, paths, comp, X.name)


def surrounded(X: Flow, A: Iterable, B: Iterable) -> bool:
    """Whether every state of A lies in B or on some path from B to B."""
    A = _check_states(X, A)
    B = _check_states(X, B)
    for a in A:
        if a in B:
            continue
        entered = any(X.source(g) in B for g in X.incoming(a))
        left = any(X.target(g) in B for g in X.outgoing(a))
        if not (entered and left):
            return False
    return True


def state_order(X: Flow) -> Poset:
    for p in X.path_ids:
        s, t = X.paths[p]
        if s == t:
            raise LoopError(f"state {s} carries the loop {p}")
    pairs = sorted(set(X.paths.values()))
    try:
        return make_poset(X.states, pairs, name=X.name)
    except Exception as exc:  # a cycle through states that was not closed up
        raise LoopError(str(exc)) from exc


def initial_states(X: Flow) -> frozenset:
    return frozenset(a for a in X.states if not X.incoming(a))


def final_states(X: Flow) -> frozenset:
    return frozenset(a for a in X.states if not X.outgoing(a))


def weak_s_homotopy_shadow(f: FlowMorphism) -> bool:
    """Bijective on states and on path classes."""
    X, Y = f.source, f.target
    return (
        len(set(f.state_map.values())) == len(X.states) == len(Y.states)
        and len(set(f.path_map.values())) == len(X.paths) == len(Y.paths)
    )


def opposite(X: Flow) -> Flow:
    paths = {p: (t, s) for p, (s, t) in X.paths.items()}
    comp = {(q, p): r for (p, q), r in X.compose.items()}
    return Flow(X.states, paths, comp, X.name)


def identity(X: Flow) -> FlowMorphism:
    return FlowMorphism(X, X, {a: a for a in X.states}, {p: p for p in X.paths})


# -- isomorphism search -------------------------------------------------------


def _state_colors(X: Flow) -> dict:
    color = {a: (len(X.incoming(a)), len(X.outgoing(a))) for a in X.states}
    n = len(set(color.values()))
    while True:
        sig = {
            a: (
                color[a],
                tuple(sorted(color[X.target(p)] for p in X.outgoing(a))),
                tuple(sorted(color[X.source(p)] for p in X.incoming(a))),
            )
            for a in X.states
        }
        ids = {s: i for i, s in enumerate(sorted(set(sig.values())))}
        new = {a: ids[sig[a]] for a in X.states}
        if len(ids) == n:
            return {a: sig[a] for a in X.states}
        color, n = new, len(ids)


def find_isomorphism(X: Flow, Y: Flow) -> FlowMorphism | None:
    """A flow isomorphism ``X -> Y`` or None (backtracking search)."""
    if len(X.states) != len(Y.states) or len(X.paths) != len(Y.paths):
        return None
    if len(X.compose) != len(Y.compose):
        return None
    cx, cy = _state_colors(X), _state_colors(Y)
    if sorted(cx.values()) != sorted(cy.values()):
        return None
    xs = sorted(X.states, key=lambda a: (sum(1 for b in X.states if cx[b] == cx[a]), a))
    smap: dict = {}
    used: set = set()

    def consistent(a, b):
        for a2, b2 in smap.items():
            if len(X.between(a, a2)) != len(Y.between(b, b2)):
                return False
            if len(X.between(a2, a)) != len(Y.between(b2, b)):
                return False
        return len(X.between(a, a)) == len(Y.between(b, b))

    xpaths = sorted(X.paths, key=lambda p: (p not in X.indecomposables, p))
    pairs_of = defaultdict(list)
    for (p, q), r in X.compose.items():
        for x in (p, q, r):
            pairs_of[x].append((p, q, r))

    def match_paths(i, pmap, pused):
        if i == len(xpaths):
            return dict(pmap)
        p = xpaths[i]
        s, t = X.paths[p]
        for q in Y.between(smap[s], smap[t]):
            if q in pused:
                continue
            pmap[p] = q
            ok = True
            for a, b, c in pairs_of[p]:
                if a in pmap and b in pmap and c in pmap:
                    if Y.mul(pmap[a], pmap[b]) != pmap[c]:
                        ok = False
                        break
            if ok:
                pused.add(q)
                res = match_paths(i + 1, pmap, pused)
                if res is not None:
                    return res
                pused.discard(q)
            del pmap[p]
        return None

    def match_states(i):
        if i == len(xs):
            return match_paths(0, {}, set())
        a = xs[i]
        for b in sorted(Y.states):
            if b in used or cy[b] != cx[a] or not consistent(a, b):
                continue
            smap[a] = b
            used.add(b)
            res = match_states(i + 1)
            if res is not None:
                return res
            used.discard(b)
            del smap[a]
        return None

    pmap = match_states(0)
    if pmap is None:
        return None
    return FlowMorphism(X, Y, dict(smap), pmap)
