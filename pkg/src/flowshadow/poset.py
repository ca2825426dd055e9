"""Finite posets, bounded posets and the subdivision moves acting on them.

Posets are immutable.  Labels are opaque strings; every set-valued answer
that has to be ordered is ordered by plain string comparison.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

from .errors import (
    CycleError,
    InvalidSize,
    LabelClash,
    NotACover,
    NotBounded,
    NotMonotone,
    NotRemovable,
    UnknownLabel,
)

__all__ = [
    "Poset",
    "PosetMorphism",
    "make_poset",
    "product",
    "chain",
    "antichain",
    "cube",
    "is_bounded",
    "covers",
    "subdivide",
    "unsubdivide",
    "witness_elements",
    "is_isomorphic",
    "class_T_check",
    "canonical_form",
    "fresh_label",
]


@dataclass(frozen=True)
class Poset:
    """A finite poset given by its strict order relation.

    ``relation`` holds the pairs ``(x, y)`` with ``x < y``; reflexivity is
    implicit.  The constructor validates the order axioms, use
    :func:`make_poset` to build a poset from generating pairs.
    """

    elements: frozenset
    relation: frozenset
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "elements", frozenset(self.elements))
        object.__setattr__(self, "relation", frozenset(self.relation))
        if not self.elements:
            raise InvalidSize("a poset must have at least one element")
        for a, b in self.relation:
            if a not in self.elements or b not in self.elements:
                raise UnknownLabel(f"pair ({a}, {b}) uses a label outside the poset")
            if a == b:
                raise CycleError(f"strict relation contains ({a}, {a})")
        for a, b in self.relation:
            if (b, a) in self.relation:
                raise CycleError(f"{a} < {b} and {b} < {a}")
            for c in self.above[b]:
                if (a, c) not in self.relation:
                    raise CycleError(f"relation is not transitive: {a} < {b} < {c}")

    @classmethod
    def _trusted(cls, elements, relation, name=""):
        # skips validation; only for relations known to be strict orders
        obj = object.__new__(cls)
        object.__setattr__(obj, "elements", frozenset(elements))
        object.__setattr__(obj, "relation", frozenset(relation))
        object.__setattr__(obj, "name", name)
        return obj

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.labels)

    def __contains__(self, x):
        return x in self.elements

    @cached_property
    def labels(self) -> tuple:
        return tuple(sorted(self.elements))

    @cached_property
    def above(self) -> dict:
        up = {x: set() for x in self.elements}
        for a, b in self.relation:
            up[a].add(b)
        return {x: frozenset(s) for x, s in up.items()}

    @cached_property
    def below(self) -> dict:
        down = {x: set() for x in self.elements}
        for a, b in self.relation:
            down[b].add(a)
        return {x: frozenset(s) for x, s in down.items()}

    def leq(self, x, y) -> bool:
        return x == y or (x, y) in self.relation

    def lt(self, x, y) -> bool:
        return (x, y) in self.relation

    def comparable(self, x, y) -> bool:
        return self.leq(x, y) or self.leq(y, x)

    def open_interval(self, x, y) -> frozenset:
        return self.above[x] & self.below[y]

    @cached_property
    def covers(self) -> tuple:
        out = []
        for a, b in self.relation:
            if not self.open_interval(a, b):
                out.append((a, b))
        return tuple(sorted(out))

    @cached_property
    def upper_covers(self) -> dict:
        res = {x: [] for x in self.elements}
        for a, b in self.covers:
            res[a].append(b)
        return {x: tuple(v) for x, v in res.items()}

    @cached_property
    def lower_covers(self) -> dict:
        res = {x: [] for x in self.elements}
        for a, b in self.covers:
            res[b].append(a)
        return {x: tuple(v) for x, v in res.items()}

    @cached_property
    def minimum(self):
        """The least element, or None."""
        lows = [x for x in self.labels if not self.below[x]]
        if len(lows) == 1 and len(self.above[lows[0]]) == len(self.elements) - 1:
            return lows[0]
        return None

    @cached_property
    def maximum(self):
        """The greatest element, or None."""
        highs = [x for x in self.labels if not self.above[x]]
        if len(highs) == 1 and len(self.below[highs[0]]) == len(self.elements) - 1:
            return highs[0]
        return None

    def relabel(self, mapping: Mapping, name=None) -> "Poset":
        return Poset._trusted(
            (mapping[x] for x in self.elements),
            ((mapping[a], mapping[b]) for a, b in self.relation),
            self.name if name is None else name,
        )


@dataclass(frozen=True)
class PosetMorphism:
    """A monotone map between two posets."""

    source: Poset
    target: Poset
    mapping: Mapping

    def __post_init__(self):
        mapping = dict(self.mapping)
        object.__setattr__(self, "mapping", mapping)
        if set(mapping) != set(self.source.elements):
            missing = sorted(set(self.source.elements) - set(mapping))
            extra = sorted(set(mapping) - set(self.source.elements))
            raise UnknownLabel(f"map domain mismatch: missing={missing} extra={extra}")
        for x, fx in mapping.items():
            if fx not in self.target.elements:
                raise UnknownLabel(f"{x} is sent to {fx}, which is not in the target")
        for a, b in self.source.relation:
            if not self.target.leq(mapping[a], mapping[b]):
                raise NotMonotone(f"{a} < {b} but {mapping[a]} is not <= {mapping[b]}")

    def __call__(self, x):
        return self.mapping[x]

    def is_injective(self) -> bool:
        return len(set(self.mapping.values())) == len(self.mapping)

    def compose(self, other: "PosetMorphism") -> "PosetMorphism":
        """``other`` after ``self``."""
        return PosetMorphism(
            self.source, other.target, {x: other(fx) for x, fx in self.mapping.items()}
        )

    def inverse(self) -> "PosetMorphism":
        return PosetMorphism(self.target, self.source, {v: k for k, v in self.mapping.items()})


def _transitive_closure(elements, succ):
    closure = set()
    for start in elements:
        seen = set()
        stack = list(succ[start])
        while stack:
            v = stack.pop()
            if v in seen:
                continue
            seen.add(v)
            stack.extend(succ[v])
        for v in seen:
            closure.add((start, v))
    return closure


def make_poset(elements: Iterable, pairs: Iterable = (), name: str = "") -> Poset:
    """Build the poset whose order is the reflexive-transitive closure of ``pairs``."""
    elements = frozenset(elements)
    if not elements:
        raise InvalidSize("a poset must have at least one element")
    succ = {x: set() for x in elements}
    for a, b in pairs:
        for lab in (a, b):
            if lab not in elements:
                raise UnknownLabel(f"label {lab!r} is not an element")
        if a != b:
            succ[a].add(b)
    closure = _transitive_closure(elements, succ)
    for a, b in sorted(closure):
        if a == b:
            partner = next(v for v in sorted(succ[a]) if (v, a) in closure or v == a)
            raise CycleError(f"{a} <= {partner} and {partner} <= {a} with {a} != {partner}")
    return Poset._trusted(elements, closure, name)


def _product_label(parts) -> str:
    return "(" + ",".join(parts) + ")"


def product(*posets: Poset) -> Poset:
    """Cartesian product with the coordinatewise order.

    Element labels are ``(a,b,...)``; the product of a single poset relabels
    ``a`` as ``(a)``.
    """
    if not posets:
        raise InvalidSize("product needs at least one factor")
    tuples = list(itertools.product(*(p.labels for p in posets)))
    label = {t: _product_label(t) for t in tuples}
    rel = []
    for s in tuples:
        for t in tuples:
            if s != t and all(p.leq(a, b) for p, a, b in zip(posets, s, t)):
                rel.append((label[s], label[t]))
    return Poset._trusted(label.values(), rel)


def chain(k: int) -> Poset:
    """The total order ``0 < 1 < ... < k-1``."""
    if k < 1:
        raise InvalidSize(f"chain length must be positive, got {k}")
    labels = [str(i) for i in range(k)]
    rel = [(labels[i], labels[j]) for i in range(k) for j in range(i + 1, k)]
    return Poset._trusted(labels, rel, f"chain{k}")


def antichain(k: int) -> Poset:
    if k < 1:
        raise InvalidSize(f"antichain size must be positive, got {k}")
    return Poset._trusted([str(i) for i in range(k)], [], f"antichain{k}")


def cube(n: int) -> Poset:
    """The Boolean lattice ``{0<1}^n`` with labels like ``(0,1,1)``."""
    if n < 1:
        raise InvalidSize(f"cube dimension must be positive, got {n}")
    p = product(*[chain(2)] * n)
    object.__setattr__(p, "name", f"cube{n}")
    return p


def is_bounded(P: Poset) -> bool:
    bottom, top = P.minimum, P.maximum
    return bottom is not None and top is not None and bottom != top


def covers(P: Poset) -> tuple:
    """Cover pairs ``(x, y)`` with ``]x, y[`` empty, sorted."""
    return P.covers


def fresh_label(P: Poset, prefix: str = "z") -> str:
    i = 0
    while f"{prefix}{i}" in P.elements:
        i += 1
    return f"{prefix}{i}"


def subdivide(P: Poset, x, y, z=None) -> Poset:
    """Insert a new element ``z`` into the cover pair ``x < y``."""
    if x not in P.elements or y not in P.elements:
        raise UnknownLabel(f"({x}, {y}) is not a pair of elements")
    if not P.lt(x, y) or P.open_interval(x, y):
        raise NotACover(f"({x}, {y}) is not a cover pair")
    if z is None:
        z = fresh_label(P)
    elif z in P.elements:
        raise LabelClash(f"label {z!r} already present")
    rel = set(P.relation)
    for a in P.below[x] | {x}:
        rel.add((a, z))
    for b in P.above[y] | {y}:
        rel.add((z, b))
    return Poset._trusted(P.elements | {z}, rel, P.name)


def removable(P: Poset, z) -> bool:
    ups, downs = P.upper_covers[z], P.lower_covers[z]
    if len(ups) != 1 or len(downs) != 1:
        return False
    return P.open_interval(downs[0], ups[0]) == {z}


def unsubdivide(P: Poset, z) -> Poset:
    """Remove an element sitting alone inside a cover-like interval."""
    if z not in P.elements:
        raise UnknownLabel(f"label {z!r} is not an element")
    if not removable(P, z):
        raise NotRemovable(f"{z} is not the unique element of an interval ]x,y[")
    rel = {(a, b) for a, b in P.relation if z not in (a, b)}
    return Poset._trusted(P.elements - {z}, rel, P.name)


def _minimum_of(P: Poset, subset):
    for m in subset:
        if all(P.leq(m, s) for s in subset):
            return m
    return None


def _maximum_of(P: Poset, subset):
    for m in subset:
        if all(P.leq(s, m) for s in subset):
            return m
    return None


def witness_elements(P: Poset) -> frozenset:
    """Interior elements whose strict up-set has a least element and whose
    strict down-set has a greatest element.

    These are the only places where a single subdivision step could have
    inserted a vertex.
    """
    if not is_bounded(P):
        raise NotBounded(f"poset {P.name or ''} is not bounded".replace("  ", " "))
    out = set()
    for z in P.elements:
        if z in (P.minimum, P.maximum):
            continue
        if _minimum_of(P, P.above[z]) is not None and _maximum_of(P, P.below[z]) is not None:
            out.add(z)
    return frozenset(out)


# -- canonical forms ----------------------------------------------------------


def _refined_colors(P: Poset) -> dict:
    color = {x: (len(P.below[x]), len(P.above[x])) for x in P.elements}
    ncolors = len(set(color.values()))
    while True:
        sig = {
            x: (
                color[x],
                tuple(sorted(color[b] for b in P.below[x])),
                tuple(sorted(color[a] for a in P.above[x])),
            )
            for x in P.elements
        }
        ids = {s: i for i, s in enumerate(sorted(set(sig.values())))}
        new = {x: ids[sig[x]] for x in P.elements}
        if len(ids) == ncolors:
            return new
        color, ncolors = new, len(ids)


def canonical_form(P: Poset):
    """Return ``(key, order)``: an isomorphism-invariant key and the element
    ordering realizing it.  Equal keys mean isomorphic posets."""
    color = _refined_colors(P)
    labels = P.labels
    best_rows = None
    best_order = None

    def code(a, b):
        if P.lt(a, b):
            return 1
        if P.lt(b, a):
            return 2
        return 0

    def rec(prefix, rows, remaining):
        nonlocal best_rows, best_order
        if not remaining:
            if best_rows is None or rows < best_rows:
                best_rows, best_order = rows, prefix
            return
        i = len(prefix)
        cand = {v: (color[v], tuple(code(prefix[j], v) for j in range(i))) for v in remaining}
        low = min(cand.values())
        new_rows = rows + [low]
        if best_rows is not None and new_rows > best_rows[: i + 1]:
            return
        # swapping two twins is an automorphism fixing the prefix
        seen_twins = set()
        for v in sorted(remaining):
            if cand[v] != low:
                continue
            twin = (P.below[v], P.above[v])
            if twin in seen_twins:
                continue
            seen_twins.add(twin)
            rec(prefix + [v], new_rows, remaining - {v})

    rec([], [], frozenset(labels))
    key = (len(labels), tuple(best_rows))
    return key, tuple(best_order)


def is_isomorphic(P: Poset, Q: Poset) -> PosetMorphism | None:
    """An order isomorphism ``P -> Q`` or None."""
    if len(P) != len(Q) or len(P.relation) != len(Q.relation):
        return None
    kp, op = canonical_form(P)
    kq, oq = canonical_form(Q)
    if kp != kq:
        return None
    return PosetMorphism(P, Q, dict(zip(op, oq)))


def class_T_check(f: PosetMorphism) -> bool:
    """Membership of a poset map in the generating class of generalized
    T-homotopies: bounded finite ends, one-to-one, strictly increasing,
    and extremal elements preserved."""
    P1, P2 = f.source, f.target
    if not (is_bounded(P1) and is_bounded(P2)):
        return False
    if not f.is_injective():
        return False
    if any(not P2.lt(f(a), f(b)) for a, b in P1.relation):
        return False
    return f(P1.minimum) == P2.minimum and f(P1.maximum) == P2.maximum
