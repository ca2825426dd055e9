"""Branching and merging germ spaces of a finite flow.

The branching quotient identifies a path ``x`` with every extension ``x*y``;
the merging quotient identifies ``y`` with every ``x*y``.  Both are computed
as the equivalence relation generated by these identifications.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from ._unionfind import UnionFind
from .errors import UnknownState
from .flow import Flow, opposite

__all__ = ["GermQuotient", "branching_space", "merging_space", "germs_at", "germ_counts"]

BRANCHING = "branching"
MERGING = "merging"


@dataclass(frozen=True)
class GermQuotient:
    flow: Flow
    side: str
    projection: Mapping  # path id -> class representative (least member)

    @property
    def classes(self) -> dict:
        out: dict = {}
        for p, c in sorted(self.projection.items()):
            out.setdefault(c, []).append(p)
        return {c: frozenset(ps) for c, ps in out.items()}

    def __len__(self):
        return len(set(self.projection.values()))

    def anchor(self, c):
        """State carrying the germ class ``c``."""
        return self.flow.source(c) if self.side == BRANCHING else self.flow.target(c)


def _quotient(X: Flow, side: str) -> GermQuotient:
    uf = UnionFind(X.path_ids)
    for (x, y), xy in X.compose.items():
        uf.union(x if side == BRANCHING else y, xy)
    projection = {}
    for group in uf.groups():
        rep = min(group)
        for p in group:
            projection[p] = rep
    return GermQuotient(X, side, projection)


def branching_space(X: Flow) -> GermQuotient:
    return _quotient(X, BRANCHING)


def merging_space(X: Flow) -> GermQuotient:
    # the merging quotient of X is the branching quotient of its opposite
    q = branching_space(opposite(X))
    return GermQuotient(X, MERGING, q.projection)


def germs_at(q: GermQuotient, state) -> frozenset:
    if state not in q.flow.states:
        raise UnknownState(f"unknown state {state!r}")
    return frozenset(c for c in set(q.projection.values()) if q.anchor(c) == state)


def germ_counts(X: Flow) -> dict:
    """``state -> (branching germ count, merging germ count)``."""
    b, m = branching_space(X), merging_space(X)
    return {a: (len(germs_at(b, a)), len(germs_at(m, a))) for a in X.labels}
