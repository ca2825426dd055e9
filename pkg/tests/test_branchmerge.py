import itertools

import pytest

from corpus import corpus_flows, square_presentation
from flowshadow.branchmerge import branching_space, germ_counts, germs_at, merging_space
from flowshadow.errors import UnknownState
from flowshadow.flow import flow_from_poset, flow_from_set, globe, opposite
from flowshadow.poset import chain, cube
from flowshadow.presentation import realize
from oracles import naive_germ_partition

SIDES = ["branching", "merging"]


def quotient(X, side):
    return branching_space(X) if side == "branching" else merging_space(X)


def partition(q):
    return set(q.classes.values())


def composites(X):
    return [(x, y, xy) for (x, y), xy in X.compose.items()]


def test_branching_examples():
    assert len(branching_space(globe({"u", "v"}))) == 2
    sq = branching_space(flow_from_poset(cube(2)))
    assert len(germs_at(sq, "(0,0)")) == 1
    unfilled = branching_space(realize(square_presentation(False)))
    assert len(germs_at(unfilled, "0")) == 2


def test_merging_examples():
    assert len(merging_space(globe({"u", "v", "w"}))) == 3
    sq = merging_space(flow_from_poset(cube(2)))
    assert len(germs_at(sq, "(1,1)")) == 1
    assert len(merging_space(flow_from_set({"a", "b"}))) == 0


def test_germs_at_examples():
    b = branching_space(flow_from_poset(chain(3)))
    assert len(germs_at(b, "1")) == 1
    assert germs_at(b, "2") == frozenset()
    with pytest.raises(UnknownState):
        germs_at(b, "nope")


@pytest.mark.parametrize("side", SIDES)
@pytest.mark.parametrize("X", corpus_flows(), ids=lambda X: X.name or "flow")
def test_germ_sets_partition_classes(X, side):
    q = quotient(X, side)
    per_state = [germs_at(q, a) for a in X.labels]
    assert sum(len(s) for s in per_state) == len(q)
    assert set().union(*per_state) == set(q.projection.values()) if per_state else True


@pytest.mark.parametrize("side", SIDES)
@pytest.mark.parametrize("X", corpus_flows(), ids=lambda X: X.name or "flow")
def test_quotient_matches_fixpoint_oracle(X, side):
    assert partition(quotient(X, side)) == naive_germ_partition(X.path_ids, composites(X), side)


@pytest.mark.parametrize("X", corpus_flows(), ids=lambda X: X.name or "flow")
def test_branching_classes_share_a_source(X):
    for members in branching_space(X).classes.values():
        assert len({X.source(p) for p in members}) == 1
    for members in merging_space(X).classes.values():
        assert len({X.target(p) for p in members}) == 1


@pytest.mark.parametrize("X", corpus_flows(), ids=lambda X: X.name or "flow")
def test_merging_is_branching_of_opposite(X):
    assert partition(merging_space(X)) == partition(branching_space(opposite(X)))
    # the direct definition, without going through the opposite flow
    assert partition(merging_space(X)) == naive_germ_partition(X.path_ids, composites(X), "merging")


@pytest.mark.parametrize("side", SIDES)
@pytest.mark.parametrize(
    "X", [X for X in corpus_flows() if len(X.paths) <= 6], ids=lambda X: X.name or "flow"
)
def test_universal_property_two_colors(X, side):
    q = quotient(X, side)
    paths = X.path_ids
    admissible = 0
    for values in itertools.product(range(2), repeat=len(paths)):
        phi = dict(zip(paths, values))
        ok = all(
            phi[x if side == "branching" else y] == phi[xy] for x, y, xy in composites(X)
        )
        if ok:
            admissible += 1
            assert all(phi[p] == phi[q.projection[p]] for p in paths)
    assert admissible == 2 ** len(q)


def test_germ_counts_filled_vs_unfilled():
    assert germ_counts(realize(square_presentation(True)))["0"] == (1, 0)
    assert germ_counts(realize(square_presentation(False)))["0"] == (2, 0)
