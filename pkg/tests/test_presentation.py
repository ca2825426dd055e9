import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import corpus_posets, segment_presentation, square_presentation
from flowshadow.errors import (
    CyclicPresentation,
    EndpointMismatch,
    InvalidSize,
    LabelClash,
    UnknownEdge,
)
from flowshadow.flow import find_isomorphism, flow_from_poset, state_order
from flowshadow.poset import chain, cube, is_bounded, is_isomorphic, subdivide
from flowshadow.presentation import (
    add_relation,
    attach_edge,
    flow_presentation,
    make_presentation,
    poset_presentation,
    realize,
    realize_with_classes,
    subdivide_edge,
)
from oracles import all_words, assert_associative, naive_congruence


def oracle_classes(pr):
    return naive_congruence(all_words(pr.edges), list(pr.relations))


def test_free_composition():
    pr = make_presentation({"0", "a", "1"}, {"0a": ("0", "a"), "a1": ("a", "1")})
    X = realize(pr)
    assert set(X.paths) == {"0a", "a1", "0a.a1"}


def test_square_with_and_without_relation():
    filled, unfilled = square_presentation(True), square_presentation(False)
    assert len(oracle_classes(filled)) == 5
    assert len(oracle_classes(unfilled)) == 6
    Xf, Xu = realize(filled), realize(unfilled)
    assert len(Xf.paths) == 5 and len(Xu.paths) == 6
    assert len(Xf.between("0", "1")) == 1
    assert len(Xu.between("0", "1")) == 2
    assert find_isomorphism(Xf, flow_from_poset(cube(2))) is not None


@pytest.mark.parametrize("filled", [True, False])
def test_realize_matches_oracle_partition(filled):
    pr = square_presentation(filled)
    _, class_of = realize_with_classes(pr)
    ours = {}
    for w, c in class_of.items():
        ours.setdefault(c, set()).add(w)
    assert {frozenset(v) for v in ours.values()} == set(oracle_classes(pr))


def test_realize_cube3_matches_oracle_partition():
    pr = poset_presentation(cube(3))
    _, class_of = realize_with_classes(pr)
    ours = {}
    for w, c in class_of.items():
        ours.setdefault(c, set()).add(w)
    oracle = set(oracle_classes(pr))
    assert {frozenset(v) for v in ours.values()} == oracle
    assert len(oracle) == 19


def test_attach_edge():
    pr = make_presentation({"0", "1"}, {})
    seg = attach_edge(pr, "0", "1", "U")
    assert realize(seg).paths == {"U": ("0", "1")}
    with pytest.raises(CyclicPresentation):
        attach_edge(seg, "1", "0", "V")
    with pytest.raises(LabelClash):
        attach_edge(seg, "0", "1", "U")
    globe2 = attach_edge(seg, "0", "1", "V")
    assert realize(globe2).between("0", "1") == ("U", "V")


def test_add_relation():
    sq = add_relation(square_presentation(False), "0a.a1", "0b.b1")
    assert realize(sq) == realize(square_presentation(True))
    same = add_relation(square_presentation(False), "0a.a1", "0a.a1")
    assert realize(same) == realize(square_presentation(False))
    with pytest.raises(EndpointMismatch):
        add_relation(square_presentation(False), "0a", "0b")
    with pytest.raises(EndpointMismatch):
        add_relation(square_presentation(False), "0a.b1", "0b.b1")
    with pytest.raises(UnknownEdge):
        add_relation(square_presentation(False), "0a.zz", "0b.b1")


def test_subdivide_segment_in_two():
    new, f = subdivide_edge(segment_presentation(), "U", 2)
    Y = realize(new)
    assert len(Y.states) == 3
    assert f.path_map == {"U": "U/1.U/2"}
    assert Y.paths["U/1.U/2"] == ("0", "1")


@pytest.mark.parametrize("n", [2, 3, 5])
def test_subdivide_adds_states(n):
    pr = square_presentation(True)
    new, _ = subdivide_edge(pr, "0a", n)
    assert len(realize(new).states) == len(realize(pr).states) + n - 1


def test_subdivided_filled_square_keeps_one_diagonal():
    new, f = subdivide_edge(square_presentation(True), "0a", 2)
    assert len(oracle_classes(new)) == len(realize(new).paths)
    assert len(realize(new).between("0", "1")) == 1


def test_subdivide_errors():
    with pytest.raises(UnknownEdge):
        subdivide_edge(segment_presentation(), "V", 2)
    with pytest.raises(InvalidSize):
        subdivide_edge(segment_presentation(), "U", 1)


def test_poset_presentation_examples():
    sq = poset_presentation(cube(2))
    assert len(sq.edges) == 4 and len(sq.relations) == 1
    ch = poset_presentation(chain(3))
    assert len(ch.edges) == 2 and not ch.relations
    X = realize(poset_presentation(cube(3)))
    assert len(X.paths) == 19
    assert find_isomorphism(X, flow_from_poset(cube(3))) is not None


@pytest.mark.parametrize(
    "P", [P for P in corpus_posets() if is_bounded(P) and len(P) <= 8], ids=lambda P: P.name
)
def test_poset_presentation_realizes_flow_of_poset(P):
    X = realize(poset_presentation(P))
    assert_associative(X)
    assert find_isomorphism(X, flow_from_poset(P)) is not None


def test_two_enumeration_orders_agree():
    pr = poset_presentation(cube(3))
    a = realize(pr, random.Random(1))
    b = realize(pr, random.Random(2))
    assert find_isomorphism(a, b) is not None


@given(st.integers(0, 3), st.integers(2, 4))
@settings(max_examples=20, deadline=None)
def test_subdivide_edge_matches_poset_subdivision(edge_index, n):
    P = cube(2)
    pr = poset_presentation(P)
    e = pr.edge_ids[edge_index]
    x, y = pr.edges[e]
    new, _ = subdivide_edge(pr, e, n)
    Q = P
    lower = x
    for i in range(1, n):
        Q = subdivide(Q, lower, y, f"{e}#{i}")
        lower = f"{e}#{i}"
    assert state_order(realize(new)) == Q


def test_flow_presentation_round_trip(flows):
    for X in flows:
        if not X.is_loopless():
            continue
        pr, word_of = flow_presentation(X)
        Y, class_of = realize_with_classes(pr)
        f = find_isomorphism(X, Y)
        assert f is not None
        assert {class_of[w] for w in word_of.values()} == set(Y.paths)
