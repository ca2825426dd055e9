import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import corpus_posets
from flowshadow.errors import (
    CycleError,
    InvalidSize,
    LabelClash,
    NotACover,
    NotBounded,
    NotMonotone,
    NotRemovable,
    UnknownLabel,
)
from flowshadow.poset import (
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
from oracles import brute_isomorphic, cover_pairs, maximal_chains, witness_scan


@st.composite
def posets(draw, max_size=7):
    n = draw(st.integers(1, max_size))
    labels = [f"p{i}" for i in range(n)]
    pairs = draw(
        st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=2 * n)
    )
    # natural labeling keeps the closure acyclic
    rel = [(labels[min(a, b)], labels[max(a, b)]) for a, b in pairs if a != b]
    return make_poset(labels, rel)


@st.composite
def bounded_posets(draw, max_inner=5):
    inner = draw(posets(max_inner))
    rel = list(inner.relation) + [("bot", x) for x in inner.elements] + [(x, "top") for x in inner.elements]
    return make_poset(inner.elements | {"bot", "top"}, rel)


# -- make_poset ---------------------------------------------------------------


def test_make_poset_closes_transitively():
    P = make_poset("abc", [("a", "b"), ("b", "c")])
    assert P.lt("a", "c")
    assert P.relation == {("a", "b"), ("b", "c"), ("a", "c")}


def test_make_poset_rejects_cycle():
    with pytest.raises(CycleError):
        make_poset("ab", [("a", "b"), ("b", "a")])


def test_make_poset_singleton_and_unknown_label():
    P = make_poset("a", [])
    assert len(P) == 1 and P.leq("a", "a")
    with pytest.raises(UnknownLabel):
        make_poset("a", [("a", "b")])
    with pytest.raises(InvalidSize):
        make_poset([], [])


@given(posets())
def test_closure_is_idempotent(P):
    assert make_poset(P.elements, P.relation) == P


# -- product / chain / cube ---------------------------------------------------


def test_square_product_has_two_incomparable_middles():
    S = product(chain(2), chain(2))
    assert len(S) == 4
    assert not S.comparable("(0,1)", "(1,0)")


def test_product_with_point_is_isomorphic():
    for P in corpus_posets():
        assert is_isomorphic(product(P, chain(1)), P) is not None


def test_grid_maximal_chains():
    # brute-force chain enumeration: 3 maximal chains, 4 elements each
    G = product(chain(2), chain(3))
    chains = maximal_chains(G.elements, G.leq)
    assert len(G) == 6
    assert len(chains) == 3
    assert sorted(len(c) for c in chains) == [4, 4, 4]


@given(posets(4), posets(3))
@settings(max_examples=40)
def test_product_order_law(P, Q):
    R = product(P, Q)
    for a, b, c, d in itertools.product(P.labels, Q.labels, P.labels, Q.labels):
        assert R.leq(f"({a},{b})", f"({c},{d})") == (P.leq(a, c) and Q.leq(b, d))


def test_chain_and_sizes():
    assert chain(2).relation == {("0", "1")}
    assert not is_bounded(chain(1))
    with pytest.raises(InvalidSize):
        chain(0)
    with pytest.raises(InvalidSize):
        cube(0)


def test_chain4_witnesses():
    assert witness_elements(chain(4)) == {"1", "2"}


def test_cube_basics():
    assert is_isomorphic(cube(1), chain(2)) is not None
    assert is_isomorphic(cube(2), product(chain(2), chain(2))) is not None
    C3 = cube(3)
    assert len(C3) == 8
    assert len(covers(C3)) == 12 == len(cover_pairs(C3.elements, C3.leq))


# -- bounded / covers ---------------------------------------------------------


def test_is_bounded_examples():
    assert is_bounded(cube(3))
    assert not is_bounded(chain(1))
    assert not is_bounded(antichain(2))


def test_covers_examples():
    assert covers(chain(3)) == (("0", "1"), ("1", "2"))
    assert len(covers(cube(2))) == 4


@given(posets())
def test_covers_match_oracle(P):
    assert set(covers(P)) == cover_pairs(P.elements, P.leq)


# -- subdivision --------------------------------------------------------------


def test_subdivide_segment_gives_chain3():
    P = subdivide(chain(2), "0", "1", "A")
    assert is_isomorphic(P, chain(3)) is not None


def test_subdivide_square_edge():
    P = subdivide(cube(2), "(0,0)", "(0,1)", "z")
    assert len(P) == 5
    assert P.upper_covers["z"] == ("(0,1)",)
    assert P.lower_covers["z"] == ("(0,0)",)


def test_subdivide_errors():
    with pytest.raises(NotACover):
        subdivide(chain(3), "0", "2", "z")
    with pytest.raises(NotACover):
        subdivide(chain(3), "1", "0", "z")
    with pytest.raises(LabelClash):
        subdivide(chain(3), "0", "1", "2")


def test_fresh_label_skips_clashes():
    P = make_poset(["z0", "b"], [("z0", "b")])
    assert "z1" in subdivide(P, "z0", "b").elements


def test_unsubdivide_examples():
    assert is_isomorphic(unsubdivide(chain(3), "1"), chain(2)) is not None
    with pytest.raises(NotRemovable):
        unsubdivide(cube(2), "(0,1)")
    with pytest.raises(NotRemovable):
        unsubdivide(chain(3), "0")


@pytest.mark.parametrize("P", corpus_posets(), ids=lambda P: P.name or str(len(P)))
def test_subdivision_round_trip(P):
    for x, y in covers(P):
        Q = subdivide(P, x, y, "new")
        assert len(Q) == len(P) + 1
        assert is_bounded(Q) == is_bounded(P)
        if is_bounded(Q):
            assert "new" in witness_elements(Q)
        R = unsubdivide(Q, "new")
        assert R == P
        assert is_isomorphic(R, P) is not None


@given(bounded_posets())
@settings(max_examples=60)
def test_inserted_element_is_a_witness(P):
    for x, y in covers(P):
        Q = subdivide(P, x, y, "new")
        assert is_bounded(Q)
        assert "new" in witness_elements(Q)


# -- witness elements ---------------------------------------------------------


def test_witness_examples():
    assert witness_elements(cube(3)) == frozenset()
    assert witness_elements(cube(2)) == {"(0,1)", "(1,0)"}
    assert witness_elements(chain(3)) == {"1"}
    with pytest.raises(NotBounded):
        witness_elements(antichain(2))


@pytest.mark.parametrize("n", [3, 4, 5])
def test_cube_has_no_witness(n):
    C = cube(n)
    assert witness_elements(C) == frozenset() == witness_scan(C.elements, C.leq)


def test_small_cases_have_witnesses():
    # cube(1) has no interior, chain(3) stands in for the one-dimensional case
    assert witness_elements(chain(3))
    assert witness_elements(cube(2))


@given(bounded_posets())
def test_witness_matches_oracle(P):
    assert witness_elements(P) == witness_scan(P.elements, P.leq)


# -- isomorphism --------------------------------------------------------------


def test_isomorphism_examples():
    assert is_isomorphic(cube(2), product(chain(2), chain(2))) is not None
    assert is_isomorphic(chain(3), cube(2)) is None
    C = cube(3)
    labels = C.labels
    perm = list(labels)
    random.Random(7).shuffle(perm)
    relabel = {a: "q" + b for a, b in zip(labels, perm)}
    D = C.relabel(relabel)
    f = is_isomorphic(C, D)
    assert f is not None
    assert all(C.leq(a, b) == D.leq(f(a), f(b)) for a in labels for b in labels)


@given(posets(6), posets(6))
@settings(max_examples=80)
def test_isomorphism_matches_brute_force(P, Q):
    assert (is_isomorphic(P, Q) is not None) == brute_isomorphic(P, Q)


@given(posets(6), st.randoms(use_true_random=False))
@settings(max_examples=60)
def test_canonical_form_is_invariant(P, rnd):
    labels = list(P.labels)
    shuffled = labels[:]
    rnd.shuffle(shuffled)
    Q = P.relabel({a: "r" + b for a, b in zip(labels, shuffled)})
    assert canonical_form(P)[0] == canonical_form(Q)[0]


def test_isomorphism_is_an_equivalence():
    ps = corpus_posets()
    for P in ps:
        assert is_isomorphic(P, P) is not None
    for P, Q, R in itertools.product(ps, repeat=3):
        pq, qr = is_isomorphic(P, Q), is_isomorphic(Q, R)
        if pq is not None:
            assert is_isomorphic(Q, P) is not None
            if qr is not None:
                assert is_isomorphic(P, R) is not None


def test_isomorphism_is_deterministic():
    a = is_isomorphic(cube(3), cube(3))
    b = is_isomorphic(cube(3), cube(3))
    assert a.mapping == b.mapping


# -- class T ------------------------------------------------------------------


def test_class_t_examples():
    g2 = PosetMorphism(chain(2), cube(2), {"0": "(0,0)", "1": "(1,1)"})
    assert class_T_check(g2)
    const = PosetMorphism(chain(2), chain(2), {"0": "0", "1": "0"})
    assert not class_T_check(const)
    short = PosetMorphism(chain(2), chain(3), {"0": "0", "1": "1"})
    assert not class_T_check(short)


def test_poset_morphism_must_be_monotone():
    with pytest.raises(NotMonotone):
        PosetMorphism(chain(2), chain(2), {"0": "1", "1": "0"})
    with pytest.raises(UnknownLabel):
        PosetMorphism(chain(2), chain(2), {"0": "0"})
