import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from treetropy.errors import (Cyclic, NonMaximal, NotConnected, OutOfRange, OverlapTooLarge,
                              SingletonComponent)
from treetropy.enumeration import random_pattern
from treetropy.pattern import (StarClass, StarKind, canonical_form, endpoints, equivalent,
                               incidence_tree, is_canonical, neighbors, rotate, star_class,
                               tree_path, trivial_pattern, validate, valence)

POSITIVE_STAR6 = validate(6, [(0, 1), (4, 5), (1, 2, 3, 4)])


def test_components_are_normalized():
    P = validate(4, [(3, 1), (0, 2), (1, 0)])
    assert P.components == ((0, 1), (0, 2), (1, 3))
    assert str(P) == "4: 0 1 | 0 2 | 1 3"


@pytest.mark.parametrize("n, comps, err", [
    (3, [(0, 1), (1, 3)], OutOfRange),
    (0, [], OutOfRange),
    (3, [(0,), (0, 1, 2)], SingletonComponent),
    (3, [(0, 1), (0, 1, 2)], NonMaximal),
    (4, [(0,), (1, 2, 3)], SingletonComponent),
    (4, [(0, 1, 2), (1, 2, 3)], OverlapTooLarge),
    (4, [(0, 1), (2, 3)], NotConnected),
    (4, [(0, 1), (1, 2)], NotConnected),
    (3, [(0, 1), (1, 2), (0, 2)], Cyclic),
])
def test_invalid_patterns(n, comps, err):
    with pytest.raises(err):
        validate(n, comps)


def test_period_one():
    P = validate(1, [(0,)])
    assert P.is_trivial
    assert trivial_pattern(1) == P


def test_rotation_and_canonical_form():
    P = validate(4, [(0, 2), (0, 1), (1, 3)])
    Q = rotate(P, 1)
    assert Q == validate(4, [(1, 3), (1, 2), (2, 0)])
    assert equivalent(P, Q)
    assert canonical_form(Q) == canonical_form(P)
    assert is_canonical(canonical_form(P))


def _random(seed, n):
    import random
    return random_pattern(n, random.Random(seed))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.integers(2, 11), st.integers(0, 30))
def test_canonical_form_is_rotation_invariant(seed, n, s):
    P = _random(seed, n)
    assert canonical_form(rotate(P, s)) == canonical_form(P)
    assert rotate(rotate(P, s), -s) == P
    C = canonical_form(P)
    assert all(C.components <= rotate(P, t).components for t in range(n))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.integers(2, 11))
def test_incidence_tree_is_a_tree(seed, n):
    P = _random(seed, n)
    T = incidence_tree(P)
    assert len(T.edges()) == T.num_nodes - 1
    assert sum(len(c) for c in P.components) == len(T.edges())
    # consecutive points are exactly the pairs sharing a component
    for a in range(n):
        for b in range(a + 1, n):
            path = tree_path(P, a, b)
            share = any(a in c and b in c for c in P.components)
            assert (len(path) == 2) == share


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(2, 10))
def test_tree_path_matches_networkx(seed, n):
    P = _random(seed, n)
    G = nx.Graph()
    for j, c in enumerate(P.components):
        G.add_edges_from((x, ("hub", j)) for x in c)
    for a in range(n):
        for b in range(n):
            expected = [v for v in nx.shortest_path(G, a, b) if isinstance(v, int)]
            assert tree_path(P, a, b) == expected


def test_positive_star6_basics():
    assert tree_path(POSITIVE_STAR6, 0, 5) == [0, 1, 4, 5]
    assert endpoints(POSITIVE_STAR6) == {0, 2, 3, 5}
    assert valence(POSITIVE_STAR6, 1) == 2 and valence(POSITIVE_STAR6, 2) == 1
    assert neighbors(POSITIVE_STAR6, 4) == [1, 2, 3, 5]
    assert star_class(POSITIVE_STAR6) == StarClass(StarKind.NON_SIMPLICIAL, 4)
    assert str(star_class(POSITIVE_STAR6)) == "NonSimplicialStar(4)"


@pytest.mark.parametrize("n, comps, expected", [
    (3, [(0, 1, 2)], "TrivialStar(3)"),
    (3, [(0, 1), (1, 2)], "IntervalPattern"),
    (4, [(0, 2), (0, 1), (1, 3)], "IntervalPattern"),
    (4, [(0, 1), (0, 2), (0, 3)], "SimplicialStar(3)"),
    (6, [(0, 1, 2), (0, 3), (1, 4), (2, 5)], "NonSimplicialStar(3)"),
    (6, [(0, 1, 2), (2, 3, 4), (4, 5)], "NotStar"),
    (6, [(0, 1), (0, 2), (0, 3), (3, 4), (3, 5)], "NotStar"),
])
def test_star_class(n, comps, expected):
    assert str(star_class(validate(n, comps))) == expected
