from __future__ import annotations

import itertools
import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spexlab.constructions import complete, cycle, empty, fan, path, q_double_star, q_star, star
from spexlab.graph import (
    Graph,
    Graph6Error,
    GraphError,
    canonical_form,
    complement,
    components,
    degree,
    disjoint_union,
    graph6_decode,
    graph6_encode,
    induced,
    is_connected,
    is_isomorphic,
    join,
    max_degree,
    min_degree,
)
from spexlab.search import enumerate_graphs

from conftest import random_graph


@st.composite
def graphs(draw, max_n=12):
    n = draw(st.integers(0, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [p for p, c in zip(pairs, chosen) if c])


def test_invariants_rejected():
    with pytest.raises(GraphError):
        Graph(2, (0b10, 0))           # asymmetric
    with pytest.raises(GraphError):
        Graph(1, (0b1,))              # loop
    with pytest.raises(GraphError):
        Graph(2, (0b100, 0))          # bit beyond n
    with pytest.raises(GraphError):
        Graph.empty(65)


def test_degree_examples():
    assert degree(complete(3), 0) == 2
    assert degree(path(4), 0) == 1
    assert degree(q_star(3), 0) == 2
    with pytest.raises(GraphError):
        degree(complete(3), 3)


def test_min_max_degree():
    assert (min_degree(complete(4)), max_degree(complete(4))) == (3, 3)
    assert (min_degree(star(4)), max_degree(star(4))) == (1, 3)
    assert (min_degree(q_double_star()), max_degree(q_double_star())) == (6, 7)
    with pytest.raises(GraphError):
        min_degree(Graph.empty(0))


def test_induced_examples():
    assert is_isomorphic(induced(complete(4), [1, 3]), complete(2))
    h4 = fan(4)
    assert is_isomorphic(induced(h4, h4.neighbors(0)), path(4))
    assert is_isomorphic(induced(cycle(5), [1, 2, 3]), path(3))
    assert induced(complete(4), []).n == 0


def test_complement_examples(rng):
    assert complement(complete(5)) == empty(5)
    for _ in range(50):
        g = random_graph(rng, rng.randint(0, 8))
        assert complement(complement(g)) == g


def test_complement_walk_lemma_structure():
    # Q*_3: removing u and N_1 leaves N_2 = {w, x, y1, y2}; its complement is K_{1,1} plus isolated vertices.
    g = q_star(3)
    n2 = [v for v in range(g.n) if v not in (0, 1, 2)]
    qprime = complement(induced(g, n2))
    assert sorted(qprime.degrees()) == [0, 0, 1, 1]


def test_union_and_join():
    h = join(Graph.empty(1), path(4))
    assert h.n == 5 and h.num_edges == 7
    assert is_isomorphic(join(empty(2), empty(3)), Graph.from_edges(5, [(i, j) for i in range(2) for j in range(2, 5)]))
    assert min_degree(join(Graph.empty(1), complete(4))) == 4
    with pytest.raises(GraphError):
        disjoint_union(empty(40), empty(30))


@given(graphs(8), graphs(8))
@settings(max_examples=60, deadline=None)
def test_join_counts(a, b):
    j = join(a, b)
    assert j.n == a.n + b.n
    assert j.num_edges == a.num_edges + b.num_edges + a.n * b.n
    assert induced(j, range(j.n)) == j


def test_components():
    g = disjoint_union(complete(2), complete(1))
    assert len(components(g)) == 2
    assert is_connected(q_star(3))
    assert len(components(empty(5))) == 5
    assert not is_connected(empty(5))


def test_graph6_examples():
    assert graph6_encode(complete(3)) == "Bw"
    assert graph6_encode(empty(1)) == "@"
    assert graph6_decode(">>graph6<<Bw") == complete(3)
    for bad in ("", "B", "Bww", "B\x7f", "Bx"):
        with pytest.raises(Graph6Error):
            graph6_decode(bad)


def test_graph6_matches_networkx(rng):
    for _ in range(200):
        n = rng.randint(0, 40)
        g = random_graph(rng, n, rng.random())
        ng = nx.Graph()
        ng.add_nodes_from(range(n))
        ng.add_edges_from(g.edges())
        ours = graph6_encode(g)
        theirs = nx.to_graph6_bytes(ng, header=False).decode().strip()
        assert ours == theirs
        assert graph6_decode(ours) == g


def test_graph6_large_order():
    g = path(63)
    s = graph6_encode(g)
    assert s[0] == "~"
    assert graph6_decode(s) == g


def test_graph6_roundtrip_random(rng):
    for _ in range(1000):
        g = random_graph(rng, rng.randint(0, 12), rng.random())
        assert graph6_decode(graph6_encode(g)) == g


def test_graph6_roundtrip_enumerated():
    for n in range(9):
        for g in enumerate_graphs(n) if n <= 7 else []:
            assert graph6_decode(str(g)) == g


def test_canonical_examples():
    forms = {canonical_form(path(3).relabel(p)) for p in itertools.permutations(range(3))}
    assert len(forms) == 1
    assert canonical_form(path(4)) != canonical_form(star(4))
    with pytest.raises(GraphError):
        canonical_form(empty(17))


def test_canonical_counts_four_vertices():
    pairs = list(itertools.combinations(range(4), 2))
    forms = set()
    reps: list[nx.Graph] = []
    for bits in range(1 << 6):
        edges = [p for i, p in enumerate(pairs) if bits >> i & 1]
        forms.add(canonical_form(Graph.from_edges(4, edges)))
        h = nx.Graph(edges)
        h.add_nodes_from(range(4))
        if not any(nx.is_isomorphic(h, r) for r in reps):
            reps.append(h)
    assert len(forms) == len(reps) == 11


def test_canonical_invariance(rng):
    for _ in range(500):
        n = rng.randint(1, 8)
        g = random_graph(rng, n, rng.random())
        perm = list(range(n))
        rng.shuffle(perm)
        assert canonical_form(g.relabel(perm)) == canonical_form(g)


def test_canonical_distinguishes_like_networkx(rng):
    for _ in range(300):
        n = rng.randint(1, 9)
        a, b = random_graph(rng, n), random_graph(rng, n)
        na = nx.Graph(a.edges()); na.add_nodes_from(range(n))
        nb = nx.Graph(b.edges()); nb.add_nodes_from(range(n))
        assert (canonical_form(a) == canonical_form(b)) == nx.is_isomorphic(na, nb)


def test_canonical_hard_regular_graphs():
    # Vertex-transitive graphs stress the automorphism pruning.
    from spexlab.constructions import regular_graph
    for m, k in ((16, 3), (16, 5), (12, 4), (15, 4)):
        g = regular_graph(m, k)
        perm = list(range(m))
        random.Random(m * k).shuffle(perm)
        assert canonical_form(g.relabel(perm)) == canonical_form(g)
