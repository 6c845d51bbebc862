"""Graph container, codecs, named instances, and cubic enumeration.

graph6 behaviour is cross-validated against networkx in both directions.
The enumeration is checked against an independent labelled brute force for
n <= 8 and against pairwise networkx isomorphism at n = 10.
"""

import itertools

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from deltamin import (
    DomainError,
    Graph,
    GraphFormatError,
    emit_edge_list,
    emit_graph6,
    enumerate_cubic,
    induced_subgraph,
    isomorphic,
    make_named,
    parse_edge_list,
    parse_graph6,
    random_subcubic,
)
from deltamin.graphs import NAMED_GRAPHS


def to_nx(g: Graph) -> nx.Graph:
    # nx.Graph(edges) inserts nodes in edge order, which changes graph6
    # output; nodes must be added 0..n-1 first.
    h = nx.Graph()
    h.add_nodes_from(range(g.vertex_count))
    h.add_edges_from(g.edges)
    return h


# ---------------------------------------------------------------------------
# container


def test_graph_basic_accessors():
    g = Graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    assert g.vertex_count == 4
    assert g.edge_count == 4
    assert g.degree(0) == 2
    assert g.degrees() == (2, 2, 2, 2)
    assert g.neighbours(1) == (0, 2)
    assert g.has_edge(3, 0) and g.has_edge(0, 3)
    assert not g.has_edge(0, 2)
    assert g.endpoints(g.edge_id(2, 3)) == (2, 3)
    assert g.is_connected()
    assert not g.is_cubic()


def test_graph_edges_normalized_and_order_insensitive_equality():
    a = Graph(3, [(1, 0), (2, 1)])
    b = Graph(3, [(1, 2), (0, 1)])
    assert a.edges == ((0, 1), (1, 2))
    assert a == b
    assert hash(a) == hash(b)
    assert a != Graph(4, [(0, 1), (1, 2)])  # extra isolated vertex


def test_graph_rejects_bad_input():
    with pytest.raises(DomainError):
        Graph(3, [(0, 3)])  # out of range
    with pytest.raises(DomainError):
        Graph(3, [(1, 1)])  # self loop
    with pytest.raises(DomainError):
        Graph(3, [(0, 1), (1, 0)])  # duplicate
    with pytest.raises(DomainError):
        Graph(5, [(0, 1), (0, 2), (0, 3), (0, 4)])  # degree four
    with pytest.raises(DomainError):
        Graph(-1, [])


def test_components_and_connectivity():
    g = Graph(7, [(0, 1), (1, 2), (3, 4), (5, 6)])
    comps = g.components()
    assert sorted(map(sorted, comps)) == [[0, 1, 2], [3, 4], [5, 6]]
    assert not g.is_connected()


def test_induced_subgraph_maps():
    g = make_named("petersen")
    sub, vmap, emap = induced_subgraph(g, [0, 1, 2, 5])
    assert sub.vertex_count == 4
    # edges 0-1, 1-2, 0-5 survive
    assert sub.edge_count == 3
    for new_eid, old_eid in enumerate(emap):
        a, b = sub.endpoints(new_eid)
        assert tuple(sorted((vmap[a], vmap[b]))) == g.endpoints(old_eid)


# ---------------------------------------------------------------------------
# graph6


def test_graph6_known_small_values():
    # '?' is the empty graph on 0 vertices, 'C~' is K4
    assert parse_graph6("?") == Graph(0, [])
    assert emit_graph6(Graph(0, [])) == "?"
    k4 = make_named("k4")
    assert emit_graph6(k4) == "C~"
    assert parse_graph6("C~") == k4
    assert parse_graph6("D??") == Graph(5, [])
    assert parse_graph6(">>graph6<<C~") == k4  # optional header


@pytest.mark.parametrize("name,k", [("k4", None), ("k33", None), ("petersen", None), ("cycle", 7), ("flower", 5)])
def test_graph6_emit_matches_networkx(name, k):
    g = make_named(name, k)
    ours = emit_graph6(g)
    theirs = nx.to_graph6_bytes(to_nx(g), header=False).decode().strip()
    assert ours == theirs


def test_graph6_parse_matches_networkx_on_random_graphs():
    for seed in range(30):
        g = random_subcubic(3 + seed % 12, seed)
        text = emit_graph6(g)
        theirs = nx.from_graph6_bytes(text.encode())
        assert set(theirs.nodes) == set(range(g.vertex_count))
        assert {tuple(sorted(e)) for e in theirs.edges} == set(g.edges)
        assert parse_graph6(text) == g


def test_graph6_long_form_sizes():
    # 63 vertices is the last short-form size, 64 needs the 4-byte form.
    for n in (62, 63, 64, 70):
        g = Graph(n, [(i, i + 1) for i in range(n - 1)])
        text = emit_graph6(g)
        theirs = nx.to_graph6_bytes(to_nx(g), header=False).decode().strip()
        assert text == theirs
        assert parse_graph6(text) == g


def test_graph6_degree_guard_names_vertex():
    # star K1,4 is valid graph6 but exceeds the degree cap here
    text = nx.to_graph6_bytes(nx.star_graph(4), header=False).decode().strip()
    with pytest.raises(DomainError) as err:
        parse_graph6(text)
    assert "0" in str(err.value)


def test_graph6_error_offsets():
    with pytest.raises(GraphFormatError) as err:
        parse_graph6("")
    assert "offset 0" in str(err.value)
    # byte out of printable range: chr(127) (chr(31) would be stripped as
    # whitespace by str.strip before it reaches the decoder)
    with pytest.raises(GraphFormatError) as err:
        parse_graph6("C" + chr(127) + "~")
    assert "offset 1" in str(err.value)
    with pytest.raises(GraphFormatError) as err:
        parse_graph6("C~~")  # trailing garbage after K4
    assert "offset 2" in str(err.value)
    with pytest.raises(GraphFormatError) as err:
        parse_graph6("C")  # truncated body
    assert "offset" in str(err.value)
    # n=4 fills its 6-bit group exactly, so padding needs n=5
    with pytest.raises(GraphFormatError) as err:
        parse_graph6("D?A")
    assert "padding" in str(err.value) and "offset 2" in str(err.value)


# ---------------------------------------------------------------------------
# edge lists


def test_edge_list_round_trip_and_header():
    g = make_named("k33")
    text = emit_edge_list(g)
    assert text.splitlines()[0] == "6 9"
    assert parse_edge_list(text) == g


def test_edge_list_without_header_and_comments():
    text = "# triangle\n0 1\n1 2\n\n2 0\n"
    assert parse_edge_list(text) == Graph(3, [(0, 1), (1, 2), (0, 2)])


def test_edge_list_header_with_isolated_vertex():
    # the header is what records the isolated vertex 4
    g = parse_edge_list("5 2\n0 1\n2 3\n")
    assert g.vertex_count == 5
    assert g.edge_count == 2


def test_edge_list_first_line_is_an_edge_when_not_header_shaped():
    # "3 1" followed by two more rows: 1 != 2 remaining rows, so it is an edge
    g = parse_edge_list("3 1\n0 1\n0 2\n")
    assert g.vertex_count == 4
    assert g.edge_count == 3


def test_edge_list_errors():
    with pytest.raises(GraphFormatError):
        parse_edge_list("0 1 2\n")
    with pytest.raises(GraphFormatError):
        parse_edge_list("a b\n")
    with pytest.raises(GraphFormatError):
        parse_edge_list("-1 0\n")
    with pytest.raises(GraphFormatError):
        parse_edge_list("0 1\n0 1\n")  # duplicate edge
    assert parse_edge_list("") == Graph(0, [])


# ---------------------------------------------------------------------------
# named instances


def girth(g: Graph) -> int:
    # BFS shortest-cycle oracle, independent of the library internals
    best = None
    for root in range(g.vertex_count):
        dist = {root: 0}
        parent_edge = {root: None}
        frontier = [root]
        while frontier:
            nxt = []
            for u in frontier:
                for eid in g.incident_edges(u):
                    a, b = g.endpoints(eid)
                    w = b if a == u else a
                    if eid == parent_edge[u]:
                        continue
                    if w in dist:
                        cycle = dist[u] + dist[w] + 1
                        if best is None or cycle < best:
                            best = cycle
                    else:
                        dist[w] = dist[u] + 1
                        parent_edge[w] = eid
                        nxt.append(w)
            frontier = nxt
    return 0 if best is None else best


def test_named_graph_shapes():
    k4 = make_named("k4")
    assert k4.vertex_count == 4 and k4.is_cubic()
    k33 = make_named("k33")
    assert k33.vertex_count == 6 and k33.is_cubic() and girth(k33) == 4
    pet = make_named("petersen")
    assert pet.vertex_count == 10 and pet.is_cubic() and girth(pet) == 5
    c5 = make_named("cycle", 5)
    assert c5.degrees() == (2,) * 5
    assert girth(c5) == 5


def test_flower_snark_structure():
    j5 = make_named("flower", 5)
    assert j5.vertex_count == 20
    assert j5.edge_count == 30
    assert j5.is_cubic()
    assert j5.is_connected()
    assert girth(j5) == 5
    # J3 contains triangles
    assert girth(make_named("flower", 3)) == 3


def test_make_named_errors():
    with pytest.raises(DomainError):
        make_named("nosuch")
    with pytest.raises(DomainError):
        make_named("petersen", 5)
    with pytest.raises(DomainError):
        make_named("cycle")
    with pytest.raises(DomainError):
        make_named("flower", 4)  # even parameter
    with pytest.raises(DomainError):
        make_named("cycle", 2)
    assert "petersen" in NAMED_GRAPHS and "cycle" in NAMED_GRAPHS


# ---------------------------------------------------------------------------
# random instances


def test_random_subcubic_deterministic():
    a = random_subcubic(20, 7)
    b = random_subcubic(20, 7)
    assert a == b
    assert a.edges == b.edges
    assert random_subcubic(20, 8) != a


@given(n=st.integers(min_value=1, max_value=40), seed=st.integers(min_value=0, max_value=2**63 - 1))
@settings(max_examples=60, deadline=None)
def test_random_subcubic_properties(n, seed):
    g = random_subcubic(n, seed)
    assert g.vertex_count == n
    assert all(d <= 3 for d in g.degrees())
    assert g.is_connected()


# ---------------------------------------------------------------------------
# isomorphism and enumeration


def labelled_cubic_graphs(n: int):
    """Independent brute force: every labelled cubic graph on n vertices.

    Vertex v picks all its neighbours above v in one step, so each graph
    appears exactly once.
    """
    deg = [0] * n
    chosen: list[tuple[int, int]] = []

    def rec(v: int):
        if v == n:
            yield tuple(chosen)
            return
        need = 3 - deg[v]
        if need < 0:
            return
        candidates = [w for w in range(v + 1, n) if deg[w] < 3]
        for combo in itertools.combinations(candidates, need):
            for w in combo:
                deg[w] += 1
                chosen.append((v, w))
            deg[v] += len(combo)
            yield from rec(v + 1)
            deg[v] -= len(combo)
            for w in combo:
                deg[w] -= 1
                chosen.pop()

    yield from rec(0)


def reference_cubic_classes(n: int) -> list[nx.Graph]:
    classes: list[nx.Graph] = []
    for edges in labelled_cubic_graphs(n):
        h = nx.Graph(list(edges))
        if len(h) != n or not nx.is_connected(h):
            continue
        if not any(nx.is_isomorphic(h, c) for c in classes):
            classes.append(h)
    return classes


@pytest.mark.parametrize("n", [4, 6, 8])
def test_enumerate_cubic_matches_brute_force(n, cubic_corpus):
    ours = cubic_corpus[n]
    reference = reference_cubic_classes(n)
    assert len(ours) == len(reference)
    # exact 1:1 matching between the two collections
    used = set()
    for g in ours:
        h = to_nx(g)
        hits = [i for i, c in enumerate(reference) if i not in used and nx.is_isomorphic(h, c)]
        assert hits, f"enumerated graph not in reference set: {emit_graph6(g)}"
        used.add(hits[0])
    assert len(used) == len(reference)


def test_enumerate_cubic_ten_vertices(cubic_corpus):
    # Completeness at this size is too expensive for a labelled brute force;
    # the class count of connected cubic graphs on 10 vertices is the
    # published census value (OEIS A002851).
    graphs = cubic_corpus[10]
    assert len(graphs) == 19
    for g in graphs:
        assert g.vertex_count == 10 and g.is_cubic() and g.is_connected()
    for a, b in itertools.combinations(graphs, 2):
        assert not nx.is_isomorphic(to_nx(a), to_nx(b))


@pytest.mark.slow
def test_enumerate_cubic_twelve_vertices():
    assert sum(1 for _ in enumerate_cubic(12)) == 85


def test_enumerate_cubic_guards():
    with pytest.raises(DomainError):
        list(enumerate_cubic(5))  # odd
    with pytest.raises(DomainError):
        list(enumerate_cubic(2))
    with pytest.raises(DomainError):
        list(enumerate_cubic(16))  # above the supported window


def test_isomorphic_agrees_with_networkx(cubic_corpus):
    import random

    rng = random.Random("iso-check")
    pool = cubic_corpus[8] + cubic_corpus[10][:5]
    for g in pool:
        # relabelled copy must be recognised
        perm = list(range(g.vertex_count))
        rng.shuffle(perm)
        relabelled = Graph(g.vertex_count, [(perm[u], perm[v]) for u, v in g.edges])
        assert isomorphic(g, relabelled)
    for a, b in itertools.combinations(pool, 2):
        expect = nx.is_isomorphic(to_nx(a), to_nx(b))
        assert isomorphic(a, b) == expect


def test_isomorphic_quick_rejects():
    assert not isomorphic(make_named("k4"), make_named("k33"))
    assert not isomorphic(make_named("cycle", 4), make_named("cycle", 5))
    assert isomorphic(Graph(0, []), Graph(0, []))
