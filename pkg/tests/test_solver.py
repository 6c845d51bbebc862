"""Exact solver, resistance, 2-factors, and the heuristic.

The exact solver is checked against a test-local brute force over all 4^m
colourings on small graphs, so the two never share code paths.
"""

import itertools

import pytest

from deltamin import (
    Colour,
    ColouringKind,
    DomainError,
    Graph,
    Method,
    ResourceLimitError,
    enumerate_two_factors,
    find_two_factor,
    heuristic_descent,
    is_3_edge_colourable,
    lemma1_colouring,
    make_named,
    random_subcubic,
    resistance_exact,
    solve_exact,
)

A, B, G, D = Colour.ALPHA, Colour.BETA, Colour.GAMMA, Colour.DELTA


def brute_force_s(g: Graph) -> int:
    """Minimum delta count over all proper 4-colourings, by full enumeration."""
    best = None
    for combo in itertools.product(list(Colour), repeat=g.edge_count):
        ok = True
        for v in range(g.vertex_count):
            cols = [combo[e] for e in g.incident_edges(v)]
            if len(set(cols)) != len(cols):
                ok = False
                break
        if ok:
            k = sum(1 for c in combo if c is D)
            if best is None or k < best:
                best = k
    assert best is not None
    return best


def brute_force_resistance(g: Graph) -> int:
    """Minimum |F| with G-F properly 3-edge-colourable, by full enumeration."""
    m = g.edge_count
    for k in range(m + 1):
        for removed in itertools.combinations(range(m), k):
            gone = set(removed)
            for combo in itertools.product((A, B, G), repeat=m - k):
                it = iter(combo)
                colours = [None if e in gone else next(it) for e in range(m)]
                ok = True
                for v in range(g.vertex_count):
                    cols = [
                        colours[e]
                        for e in g.incident_edges(v)
                        if colours[e] is not None
                    ]
                    if len(set(cols)) != len(cols):
                        ok = False
                        break
                if ok:
                    return k
    raise AssertionError("unreachable")


# ---------------------------------------------------------------------------
# exact solver


def test_golden_values():
    assert solve_exact(make_named("k4")).s_value == 0
    assert solve_exact(make_named("k33")).s_value == 0
    assert solve_exact(make_named("cycle", 5)).s_value == 0
    r = solve_exact(make_named("petersen"))
    assert r.s_value == 2
    assert r.method is Method.EXACT


def test_witness_contract():
    for g in [make_named("k4"), make_named("petersen"), random_subcubic(9, 3)]:
        r = solve_exact(g)
        assert r.witness.graph is g
        assert r.witness.classification() is ColouringKind.PROPER
        assert r.witness.delta_count() == r.s_value


@pytest.mark.parametrize(
    "g",
    [
        Graph(2, [(0, 1)]),
        Graph(4, [(0, 1), (0, 2), (0, 3)]),
        make_named("cycle", 3),
        make_named("cycle", 4),
        make_named("cycle", 5),
        make_named("k4"),
        Graph(5, [(0, 4), (1, 4), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]),
    ],
    ids=["edge", "star", "c3", "c4", "c5", "k4", "subdivided-k4"],
)
def test_solve_exact_against_brute_force(g):
    assert solve_exact(g).s_value == brute_force_s(g)


def test_solve_exact_trivial_graphs():
    r = solve_exact(Graph(0, []))
    assert r.s_value == 0 and r.witness.colours == ()
    r = solve_exact(Graph(3, []))
    assert r.s_value == 0


def test_solve_exact_disconnected_sums_components():
    # two subdivided K4s, each s=1
    part = [(0, 4), (1, 4), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    edges = part + [(u + 5, v + 5) for u, v in part]
    g = Graph(10, edges)
    r = solve_exact(g)
    assert r.s_value == 2
    assert r.witness.classification() is ColouringKind.PROPER
    assert r.witness.delta_count() == 2


def test_solve_exact_deterministic():
    g = random_subcubic(10, 41)
    assert solve_exact(g).witness == solve_exact(g).witness


def test_is_3_edge_colourable():
    c = is_3_edge_colourable(make_named("k4"))
    assert c is not None
    assert c.classification() is ColouringKind.PROPER
    assert c.delta_count() == 0
    assert is_3_edge_colourable(make_named("petersen")) is None


# ---------------------------------------------------------------------------
# resistance


def test_resistance_golden():
    assert resistance_exact(make_named("k4")) == 0
    assert resistance_exact(make_named("petersen")) == 2


@pytest.mark.parametrize("seed", range(6))
def test_resistance_against_brute_force(seed):
    g = random_subcubic(4 + seed % 3, seed)  # at most 9 edges at n=6
    assert resistance_exact(g) == brute_force_resistance(g)


def test_resistance_of_petersen_witnessed_by_deletion():
    # a concrete certificate for the golden value: deleting the two delta
    # edges of an optimal witness leaves a 3-colourable graph, and the solver
    # finds no 3-colouring after any single deletion
    g = make_named("petersen")
    w = solve_exact(g).witness
    keep = [g.edges[e] for e in range(g.edge_count) if w.colour_of(e) is not D]
    assert is_3_edge_colourable(Graph(10, keep)) is not None
    for gone in range(g.edge_count):
        rest = [g.edges[e] for e in range(g.edge_count) if e != gone]
        assert is_3_edge_colourable(Graph(10, rest)) is None


def test_resistance_equals_s_spot_checks():
    # the full corpus sweep lives in the acceptance suite
    for g in [make_named("petersen"), make_named("k33"), random_subcubic(10, 5)]:
        assert resistance_exact(g) == solve_exact(g).s_value


# ---------------------------------------------------------------------------
# 2-factors


def test_two_factors_of_k4():
    k4 = make_named("k4")
    factors = list(enumerate_two_factors(k4))
    assert len(factors) == 3
    for f in factors:
        assert len(f.cycles) == 1
        assert len(f.cycles[0]) == 4
        assert f.odd_cycle_count() == 0
        assert len(f.matching) == 2


def test_two_factors_of_petersen():
    factors = list(enumerate_two_factors(make_named("petersen")))
    assert len(factors) == 6
    for f in factors:
        assert sorted(len(c) for c in f.cycles) == [5, 5]
        assert f.odd_cycle_count() == 2


def test_two_factors_of_k33_all_even():
    for f in enumerate_two_factors(make_named("k33")):
        assert f.odd_cycle_count() == 0


def prism() -> Graph:
    return Graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)])


def test_two_factors_of_prism():
    odd_counts = sorted(f.odd_cycle_count() for f in enumerate_two_factors(prism()))
    assert odd_counts == [0, 0, 0, 2]


def test_two_factor_enumeration_unique():
    seen = set()
    for f in enumerate_two_factors(make_named("petersen")):
        assert f.matching not in seen
        seen.add(f.matching)


def test_find_two_factor():
    f = find_two_factor(make_named("k4"))
    assert f is not None and len(f.cycles[0]) == 4
    # K4 minus an edge is not 3-regular
    assert find_two_factor(Graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])) is None
    assert find_two_factor(Graph(4, [(0, 1), (0, 2), (0, 3)])) is None


def test_two_factor_guards():
    with pytest.raises(DomainError):
        list(enumerate_two_factors(make_named("cycle", 5)))
    with pytest.raises(ResourceLimitError):
        list(enumerate_two_factors(make_named("flower", 5)))  # 20 vertices


def test_two_factor_determinism():
    a = [f.matching for f in enumerate_two_factors(make_named("petersen"))]
    b = [f.matching for f in enumerate_two_factors(make_named("petersen"))]
    assert a == b


# ---------------------------------------------------------------------------
# colouring from a 2-factor


def test_lemma1_colouring_k4():
    k4 = make_named("k4")
    c = lemma1_colouring(k4, find_two_factor(k4))
    assert c.classification() is ColouringKind.PROPER
    assert c.delta_count() == 0


def test_lemma1_colouring_petersen():
    pet = make_named("petersen")
    c = lemma1_colouring(pet, find_two_factor(pet))
    assert c.classification() is ColouringKind.PROPER
    assert c.delta_count() == 2


def test_lemma1_colouring_prism_hamiltonian():
    g = prism()
    hamiltonian = [f for f in enumerate_two_factors(g) if len(f.cycles) == 1]
    assert hamiltonian
    c = lemma1_colouring(g, hamiltonian[0])
    assert c.classification() is ColouringKind.PROPER
    assert c.delta_count() == 0


def test_lemma1_colouring_structure():
    # matching edges get gamma, delta count equals odd cycle count
    pet = make_named("petersen")
    for f in enumerate_two_factors(pet):
        c = lemma1_colouring(pet, f)
        assert c.classification() is ColouringKind.PROPER
        assert c.delta_count() == f.odd_cycle_count()
        for eid in f.matching:
            assert c.colour_of(eid) is G


def test_lemma1_rejects_foreign_factor():
    f = find_two_factor(make_named("k4"))
    with pytest.raises(DomainError):
        lemma1_colouring(make_named("k33"), f)


def test_two_factor_lower_bound_small(cubic_corpus):
    # odd cycle count of every 2-factor bounds s from above zero violations;
    # n=10 runs in the acceptance suite
    for n in (4, 6, 8):
        for g in cubic_corpus[n]:
            s = solve_exact(g).s_value
            for f in enumerate_two_factors(g):
                assert f.odd_cycle_count() >= s


# ---------------------------------------------------------------------------
# heuristic


def test_heuristic_k4_reaches_zero():
    r = heuristic_descent(make_named("k4"), seed=0)
    assert r.s_value == 0
    assert r.witness.classification() is ColouringKind.PROPER


def test_heuristic_petersen_never_beats_exact():
    for seed in range(8):
        r = heuristic_descent(make_named("petersen"), seed=seed)
        assert r.s_value >= 2
        assert r.witness.classification() is ColouringKind.PROPER
        assert r.witness.delta_count() == r.s_value


def test_heuristic_deterministic():
    a = heuristic_descent(make_named("flower", 5), seed=9, max_rounds=16)
    b = heuristic_descent(make_named("flower", 5), seed=9, max_rounds=16)
    assert a.s_value == b.s_value
    assert a.witness == b.witness


def test_heuristic_methods():
    # cubic graph with a 2-factor seeds from it
    assert heuristic_descent(make_named("petersen"), seed=0).method is Method.TWO_FACTOR_UPPER_BOUND
    # non-cubic input uses the greedy path
    star = Graph(4, [(0, 1), (0, 2), (0, 3)])
    r = heuristic_descent(star, seed=0)
    assert r.method is Method.HEURISTIC_UPPER_BOUND
    assert r.s_value == 0


def test_heuristic_upper_bounds_exact():
    for seed in range(12):
        g = random_subcubic(11, 500 + seed)
        exact = solve_exact(g).s_value
        heur = heuristic_descent(g, seed=seed)
        assert heur.s_value >= exact
