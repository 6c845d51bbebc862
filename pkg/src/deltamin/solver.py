"""Exact and heuristic minimisation of the delta colour class.

The optimum s(G) is the smallest number of edges that must receive the
overflow colour delta in a proper 4-edge-colouring.  Equivalently it is the
smallest matching M such that G - M is 3-edge-colourable, which is how the
exact solver searches: matchings in increasing size, first hit wins.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Optional

from .colouring import (
    NON_DELTA,
    Colour,
    ColouringKind,
    EdgeColouring,
    kempe_decompose,
    kempe_swap,
    properize,
)
from .errors import DomainError, ResourceLimitError
from .graphs import Graph, induced_subgraph

_TWO_FACTOR_VERTEX_LIMIT = 16


class Method(enum.Enum):
    EXACT = "Exact"
    TWO_FACTOR_UPPER_BOUND = "TwoFactorUpperBound"
    HEURISTIC_UPPER_BOUND = "HeuristicUpperBound"


@dataclass(frozen=True)
class SolveResult:
    s_value: int
    witness: EdgeColouring
    method: Method


@dataclass(frozen=True)
class TwoFactor:
    """Spanning 2-regular subgraph of a cubic graph, as its cycle list plus
    the complementary perfect matching (edge ids)."""

    graph: Graph
    cycles: tuple[tuple[int, ...], ...]
    matching: frozenset[int]

    def odd_cycle_count(self) -> int:
        return sum(1 for cyc in self.cycles if len(cyc) % 2 == 1)


# ---------------------------------------------------------------------------
# 3-edge-colouring search

_BIT_OF = {Colour.ALPHA: 1, Colour.BETA: 2, Colour.GAMMA: 4}
_COLOUR_OF_BIT = {1: Colour.ALPHA, 2: Colour.BETA, 4: Colour.GAMMA}


def _three_colour(g: Graph, excluded: frozenset[int]) -> Optional[dict[int, Colour]]:
    """Proper 3-edge-colouring of g minus the excluded edges, or None.

    Backtracking on edges, most-constrained edge first, colours tried in
    canonical order so results are deterministic.
    """
    active = [e for e in range(g.edge_count) if e not in excluded]
    used = [0] * g.vertex_count  # bitmask of colours present at each vertex
    assigned: dict[int, int] = {}

    def choose() -> Optional[tuple[int, int]]:
        best = None
        best_count = 4
        for e in active:
            if e in assigned:
                continue
            u, v = g.edges[e]
            avail = 7 & ~(used[u] | used[v])
            count = bin(avail).count("1")
            if count == 0:
                return (e, 0)
            if count < best_count:
                best, best_count = (e, avail), count
        return best

    def search() -> bool:
        pick = choose()
        if pick is None:
            return True
        e, avail = pick
        if avail == 0:
            return False
        u, v = g.edges[e]
        for bit in (1, 2, 4):
            if avail & bit:
                assigned[e] = bit
                used[u] |= bit
                used[v] |= bit
                if search():
                    return True
                del assigned[e]
                used[u] &= ~bit
                used[v] &= ~bit
        return False

    if search():
        return {e: _COLOUR_OF_BIT[b] for e, b in assigned.items()}
    return None


def is_3_edge_colourable(g: Graph) -> Optional[EdgeColouring]:
    """A proper colouring using only alpha, beta, gamma, if one exists."""
    partial = _three_colour(g, frozenset())
    if partial is None:
        return None
    return EdgeColouring(g, [partial[e] for e in range(g.edge_count)])


# ---------------------------------------------------------------------------
# exact solver


def _matchings_of_size(g: Graph, candidates: list[int], k: int) -> Iterator[frozenset[int]]:
    """All k-edge matchings within the candidate edges, lexicographically."""
    picked: list[int] = []
    touched: set[int] = set()

    def grow(start: int) -> Iterator[frozenset[int]]:
        if len(picked) == k:
            yield frozenset(picked)
            return
        # not enough candidates left to finish
        for idx in range(start, len(candidates) - (k - len(picked)) + 1):
            e = candidates[idx]
            u, v = g.edges[e]
            if u in touched or v in touched:
                continue
            picked.append(e)
            touched.update((u, v))
            yield from grow(idx + 1)
            picked.pop()
            touched.difference_update((u, v))

    return grow(0)


def _solve_exact_connected(g: Graph) -> SolveResult:
    # an edge both of whose ends have degree at most two never needs delta:
    # a delta edge in a minimum colouring always has a fully saturated end
    candidates = [
        e
        for e, (u, v) in enumerate(g.edges)
        if g.degree(u) == 3 or g.degree(v) == 3
    ]
    for k in range(len(candidates) + 1):
        for matching in _matchings_of_size(g, candidates, k):
            partial = _three_colour(g, matching)
            if partial is None:
                continue
            colours = [
                Colour.DELTA if e in matching else partial[e]
                for e in range(g.edge_count)
            ]
            return SolveResult(k, EdgeColouring(g, colours), Method.EXACT)
    raise AssertionError("unreachable: deleting a maximal matching leaves a 3-colourable graph")


def solve_exact(g: Graph) -> SolveResult:
    """Minimum delta count and a witness colouring, by exhaustive search.

    Works per connected component; the optimum is the sum of the components'
    optima.  First witness in deterministic search order wins, so repeated
    calls return identical colourings.
    """
    comps = g.components()
    if len(comps) <= 1:
        return _solve_exact_connected(g)
    total = 0
    colour_by_edge: dict[int, Colour] = {}
    for comp in comps:
        sub, _, edge_map = induced_subgraph(g, comp)
        result = _solve_exact_connected(sub)
        total += result.s_value
        for sub_eid, col in enumerate(result.witness.colours):
            colour_by_edge[edge_map[sub_eid]] = col
    witness = EdgeColouring(g, [colour_by_edge[e] for e in range(g.edge_count)])
    return SolveResult(total, witness, Method.EXACT)


def resistance_exact(g: Graph) -> int:
    """Minimum number of edge deletions leaving a 3-edge-colourable graph.

    Deliberately unconstrained (plain subsets, no matching requirement, no
    candidate pruning) so it can serve as an independent cross-check of
    solve_exact; the two agree on every graph of maximum degree three.
    """
    for k in range(g.edge_count + 1):
        for subset in combinations(range(g.edge_count), k):
            if _three_colour(g, frozenset(subset)) is not None:
                return k
    raise AssertionError("unreachable: the empty graph is 3-edge-colourable")


# ---------------------------------------------------------------------------
# 2-factors


def _perfect_matchings(g: Graph) -> Iterator[frozenset[int]]:
    """All perfect matchings, by backtracking on the lowest uncovered vertex."""
    if g.vertex_count % 2:
        return
    covered = [False] * g.vertex_count
    picked: list[int] = []

    def grow() -> Iterator[frozenset[int]]:
        v = next((u for u in range(g.vertex_count) if not covered[u]), None)
        if v is None:
            yield frozenset(picked)
            return
        covered[v] = True
        for w, eid in g.adjacency[v]:
            if covered[w]:
                continue
            covered[w] = True
            picked.append(eid)
            yield from grow()
            picked.pop()
            covered[w] = False
        covered[v] = False

    yield from grow()


def _cycles_of_complement(g: Graph, matching: frozenset[int]) -> tuple[tuple[int, ...], ...]:
    """Cycle decomposition of the 2-regular graph left by removing a perfect
    matching from a cubic graph.  Cycles start at their smallest vertex and
    run towards the smaller neighbour; listed by smallest vertex."""
    nbrs: list[list[int]] = [[] for _ in range(g.vertex_count)]
    for eid, (u, v) in enumerate(g.edges):
        if eid not in matching:
            nbrs[u].append(v)
            nbrs[v].append(u)
    cycles = []
    seen = [False] * g.vertex_count
    for start in range(g.vertex_count):
        if seen[start]:
            continue
        cyc = [start]
        seen[start] = True
        prev, cur = start, min(nbrs[start])
        while cur != start:
            cyc.append(cur)
            seen[cur] = True
            a, b = nbrs[cur]
            prev, cur = cur, b if a == prev else a
        cycles.append(tuple(cyc))
    return tuple(cycles)


def find_two_factor(g: Graph) -> Optional[TwoFactor]:
    """Some 2-factor of a cubic graph, or None when no perfect matching
    exists.  Non-cubic input returns None."""
    if not g.is_cubic():
        return None
    matching = next(_perfect_matchings(g), None)
    if matching is None:
        return None
    return TwoFactor(g, _cycles_of_complement(g, matching), matching)


def enumerate_two_factors(g: Graph) -> Iterator[TwoFactor]:
    """All 2-factors of a cubic graph (one per complementary perfect
    matching), in deterministic order."""
    if not g.is_cubic():
        raise DomainError("2-factors are only enumerated for cubic graphs")
    if g.vertex_count > _TWO_FACTOR_VERTEX_LIMIT:
        raise ResourceLimitError(
            f"2-factor enumeration is limited to {_TWO_FACTOR_VERTEX_LIMIT} vertices"
        )
    for matching in _perfect_matchings(g):
        yield TwoFactor(g, _cycles_of_complement(g, matching), matching)


def lemma1_colouring(g: Graph, f: TwoFactor) -> EdgeColouring:
    """Colouring with one delta edge per odd cycle of the 2-factor.

    Cycle edges alternate alpha/beta starting from each cycle's smallest
    vertex along its smaller-id cycle edge; an odd cycle's closing edge at
    that vertex takes delta.  Matching edges take gamma.  The delta count
    therefore equals the number of odd cycles.
    """
    if not g.is_cubic():
        raise DomainError("needs a cubic graph")
    _validate_two_factor(g, f)
    colours: dict[int, Colour] = {eid: Colour.GAMMA for eid in f.matching}
    for cyc in f.cycles:
        root = min(cyc)
        ri = cyc.index(root)
        ordered = cyc[ri:] + cyc[:ri]
        first = g.edge_id(ordered[0], ordered[1])
        last = g.edge_id(ordered[-1], ordered[0])
        if last < first:
            ordered = (ordered[0],) + tuple(reversed(ordered[1:]))
        eids = [
            g.edge_id(ordered[i], ordered[(i + 1) % len(ordered)])
            for i in range(len(ordered))
        ]
        for i, eid in enumerate(eids):
            colours[eid] = Colour.ALPHA if i % 2 == 0 else Colour.BETA
        if len(eids) % 2 == 1:
            colours[eids[-1]] = Colour.DELTA
    return EdgeColouring(g, [colours[e] for e in range(g.edge_count)])


def _validate_two_factor(g: Graph, f: TwoFactor) -> None:
    if f.graph != g:
        raise DomainError("2-factor belongs to a different graph")
    seen: set[int] = set()
    cycle_eids: set[int] = set()
    for cyc in f.cycles:
        if len(cyc) < 3:
            raise DomainError("2-factor cycle shorter than a triangle")
        for i, v in enumerate(cyc):
            if v in seen:
                raise DomainError(f"vertex {v} appears twice in the 2-factor")
            seen.add(v)
            w = cyc[(i + 1) % len(cyc)]
            if not g.has_edge(v, w):
                raise DomainError(f"2-factor uses missing edge ({v}, {w})")
            cycle_eids.add(g.edge_id(v, w))
    if len(seen) != g.vertex_count:
        raise DomainError("2-factor does not span the graph")
    if cycle_eids | f.matching != set(range(g.edge_count)) or cycle_eids & f.matching:
        raise DomainError("matching must be the complement of the cycle edges")


# ---------------------------------------------------------------------------
# heuristic


def _greedy_improper(g: Graph) -> EdgeColouring:
    """First-fit over the proper colours, overflow to delta.

    Every clash in the result involves delta only, which is exactly what
    properize repairs."""
    used: list[set[Colour]] = [set() for _ in range(g.vertex_count)]
    out = []
    for u, v in g.edges:
        col = next(
            (c for c in NON_DELTA if c not in used[u] and c not in used[v]),
            Colour.DELTA,
        )
        out.append(col)
        used[u].add(col)
        used[v].add(col)
    return EdgeColouring(g, out)


def _reduce_once(c: EdgeColouring) -> Optional[EdgeColouring]:
    """One strict improvement of the delta count, if available.

    For each delta edge: recolour directly when a colour is free at both
    ends, otherwise look for a two-colour pair whose Kempe paths end at the
    two endpoints separately; swapping one path aligns the missing colours.
    """
    g = c.graph
    for e in sorted(c.colour_class(Colour.DELTA)):
        u, v = g.edges[e]
        at_u = set(c.colours_at(u, skip=e))
        at_v = set(c.colours_at(v, skip=e))
        for col in NON_DELTA:
            if col not in at_u and col not in at_v:
                return c.with_colours({e: col})
        for x, y in ((Colour.ALPHA, Colour.BETA), (Colour.ALPHA, Colour.GAMMA), (Colour.BETA, Colour.GAMMA)):
            u_misses = (x in at_u) != (y in at_u)
            v_misses = (x in at_v) != (y in at_v)
            if not (u_misses and v_misses):
                continue
            d = kempe_decompose(c, x, y)
            iu, iv = d.component_at(u), d.component_at(v)
            if iu is None or iv is None or iu == iv:
                continue
            if d.components[iu].is_cycle or u not in d.components[iu].endpoints():
                continue
            swapped = kempe_swap(c, d, iu)
            want = x if x not in at_v else y
            if want in set(swapped.colours_at(u, skip=e)):
                continue
            return swapped.with_colours({e: want})
    return None


def heuristic_descent(g: Graph, seed: int = 0, max_rounds: int = 64) -> SolveResult:
    """Upper bound on the minimum delta count by local search.

    Cubic graphs with a 2-factor start from the odd-cycle colouring (method
    TwoFactorUpperBound); everything else starts from greedy plus properize
    (method HeuristicUpperBound).  Rounds alternate strict Kempe
    improvements with seeded random swaps; the best colouring seen wins.
    Deterministic for fixed (g, seed, max_rounds).
    """
    if max_rounds < 0:
        raise DomainError("max_rounds must be non-negative")
    rng = random.Random(f"descent:{seed}")
    factor = find_two_factor(g)
    if factor is not None:
        current = lemma1_colouring(g, factor)
        method = Method.TWO_FACTOR_UPPER_BOUND
    else:
        current = properize(_greedy_improper(g))
        method = Method.HEURISTIC_UPPER_BOUND
    best = current
    for _ in range(max_rounds):
        if best.delta_count() == 0:
            break
        improved = _reduce_once(current)
        if improved is not None:
            current = improved
        else:
            # plateau: random Kempe swap, possibly worsening, to escape
            x, y = rng.sample(list(Colour), 2)
            d = kempe_decompose(current, x, y)
            if not d.components:
                continue
            idx = rng.randrange(len(d.components))
            current = kempe_swap(current, d, idx)
        if current.delta_count() < best.delta_count():
            best = current
    assert best.classification() is ColouringKind.PROPER
    return SolveResult(best.delta_count(), best, method)
