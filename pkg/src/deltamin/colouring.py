"""Edge colourings over four colours and Kempe-chain operations.

The colour set is ordered alpha < beta < gamma < delta.  delta is the
overflow colour: the quantity every solver in this package minimises is the
number of delta edges, and "delta-improper" colourings (monochromatic
adjacencies allowed at delta only) are the halfway state the properize
reduction repairs.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import ContractViolationError, DomainError
from .graphs import Graph


class Colour(enum.Enum):
    ALPHA = "a"
    BETA = "b"
    GAMMA = "g"
    DELTA = "d"

    @classmethod
    def from_code(cls, code: str) -> "Colour":
        for c in cls:
            if c.value == code:
                return c
        raise DomainError(f"unknown colour code {code!r}")

    def __lt__(self, other: "Colour") -> bool:
        return COLOUR_ORDER.index(self) < COLOUR_ORDER.index(other)


COLOUR_ORDER = (Colour.ALPHA, Colour.BETA, Colour.GAMMA, Colour.DELTA)
NON_DELTA = (Colour.ALPHA, Colour.BETA, Colour.GAMMA)


class ColouringKind(enum.Enum):
    PROPER = "proper"
    DELTA_IMPROPER = "delta-improper"
    INVALID = "invalid"


class EdgeColouring:
    """Total assignment of the four colours to the edges of a graph.

    Immutable; edits go through with_colours, which returns a new object.
    """

    __slots__ = ("graph", "colours")

    def __init__(self, graph: Graph, colours: Iterable[Colour]):
        colours = tuple(colours)
        if len(colours) != graph.edge_count:
            raise DomainError(
                f"expected {graph.edge_count} colours, got {len(colours)}"
            )
        for c in colours:
            if not isinstance(c, Colour):
                raise DomainError(f"not a colour: {c!r}")
        self.graph = graph
        self.colours = colours

    def colour_of(self, eid: int) -> Colour:
        return self.colours[eid]

    def colour_class(self, x: Colour) -> frozenset[int]:
        return frozenset(e for e, c in enumerate(self.colours) if c is x)

    def delta_count(self) -> int:
        return sum(1 for c in self.colours if c is Colour.DELTA)

    def colours_at(self, v: int, skip: int | None = None) -> list[Colour]:
        """Colours on the edges incident to v, optionally skipping one edge."""
        return [
            self.colours[eid]
            for _, eid in self.graph.adjacency[v]
            if eid != skip
        ]

    def classification(self) -> ColouringKind:
        """Proper, delta-improper (clashes at delta only), or invalid."""
        worst = ColouringKind.PROPER
        for v in range(self.graph.vertex_count):
            counts: dict[Colour, int] = {}
            for _, eid in self.graph.adjacency[v]:
                c = self.colours[eid]
                counts[c] = counts.get(c, 0) + 1
            for c, k in counts.items():
                if k < 2:
                    continue
                if c is not Colour.DELTA:
                    return ColouringKind.INVALID
                worst = ColouringKind.DELTA_IMPROPER
        return worst

    def with_colours(self, changes: Mapping[int, Colour]) -> "EdgeColouring":
        new = list(self.colours)
        for eid, c in changes.items():
            new[eid] = c
        return EdgeColouring(self.graph, new)

    def to_json(self) -> str:
        return json.dumps({"colours": [c.value for c in self.colours]})

    @classmethod
    def from_json(cls, graph: Graph, text: str) -> "EdgeColouring":
        try:
            payload = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DomainError(f"bad colouring JSON: {exc}") from None
        if not isinstance(payload, dict) or "colours" not in payload:
            raise DomainError('colouring JSON needs a "colours" array')
        codes = payload["colours"]
        if not isinstance(codes, list):
            raise DomainError('"colours" must be an array of colour codes')
        return cls(graph, [Colour.from_code(c) for c in codes])

    def __eq__(self, other: object) -> bool:
        """Colour assignments are positional, so equality requires the two
        graphs to list their edges in the same order, not merely to be equal
        as graphs."""
        return (
            isinstance(other, EdgeColouring)
            and self.graph.vertex_count == other.graph.vertex_count
            and self.graph.edges == other.graph.edges
            and self.colours == other.colours
        )

    def __hash__(self) -> int:
        return hash((self.graph.edges, self.colours))

    def __repr__(self) -> str:
        return f"EdgeColouring({''.join(c.value for c in self.colours)})"


@dataclass(frozen=True)
class KempeComponent:
    """One connected component of the subgraph on two colour classes.

    vertices lists the component's vertices in traversal order; for a path
    the order runs from the lower-numbered endpoint, for a cycle it starts at
    the smallest vertex and the first vertex repeats at the end is omitted.
    edges holds the edge ids in the same traversal order.
    """

    is_cycle: bool
    vertices: tuple[int, ...]
    edges: tuple[int, ...]

    def endpoints(self) -> tuple[int, int]:
        if self.is_cycle:
            raise DomainError("cycles have no endpoints")
        return self.vertices[0], self.vertices[-1]


@dataclass(frozen=True)
class KempeDecomposition:
    source: EdgeColouring
    pair: tuple[Colour, Colour]
    components: tuple[KempeComponent, ...]

    def component_at(self, v: int) -> int | None:
        """Index of the component containing vertex v, if any."""
        for i, comp in enumerate(self.components):
            if v in comp.vertices:
                return i
        return None


def kempe_decompose(c: EdgeColouring, x: Colour, y: Colour) -> KempeDecomposition:
    """Split the edges coloured x or y into maximal paths and even cycles.

    Requires the restriction of c to {x, y} to be proper (no vertex with two
    incident edges of the same one of these colours).  Components appear
    paths first (by lower endpoint), then cycles (by smallest vertex).
    """
    if x is y:
        raise DomainError("need two distinct colours")
    g = c.graph
    incident: list[list[int]] = [[] for _ in range(g.vertex_count)]
    for eid, col in enumerate(c.colours):
        if col is x or col is y:
            u, v = g.edges[eid]
            incident[u].append(eid)
            incident[v].append(eid)
    for v, eids in enumerate(incident):
        per = [c.colours[e] for e in eids]
        if per.count(x) > 1 or per.count(y) > 1:
            raise DomainError(
                f"restriction to {x.value},{y.value} is improper at vertex {v}"
            )

    visited_edges: set[int] = set()
    components: list[KempeComponent] = []

    def walk(start: int, first_eid: int, is_cycle: bool) -> KempeComponent:
        verts = [start]
        eids = []
        v, eid = start, first_eid
        while True:
            eids.append(eid)
            visited_edges.add(eid)
            a, b = g.edges[eid]
            v = b if v == a else a
            nxt = [e for e in incident[v] if e not in visited_edges]
            if is_cycle and v == start:
                break
            verts.append(v)
            if not nxt:
                break
            eid = nxt[0]
        return KempeComponent(is_cycle, tuple(verts), tuple(eids))

    for v in range(g.vertex_count):
        if len(incident[v]) == 1 and incident[v][0] not in visited_edges:
            components.append(walk(v, incident[v][0], False))
    for v in range(g.vertex_count):
        if len(incident[v]) == 2:
            fresh = [e for e in incident[v] if e not in visited_edges]
            if len(fresh) == 2:
                comp = walk(v, min(fresh), True)
                # alternation of two colours forces even length
                assert len(comp.edges) % 2 == 0
                components.append(comp)
    return KempeDecomposition(c, (x, y) if x < y else (y, x), tuple(components))


def kempe_swap(c: EdgeColouring, d: KempeDecomposition, index: int) -> EdgeColouring:
    """Exchange the two colours of d along its index-th component."""
    if d.source != c:
        raise ContractViolationError(
            "decomposition was computed from a different colouring"
        )
    if not 0 <= index < len(d.components):
        raise DomainError(f"no component {index}")
    x, y = d.pair
    changes = {}
    for eid in d.components[index].edges:
        changes[eid] = y if c.colours[eid] is x else x
    return c.with_colours(changes)


def _missing_at(c: EdgeColouring, v: int, skip: int) -> list[Colour]:
    """Non-delta colours absent from v's incident edges other than skip."""
    present = set(c.colours_at(v, skip=skip))
    return [col for col in NON_DELTA if col not in present]


def properize(c: EdgeColouring) -> EdgeColouring:
    """Repair a delta-improper colouring into a proper one.

    Each round removes at least one edge from the delta class and never adds
    one, so the result's delta class is a subset of the input's (strict
    whenever the input had a clash).  Proper inputs are returned unchanged.
    Invalid inputs (a clash on a non-delta colour) raise DomainError.
    """
    kind = c.classification()
    if kind is ColouringKind.INVALID:
        raise DomainError("colouring has a non-delta clash")
    while True:
        clash = None
        for v in range(c.graph.vertex_count):
            deltas = sorted(
                eid
                for _, eid in c.graph.adjacency[v]
                if c.colours[eid] is Colour.DELTA
            )
            if len(deltas) >= 2:
                clash = (v, deltas)
                break
        if clash is None:
            return c
        u, deltas = clash
        before = c.colour_class(Colour.DELTA)
        c = _resolve_clash(c, u, deltas)
        after = c.colour_class(Colour.DELTA)
        # the round must strictly shrink the delta class
        assert after < before, "clash resolution failed to shrink delta"


def _resolve_clash(c: EdgeColouring, u: int, deltas: list[int]) -> EdgeColouring:
    g = c.graph
    e1, e2 = deltas[0], deltas[1]

    def other_end(eid: int) -> int:
        a, b = g.edges[eid]
        return b if a == u else a

    if g.degree(u) == 2 or len(deltas) == 3:
        # no third colour pins the choice; any colour free at the far end of
        # the lowest delta edge works (at most two are taken there)
        far = other_end(e1)
        free = _missing_at(c, far, skip=e1)
        return c.with_colours({e1: free[0]})

    third = next(
        eid for _, eid in g.adjacency[u] if eid not in (e1, e2)
    )
    x = c.colours[third]
    # direct recolouring: some colour other than x free at the far end
    for eid in (e1, e2):
        far = other_end(eid)
        for col in _missing_at(c, far, skip=eid):
            if col is not x:
                return c.with_colours({eid: col})
    # both far ends see all of the other two colours: swap the Kempe path of
    # (x, y) that ends at u, freeing x there, then give x to a delta edge
    # whose far end is not the path's other endpoint
    y = next(col for col in NON_DELTA if col is not x)
    d = kempe_decompose(c, x, y)
    at_u = d.component_at(u)
    if at_u is None or d.components[at_u].is_cycle:
        raise ContractViolationError(
            f"expected vertex {u} to end a ({x.value},{y.value}) path"
        )
    path = d.components[at_u]
    ends = path.endpoints()
    if u not in ends:
        raise ContractViolationError(
            f"expected vertex {u} to end a ({x.value},{y.value}) path"
        )
    far_end = ends[1] if ends[0] == u else ends[0]
    v, w = other_end(e1), other_end(e2)
    target = e2 if w != far_end else e1
    swapped = kempe_swap(c, d, at_u)
    return swapped.with_colours({target: x})
