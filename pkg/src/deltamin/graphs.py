"""Graph representation, graph6/edge-list codecs, and instance generators.

All graphs in this package are simple undirected graphs with maximum degree
three.  Vertices are the integers ``0 .. vertex_count-1``; every edge has a
stable integer id equal to its position in the edge tuple.
"""

from __future__ import annotations

import random
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .errors import DomainError, GraphFormatError

MAX_DEGREE = 3

_G6_HEADER = ">>graph6<<"


class Graph:
    """Immutable simple graph with maximum degree three.

    Edges are normalised to ``(u, v)`` with ``u < v`` and keep their
    insertion order; the index of an edge in ``edges`` is its id.
    """

    __slots__ = ("vertex_count", "edges", "adjacency", "_edge_ids")

    def __init__(self, vertex_count: int, edges: Iterable[tuple[int, int]]):
        if vertex_count < 0:
            raise DomainError("vertex count must be non-negative")
        normalised: list[tuple[int, int]] = []
        adjacency: list[list[tuple[int, int]]] = [[] for _ in range(vertex_count)]
        edge_ids: dict[tuple[int, int], int] = {}
        for u, v in edges:
            if not (0 <= u < vertex_count) or not (0 <= v < vertex_count):
                raise DomainError(
                    f"edge ({u}, {v}) out of range for {vertex_count} vertices"
                )
            if u == v:
                raise DomainError(f"self-loop at vertex {u}")
            if u > v:
                u, v = v, u
            if (u, v) in edge_ids:
                raise DomainError(f"duplicate edge ({u}, {v})")
            eid = len(normalised)
            edge_ids[(u, v)] = eid
            normalised.append((u, v))
            adjacency[u].append((v, eid))
            adjacency[v].append((u, eid))
        for vertex, nbrs in enumerate(adjacency):
            if len(nbrs) > MAX_DEGREE:
                raise DomainError(
                    f"vertex {vertex} has degree {len(nbrs)}, maximum is {MAX_DEGREE}"
                )
        self.vertex_count = vertex_count
        self.edges = tuple(normalised)
        self.adjacency = tuple(tuple(nbrs) for nbrs in adjacency)
        self._edge_ids = edge_ids

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def degrees(self) -> tuple[int, ...]:
        return tuple(len(nbrs) for nbrs in self.adjacency)

    def neighbours(self, v: int) -> tuple[int, ...]:
        return tuple(w for w, _ in self.adjacency[v])

    def incident_edges(self, v: int) -> tuple[int, ...]:
        return tuple(eid for _, eid in self.adjacency[v])

    def endpoints(self, eid: int) -> tuple[int, int]:
        return self.edges[eid]

    def edge_id(self, u: int, v: int) -> int:
        if u > v:
            u, v = v, u
        try:
            return self._edge_ids[(u, v)]
        except KeyError:
            raise DomainError(f"no edge ({u}, {v})") from None

    def has_edge(self, u: int, v: int) -> bool:
        if u > v:
            u, v = v, u
        return (u, v) in self._edge_ids

    def is_cubic(self) -> bool:
        return self.vertex_count > 0 and all(
            len(nbrs) == 3 for nbrs in self.adjacency
        )

    def components(self) -> list[list[int]]:
        """Connected components as sorted vertex lists, ordered by minimum."""
        seen = [False] * self.vertex_count
        out: list[list[int]] = []
        for start in range(self.vertex_count):
            if seen[start]:
                continue
            stack = [start]
            seen[start] = True
            comp = []
            while stack:
                v = stack.pop()
                comp.append(v)
                for w, _ in self.adjacency[v]:
                    if not seen[w]:
                        seen[w] = True
                        stack.append(w)
            comp.sort()
            out.append(comp)
        return out

    def is_connected(self) -> bool:
        return self.vertex_count <= 1 or len(self.components()) == 1

    def __eq__(self, other: object) -> bool:
        """Same vertex count and same edge set.  Edge ids are positional and
        may differ between equal graphs; colourings compare stricter."""
        return (
            isinstance(other, Graph)
            and self.vertex_count == other.vertex_count
            and self._edge_ids.keys() == other._edge_ids.keys()
        )

    def __hash__(self) -> int:
        return hash((self.vertex_count, frozenset(self._edge_ids)))

    def __repr__(self) -> str:
        return f"Graph({self.vertex_count}, m={self.edge_count})"


def induced_subgraph(g: Graph, vertices: Sequence[int]) -> tuple[Graph, list[int], list[int]]:
    """Subgraph induced on ``vertices``.

    Returns ``(sub, vertex_map, edge_map)`` where ``vertex_map[i]`` is the
    original label of sub-vertex ``i`` and ``edge_map[j]`` the original id of
    sub-edge ``j``.
    """
    index = {v: i for i, v in enumerate(vertices)}
    sub_edges = []
    edge_map = []
    for eid, (u, v) in enumerate(g.edges):
        if u in index and v in index:
            sub_edges.append((index[u], index[v]))
            edge_map.append(eid)
    return Graph(len(vertices), sub_edges), list(vertices), edge_map


# ---------------------------------------------------------------------------
# graph6 codec


def _g6_payload(text: str) -> bytes:
    s = text.strip()
    if s.startswith(_G6_HEADER):
        s = s[len(_G6_HEADER):]
    try:
        return s.encode("ascii")
    except UnicodeEncodeError as exc:
        raise GraphFormatError("non-ASCII byte in graph6 data", exc.start) from None


def _g6_read_size(data: bytes) -> tuple[int, int]:
    """Decode the leading size field, returning (n, bytes consumed)."""
    if not data:
        raise GraphFormatError("empty graph6 string", 0)
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) >= 2 and data[1] != 126:
        if len(data) < 4:
            raise GraphFormatError("truncated extended size field", len(data))
        n = 0
        for i in range(1, 4):
            n = (n << 6) | (data[i] - 63)
        return n, 4
    if len(data) < 8:
        raise GraphFormatError("truncated extended size field", len(data))
    n = 0
    for i in range(2, 8):
        n = (n << 6) | (data[i] - 63)
    return n, 8


def parse_graph6(text: str) -> Graph:
    """Decode one graph6 string (optional ``>>graph6<<`` header allowed).

    Bits of the upper triangle are read column by column: for each vertex
    ``j`` the pairs ``(0,j) .. (j-1,j)`` in order.  Raises GraphFormatError
    with the offending byte offset on malformed input and DomainError when
    the encoded graph has a vertex of degree above three.
    """
    data = _g6_payload(text)
    for pos, byte in enumerate(data):
        if not 63 <= byte <= 126:
            raise GraphFormatError(f"byte {byte} outside graph6 range", pos)
    n, start = _g6_read_size(data)
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    expected = start + nbytes
    if len(data) < expected:
        raise GraphFormatError(
            f"truncated graph6 data: expected {expected} bytes, got {len(data)}",
            len(data),
        )
    if len(data) > expected:
        raise GraphFormatError("trailing bytes after graph6 data", expected)
    edges = []
    k = 0
    i, j = 0, 1
    for pos in range(start, expected):
        group = data[pos] - 63
        for shift in (5, 4, 3, 2, 1, 0):
            bit = (group >> shift) & 1
            if k < nbits:
                if bit:
                    edges.append((i, j))
                i += 1
                if i == j:
                    i, j = 0, j + 1
                k += 1
            elif bit:
                raise GraphFormatError("nonzero padding bit", pos)
    return Graph(n, edges)


def emit_graph6(g: Graph) -> str:
    """Encode a graph as a graph6 string (no header)."""
    n = g.vertex_count
    if n <= 62:
        size = bytes([n + 63])
    elif n <= 258047:
        size = bytes([126, (n >> 12) + 63, ((n >> 6) & 63) + 63, (n & 63) + 63])
    else:
        raise DomainError("graph too large for graph6 encoding")
    nbits = n * (n - 1) // 2
    bits = bytearray(nbits)
    for u, v in g.edges:
        # column-major position of pair (u, v), u < v
        bits[v * (v - 1) // 2 + u] = 1
    out = bytearray(size)
    for base in range(0, nbits, 6):
        group = 0
        for shift, k in zip((5, 4, 3, 2, 1, 0), range(base, base + 6)):
            if k < nbits and bits[k]:
                group |= 1 << shift
        out.append(group + 63)
    return out.decode("ascii")


# ---------------------------------------------------------------------------
# edge-list codec


def parse_edge_list(text: str) -> Graph:
    """Decode a whitespace edge list, one ``u v`` pair per line.

    An optional first line ``n m`` fixes the vertex count; it is recognised
    when its second value equals the number of remaining non-empty lines and
    every later endpoint is below its first value.  Without a header the
    vertex count is ``max endpoint + 1``.
    """
    rows: list[tuple[int, int, int]] = []  # (lineno, a, b)
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(f"line {lineno}: expected two integers, got {raw!r}")
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"line {lineno}: expected two integers, got {raw!r}") from None
        if a < 0 or b < 0:
            raise GraphFormatError(f"line {lineno}: negative vertex label")
        rows.append((lineno, a, b))
    if not rows:
        return Graph(0, [])
    _, first_a, first_b = rows[0]
    body = rows[1:]
    is_header = (
        len(body) == first_b
        and all(a < first_a and b < first_a for _, a, b in body)
    )
    if is_header:
        n = first_a
        edge_rows = body
    else:
        n = max(max(a, b) for _, a, b in rows) + 1
        edge_rows = rows
    try:
        return Graph(n, [(a, b) for _, a, b in edge_rows])
    except DomainError as exc:
        raise GraphFormatError(f"invalid edge list: {exc}") from None


def emit_edge_list(g: Graph) -> str:
    lines = [f"{g.vertex_count} {g.edge_count}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# named instances


def complete_graph(n: int) -> Graph:
    if n > MAX_DEGREE + 1:
        raise DomainError("complete graph exceeds maximum degree three")
    return Graph(n, list(combinations(range(n), 2)))


def complete_bipartite_33() -> Graph:
    return Graph(6, [(i, j) for i in range(3) for j in range(3, 6)])


def cycle_graph(k: int) -> Graph:
    if k < 3:
        raise DomainError("cycle needs at least three vertices")
    return Graph(k, [(i, (i + 1) % k) for i in range(k)])


def petersen_graph() -> Graph:
    """Outer cycle 0-4, inner pentagram 5-9 (i+5 adjacent to ((i+2) mod 5)+5),
    spokes i to i+5."""
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    edges += [(i, i + 5) for i in range(5)]
    return Graph(10, edges)


def flower_snark(k: int) -> Graph:
    """Flower snark J_k for odd k >= 3: 4k vertices, 6k edges, cubic.

    Vertex layout: for each i in 0..k-1 a star centre ``4i`` joined to the
    three tips ``4i+1`` (inner cycle), ``4i+2`` and ``4i+3`` (outer strands).
    Inner tips form a k-cycle; outer strands close up with a half twist,
    giving one 2k-cycle.
    """
    if k < 3 or k % 2 == 0:
        raise DomainError("flower snark parameter must be odd and at least 3")
    edges = []
    for i in range(k):
        c = 4 * i
        edges += [(c, c + 1), (c, c + 2), (c, c + 3)]
    for i in range(k):
        edges.append((4 * i + 1, 4 * ((i + 1) % k) + 1))
    for i in range(k - 1):
        edges.append((4 * i + 2, 4 * (i + 1) + 2))
        edges.append((4 * i + 3, 4 * (i + 1) + 3))
    edges.append((4 * (k - 1) + 2, 3))
    edges.append((4 * (k - 1) + 3, 2))
    return Graph(4 * k, edges)


_NAMED_FIXED = {
    "k4": lambda: complete_graph(4),
    "k33": complete_bipartite_33,
    "petersen": petersen_graph,
}

_NAMED_PARAM = {
    "cycle": cycle_graph,
    "flower": flower_snark,
}


def make_named(name: str, k: int | None = None) -> Graph:
    """Build a named instance: k4, k33, petersen, cycle (with k), flower (with k)."""
    key = name.strip().lower()
    if key in _NAMED_FIXED:
        if k is not None:
            raise DomainError(f"{name} takes no size parameter")
        return _NAMED_FIXED[key]()
    if key in _NAMED_PARAM:
        if k is None:
            raise DomainError(f"{name} needs a size parameter")
        return _NAMED_PARAM[key](k)
    raise DomainError(f"unknown graph name {name!r}")


NAMED_GRAPHS = tuple(sorted(_NAMED_FIXED)) + tuple(sorted(_NAMED_PARAM))


# ---------------------------------------------------------------------------
# random instances


def random_subcubic(n: int, seed: int) -> Graph:
    """Connected random graph on n vertices with maximum degree three.

    Deterministic for a given (n, seed) across platforms: all randomness
    comes from random.Random seeded with a string key.  A random spanning
    tree with degree cap three is grown first, then extra edges are added
    while they keep the graph simple and subcubic.
    """
    if n < 1:
        raise DomainError("need at least one vertex")
    rng = random.Random(f"subcubic:{n}:{seed}")
    if n == 1:
        return Graph(1, [])
    labels = list(range(n))
    rng.shuffle(labels)
    edges: list[tuple[int, int]] = []
    deg = [0] * n
    adj: set[tuple[int, int]] = set()

    def add(u: int, v: int) -> None:
        if u > v:
            u, v = v, u
        edges.append((u, v))
        adj.add((u, v))
        deg[u] += 1
        deg[v] += 1

    in_tree = [labels[0]]
    for v in labels[1:]:
        open_slots = [u for u in in_tree if deg[u] < MAX_DEGREE]
        add(rng.choice(open_slots), v)
        in_tree.append(v)
    # densify: bounded number of attempts keeps this deterministic and fast
    for _ in range(4 * n):
        u = rng.randrange(n)
        v = rng.randrange(n)
        if u == v or deg[u] >= MAX_DEGREE or deg[v] >= MAX_DEGREE:
            continue
        if (min(u, v), max(u, v)) in adj:
            continue
        add(u, v)
    return Graph(n, edges)


# ---------------------------------------------------------------------------
# exhaustive generation of connected cubic graphs


def _bfs_ordered_cubic_edge_sets(n: int) -> Iterator[tuple[tuple[int, int], ...]]:
    """Candidate edge sets for connected cubic graphs on n vertices.

    Vertices are introduced in discovery order: vertex 0 is completed first
    (forcing N(0) = {1,2,3}), each later vertex first appears as a fresh
    neighbour of the lowest not-yet-completed vertex.  Every connected cubic
    graph has a labelling of this shape (relabel by breadth-first search),
    so the stream covers all isomorphism classes, with many duplicates.
    """
    deg = [0] * n
    adjmask = [0] * n
    edges: list[tuple[int, int]] = []

    def complete(i: int, introduced: int) -> Iterator[tuple[tuple[int, int], ...]]:
        if i == n:
            yield tuple(edges)
            return
        need = MAX_DEGREE - deg[i]
        old = [
            j
            for j in range(i + 1, introduced)
            if deg[j] < MAX_DEGREE and not (adjmask[i] >> j) & 1
        ]
        max_new = min(need, n - introduced)
        for new_count in range(max_new + 1):
            for chosen in combinations(old, need - new_count):
                fresh = range(introduced, introduced + new_count)
                partners = list(chosen) + list(fresh)
                for j in partners:
                    edges.append((i, j))
                    deg[i] += 1
                    deg[j] += 1
                    adjmask[i] |= 1 << j
                    adjmask[j] |= 1 << i
                nxt = introduced + new_count
                # the next vertex to complete must already exist, and while
                # vertices remain uninstantiated some completed-side slack
                # must remain to introduce them
                viable = i + 1 == n or i + 1 < nxt
                if viable and nxt < n:
                    slack = sum(MAX_DEGREE - deg[j] for j in range(i + 1, nxt))
                    viable = slack > 0
                if viable:
                    yield from complete(i + 1, nxt)
                for j in reversed(partners):
                    edges.pop()
                    deg[i] -= 1
                    deg[j] -= 1
                    adjmask[i] &= ~(1 << j)
                    adjmask[j] &= ~(1 << i)

    yield from complete(0, 1)


def _adjacency_masks(g: Graph) -> list[int]:
    masks = [0] * g.vertex_count
    for u, v in g.edges:
        masks[u] |= 1 << v
        masks[v] |= 1 << u
    return masks


def _vertex_labels(g: Graph, masks: list[int]) -> list[int]:
    """Canonical isomorphism-invariant vertex labels.

    Seeds each vertex with its degree, triangle count, and distance-layer
    profile, then refines by neighbourhood aggregation.  Labels are ranks of
    sorted signatures, so isomorphic graphs get identical label multisets
    regardless of vertex numbering.
    """
    n = g.vertex_count
    tri = [0] * n
    for u, v in g.edges:
        c = bin(masks[u] & masks[v]).count("1")
        tri[u] += c
        tri[v] += c
    profiles = []
    for v in range(n):
        seen = frontier = 1 << v
        layers = []
        while True:
            nxt = 0
            m = frontier
            while m:
                low = m & -m
                nxt |= masks[low.bit_length() - 1]
                m ^= low
            nxt &= ~seen
            if not nxt:
                break
            layers.append(bin(nxt).count("1"))
            seen |= nxt
            frontier = nxt
        profiles.append(tuple(layers))
    nbrs = [g.neighbours(v) for v in range(n)]
    labels: list = [(len(nbrs[v]), tri[v], profiles[v]) for v in range(n)]
    for _ in range(3):
        sigs = [
            (labels[v], tuple(sorted(labels[w] for w in nbrs[v])))
            for v in range(n)
        ]
        rank = {sig: i for i, sig in enumerate(sorted(set(sigs)))}
        labels = [rank[sig] for sig in sigs]
    return labels


def _wl_key(g: Graph) -> tuple:
    """Isomorphism-invariant bucket key for enumeration dedup."""
    masks = _adjacency_masks(g)
    edge_tri = sorted(
        bin(masks[u] & masks[v]).count("1") for u, v in g.edges
    )
    return (
        g.vertex_count,
        g.edge_count,
        tuple(edge_tri),
        tuple(sorted(_vertex_labels(g, masks))),
    )


def isomorphic(g1: Graph, g2: Graph) -> bool:
    """Exact isomorphism test: canonical vertex labels for pruning, then
    backtracking over a breadth-first order of g1."""
    n = g1.vertex_count
    if n != g2.vertex_count or g1.edge_count != g2.edge_count:
        return False
    if g1.edges == g2.edges:
        return True
    masks1 = _adjacency_masks(g1)
    masks2 = _adjacency_masks(g2)
    labels1 = _vertex_labels(g1, masks1)
    labels2 = _vertex_labels(g2, masks2)
    if sorted(labels1) != sorted(labels2):
        return False
    label_mask2: dict[int, int] = {}
    for w, lab in enumerate(labels2):
        label_mask2[lab] = label_mask2.get(lab, 0) | (1 << w)
    # breadth-first forest order over g1 so each vertex (except roots) has a
    # previously mapped neighbour, keeping candidate sets small; roots start
    # in the rarest label class
    order: list[int] = []
    anchor: list[int] = [-1] * n
    seen = [False] * n
    class_size = {lab: bin(m).count("1") for lab, m in label_mask2.items()}
    for root in sorted(range(n), key=lambda v: (class_size[labels1[v]], v)):
        if seen[root]:
            continue
        seen[root] = True
        queue = [root]
        while queue:
            v = queue.pop(0)
            order.append(v)
            for w in g1.neighbours(v):
                if not seen[w]:
                    seen[w] = True
                    anchor[w] = v
                    queue.append(w)
    nbrs1 = [g1.neighbours(v) for v in range(n)]
    mapping = [-1] * n

    def extend(k: int, used: int) -> bool:
        if k == n:
            return True
        v = order[k]
        if anchor[v] == -1:
            cand_mask = label_mask2[labels1[v]] & ~used
        else:
            cand_mask = masks2[mapping[anchor[v]]] & label_mask2[labels1[v]] & ~used
        image = 0
        for u in nbrs1[v]:
            mu = mapping[u]
            if mu >= 0:
                image |= 1 << mu
        while cand_mask:
            low = cand_mask & -cand_mask
            cand_mask ^= low
            w = low.bit_length() - 1
            if masks2[w] & used != image:
                continue
            mapping[v] = w
            if extend(k + 1, used | low):
                return True
            mapping[v] = -1
        return False

    return extend(0, 0)


def enumerate_cubic(n: int) -> Iterator[Graph]:
    """Yield every connected cubic graph on n vertices, one per isomorphism
    class (isomorphism-free enumeration: breadth-first-ordered candidate
    generation deduplicated by an exact isomorphism test).

    n must be even and between 4 and 14.
    """
    if not 4 <= n <= 14:
        raise DomainError("cubic enumeration supports 4 <= n <= 14")
    if n % 2:
        raise DomainError("no cubic graph has an odd vertex count")
    buckets: dict[tuple, list[Graph]] = {}
    for edge_set in _bfs_ordered_cubic_edge_sets(n):
        g = Graph(n, edge_set)
        bucket = buckets.setdefault(_wl_key(g), [])
        if any(isomorphic(g, seen) for seen in bucket):
            continue
        bucket.append(g)
        yield g
