"""Classification of delta edges, the delta-shift move, and the structural
verifier.

Every delta edge of a delta-minimum proper colouring belongs to at least one
of three classes, named by the two-colour subgraph whose path joins the
edge's ends: A for (alpha,beta), B for (beta,gamma), C for (alpha,gamma).
Closing that path with the edge itself yields the edge's associated odd
cycle.  The verifier re-checks each published structural consequence as an
independent clause, so it doubles as a detector for colourings that are
proper but not minimum.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from itertools import combinations
from typing import Any, Mapping, Optional

from .colouring import (
    Colour,
    ColouringKind,
    EdgeColouring,
    KempeComponent,
    kempe_decompose,
)
from .errors import ClassificationError, ContractViolationError, DomainError


class DeltaClass(enum.Enum):
    A = "A"
    B = "B"
    C = "C"

    @property
    def pair(self) -> tuple[Colour, Colour]:
        return _PAIR[self]

    @property
    def external_colour(self) -> Colour:
        """Colour of every edge leaving this class's associated cycles."""
        return _EXTERNAL[self]


_PAIR = {
    DeltaClass.A: (Colour.ALPHA, Colour.BETA),
    DeltaClass.B: (Colour.BETA, Colour.GAMMA),
    DeltaClass.C: (Colour.ALPHA, Colour.GAMMA),
}
_EXTERNAL = {
    DeltaClass.A: Colour.GAMMA,
    DeltaClass.B: Colour.ALPHA,
    DeltaClass.C: Colour.BETA,
}


@dataclass(frozen=True)
class DeltaClassification:
    colouring: EdgeColouring
    memberships: Mapping[int, frozenset[DeltaClass]]
    cycles: Mapping[tuple[int, DeltaClass], tuple[int, ...]]

    def cycle_of(self, e: int, cls: DeltaClass) -> tuple[int, ...]:
        try:
            return self.cycles[(e, cls)]
        except KeyError:
            raise DomainError(f"edge {e} has no {cls.value} cycle") from None


def _joining_paths(c: EdgeColouring) -> dict[DeltaClass, dict[frozenset[int], KempeComponent]]:
    """Per class, the path components of its colour pair indexed by endpoint
    set.  A vertex ends at most one path, so the index is injective."""
    out = {}
    for cls in DeltaClass:
        x, y = cls.pair
        d = kempe_decompose(c, x, y)
        by_ends = {}
        for comp in d.components:
            if not comp.is_cycle:
                by_ends[frozenset(comp.endpoints())] = comp
        out[cls] = by_ends
    return out


def _memberships_lenient(
    c: EdgeColouring,
) -> dict[int, dict[DeltaClass, tuple[int, ...]]]:
    """Class memberships for every delta edge, by the joining-path criterion
    alone.  No parity filtering and no exception on an empty result; the
    verifier clauses judge what is recorded here."""
    paths = _joining_paths(c)
    found: dict[int, dict[DeltaClass, tuple[int, ...]]] = {}
    for e in sorted(c.colour_class(Colour.DELTA)):
        u, v = c.graph.edges[e]
        key = frozenset((u, v))
        per_class = {}
        for cls in DeltaClass:
            comp = paths[cls].get(key)
            if comp is not None:
                # cycle order: the delta edge, then the path from its lower
                # end to its upper end
                per_class[cls] = (e,) + comp.edges
        found[e] = per_class
    return found


def classify_delta_edges(c: EdgeColouring) -> DeltaClassification:
    """Class memberships and associated odd cycles of every delta edge.

    The input must be proper and delta-minimum.  Minimality is the caller's
    claim; it is falsified (ClassificationError) when some delta edge's ends
    are joined by no even path in any of the three colour pairs.  A delta
    edge with a degree-2 end legitimately lands in two classes and both are
    recorded.
    """
    if c.classification() is not ColouringKind.PROPER:
        raise DomainError("classification needs a proper colouring")
    memberships: dict[int, frozenset[DeltaClass]] = {}
    cycles: dict[tuple[int, DeltaClass], tuple[int, ...]] = {}
    for e, per_class in _memberships_lenient(c).items():
        kept = []
        for cls, cycle in per_class.items():
            if len(cycle) % 2 == 1:  # even path plus the edge itself
                kept.append(cls)
                cycles[(e, cls)] = cycle
        if not kept:
            raise ClassificationError(
                f"delta edge {e} has no joining even path; "
                "the colouring is not delta-minimum"
            )
        memberships[e] = frozenset(kept)
    return DeltaClassification(c, memberships, cycles)


# ---------------------------------------------------------------------------
# delta shift


def shift_delta(
    c: EdgeColouring,
    cl: DeltaClassification,
    e: int,
    cls: DeltaClass,
    e_target: int,
) -> EdgeColouring:
    """Move the delta colour from e to another edge of its associated cycle.

    Walks the cycle from e towards e_target in stored orientation, swapping
    the colours of adjacent cycle edges one step at a time; each intermediate
    colouring is proper (asserted).  Off-cycle edges are untouched, the delta
    count is preserved, and e_target's new classification carries the same
    class and cycle.
    """
    if cl.colouring != c:
        raise ContractViolationError("classification describes a different colouring")
    if e not in cl.memberships or cls not in cl.memberships[e]:
        raise DomainError(f"edge {e} is not classified {cls.value}")
    cycle = cl.cycles[(e, cls)]
    if e_target not in cycle:
        raise DomainError(f"edge {e_target} is not on the {cls.value} cycle of edge {e}")
    if e_target == e:
        return c
    target_pos = cycle.index(e_target)
    result = c
    for pos in range(1, target_pos + 1):
        prev_e, cur_e = cycle[pos - 1], cycle[pos]
        result = result.with_colours(
            {prev_e: result.colours[cur_e], cur_e: result.colours[prev_e]}
        )
        if result.classification() is not ColouringKind.PROPER:
            raise ContractViolationError(
                f"shift step onto edge {cur_e} broke properness; "
                "the input colouring was not delta-minimum"
            )
    _check_shift_post(c, result, e, cls, e_target, cycle)
    return result


def _check_shift_post(
    c: EdgeColouring,
    result: EdgeColouring,
    e: int,
    cls: DeltaClass,
    e_target: int,
    cycle: tuple[int, ...],
) -> None:
    old_delta = c.colour_class(Colour.DELTA)
    new_delta = result.colour_class(Colour.DELTA)
    if new_delta != (old_delta - {e}) | {e_target}:
        raise ContractViolationError("shift changed delta edges other than e/e_target")
    on_cycle = set(cycle)
    for eid in range(c.graph.edge_count):
        if eid not in on_cycle and c.colours[eid] is not result.colours[eid]:
            raise ContractViolationError("shift touched an edge off the cycle")
    # the target edge must inherit the class with the identical cycle
    paths = _joining_paths(result)
    u, v = c.graph.edges[e_target]
    comp = paths[cls].get(frozenset((u, v)))
    if comp is None or set(comp.edges) != on_cycle - {e_target}:
        raise ContractViolationError("target edge lost its class or cycle after shift")


# ---------------------------------------------------------------------------
# verifier


@dataclass(frozen=True)
class ClauseResult:
    clause_id: str
    passed: bool
    witness: Any = None


@dataclass(frozen=True)
class VerificationReport:
    clauses: tuple[ClauseResult, ...]
    delta_count: int
    counts: dict[str, int]
    strong_matching: bool

    @property
    def all_pass(self) -> bool:
        return all(cl.passed for cl in self.clauses)

    def clause(self, clause_id: str) -> ClauseResult:
        for cl in self.clauses:
            if cl.clause_id == clause_id:
                return cl
        raise DomainError(f"no clause {clause_id!r}")

    def to_json(self) -> str:
        return json.dumps(
            {
                "clauses": [
                    {"id": cl.clause_id, "pass": cl.passed, "witness": cl.witness}
                    for cl in self.clauses
                ],
                "s": self.delta_count,
                "counts": self.counts,
                "strong_matching": self.strong_matching,
            },
            sort_keys=True,
        )


def _cycle_vertices(c: EdgeColouring, cycle: tuple[int, ...]) -> set[int]:
    verts: set[int] = set()
    for eid in cycle:
        verts.update(c.graph.edges[eid])
    return verts


def _joining_edges(c: EdgeColouring, e1: int, e2: int) -> list[int]:
    """Edges with one end on e1 and the other on e2."""
    g = c.graph
    ends1, ends2 = set(g.edges[e1]), set(g.edges[e2])
    out = []
    for eid, (a, b) in enumerate(g.edges):
        if eid in (e1, e2):
            continue
        if (a in ends1 and b in ends2) or (a in ends2 and b in ends1):
            out.append(eid)
    return out


def verify_theorem1(c: EdgeColouring, s_known: Optional[int] = None) -> VerificationReport:
    """Evaluate every published structural clause against a proper colouring.

    Clause failures are report entries, never exceptions, so the verifier
    can run on colourings that merely claim to be delta-minimum.  With
    s_known given, the parity clause checks congruence to it instead of to
    the colouring's own delta count.  parity_congruence is evaluated on
    cubic graphs only and passes vacuously otherwise; strong_matching_flag
    is informational (always passes, value reported separately).
    """
    if c.classification() is not ColouringKind.PROPER:
        raise DomainError("verification needs a proper colouring")
    g = c.graph
    delta_edges = sorted(c.colour_class(Colour.DELTA))
    found = _memberships_lenient(c)
    clauses: list[ClauseResult] = []

    # delta_incidence: all three proper colours appear next to each delta edge
    bad = []
    for e in delta_edges:
        u, v = g.edges[e]
        seen = set(c.colours_at(u, skip=e)) | set(c.colours_at(v, skip=e))
        if not {Colour.ALPHA, Colour.BETA, Colour.GAMMA} <= seen:
            bad.append(e)
    clauses.append(ClauseResult("delta_incidence", not bad, {"edges": bad} if bad else None))

    # degree_pattern: end degrees (2,3) or (3,3)
    bad = []
    for e in delta_edges:
        u, v = g.edges[e]
        if sorted((g.degree(u), g.degree(v))) not in ([2, 3], [3, 3]):
            bad.append(e)
    clauses.append(ClauseResult("degree_pattern", not bad, {"edges": bad} if bad else None))

    # classification_total: every delta edge joined in at least one class
    bad = [e for e in delta_edges if not found[e]]
    clauses.append(
        ClauseResult("classification_total", not bad, {"edges": bad} if bad else None)
    )

    # cycle_oddness: every recorded cycle odd, with exactly one delta edge
    bad_cyc = []
    for e in delta_edges:
        for cls, cycle in found[e].items():
            deltas_on = [x for x in cycle if c.colours[x] is Colour.DELTA]
            if len(cycle) % 2 == 0 or deltas_on != [e]:
                bad_cyc.append({"edge": e, "class": cls.value, "length": len(cycle)})
    clauses.append(ClauseResult("cycle_oddness", not bad_cyc, {"cycles": bad_cyc} if bad_cyc else None))

    # external_edge_colour: edges leaving a cycle wear the class colour
    bad_ext = []
    for e in delta_edges:
        for cls, cycle in found[e].items():
            verts = _cycle_vertices(c, cycle)
            want = cls.external_colour
            for eid, (a, b) in enumerate(g.edges):
                if (a in verts) != (b in verts) and c.colours[eid] is not want:
                    bad_ext.append({"edge": e, "class": cls.value, "external": eid})
    clauses.append(
        ClauseResult("external_edge_colour", not bad_ext, {"edges": bad_ext} if bad_ext else None)
    )

    # no_consecutive_degree2: no cycle edge joins two degree-2 vertices
    bad_deg2 = []
    for e in delta_edges:
        for cls, cycle in found[e].items():
            for eid in cycle:
                a, b = g.edges[eid]
                if g.degree(a) == 2 and g.degree(b) == 2:
                    bad_deg2.append({"edge": e, "class": cls.value, "vertices": [a, b]})
    clauses.append(
        ClauseResult(
            "no_consecutive_degree2", not bad_deg2, {"pairs": bad_deg2} if bad_deg2 else None
        )
    )

    # cycles_disjoint: cycles of distinct delta edges share no vertex
    bad_pairs = []
    for e1, e2 in combinations(delta_edges, 2):
        for cyc1 in found[e1].values():
            for cyc2 in found[e2].values():
                shared = _cycle_vertices(c, cyc1) & _cycle_vertices(c, cyc2)
                if shared:
                    bad_pairs.append({"edges": [e1, e2], "vertices": sorted(shared)})
    clauses.append(
        ClauseResult("cycles_disjoint", not bad_pairs, {"pairs": bad_pairs} if bad_pairs else None)
    )

    # parity_congruence (cubic only): |A| ≡ |B| ≡ |C| ≡ s (mod 2)
    counts = {cls.value: 0 for cls in DeltaClass}
    for e in delta_edges:
        for cls in found[e]:
            counts[cls.value] += 1
    if g.is_cubic():
        target = s_known if s_known is not None else len(delta_edges)
        values = [counts["A"], counts["B"], counts["C"], target]
        ok = len({v % 2 for v in values}) == 1
        clauses.append(
            ClauseResult(
                "parity_congruence",
                ok,
                None if ok else {"counts": dict(counts), "target": target},
            )
        )
    else:
        clauses.append(ClauseResult("parity_congruence", True, None))

    # pair_interaction: disjoint classes force 2K2, shared class allows one
    # joining edge
    bad_inter = []
    for e1, e2 in combinations(delta_edges, 2):
        if not found[e1] or not found[e2]:
            continue  # already reported by classification_total
        joining = _joining_edges(c, e1, e2)
        share = set(found[e1]) & set(found[e2])
        limit = 1 if share else 0
        if len(joining) > limit:
            bad_inter.append({"edges": [e1, e2], "joining": joining})
    clauses.append(
        ClauseResult("pair_interaction", not bad_inter, {"pairs": bad_inter} if bad_inter else None)
    )

    # triple_interaction: three same-class edges induce at most four edges
    bad_triples = []
    for cls in DeltaClass:
        members = [e for e in delta_edges if cls in found[e]]
        for trio in combinations(members, 3):
            verts = set()
            for e in trio:
                verts.update(g.edges[e])
            induced = [
                eid for eid, (a, b) in enumerate(g.edges) if a in verts and b in verts
            ]
            if len(induced) > 4:
                bad_triples.append(
                    {"edges": list(trio), "class": cls.value, "induced": induced}
                )
    clauses.append(
        ClauseResult(
            "triple_interaction", not bad_triples, {"triples": bad_triples} if bad_triples else None
        )
    )

    # strong_matching_flag: informational only
    strong = all(
        not _joining_edges(c, e1, e2) for e1, e2 in combinations(delta_edges, 2)
    )
    clauses.append(ClauseResult("strong_matching_flag", True, None))

    return VerificationReport(
        clauses=tuple(clauses),
        delta_count=len(delta_edges),
        counts=counts,
        strong_matching=strong,
    )


# ---------------------------------------------------------------------------
# parity


class ParitySignature(tuple):
    """(|A|, |B|, |C|, parity_ok) with named access."""

    __slots__ = ()

    def __new__(cls, a: int, b: int, c: int, parity_ok: bool):
        return super().__new__(cls, (a, b, c, parity_ok))

    @property
    def counts(self) -> tuple[int, int, int]:
        return self[0], self[1], self[2]

    @property
    def parity_ok(self) -> bool:
        return self[3]


def parity_signature(cl: DeltaClassification) -> ParitySignature:
    """Class counts and their congruence to the delta count, mod 2.

    Defined for cubic graphs only; there every delta edge has exactly one
    membership (asserted), so the counts partition the delta class.
    """
    g = cl.colouring.graph
    if not g.is_cubic():
        raise DomainError("parity signature is defined for cubic graphs only")
    counts = {cls: 0 for cls in DeltaClass}
    for e, classes in cl.memberships.items():
        if len(classes) != 1:
            raise ContractViolationError(
                f"delta edge {e} has {len(classes)} memberships on a cubic graph"
            )
        counts[next(iter(classes))] += 1
    s = cl.colouring.delta_count()
    values = [counts[DeltaClass.A], counts[DeltaClass.B], counts[DeltaClass.C], s]
    parity_ok = len({v % 2 for v in values}) == 1
    return ParitySignature(
        counts[DeltaClass.A], counts[DeltaClass.B], counts[DeltaClass.C], parity_ok
    )
