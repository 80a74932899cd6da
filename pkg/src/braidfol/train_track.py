"""Boundary train track, linked arcs and the supremum of carried slopes.

The Seifert longitude ``lambda`` is walked from the north point of ``S_1``
heading south.  Along a disk it runs down the gaps between attachment sites.
At each site it follows the band edge to the neighbouring disk and resumes
in the gap just past that site there.  Each product disk over ``alpha``
meets the boundary torus in two sectors.  The upper one spans the band edge
at ``b_{i,j}`` and the lower one spans the edge at ``b_{i,j+1}``.  Each
sector is an interval of ``lambda`` from an endpoint of ``alpha`` to the
matching endpoint of its image.  The upper sector contributes maximally for
a left pointer and the lower one for a right pointer.  Two arcs are linked
when their maximal sectors interleave along ``lambda``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

import networkx as nx

from .braid_core import format_braid, genus
from .branched_surface import (
    Arc,
    ArcAssignment,
    SinkReport,
    check_sink_free,
    compute_sectors,
    disk_layout,
)

LambdaPos = tuple[int, int]  # (slot visit index, rank of the endpoint inside the slot)


def lambda_slots(a: ArcAssignment) -> list[tuple[int, int]]:
    """Slots ``(disk, slot)`` in the order ``lambda`` visits them."""
    d = a.diagram
    n = d.strands
    sites = {k: d.disk_sites(k) for k in range(1, n + 1)}
    index = {k: {p: u for u, p in enumerate(s)} for k, s in sites.items()}
    order: list[tuple[int, int]] = []
    k, u = 1, 0  # heading for site u of disk k
    order.append((1, 0))
    limit = 4 * len(d.word) + 2 * n + 4
    while len(order) <= limit:
        m = len(sites[k])
        if m == 0:
            break
        p = sites[k][u]
        col = d.word.letters[p]
        k = col + 1 if col == k else col
        u = index[k][p] + 1
        m = len(sites[k])
        if u == m:
            if k == 1:
                order.append((1, 2 * m))
                break
            order.append((k, 2 * m))
            order.append((k, 0))
            u = 0
        else:
            order.append((k, 2 * u))
    return order


@dataclass(frozen=True)
class TrackSector:
    arc: Arc
    which: str  # "upper" or "lower"
    start: LambdaPos
    end: LambdaPos
    maximal: bool

    def as_list(self) -> list:
        return [list(self.arc), self.which, list(self.start), list(self.end), self.maximal]


@dataclass
class BoundaryTrack:
    assignment: ArcAssignment
    lambda_order: list[TrackSector]
    maximal_flags: list[bool]

    def maximal(self) -> dict[Arc, TrackSector]:
        return {s.arc: s for s in self.lambda_order if s.maximal}


def endpoint_positions(a: ArcAssignment) -> dict[tuple[str, Arc, str], LambdaPos]:
    """Lambda position of every chord endpoint, keyed by (kind, arc, end)."""
    layouts = {k: disk_layout(a, k) for k in range(1, a.diagram.strands + 1)}
    visit = {slot: v for v, slot in enumerate(lambda_slots(a))}
    pos: dict[tuple[str, Arc, str], LambdaPos] = {}
    for k, lay in layouts.items():
        rank: dict[int, int] = {}
        for e in lay.endpoints:
            r = rank.get(e.slot, 0)
            rank[e.slot] = r + 1
            pos[(e.chord.kind, e.chord.arc, e.end)] = (visit[(k, e.slot)], r)
    return pos


def boundary_track(a: ArcAssignment) -> BoundaryTrack:
    pos = endpoint_positions(a)
    sectors = []
    for arc, direction in a.directions:
        for which, end in (("upper", "top"), ("lower", "bottom")):
            s, t = pos[("alpha", arc, end)], pos[("phi", arc, end)]
            maximal = (which == "upper") == (direction == "L")
            sectors.append(TrackSector(arc, which, min(s, t), max(s, t), maximal))
    sectors.sort(key=lambda s: (s.start, s.end))
    return BoundaryTrack(a, sectors, [s.maximal for s in sectors])


def interleave(x: tuple, y: tuple) -> bool:
    (a, b), (c, d) = x, y
    return a < c < b < d or c < a < d < b


@dataclass
class LinkLedger:
    pairs: list[tuple[Arc, Arc]]
    triples: list[tuple[Arc, Arc, Arc]]
    deduction: int
    extrapolated: bool = False


def ledger_from_pairs(pairs: list[tuple[Arc, Arc]]) -> LinkLedger:
    g = nx.Graph()
    g.add_edges_from(pairs)
    triples = []
    extrapolated = False
    for comp in nx.connected_components(g):
        h = g.subgraph(comp)
        if h.number_of_nodes() == 3 and h.number_of_edges() == 2:
            middle = max(h.nodes, key=h.degree)
            ends = sorted(v for v in h.nodes if v != middle)
            triples.append((ends[0], middle, ends[1]))
        elif h.number_of_nodes() != 2:
            extrapolated = True
    deduction = len(nx.max_weight_matching(g, maxcardinality=True))
    return LinkLedger(sorted(pairs), sorted(triples), deduction, extrapolated)


def linked_pairs(t: BoundaryTrack) -> LinkLedger:
    """Sweep the maximal sectors in lambda order; an open sector closing after a newer one opened is linked."""
    events = []
    for s in t.lambda_order:
        if s.maximal:
            events.append((s.start, 1, s.arc))
            events.append((s.end, 0, s.arc))
    events.sort()
    open_order: list[Arc] = []
    pairs = []
    for _, kind, arc in events:
        if kind == 1:
            open_order.append(arc)
            continue
        idx = open_order.index(arc)
        for other in open_order[idx + 1 :]:
            pairs.append(tuple(sorted((arc, other))))
        open_order.pop(idx)
    return ledger_from_pairs(pairs)


@dataclass
class Certificate:
    braid: Any
    assignment: ArcAssignment
    sink_report: SinkReport
    tau_sup: int
    genus: int
    ledger: LinkLedger
    case_trace: list[str] = field(default_factory=list)
    endpoint_order: list[list] = field(default_factory=list)

    @property
    def claim(self) -> tuple[float, int] | None:
        return (float("-inf"), self.tau_sup) if self.sink_report.sink_free else None

    def to_dict(self) -> dict:
        return {
            "braid": format_braid(self.braid, powers=False),
            "n": self.braid.strands,
            "genus": self.genus,
            "chosen_arcs": [list(arc) for arc in self.assignment.chosen],
            "directions": [d for _, d in self.assignment.directions],
            "linked_pairs": [[list(x), list(y)] for x, y in self.ledger.pairs],
            "linked_triples": [[list(x) for x in tr] for tr in self.ledger.triples],
            "deduction": self.ledger.deduction,
            "extrapolated_deduction": self.ledger.extrapolated,
            "tau_sup": self.tau_sup,
            "sink_free": self.sink_report.sink_free,
            "case_trace": list(self.case_trace),
            "slope_claim": ["-inf", self.tau_sup] if self.sink_report.sink_free else None,
            "endpoint_order": self.endpoint_order,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def tau_sup(a: ArcAssignment, case_trace: list[str] | None = None) -> Certificate:
    track = boundary_track(a)
    ledger = linked_pairs(track)
    report = check_sink_free(compute_sectors(a))
    b = a.diagram.word
    return Certificate(
        braid=b,
        assignment=a,
        sink_report=report,
        tau_sup=len(a) - ledger.deduction,
        genus=genus(b),
        ledger=ledger,
        case_trace=list(case_trace or []),
        endpoint_order=[s.as_list() for s in track.lambda_order],
    )
