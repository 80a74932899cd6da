"""Independent brute-force verifiers.

Nothing here reuses the interval bookkeeping of the fast path.  Each Seifert
disk is embedded as an inscribed polygon whose vertices are the attachment
sites and arc endpoints.  Arcs are drawn as straight diagonals, crossings are
computed geometrically, and faces are traced on the resulting half-edge
structure.  Sectors come from a breadth-first flood across bands.  Linking is
read off an explicit walk along the boundary.
"""

from __future__ import annotations

import itertools
import json
import math
from collections import deque
from dataclasses import dataclass
from functools import cmp_to_key
from typing import Any

from .braid_core import BraidWord, genus, parse_braid
from .branched_surface import (
    ArcAssignment,
    BoundaryArc,
    Region,
    Sector,
    SectorDecomposition,
    manual_assign,
)
from .errors import FormatError, TooLarge
from .surface_model import BrickDiagram, build_diagram

# --------------------------------------------------------------- geometry


@dataclass(frozen=True)
class _Chord:
    label: str
    arc: tuple[int, int]
    kind: str
    gap_top: int
    gap_bottom: int
    pointer: str


@dataclass(frozen=True)
class _Item:
    """Boundary object of a disk: a site or an arc endpoint."""

    kind: str  # "site" or "end"
    position: int = -1  # word position for a site
    chord: _Chord | None = None
    end: str = ""  # "top" or "bottom"


def _disk_chords(a: ArcAssignment, k: int) -> tuple[list[int], list[_Chord]]:
    letters = a.diagram.word.letters
    sites = [p for p, g in enumerate(letters) if g in (k - 1, k)]
    chords = []
    for (i, j), direction in a.directions:
        pos = [p for p, g in enumerate(letters) if g == i]
        upper, lower = pos[j - 1], pos[j % len(pos)]
        if i == k:
            # gap g sits just before site g; gap len(sites) closes the circle
            chords.append(
                _Chord(f"alpha{i},{j}", (i, j), "alpha", sites.index(upper), sites.index(lower), direction)
            )
        elif i + 1 == k:
            flipped = "R" if direction == "L" else "L"
            # gap len(sites) and gap 0 are one gap split by the north point; use gap 0
            m = len(sites)
            chords.append(
                _Chord(f"phi{i},{j}", (i, j), "phi", (sites.index(upper) + 1) % m, (sites.index(lower) + 1) % m, flipped)
            )
    return sites, chords


def _outer_rank(c: _Chord) -> int:
    """Linear nesting rank of a chord among parallels; smaller sits further out."""
    wraps = c.gap_top > c.gap_bottom
    if c.kind == "phi":
        return 3 if wraps else 0
    return 1 if wraps else 2


def _crosses(p: list[float]) -> bool:
    a, b, c, d = p
    lo, hi = min(a, b), max(a, b)
    return (lo < c < hi) != (lo < d < hi)


def _gap_items(sites: list[int], chords: list[_Chord]) -> list[_Item]:
    """Circle order of all boundary objects starting just south of the north point."""
    gaps: dict[int, list[_Item]] = {g: [] for g in range(len(sites) + 1)}
    for c in chords:
        gaps[c.gap_top].append(_Item("end", chord=c, end="top"))
        gaps[c.gap_bottom].append(_Item("end", chord=c, end="bottom"))

    def other_gap(x: _Item) -> int:
        assert x.chord is not None
        return x.chord.gap_bottom if x.end == "top" else x.chord.gap_top

    span = len(sites) + 1
    out: list[_Item] = []
    for g in range(span):

        def compare(x: _Item, y: _Item, g: int = g) -> int:
            # place x just before y and keep that order only if their chords stay disjoint
            gx, gy = (other_gap(x) - g) % span, (other_gap(y) - g) % span
            if gx != gy:
                return 1 if _crosses([0.3, gx + 0.5, 0.6, gy + 0.5]) else -1
            # parallel chords nest; an image arc stays outside a plumbing arc measured from its own
            # strip, and a chord through the north point reverses which side that is
            rx, ry = _outer_rank(x.chord), _outer_rank(y.chord)
            if g == min(x.chord.gap_top, x.chord.gap_bottom):
                return -1 if rx < ry else 1
            return -1 if rx > ry else 1

        out.extend(sorted(gaps[g], key=cmp_to_key(compare)))
        if g < len(sites):
            out.append(_Item("site", position=sites[g]))
    return out


@dataclass
class _DiskFaces:
    items: list[_Item]
    faces: list[list[int]]  # vertex cycles of interior faces
    face_of_item: dict[int, int]
    chord_faces: dict[str, set[int]]  # chord label -> faces with an edge on it
    face_inside: list[set[str]]  # strips containing each face
    north_face: int
    chords: dict[str, _Chord]


def _trace_disk(a: ArcAssignment, k: int) -> _DiskFaces:
    sites, chords = _disk_chords(a, k)
    items = _gap_items(sites, chords)
    n_items = len(items)
    by_label = {c.label: c for c in chords}
    if not chords:
        return _DiskFaces(items, [list(range(n_items))], {t: 0 for t in range(n_items)}, {}, [set()], 0, by_label)
    pts: list[tuple[float, float]] = []
    for t in range(n_items):
        theta = math.pi / 2 - 2 * math.pi * (t + 0.5) / n_items
        pts.append((math.cos(theta), math.sin(theta)))
    ends: dict[tuple[str, str], int] = {}
    for t, it in enumerate(items):
        if it.kind == "end":
            assert it.chord is not None
            ends[(it.chord.label, it.end)] = t
    # crossing vertices
    on_chord: dict[str, list[tuple[float, int]]] = {c.label: [] for c in chords}
    for c1, c2 in itertools.combinations(chords, 2):
        p1, q1 = ends[(c1.label, "top")], ends[(c1.label, "bottom")]
        p2, q2 = ends[(c2.label, "top")], ends[(c2.label, "bottom")]
        if not _crosses([p1, q1, p2, q2]):
            continue
        x1, y1 = pts[p1]
        x2, y2 = pts[q1]
        x3, y3 = pts[p2]
        x4, y4 = pts[q2]
        den = (x1 - x2) * (y3 - y4) - (y1 - y2) * (x3 - x4)
        s = ((x1 - x3) * (y3 - y4) - (y1 - y3) * (x3 - x4)) / den
        u = -((x1 - x2) * (y1 - y3) - (y1 - y2) * (x1 - x3)) / den
        v = len(pts)
        pts.append((x1 + s * (x2 - x1), y1 + s * (y2 - y1)))
        on_chord[c1.label].append((s, v))
        on_chord[c2.label].append((u, v))
    adj: dict[int, set[int]] = {v: set() for v in range(len(pts))}
    edge_chord: dict[frozenset[int], str] = {}
    for t in range(n_items):
        adj[t].add((t + 1) % n_items)
        adj[(t + 1) % n_items].add(t)
    for c in chords:
        chain = [ends[(c.label, "top")]] + [v for _, v in sorted(on_chord[c.label])] + [ends[(c.label, "bottom")]]
        for u, v in zip(chain, chain[1:]):
            adj[u].add(v)
            adj[v].add(u)
            edge_chord[frozenset((u, v))] = c.label
    ccw = {
        v: sorted(nb, key=lambda w: math.atan2(pts[w][1] - pts[v][1], pts[w][0] - pts[v][0]))
        for v, nb in adj.items()
    }
    seen: set[tuple[int, int]] = set()
    cycles = []
    for u in adj:
        for v in adj[u]:
            if (u, v) in seen:
                continue
            cyc = []
            x, y = u, v
            while (x, y) not in seen:
                seen.add((x, y))
                cyc.append(x)
                nb = ccw[y]
                w = nb[(nb.index(x) - 1) % len(nb)]
                x, y = y, w
            cycles.append(cyc)

    def area(cyc: list[int]) -> float:
        return sum(
            pts[p][0] * pts[q][1] - pts[q][0] * pts[p][1] for p, q in zip(cyc, cyc[1:] + cyc[:1])
        )

    faces = [c for c in cycles if area(c) > 1e-12]
    assert len(faces) == len(cycles) - 1, "expected one outer face"
    face_of_item: dict[int, int] = {}
    chord_faces: dict[str, set[int]] = {c.label: set() for c in chords}
    north_face = -1
    for f, cyc in enumerate(faces):
        for p, q in zip(cyc, cyc[1:] + cyc[:1]):
            if p < n_items:
                face_of_item.setdefault(p, f)
            lab = edge_chord.get(frozenset((p, q)))
            if lab is not None:
                chord_faces[lab].add(f)
            if p == n_items - 1 and q == 0 or p == 0 and q == n_items - 1:
                north_face = f
    # site vertices have degree two, so their face is unique
    for t, it in enumerate(items):
        if it.kind == "site":
            owners = [f for f, cyc in enumerate(faces) if t in cyc]
            assert len(owners) == 1
            face_of_item[t] = owners[0]

    def side(c: _Chord, pt: tuple[float, float]) -> float:
        (x1, y1), (x2, y2) = pts[ends[(c.label, "top")]], pts[ends[(c.label, "bottom")]]
        return (x2 - x1) * (pt[1] - y1) - (y2 - y1) * (pt[0] - x1)

    face_inside = []
    for cyc in faces:
        cx = sum(pts[p][0] for p in cyc) / len(cyc)
        cy = sum(pts[p][1] for p in cyc) / len(cyc)
        inside = set()
        for c in chords:
            t0, t1 = ends[(c.label, "top")], ends[(c.label, "bottom")]
            probe = pts[(t0 + 1) % n_items]  # first boundary object south of the upper end
            if (t0 + 1) % n_items == t1:
                raise AssertionError("empty strip")
            if side(c, (cx, cy)) * side(c, probe) > 0:
                inside.add(c.label)
        face_inside.append(inside)
    return _DiskFaces(items, faces, face_of_item, chord_faces, face_inside, north_face, by_label)


def flood_sectors(a: ArcAssignment) -> SectorDecomposition:
    d = a.diagram
    n = d.strands
    disks = {k: _trace_disk(a, k) for k in range(1, n + 1)}
    site_face: dict[tuple[int, int], int] = {}
    for k, df in disks.items():
        for t, it in enumerate(df.items):
            if it.kind == "site":
                site_face[(k, it.position)] = df.face_of_item[t]
    graph: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for k, df in disks.items():
        for f in range(len(df.faces)):
            graph[(k, f)] = []
    for p, i in enumerate(d.word.letters):
        u, v = (i, site_face[(i, p)]), (i + 1, site_face[(i + 1, p)])
        graph[u].append(v)
        graph[v].append(u)
    seen: set[tuple[int, int]] = set()
    sectors: list[Sector] = []
    for start in sorted(graph):
        if start in seen:
            continue
        comp = []
        queue = deque([start])
        seen.add(start)
        while queue:
            x = queue.popleft()
            comp.append(x)
            for y in graph[x]:
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        regions, cores, bands = [], [], set()
        arcs: dict[str, BoundaryArc] = {}
        for k, f in sorted(comp):
            df = disks[k]
            sites = tuple(
                sorted(it.position for t, it in enumerate(df.items) if it.kind == "site" and df.face_of_item[t] == f)
            )
            labels = tuple(sorted(lab for lab, fs in df.chord_faces.items() if f in fs))
            regions.append(Region(k, f, sites, labels))
            bands.update(sites)
            core = next((g for g, ins in enumerate(df.face_inside) if not ins), df.north_face)
            if core == f:
                cores.append(k)
            for lab in labels:
                c = df.chords[lab]
                inward = (c.pointer == "R") == (lab in df.face_inside[f])
                prev = arcs.get(lab)
                if prev is None or (prev.inward and not inward):
                    arcs[lab] = BoundaryArc(lab, c.arc, c.kind, c.pointer, inward)
        if cores:
            kind = "disk"
        elif len(regions) == 1 and not regions[0].sites:
            kind = "polygon"
        else:
            kind = "horizontal"
        boundary = sorted(arcs.values(), key=lambda b: (b.arc, b.kind))
        sectors.append(Sector(len(sectors), kind, regions, boundary, cores, sorted(bands)))
    for arc, direction in a.directions:
        for part in ("upper", "lower"):
            lab = f"alpha{arc[0]},{arc[1]}"
            sectors.append(
                Sector(len(sectors), "product", [], [BoundaryArc(lab, arc, "alpha", direction, False)], [], [], part)
            )
    return SectorDecomposition(a, sectors)


def canonical(s: SectorDecomposition) -> frozenset:
    """Numbering independent form of a decomposition for equality checks."""
    out = []
    for sec in s.sectors:
        regions = frozenset((r.disk, r.sites, r.chords) for r in sec.regions)
        arcs = frozenset((b.label, b.pointer, b.inward) for b in sec.boundary)
        out.append((sec.kind, regions, arcs, tuple(sorted(sec.disks)), sec.part))
    return frozenset(out)


def oracle_sink_free(s: SectorDecomposition) -> bool:
    for sec in s.sectors:
        if sec.kind == "product" or not sec.boundary:
            continue
        if all(b.inward for b in sec.boundary):
            return False
    return True


# ------------------------------------------------------------------ linking


def lambda_walk(a: ArcAssignment) -> list[tuple[str, str]]:
    """Arc endpoints in the order met walking the longitude from the north of S_1."""
    d = a.diagram
    n = d.strands
    disks = {k: _gap_items(*_disk_chords(a, k)) for k in range(1, n + 1)}
    where = {
        (k, it.position): t for k, items in disks.items() for t, it in enumerate(items) if it.kind == "site"
    }
    met: list[tuple[str, str]] = []
    k, t = 1, 0
    for _ in range(10 * (len(d.word) + len(a) + n) + 10):
        items = disks[k]
        if t == len(items):
            if k == 1:
                return met
            t = 0
            continue
        it = items[t]
        if it.kind == "end":
            assert it.chord is not None
            met.append((it.chord.label, it.end))
            t += 1
            continue
        g = d.word.letters[it.position]
        k = g + 1 if g == k else g
        t = where[(k, it.position)] + 1
    raise AssertionError("longitude walk did not close up")


def brute_linked_pairs(a: ArcAssignment) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    order = {key: idx for idx, key in enumerate(lambda_walk(a))}
    maxi = {}
    for (i, j), direction in a.directions:
        end = "top" if direction == "L" else "bottom"
        x, y = order[(f"alpha{i},{j}", end)], order[(f"phi{i},{j}", end)]
        maxi[(i, j)] = (min(x, y), max(x, y))
    pairs = []
    for p, q in itertools.combinations(sorted(maxi), 2):
        tags = sorted([(maxi[p][0], "p"), (maxi[p][1], "p"), (maxi[q][0], "q"), (maxi[q][1], "q")])
        pattern = "".join(t for _, t in tags)
        if pattern in ("pqpq", "qpqp"):
            pairs.append((p, q))
    return pairs


def _matching_number(pairs: list) -> int:
    best = 0

    def grow(idx: int, used: frozenset, size: int) -> None:
        nonlocal best
        best = max(best, size)
        if size + (len(pairs) - idx) <= best:
            return
        for t in range(idx, len(pairs)):
            x, y = pairs[t]
            if x not in used and y not in used:
                grow(t + 1, used | {x, y}, size + 1)

    grow(0, frozenset(), 0)
    return best


def oracle_tau(a: ArcAssignment) -> tuple[int, list, bool]:
    pairs = brute_linked_pairs(a)
    sink_free = oracle_sink_free(flood_sectors(a))
    return len(a) - _matching_number(pairs), pairs, sink_free


# ----------------------------------------------------------------- search


@dataclass
class SearchResult:
    best_assignment: ArcAssignment | None
    best_tau: int
    explored: int
    sink_free_count: int

    def to_dict(self) -> dict:
        best = self.best_assignment
        return {
            "best_tau": self.best_tau,
            "explored": self.explored,
            "sink_free_count": self.sink_free_count,
            "best_assignment": [[i, j, dd] for (i, j), dd in best.directions] if best else None,
        }


def candidate_arcs(d: BrickDiagram) -> list[tuple[int, int]]:
    return [(i, j) for i in range(1, d.strands) for j in range(1, d.count(i))]


def exhaustive_search(
    b: BraidWord,
    max_arcs: int = 24,
    base: ArcAssignment | None = None,
    arcs: list[tuple[int, int]] | None = None,
) -> SearchResult:
    """Best carried-slope supremum over every sink free assignment of the candidate arcs.

    ``base`` fixes some arcs first and ``arcs`` restricts the free candidates.
    """
    genus(base.diagram.word if base is not None else b)  # raises NotAKnot: the walk needs one boundary curve
    d = base.diagram if base is not None else build_diagram(b)
    fixed = dict(base.directions) if base is not None else {}
    free = [x for x in (arcs if arcs is not None else candidate_arcs(d)) if x not in fixed]
    if len(free) > max_arcs or len(free) > 24:
        raise TooLarge(f"{len(free)} candidate arcs exceed the cap of {min(max_arcs, 24)}")
    best, best_tau, explored, ok = None, -1, 0, 0
    for states in itertools.product((None, "L", "R"), repeat=len(free)):
        choice = dict(fixed)
        choice.update({arc: s for arc, s in zip(free, states) if s is not None})
        a = manual_assign(d, [(i, j, dd) for (i, j), dd in sorted(choice.items())])
        explored += 1
        tau, _, sink_free = oracle_tau(a)
        if not sink_free:
            continue
        ok += 1
        if tau > best_tau:
            best, best_tau = a, tau
    return SearchResult(best, best_tau, explored, ok)


# ---------------------------------------------------------- certificates


def is_standard(b: BraidWord) -> bool:
    """True when no rotation admits sigma_a sigma_{a+1} sigma_a after far commutations."""
    letters = list(b.letters)
    size = len(letters)
    for start in range(size):
        w = letters[start:] + letters[:start]
        a = w[0]
        try:
            z = next(t for t in range(1, size) if w[t] == a)
        except StopIteration:
            continue
        seg = w[: z + 1]
        # transitive closure of the dependency order on the segment
        reach = [1 << t for t in range(len(seg))]
        for t in range(len(seg) - 1, -1, -1):
            for u in range(t + 1, len(seg)):
                if abs(seg[t] - seg[u]) <= 1:
                    reach[t] |= reach[u]
        for y in range(1, z):
            if seg[y] != a + 1:
                continue
            blocked = any(
                w_ != y and reach[0] >> w_ & 1 and reach[w_] >> z & 1 for w_ in range(1, z)
            )
            if not blocked and reach[0] >> y & 1 and reach[y] >> z & 1:
                return False
    return True


def _load(c: Any) -> dict:
    if hasattr(c, "to_dict"):
        return c.to_dict()
    if isinstance(c, dict):
        return c
    if isinstance(c, (str, bytes)):
        try:
            data = json.loads(c)
        except json.JSONDecodeError as exc:
            raise FormatError(f"certificate is not valid JSON: {exc}") from exc
        if not isinstance(data, dict):
            raise FormatError("certificate must be a JSON object")
        return data
    raise FormatError(f"cannot read a certificate from {type(c).__name__}")


def verify_certificate(c: Any) -> bool:
    data = _load(c)
    required = ("braid", "n", "genus", "chosen_arcs", "directions", "linked_pairs", "tau_sup", "sink_free")
    missing = [k for k in required if k not in data]
    if missing:
        raise FormatError(f"certificate lacks fields: {', '.join(missing)}")
    try:
        b = parse_braid(str(data["braid"]), strands=int(data["n"]))
        choices = [(int(i), int(j), str(dd)) for (i, j), dd in zip(data["chosen_arcs"], data["directions"])]
        claimed_pairs = sorted(tuple(sorted((tuple(p), tuple(q)))) for p, q in data["linked_pairs"])
        claimed_tau = int(data["tau_sup"])
    except (TypeError, ValueError) as exc:
        raise FormatError(f"malformed certificate field: {exc}") from exc
    if len(choices) != len(data["chosen_arcs"]):
        raise FormatError("chosen_arcs and directions differ in length")
    if genus(b) != data["genus"]:
        return False
    try:
        a = manual_assign(build_diagram(b), choices)
    except (IndexError, ValueError):
        return False
    tau, pairs, sink_free = oracle_tau(a)
    if sorted(tuple(sorted(p)) for p in pairs) != claimed_pairs:
        return False
    if tau != claimed_tau or sink_free != bool(data["sink_free"]) or not sink_free:
        return False
    order = data.get("endpoint_order")
    if order:
        spans = {tuple(arc): (tuple(s), tuple(e)) for arc, _, s, e, m in order if m}
        from_order = []
        for p, q in itertools.combinations(sorted(spans), 2):
            (s1, e1), (s2, e2) = spans[p], spans[q]
            if s1 < s2 < e1 < e2 or s2 < s1 < e2 < e1:
                from_order.append((p, q))
        if sorted(from_order) != claimed_pairs:
            return False
    return True
