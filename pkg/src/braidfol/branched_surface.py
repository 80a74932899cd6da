"""Co-oriented arc assignments, branch sectors and sink detection.

Each Seifert disk ``S_k`` is modelled by its boundary circle.  Its ``m``
attachment sites sit at odd coordinates ``2u + 1`` and the gaps between them
are the even slots ``0, 2, ..., 2m``.  Slot ``0`` follows the north point and
slot ``2m`` precedes it.  A plumbing arc ``alpha_{i,j}`` is a chord of
``S_i`` from the slot before band ``b_{i,j}`` to the slot before
``b_{i,j+1}``.  Its image ``phi(alpha_{i,j})`` is a chord of ``S_{i+1}`` from
the slot after ``b_{i,j}`` to the slot after ``b_{i,j+1}``.  The boundary
stretch a chord cuts off going south from its upper endpoint is its strip.

Faces of a disk are the classes of boundary micro-intervals that lie in the
same set of strips.  A right pointer points into its strip and a left pointer
points out of it.  The image of a left pointer is a right pointer.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Literal

from .braid_core import BraidWord, LetterRef, is_standard_fast, pivot
from .errors import DuplicateChoice, RequiresStandardForm
from .surface_model import BrickDiagram, build_diagram

Direction = Literal["L", "R"]
Arc = tuple[int, int]  # (column, ordinal)


def _flip(direction: str) -> str:
    return "R" if direction == "L" else "L"


@dataclass(frozen=True)
class ArcAssignment:
    diagram: BrickDiagram
    directions: tuple[tuple[Arc, str], ...]  # sorted (arc, "L"|"R")

    @property
    def chosen(self) -> tuple[Arc, ...]:
        return tuple(arc for arc, _ in self.directions)

    def direction(self, arc: Arc) -> str:
        return dict(self.directions)[arc]

    def image_direction(self, arc: Arc) -> str:
        return _flip(self.direction(arc))

    def __len__(self) -> int:
        return len(self.directions)

    def with_choices(self, choices: Iterable[tuple[int, int, str]], replace: bool = False) -> "ArcAssignment":
        """Return a copy with extra choices; ``replace`` allows overriding existing arcs."""
        dirs = dict(self.directions)
        for column, ordinal, direction in choices:
            if (column, ordinal) in dirs and not replace:
                raise DuplicateChoice(f"alpha_{column},{ordinal} already assigned")
            dirs[(column, ordinal)] = _normalize_direction(direction)
        return _make(self.diagram, dirs)

    def without(self, arcs: Iterable[Arc]) -> "ArcAssignment":
        drop = set(arcs)
        return _make(self.diagram, {a: d for a, d in self.directions if a not in drop})

    def describe(self) -> str:
        return " ".join(f"a{i},{j}{d}" for (i, j), d in self.directions)


def _normalize_direction(direction: str) -> str:
    d = direction.strip().upper()
    if d in ("L", "LEFT"):
        return "L"
    if d in ("R", "RIGHT"):
        return "R"
    raise ValueError(f"direction must be left or right, got {direction!r}")


def _make(d: BrickDiagram, dirs: dict[Arc, str]) -> ArcAssignment:
    for i, j in dirs:
        d.arc_span(i, j)  # raises IndexError for an invalid arc
    return ArcAssignment(d, tuple(sorted(dirs.items())))


def manual_assign(d: BrickDiagram, choices: Iterable[tuple[int, int, str]]) -> ArcAssignment:
    dirs: dict[Arc, str] = {}
    for column, ordinal, direction in choices:
        if (column, ordinal) in dirs:
            raise DuplicateChoice(f"alpha_{column},{ordinal} chosen twice")
        dirs[(column, ordinal)] = _normalize_direction(direction)
    return _make(d, dirs)


def template_directions(b: BraidWord, column: int, pair: bool) -> dict[Arc, str]:
    """Template co-orientations on an already pivoted word.

    Column ``column`` arcs whose upper band precedes the first letter of the
    next column point left, the rest point right.  For a pair the next
    column gets one right pointer followed by left pointers.
    """
    pos = b.positions(column)
    nxt = b.positions(column + 1) if column + 1 < b.strands else []
    first_next = nxt[0] if nxt else len(b)
    dirs: dict[Arc, str] = {}
    for j in range(1, len(pos)):
        dirs[(column, j)] = "L" if pos[j - 1] < first_next else "R"
    if pair:
        for j in range(1, len(nxt)):
            dirs[(column + 1, j)] = "R" if j == 1 else "L"
    return dirs


def apply_template(
    d: BrickDiagram, column: int, pair: bool = False, at: LetterRef | None = None
) -> tuple[BraidWord, ArcAssignment]:
    """Pivot about a sigma_column letter and co-orient its column (and the next for a pair)."""
    b = d.word
    if not is_standard_fast(b):
        raise RequiresStandardForm("templates need a standardized word")
    if b.count(column) < 2:
        raise ValueError(f"template on column {column} needs at least two letters")
    if pair and b.count(column + 1) < 2:
        raise ValueError(f"pair template needs at least two sigma_{column + 1} letters")
    pivoted = pivot(b, at or LetterRef(column, 1))
    pd = build_diagram(pivoted)
    return pivoted, _make(pd, template_directions(pivoted, column, pair))


# --------------------------------------------------------------- disk layout


@dataclass(frozen=True)
class Chord:
    kind: Literal["alpha", "phi"]
    arc: Arc
    disk: int
    top: int  # slot of the upper endpoint
    bottom: int  # slot of the lower endpoint
    pointer: str

    @property
    def label(self) -> str:
        i, j = self.arc
        return f"alpha{i},{j}" if self.kind == "alpha" else f"phi{i},{j}"


@dataclass(frozen=True)
class Endpoint:
    chord: Chord
    end: Literal["top", "bottom"]
    slot: int


@dataclass
class DiskLayout:
    disk: int
    sites: list[int]  # word positions in boundary order
    endpoints: list[Endpoint]  # boundary order from the north point
    interval_of_site: list[int]  # site index -> micro-interval index
    signatures: list[frozenset[Chord]]  # micro-interval -> strips containing it
    face_of_interval: list[int]
    faces: list[frozenset[Chord]]  # face id -> signature

    @property
    def modulus(self) -> int:
        return 2 * len(self.sites) + 1

    def face_of_site(self, position: int) -> int:
        return self.face_of_interval[self.interval_of_site[self.sites.index(position)]]

    @property
    def north_face(self) -> int:
        return self.face_of_interval[-1]

    @property
    def core_face(self) -> int:
        for f, sig in enumerate(self.faces):
            if not sig:
                return f
        return self.north_face


def _chord_key(c: Chord) -> tuple:
    return (c.arc, c.kind)


def disk_chords(a: ArcAssignment, k: int) -> list[Chord]:
    d = a.diagram
    sites = d.disk_sites(k)
    index = {p: u for u, p in enumerate(sites)}
    out = []
    for (i, j), direction in a.directions:
        top, bottom = d.arc_span(i, j)
        if i == k:
            out.append(Chord("alpha", (i, j), k, 2 * index[top], 2 * index[bottom], direction))
        elif i + 1 == k:
            # the gap after the last site is the gap before the first one; north sits at its start
            wrap = 2 * len(sites)
            out.append(
                Chord("phi", (i, j), k, (2 * index[top] + 2) % wrap, (2 * index[bottom] + 2) % wrap, _flip(direction))
            )
    return out


# nesting depth of parallel chords, keyed by (kind, wraps through north)
_NESTING = {("phi", False): 0, ("alpha", True): 1, ("alpha", False): 2, ("phi", True): 3}


def order_endpoints(chords: list[Chord], modulus: int) -> list[Endpoint]:
    """Boundary order of chord endpoints with no avoidable crossings.

    Inside one slot, an endpoint whose partner lies further south along the
    circle comes first.  Chords with the same two slots are parallel and are
    nested by _NESTING, outermost first at the northern slot; this keeps an
    image arc outside the plumbing arc relative to its own strip.
    """

    def key(e: Endpoint) -> tuple:
        other = e.chord.bottom if e.end == "top" else e.chord.top
        reach = (other - e.slot) % modulus
        c = e.chord
        depth = _NESTING[(c.kind, c.top > c.bottom)]
        return (e.slot, -reach, depth if e.slot < other else -depth, _chord_key(c))

    ends = [Endpoint(c, "top", c.top) for c in chords] + [Endpoint(c, "bottom", c.bottom) for c in chords]
    return sorted(ends, key=key)


def disk_layout(a: ArcAssignment, k: int) -> DiskLayout:
    sites = a.diagram.disk_sites(k)
    modulus = 2 * len(sites) + 1
    ends = order_endpoints(disk_chords(a, k), modulus)
    n_int = max(len(ends), 1)
    # micro-interval t runs from endpoint t to endpoint t + 1; the last wraps through north
    interval_of_site = []
    for u in range(len(sites)):
        coord = 2 * u + 1
        before = [t for t, e in enumerate(ends) if e.slot < coord]
        interval_of_site.append(before[-1] if before else n_int - 1)
    strips: list[set[Chord]] = [set() for _ in range(n_int)]
    where = {(e.chord, e.end): t for t, e in enumerate(ends)}
    for c in {e.chord for e in ends}:
        t, stop = where[(c, "top")], where[(c, "bottom")]
        while t != stop:
            strips[t].add(c)
            t = (t + 1) % n_int
    signatures = [frozenset(s) for s in strips]
    faces: list[frozenset[Chord]] = []
    face_of_interval = []
    for sig in signatures:
        if sig not in faces:
            faces.append(sig)
        face_of_interval.append(faces.index(sig))
    return DiskLayout(k, sites, ends, interval_of_site, signatures, face_of_interval, faces)


# ------------------------------------------------------------------ sectors


@dataclass(frozen=True)
class Region:
    disk: int
    face: int
    sites: tuple[int, ...]  # word positions of bands attached to this face
    chords: tuple[str, ...] = ()  # labels of the arcs bounding this face


@dataclass(frozen=True)
class BoundaryArc:
    label: str
    arc: Arc
    kind: str
    pointer: str
    inward: bool


@dataclass
class Sector:
    index: int
    kind: Literal["disk", "polygon", "horizontal", "product"]
    regions: list[Region]
    boundary: list[BoundaryArc]
    disks: list[int] = field(default_factory=list)  # Seifert disks whose core lies here
    bands: list[int] = field(default_factory=list)  # word positions of member bands
    part: str = ""  # "upper" or "lower" for product disk sectors

    def describe(self) -> str:
        if self.kind == "product":
            (arc,) = {b.arc for b in self.boundary}
            return f"product alpha{arc[0]},{arc[1]} {self.part}"
        regs = ",".join(f"S{r.disk}f{r.face}" for r in self.regions)
        arcs = ",".join(f"{b.label}{b.pointer}:{'in' if b.inward else 'out'}" for b in self.boundary)
        cores = f" cores={','.join(map(str, self.disks))}" if self.disks else ""
        return f"{self.kind}{cores} regions={regs} arcs={arcs or '-'}"


@dataclass
class SectorDecomposition:
    assignment: ArcAssignment
    sectors: list[Sector]

    def fiber_sectors(self) -> list[Sector]:
        return [s for s in self.sectors if s.kind != "product"]

    def sector_of(self, disk: int, face: int) -> Sector:
        for s in self.sectors:
            if any(r.disk == disk and r.face == face for r in s.regions):
                return s
        raise KeyError((disk, face))

    def partition(self) -> frozenset[frozenset[tuple[int, frozenset[int]]]]:
        """Layout independent view: each fiber sector as a set of (disk, attached sites)."""
        return frozenset(
            frozenset((r.disk, frozenset(r.sites)) for r in s.regions) for s in self.fiber_sectors()
        )

    def dump(self) -> str:
        return "".join(f"{s.index}: {s.describe()}\n" for s in self.sectors)


class _UnionFind:
    def __init__(self) -> None:
        self.parent: dict = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x, y) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[max(rx, ry)] = min(rx, ry)


def face_boundary(layout: DiskLayout, face: int) -> list[BoundaryArc]:
    sig = layout.faces[face]
    present = set(layout.faces)
    chords = sorted({e.chord for e in layout.endpoints}, key=_chord_key)
    out = []
    for c in chords:
        if (sig ^ {c}) in present:
            inside = c in sig
            out.append(BoundaryArc(c.label, c.arc, c.kind, c.pointer, (c.pointer == "R") == inside))
    return out


def compute_sectors(a: ArcAssignment) -> SectorDecomposition:
    d = a.diagram
    n = d.strands
    layouts = {k: disk_layout(a, k) for k in range(1, n + 1)}
    uf = _UnionFind()
    for k, lay in layouts.items():
        for f in range(len(lay.faces)):
            uf.find((k, f))
    for p, i in enumerate(d.word.letters):
        uf.union((i, layouts[i].face_of_site(p)), (i + 1, layouts[i + 1].face_of_site(p)))
    groups: dict = {}
    for k, lay in layouts.items():
        for f in range(len(lay.faces)):
            groups.setdefault(uf.find((k, f)), []).append((k, f))
    sectors: list[Sector] = []
    for members in sorted(groups.values()):
        regions = []
        boundary: dict[tuple[str, Arc], BoundaryArc] = {}
        cores = []
        bands: set[int] = set()
        for k, f in members:
            lay = layouts[k]
            sites = tuple(p for u, p in enumerate(lay.sites) if lay.face_of_interval[lay.interval_of_site[u]] == f)
            face_arcs = face_boundary(lay, f)
            regions.append(Region(k, f, sites, tuple(sorted(b.label for b in face_arcs))))
            bands.update(sites)
            if f == lay.core_face:
                cores.append(k)
            for ba in face_arcs:
                key = (ba.kind, ba.arc)
                prev = boundary.get(key)
                if prev is None or (prev.inward and not ba.inward):
                    boundary[key] = ba
        if cores:
            kind = "disk"
        elif len(regions) == 1 and not regions[0].sites:
            kind = "polygon"
        else:
            kind = "horizontal"
        sectors.append(
            Sector(len(sectors), kind, regions, sorted(boundary.values(), key=lambda b: (b.arc, b.kind)), cores, sorted(bands))
        )
    for arc, direction in a.directions:
        label = f"alpha{arc[0]},{arc[1]}"
        for part in ("upper", "lower"):
            sectors.append(
                Sector(len(sectors), "product", [], [BoundaryArc(label, arc, "alpha", direction, False)], [], [], part)
            )
    return SectorDecomposition(a, sectors)


# --------------------------------------------------------------------- sinks


@dataclass
class SinkReport:
    sink_free: bool
    offenders: list[Sector]
    safe_reasons: dict[int, str]

    def summary(self) -> str:
        if self.sink_free:
            return "sink free"
        return "sinks: " + "; ".join(s.describe() for s in self.offenders)


def is_sink(s: Sector) -> bool:
    """A fiber sector is a sink when it has boundary arcs and all of them point inward."""
    return s.kind != "product" and bool(s.boundary) and all(b.inward for b in s.boundary)


def check_sink_free(s: SectorDecomposition) -> SinkReport:
    offenders = []
    reasons: dict[int, str] = {}
    for sec in s.sectors:
        if sec.kind == "product":
            reasons[sec.index] = "product disk"
        elif not sec.boundary:
            reasons[sec.index] = "no arcs in boundary"
        elif is_sink(sec):
            offenders.append(sec)
        else:
            out = next(b for b in sec.boundary if not b.inward)
            reasons[sec.index] = f"{out.label} points out"
    return SinkReport(not offenders, offenders, reasons)
