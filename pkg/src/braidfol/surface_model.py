"""Bennequin surface combinatorics for a positive braid word.

The fiber surface is built from ``n`` stacked Seifert disks ``S_1..S_n`` and
one positively twisted band per letter.  Band ``b_{i,j}`` is the ``j``-th
sigma_i letter; it joins ``S_i`` (its left end) to ``S_{i+1}`` (its right end).
Every attachment site on the boundary circle of ``S_k`` is labelled by the
word position of its letter, so sites of columns ``k-1`` and ``k`` interleave
in word order.

Plumbing arcs ``alpha_{i,j}`` live in ``S_i`` and image arcs
``phi(alpha_{i,j})`` live in ``S_{i+1}``.  Ordinals run ``1..c_i - 1``; the
ordinal ``c_i`` names the arc that wraps through the end of the word and is
accepted wherever an arc is requested.
"""

from __future__ import annotations

import html
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Literal

from .braid_core import BraidWord, genus
from .errors import ModelMismatch

if TYPE_CHECKING:  # pragma: no cover
    from .branched_surface import ArcAssignment

Band = tuple[int, int]  # (column, ordinal), both 1-based


@dataclass(frozen=True)
class BrickDiagram:
    word: BraidWord
    columns: tuple[tuple[int, ...], ...]  # column i-1 -> word positions of its bands

    @property
    def strands(self) -> int:
        return self.word.strands

    def count(self, i: int) -> int:
        if not 1 <= i <= self.strands - 1:
            return 0
        return len(self.columns[i - 1])

    def band_position(self, i: int, j: int) -> int:
        return self.columns[i - 1][j - 1]

    def band_at(self, position: int) -> Band:
        i = self.word.letters[position]
        return i, self.columns[i - 1].index(position) + 1

    def disk_sites(self, k: int) -> list[int]:
        """Word positions of all attachment sites on ``S_k`` in boundary order."""
        sites: list[int] = []
        for column in (k - 1, k):
            if 1 <= column <= self.strands - 1:
                sites.extend(self.columns[column - 1])
        return sorted(sites)

    def arc_span(self, i: int, j: int) -> tuple[int, int]:
        """Word positions of the two bands spanned by ``alpha_{i,j}``."""
        c = self.count(i)
        if c < 2 or not 1 <= j <= c:
            raise IndexError(f"no plumbing arc alpha_{i},{j} (c_{i} = {c})")
        return self.band_position(i, j), self.band_position(i, j % c + 1)

    def bands_between(self, column: int, lo: int, hi: int) -> tuple[Band, ...]:
        """Bands of ``column`` strictly between positions ``lo`` and ``hi``, cyclically."""
        if not 1 <= column <= self.strands - 1:
            return ()
        out = []
        for j, p in enumerate(self.columns[column - 1], start=1):
            inside = lo < p < hi if lo < hi else (p > lo or p < hi)
            if inside:
                out.append((column, j))
        if lo >= hi:
            out.sort(key=lambda band: (self.band_position(*band) < lo, self.band_position(*band)))
        return tuple(out)


@dataclass(frozen=True)
class PlumbingArc:
    column: int
    ordinal: int
    left_enclosure: Band
    right_enclosure: tuple[Band, ...]


@dataclass(frozen=True)
class ImageArc:
    source: tuple[int, int]
    right_enclosure: Band
    left_enclosure: tuple[Band, ...]


@dataclass(frozen=True)
class PlumbingStep:
    kind: Literal["unknot", "stabilize", "plumb"]
    column: int
    ordinal: int
    enclosed_left_bands: int = 0


@dataclass
class HopfFactorization:
    starts: list[PlumbingStep] = field(default_factory=list)
    steps: list[PlumbingStep] = field(default_factory=list)
    twist_curves: list[tuple[int, int]] = field(default_factory=list)

    @property
    def plumbings(self) -> int:
        return len(self.steps)


def build_diagram(b: BraidWord) -> BrickDiagram:
    cols = tuple(tuple(b.positions(i)) for i in range(1, b.strands))
    return BrickDiagram(b, cols)


def arc_enclosures(d: BrickDiagram, i: int, j: int) -> tuple[PlumbingArc, ImageArc]:
    top, bottom = d.arc_span(i, j)
    c = d.count(i)
    plumb = PlumbingArc(i, j, (i, j), d.bands_between(i - 1, top, bottom))
    image = ImageArc((i, j), (i, j % c + 1), d.bands_between(i + 1, top, bottom))
    return plumb, image


def hopf_sequence(b: BraidWord) -> HopfFactorization:
    """Plumbing history of the fiber surface, column by column.

    Column 1 starts from the unknotted band ``b_{1,1}`` and plumbs one Hopf
    band per further sigma_1 letter.  Each later column is stabilized at its
    first band and then receives one plumbing per further letter.  Only the
    plumbings are steps, so there are ``2g`` of them; the column starts are
    kept separately.  Twist
    curves are listed with the last column first, which is the order of the
    monodromy factorization.
    """
    genus(b)  # raises NotAKnot
    d = build_diagram(b)
    fac = HopfFactorization()
    for i in range(1, b.strands):
        c = d.count(i)
        fac.starts.append(PlumbingStep("unknot" if i == 1 else "stabilize", i, 1))
        for j in range(1, c):
            plumb, _ = arc_enclosures(d, i, j)
            fac.steps.append(PlumbingStep("plumb", i, j, len(plumb.right_enclosure)))
    for i in range(b.strands - 1, 0, -1):
        fac.twist_curves.extend((i, j) for j in range(1, d.count(i)))
    return fac


# ----------------------------------------------------------------- render


def _check_assignment(d: BrickDiagram, a: "ArcAssignment | None") -> dict[tuple[int, int], str]:
    if a is None:
        return {}
    if a.diagram.word != d.word:
        raise ModelMismatch("assignment was built for a different braid word")
    return dict(a.directions)


def render(d: BrickDiagram, a: "ArcAssignment | None" = None, fmt: str = "ascii") -> str:
    """Deterministic drawing of the brick diagram with optional co-oriented arcs."""
    dirs = _check_assignment(d, a)
    if fmt == "ascii":
        return _render_ascii(d, dirs)
    if fmt == "svg":
        return _render_svg(d, dirs)
    raise ValueError(f"unknown render format {fmt!r}")


def _render_ascii(d: BrickDiagram, dirs: dict[tuple[int, int], str]) -> str:
    n = d.strands
    rows = []
    arc_rows: dict[int, list[str]] = {}
    for (i, j), direction in sorted(dirs.items()):
        top, _ = d.arc_span(i, j)
        arc_rows.setdefault(top, []).append(f"a{i},{j}{'<' if direction == 'L' else '>'}")
    for p, g in enumerate(d.word.letters):
        cells = []
        for k in range(1, n + 1):
            cells.append("|")
            if k < n:
                cells.append("-----" if g == k else "     ")
        line = "".join(cells)
        marks = arc_rows.get(p)
        rows.append(line + ("  " + " ".join(marks) if marks else ""))
    return "\n".join(rows) + "\n"


def _render_svg(d: BrickDiagram, dirs: dict[tuple[int, int], str]) -> str:
    n = d.strands
    dx, dy, margin = 60, 18, 20
    width = margin * 2 + dx * (n - 1)
    height = margin * 2 + dy * (len(d.word) + 1)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}">',
        f"<title>{html.escape(str(d.word))}</title>",
    ]
    for k in range(n):
        x = margin + k * dx
        out.append(f'<line x1="{x}" y1="{margin}" x2="{x}" y2="{height - margin}" stroke="black"/>')
    for p, g in enumerate(d.word.letters):
        y = margin + (p + 1) * dy
        x1 = margin + (g - 1) * dx
        out.append(f'<line x1="{x1}" y1="{y}" x2="{x1 + dx}" y2="{y}" stroke="black" stroke-width="3"/>')
    for (i, j), direction in sorted(dirs.items()):
        top, bottom = d.arc_span(i, j)
        for column, dashed in ((i, False), (i + 1, True)):
            x = margin + (column - 1) * dx
            y1 = margin + (top + 1) * dy - dy // 2
            y2 = margin + (bottom + 1) * dy - dy // 2
            pointer = direction if not dashed else ("R" if direction == "L" else "L")
            tip = x - 8 if pointer == "L" else x + 8
            ym = (y1 + y2) // 2 if y1 < y2 else y1 + dy // 2
            dash = ' stroke-dasharray="3,2"' if dashed else ""
            label = f"{'phi' if dashed else 'alpha'}_{i},{j}"
            css, colour = ("image", "red") if dashed else ("arrow", "blue")
            out.append(
                f'<path class="{css}" data-arc="{label}" d="M{x},{y1} L{x},{ym} L{tip},{ym}" '
                f'fill="none" stroke="{colour}"{dash}/>'
            )
    out.append("</svg>")
    return "\n".join(out) + "\n"
