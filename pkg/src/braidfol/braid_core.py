"""Positive braid words: parsing, cyclic operations, standard form, statistics.

A word is a tuple of generator indices ``1..n-1``; index ``i`` stands for the
positive Artin generator sigma_i.  Occurrences are addressed by
:class:`LetterRef` (generator, 1-based ordinal) relative to the current
presentation, so every cyclic operation invalidates previous references.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Literal, Sequence

from .errors import CannotCalibrate, NoSuchGenerator, NotAKnot, ParseError

Side = Literal["right", "left"]

_TOKEN = re.compile(r"^(\d+)(?:\^(\d+))?$")


@dataclass(frozen=True)
class BraidWord:
    """A positive braid word on ``strands`` strands."""

    strands: int
    letters: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.strands < 2:
            raise ValueError("a braid needs at least two strands")
        if not self.letters:
            raise ValueError("a braid word must be non-empty")
        for g in self.letters:
            if not 1 <= g <= self.strands - 1:
                raise ValueError(f"generator {g} out of range for {self.strands} strands")

    @classmethod
    def of(cls, letters: Sequence[int], strands: int | None = None) -> "BraidWord":
        letters = tuple(int(x) for x in letters)
        if strands is None:
            strands = 1 + max(letters) if letters else 2
        return cls(strands, letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return format_braid(self)

    def count(self, i: int) -> int:
        return self.letters.count(i)

    def counts(self) -> tuple[int, ...]:
        tally = Counter(self.letters)
        return tuple(tally.get(i, 0) for i in range(1, self.strands))

    def positions(self, i: int) -> list[int]:
        """0-based word positions of the sigma_i letters, in order."""
        return [p for p, g in enumerate(self.letters) if g == i]

    def position_of(self, ref: "LetterRef") -> int:
        pos = self.positions(ref.generator)
        if not 1 <= ref.occurrence <= len(pos):
            raise IndexError(f"no occurrence {ref.occurrence} of sigma_{ref.generator}")
        return pos[ref.occurrence - 1]

    def ref_at(self, position: int) -> "LetterRef":
        g = self.letters[position]
        return LetterRef(g, self.letters[: position + 1].count(g))

    def rotate(self, k: int) -> "BraidWord":
        """Cyclic rotation so that position ``k`` becomes the first letter."""
        k %= len(self.letters)
        return BraidWord(self.strands, self.letters[k:] + self.letters[:k])


@dataclass(frozen=True, order=True)
class LetterRef:
    """The ``occurrence``-th sigma_``generator`` letter (both 1-based)."""

    generator: int
    occurrence: int


@dataclass(frozen=True)
class CrossingStats:
    counts: tuple[int, ...]
    total: int
    mod3_sums: tuple[int, int, int]
    parity_sums: tuple[int, int]
    c_min_choice: int
    c_max_choice: Literal["odd", "even"]

    @property
    def c_odd(self) -> int:
        return self.parity_sums[0]

    @property
    def c_even(self) -> int:
        return self.parity_sums[1]


@dataclass
class PrimalityReport:
    violations: list[str] = field(default_factory=list)

    @property
    def passes(self) -> bool:
        return not self.violations


# ---------------------------------------------------------------- parsing


def parse_braid(text: str, strands: int | None = None) -> BraidWord:
    """Parse ``k`` / ``k^p`` tokens separated by spaces; ``#`` starts a comment."""
    letters: list[int] = []
    for line in text.splitlines():
        line = line.split("#", 1)[0]
        for tok in line.split():
            m = _TOKEN.match(tok)
            if not m:
                raise ParseError(f"bad token {tok!r}")
            gen = int(m.group(1))
            power = int(m.group(2)) if m.group(2) is not None else 1
            if gen < 1:
                raise ParseError(f"generator index must be positive, got {gen}")
            if power < 1:
                raise ParseError(f"power must be positive, got {power}")
            letters.extend([gen] * power)
    if not letters:
        raise ParseError("empty braid word")
    n = 1 + max(letters)
    if strands is not None:
        if strands < n:
            raise ParseError(f"strand override {strands} too small for generator {n - 1}")
        n = strands
    return BraidWord(n, tuple(letters))


def format_braid(b: BraidWord, powers: bool = True) -> str:
    """Inverse of :func:`parse_braid`; runs are written as ``k^p`` when ``powers``."""
    if not powers:
        return " ".join(str(g) for g in b.letters)
    out: list[str] = []
    i = 0
    while i < len(b.letters):
        j = i
        while j < len(b.letters) and b.letters[j] == b.letters[i]:
            j += 1
        run = j - i
        out.append(str(b.letters[i]) if run == 1 else f"{b.letters[i]}^{run}")
        i = j
    return " ".join(out)


# ------------------------------------------------------------ statistics


def closure_permutation(b: BraidWord) -> list[int]:
    """Strand permutation (0-based) induced by the word."""
    perm = list(range(b.strands))
    for g in b.letters:
        perm[g - 1], perm[g] = perm[g], perm[g - 1]
    return perm


def closure_components(b: BraidWord) -> int:
    perm = closure_permutation(b)
    seen = [False] * b.strands
    cycles = 0
    for start in range(b.strands):
        if seen[start]:
            continue
        cycles += 1
        k = start
        while not seen[k]:
            seen[k] = True
            k = perm[k]
    return cycles


def is_knot(b: BraidWord) -> bool:
    return closure_components(b) == 1


def crossing_stats(b: BraidWord) -> CrossingStats:
    counts = b.counts()
    total = sum(counts)
    mod3 = [0, 0, 0]
    parity = [0, 0]
    for i, c in enumerate(counts, start=1):
        mod3[(i - 1) % 3] += c
        parity[(i + 1) % 2] += c  # index 0 collects odd columns
    c1, c2, c3 = mod3
    smallest = min(mod3)
    if mod3.count(smallest) == 1:
        choice = mod3.index(smallest) + 1
    elif c2 == c3 < c1:
        choice = 2
    else:
        choice = 1
    return CrossingStats(
        counts=counts,
        total=total,
        mod3_sums=(c1, c2, c3),
        parity_sums=(parity[0], parity[1]),
        c_min_choice=choice,
        c_max_choice="odd" if parity[0] >= parity[1] else "even",
    )


def genus(b: BraidWord) -> int:
    if not is_knot(b):
        raise NotAKnot(f"closure of {format_braid(b)} has {closure_components(b)} components")
    excess = len(b.letters) - b.strands + 1
    if excess % 2:
        raise AssertionError("knot closure with odd C - n + 1; word is inconsistent")
    return excess // 2


# ------------------------------------------------------------- distances


def distance(b: BraidWord, j: int, s: int, t: int, side: Side = "right") -> int:
    """Letters of the neighbouring column between sigma_{j,s} and sigma_{j,t}.

    ``side="right"`` counts sigma_{j+1}, ``side="left"`` counts sigma_{j-1}.
    For ``t < s`` the count wraps through the end of the word.
    """
    if s == t:
        raise ValueError("distance needs two distinct occurrences")
    other = j + 1 if side == "right" else j - 1
    if side == "right" and not j <= b.strands - 2:
        raise ValueError(f"right distance undefined for column {j} on {b.strands} strands")
    if side == "left" and j < 2:
        raise ValueError("left distance undefined for the first column")
    pos = b.positions(j)
    for occ in (s, t):
        if not 1 <= occ <= len(pos):
            raise IndexError(f"occurrence {occ} of sigma_{j} out of range 1..{len(pos)}")
    if t < s:
        return b.count(other) - distance(b, j, t, s, side)
    lo, hi = pos[s - 1], pos[t - 1]
    return sum(1 for g in b.letters[lo + 1 : hi] if g == other)


def distance_left(b: BraidWord, j: int, s: int, t: int) -> int:
    return distance(b, j, s, t, "left")


# ------------------------------------------------------- cyclic operations


def pivot(b: BraidWord, at: LetterRef) -> BraidWord:
    """Rotate so that the referenced letter comes first."""
    return b.rotate(b.position_of(at))


def calibrate_with_ref(b: BraidWord, band: LetterRef) -> tuple[BraidWord, LetterRef]:
    """Two-pivot calibration; also returns the distinguished band's new reference.

    After the call, the first sigma_{s+1} letter is followed by the
    distinguished sigma_s letter before any other sigma_{s+1}, so the plumbing
    arc between the first two sigma_{s+1} letters encloses it on the right.
    """
    s = band.generator
    if s + 1 > b.strands - 1 or b.count(s + 1) < 2:
        raise CannotCalibrate(f"column {s + 1} needs at least two letters")
    first = pivot(b, band)
    last_next = first.positions(s + 1)[-1]
    out = first.rotate(last_next)
    new_pos = (len(b) - last_next) % len(b)
    return out, out.ref_at(new_pos)


def canonical_calibrate(b: BraidWord, band: LetterRef) -> BraidWord:
    return calibrate_with_ref(b, band)[0]


# --------------------------------------------------------- standard form


def _triple_candidates(letters: Sequence[int], n: int) -> list[tuple[int, list[int]]]:
    """Every collapsible sigma_i sigma_{i+1} sigma_i in the cyclic word.

    For a start position ``x`` holding sigma_i, the window runs to the next
    sigma_i.  The triple can be made contiguous by far commutations exactly
    when a single letter of the window, a sigma_{i+1}, lies both above ``x``
    and below the window end in the dependency order.  The replacement lists
    the letters that commute out to the left, the rewritten triple, then the
    letters that commute out to the right.
    """
    size = len(letters)
    found: list[tuple[int, list[int]]] = []
    for x in range(size):
        a = letters[x]
        if a > n - 2:
            continue
        z = next((step for step in range(1, size) if letters[(x + step) % size] == a), None)
        if z is None or z < 2:
            continue
        window = [letters[(x + k) % size] for k in range(z + 1)]
        above = [False] * (z + 1)
        reach = {a}
        for k in range(1, z + 1):
            g = window[k]
            if g in reach or g - 1 in reach or g + 1 in reach:
                above[k] = True
                reach.add(g)
        below = [False] * (z + 1)
        reach = {a}
        for k in range(z - 1, 0, -1):
            g = window[k]
            if g in reach or g - 1 in reach or g + 1 in reach:
                below[k] = True
                reach.add(g)
        between = [k for k in range(1, z) if above[k] and below[k]]
        if len(between) != 1 or window[between[0]] != a + 1:
            continue
        y = between[0]
        left = [window[k] for k in range(1, z) if not above[k]]
        right = [window[k] for k in range(1, z) if above[k] and k != y]
        found.append((x, left + [a + 1, a, a + 1] + right))
    return found


def _apply_window(letters: Sequence[int], x: int, replacement: Sequence[int]) -> list[int]:
    out = list(letters)
    for k, g in enumerate(replacement):
        out[(x + k) % len(out)] = g
    return out


def standardize(b: BraidWord) -> BraidWord:
    """Rewrite to standard form with a fixed, deterministic strategy.

    Among all collapsible triples the rewrite touches the lowest generator
    first; ties go to the rewrite that leaves the fewest collapsible triples
    behind, then to the rightmost start position.  Each rewrite raises the sum
    of generator indices by one, so the loop ends.
    """
    letters = list(b.letters)
    n = b.strands
    while True:
        candidates = _triple_candidates(letters, n)
        if not candidates:
            return BraidWord(n, tuple(letters))

        def priority(cand: tuple[int, list[int]]) -> tuple[int, int, int]:
            x, rep = cand
            after = _apply_window(letters, x, rep)
            return (letters[x], len(_triple_candidates(after, n)), -x)

        x, rep = min(candidates, key=priority)
        letters = _apply_window(letters, x, rep)


def is_standard_fast(b: BraidWord) -> bool:
    return not _triple_candidates(b.letters, b.strands)


# -------------------------------------------------------- block structure


def block_count(b: BraidWord, i: int) -> int:
    """Number of maximal runs of sigma_i in the cyclic word."""
    if b.count(i) == 0:
        raise NoSuchGenerator(f"sigma_{i} does not occur")
    size = len(b.letters)
    if b.count(i) == size:
        return 1
    return sum(
        1
        for p in range(size)
        if b.letters[p] == i and b.letters[p - 1] != i
    )


def _gap_contains(b: BraidWord, lo: int, hi: int, gen: int) -> bool:
    """Whether the cyclic open interval (lo, hi) of positions holds ``gen``."""
    size = len(b.letters)
    k = (lo + 1) % size
    while k != hi:
        if b.letters[k] == gen:
            return True
        k = (k + 1) % size
    return False


def primality_precheck(b: BraidWord) -> PrimalityReport:
    """Necessary conditions for the closure to be a prime knot."""
    if not is_knot(b):
        raise NotAKnot(f"closure of {format_braid(b)} is not a knot")
    report = PrimalityReport()
    counts = b.counts()
    for i, c in enumerate(counts, start=1):
        if c < 2:
            report.violations.append(f"c_{i} = {c} < 2")
    for i, c in enumerate(counts, start=1):
        if c >= 1 and block_count(b, i) < 2:
            report.violations.append(f"B_{i} = 1 < 2")
    for i, c in enumerate(counts, start=1):
        if c != 2 or i < 2:
            continue
        p1, p2 = b.positions(i)
        neighbours = [i - 1] + ([i + 1] if i + 1 <= b.strands - 1 else [])
        for gen in neighbours:
            label = "d" if gen == i + 1 else "d_L"
            if not (_gap_contains(b, p1, p2, gen) and _gap_contains(b, p2, p1, gen)):
                report.violations.append(
                    f"c_{i} = 2 and {label}({i}; 1,2) = 0 in some cyclic presentation"
                )
    return report
