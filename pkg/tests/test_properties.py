import random

from hypothesis import assume, given
from hypothesis import strategies as st

from braidfol.braid_core import (
    BraidWord,
    LetterRef,
    block_count,
    canonical_calibrate,
    distance,
    genus,
    is_knot,
    pivot,
    standardize,
)
from braidfol.branched_surface import apply_template, check_sink_free, compute_sectors, manual_assign
from braidfol.construction import construct
from braidfol.corpus import random_corpus
from braidfol.oracle import brute_linked_pairs, canonical, flood_sectors, is_standard, oracle_sink_free
from braidfol.surface_model import arc_enclosures, build_diagram, hopf_sequence, render
from braidfol.train_track import boundary_track, linked_pairs, tau_sup


@st.composite
def positive_words(draw, max_strands=6, max_length=24):
    n = draw(st.integers(2, max_strands))
    letters = draw(st.lists(st.integers(1, n - 1), min_size=1, max_size=max_length))
    return BraidWord(n, tuple(letters))


@st.composite
def prime_knots(draw, strands=(4, 6), lengths=(10, 22)):
    seed = draw(st.integers(0, 2**32 - 1))
    return random_corpus(seed, 1, strands, lengths)[0]


@st.composite
def assignments(draw, strands=(4, 5), lengths=(10, 20)):
    b = draw(prime_knots(strands, lengths))
    d = build_diagram(b)
    rng = random.Random(draw(st.integers(0, 2**32 - 1)))
    choices = []
    for i in range(1, b.strands):
        c = b.count(i)
        if c < 2:
            continue
        for j in range(1, c + 1):
            if rng.random() < 0.4:
                choices.append((i, j, rng.choice("LR")))
    return manual_assign(d, choices)


def rotated_assignment(a, k):
    n = len(a.diagram.word)
    d = build_diagram(a.diagram.word.rotate(k))
    choices = []
    for (i, j), direction in a.directions:
        p, _ = a.diagram.arc_span(i, j)
        choices.append((i, d.columns[i - 1].index((p - k) % n) + 1, direction))
    return manual_assign(d, choices)


class TestBraidCore:
    @given(positive_words(max_strands=8, max_length=40))
    def test_standardize(self, b):
        out = standardize(b)
        assert (out.strands, len(out)) == (b.strands, len(b))
        assert is_standard(out)
        if is_knot(b):
            assert genus(out) == genus(b)

    @given(positive_words(), st.data())
    def test_pivot_and_calibrate_keep_counts(self, b, data):
        i = data.draw(st.sampled_from([g for g in range(1, b.strands) if b.count(g)]))
        s = data.draw(st.integers(1, b.count(i)))
        assert pivot(b, LetterRef(i, s)).counts() == b.counts()
        if i + 1 <= b.strands - 1 and b.count(i + 1) >= 2:
            assert canonical_calibrate(b, LetterRef(i, s)).counts() == b.counts()

    @given(positive_words(), st.data())
    def test_distance_wraps(self, b, data):
        cols = [j for j in range(1, b.strands) if b.count(j) >= 2]
        assume(cols)
        j = data.draw(st.sampled_from(cols))
        s, t = data.draw(st.lists(st.integers(1, b.count(j)), min_size=2, max_size=2, unique=True))
        if j + 1 <= b.strands - 1:
            assert distance(b, j, s, t, "right") + distance(b, j, t, s, "right") == b.count(j + 1)
        if j >= 2:
            assert distance(b, j, s, t, "left") + distance(b, j, t, s, "left") == b.count(j - 1)

    @given(positive_words(), st.integers(0, 100))
    def test_block_count_rotation(self, b, k):
        r = b.rotate(k % len(b))
        for i in range(1, b.strands):
            if b.count(i):
                assert block_count(r, i) == block_count(b, i)


class TestSurfaceModel:
    @given(prime_knots())
    def test_band_total(self, b):
        d = build_diagram(b)
        assert sum(len(c) for c in d.columns) == len(b)
        assert sum(len(c) - 1 for c in d.columns) == 2 * genus(b)

    @given(prime_knots())
    def test_enclosures_match_distance(self, b):
        d = build_diagram(b)
        for i in range(1, b.strands):
            for j in range(1, b.count(i)):
                plumb, image = arc_enclosures(d, i, j)
                if i >= 2:
                    assert len(plumb.right_enclosure) == distance(b, i, j, j + 1, "left")
                if i <= b.strands - 2:
                    assert len(image.left_enclosure) == distance(b, i, j, j + 1, "right")

    @given(prime_knots())
    def test_hopf_order(self, b):
        fac = hopf_sequence(b)
        cols = [i for i, _ in fac.twist_curves]
        assert len(fac.steps) == len(cols) == 2 * genus(b)
        assert cols == sorted(cols, reverse=True)

    @given(assignments())
    def test_render_pure(self, a):
        for fmt in ("ascii", "svg"):
            assert render(a.diagram, a, fmt) == render(a.diagram, a, fmt)


class TestTemplates:
    @given(prime_knots(), st.data())
    def test_single_column(self, b, data):
        i = data.draw(st.sampled_from([g for g in range(1, b.strands) if b.count(g) >= 2]))
        s = data.draw(st.integers(1, b.count(i)))
        _, a = apply_template(build_diagram(b), i, at=LetterRef(i, s))
        assert linked_pairs(boundary_track(a)).pairs == []
        report = check_sink_free(compute_sectors(a))
        assert all(o.kind == "disk" for o in report.offenders)

    @given(prime_knots(), st.data())
    def test_pair(self, b, data):
        cols = [g for g in range(1, b.strands - 1) if b.count(g) >= 2 and b.count(g + 1) >= 3]
        assume(cols)
        i = data.draw(st.sampled_from(cols))
        s = data.draw(st.integers(1, b.count(i)))
        _, a = apply_template(build_diagram(b), i, pair=True, at=LetterRef(i, s))
        ledger = tau_sup(a).ledger
        (right,) = [arc for arc, d in a.directions if arc[0] == i + 1 and d == "R"]
        assert len(ledger.pairs) == 1 and ledger.deduction == 1
        assert right in ledger.pairs[0]
        for o in check_sink_free(compute_sectors(a)).offenders:
            assert not (o.kind == "disk" and i + 1 in o.disks)
            assert not (o.kind == "polygon" and o.regions[0].disk == i + 1)


class TestOracleEquivalence:
    @given(assignments())
    def test_sectors(self, a):
        fast, slow = compute_sectors(a), flood_sectors(a)
        assert canonical(fast) == canonical(slow)
        assert check_sink_free(fast).sink_free == oracle_sink_free(slow)

    @given(assignments())
    def test_linking(self, a):
        assert sorted(linked_pairs(boundary_track(a)).pairs) == sorted(brute_linked_pairs(a))


class TestTrainTrack:
    @given(assignments())
    def test_one_maximal_endpoint_per_arc(self, a):
        t = boundary_track(a)
        flagged = [s.arc for s in t.lambda_order if s.maximal]
        assert sorted(flagged) == sorted(a.chosen)

    @given(assignments())
    def test_linking_is_local(self, a):
        for p, q in linked_pairs(boundary_track(a)).pairs:
            assert p != q and abs(p[0] - q[0]) <= 1

    @given(assignments(), st.integers(1, 100))
    def test_tau_rotation_invariant(self, a, k):
        k %= len(a.diagram.word)
        assert tau_sup(rotated_assignment(a, k)).tau_sup == tau_sup(a).tau_sup


class TestConstruction:
    @given(prime_knots(strands=(5, 6), lengths=(12, 22)))
    def test_many_strands(self, b):
        cert = construct(b)
        assert cert.ledger.pairs == []
        assert cert.tau_sup >= cert.genus + 1
        assert cert.sink_report.sink_free and oracle_sink_free(flood_sectors(cert.assignment))
