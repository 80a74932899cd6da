import json

import pytest

from braidfol.branched_surface import apply_template, manual_assign
from braidfol.oracle import brute_linked_pairs
from braidfol.surface_model import build_diagram
from braidfol.train_track import (
    boundary_track,
    interleave,
    lambda_slots,
    ledger_from_pairs,
    linked_pairs,
    tau_sup,
)


def worked_assignment(worked):
    _, a = apply_template(build_diagram(worked), 2, pair=True)
    return a.with_choices([(1, 1, "L")])


# Frozen from the independent lambda walk in the oracle.
TABLE = [
    ((1, 2), "L", ((1, 2), (2, 3))),
    ((1, 2), "R", ((1, 2), (2, 5))),
    ((1, 3), "L", ((1, 3), (2, 5))),
    ((1, 3), "R", ((1, 1), (1, 3))),
]


class TestTrack:
    def test_worked_endpoints(self, worked):
        t = boundary_track(worked_assignment(worked))
        assert len(t.lambda_order) == 46
        assert sum(t.maximal_flags) == 23
        assert len(t.maximal()) == 23

    def test_empty(self, worked):
        t = boundary_track(manual_assign(build_diagram(worked), []))
        assert t.lambda_order == []

    def test_left_pointer_first_sector(self, worked):
        a = manual_assign(build_diagram(worked), [(2, 3, "L")])
        t = boundary_track(a)
        (m,) = [s for s in t.lambda_order if s.maximal]
        assert m.which == "upper"
        a = manual_assign(build_diagram(worked), [(2, 3, "R")])
        (m,) = [s for s in boundary_track(a).lambda_order if s.maximal]
        assert m.which == "lower"

    def test_lambda_visits_every_slot_once(self, worked):
        d = build_diagram(worked)
        order = lambda_slots(manual_assign(d, []))
        expected = sum(len(d.disk_sites(k)) + 1 for k in range(1, 5))
        assert len(order) == len(set(order)) == expected
        assert order[0] == (1, 0) and order[-1] == (1, 2 * len(d.disk_sites(1)))


class TestLinking:
    def test_worked_pair(self, worked):
        ledger = linked_pairs(boundary_track(worked_assignment(worked)))
        assert ledger.pairs == [((3, 1), (3, 2))]
        assert ledger.deduction == 1

    @pytest.mark.parametrize("arc,direction,pair", TABLE)
    def test_added_arc_links(self, worked, arc, direction, pair):
        a = worked_assignment(worked).with_choices([(*arc, direction)])
        pairs = linked_pairs(boundary_track(a)).pairs
        assert pair in pairs
        assert sorted(pairs) == sorted(brute_linked_pairs(a))

    def test_non_adjacent_columns(self, worked):
        d = build_diagram(worked)
        for j1 in range(1, 3):
            for j3 in range(1, 15):
                for d1 in "LR":
                    for d3 in "LR":
                        a = manual_assign(d, [(1, j1, d1), (3, j3, d3)])
                        assert linked_pairs(boundary_track(a)).pairs == []

    def test_interleave(self):
        assert interleave((0, 2), (1, 3))
        assert not interleave((0, 3), (1, 2))
        assert not interleave((0, 1), (2, 3))

    def test_ledger_shapes(self):
        edge = ledger_from_pairs([((1, 1), (1, 2))])
        assert edge.deduction == 1 and not edge.extrapolated and edge.triples == []
        path = ledger_from_pairs([((1, 1), (1, 2)), ((1, 2), (2, 1))])
        assert path.deduction == 1 and path.triples == [((1, 1), (1, 2), (2, 1))]
        tri = ledger_from_pairs([((1, 1), (1, 2)), ((1, 2), (2, 1)), ((1, 1), (2, 1))])
        assert tri.extrapolated and tri.deduction == 1


class TestTau:
    def test_worked(self, worked):
        cert = tau_sup(worked_assignment(worked))
        assert cert.tau_sup == 22 == 2 * cert.genus - 2
        assert cert.claim == (float("-inf"), 22)

    def test_empty(self, small):
        cert = tau_sup(manual_assign(build_diagram(small), []))
        assert cert.tau_sup == 0 and cert.claim == (float("-inf"), 0)

    def test_claim_needs_sink_free(self, worked):
        a = manual_assign(build_diagram(worked), [(3, 1, "L"), (3, 2, "R")])
        cert = tau_sup(a)
        assert cert.claim is None
        assert cert.to_dict()["slope_claim"] is None

    def test_json_fields(self, worked):
        data = json.loads(tau_sup(worked_assignment(worked), ["note"]).to_json())
        for key in ("braid", "n", "genus", "chosen_arcs", "directions", "linked_pairs", "tau_sup",
                    "sink_free", "case_trace", "slope_claim", "endpoint_order"):
            assert key in data
        assert data["slope_claim"] == ["-inf", 22]
        assert data["case_trace"] == ["note"]

    def test_rotation_invariant(self, worked):
        a = worked_assignment(worked)
        base = tau_sup(a).tau_sup
        n = len(worked)
        for k in range(1, n):
            r = worked.rotate(k)
            d = build_diagram(r)
            choices = []
            for (i, j), dd in a.directions:
                p, q = a.diagram.arc_span(i, j)
                newp = (p - k) % n
                jj = d.columns[i - 1].index(newp) + 1
                choices.append((i, jj, dd))
            assert tau_sup(manual_assign(d, choices)).tau_sup == base

