import json

import pytest

from braidfol.braid_core import genus, parse_braid, standardize
from braidfol.branched_surface import apply_template, compute_sectors, manual_assign
from braidfol.construction import construct
from braidfol.corpus import standardized_prime_words
from braidfol.errors import FormatError, NotAKnot, TooLarge
from braidfol.oracle import (
    brute_linked_pairs,
    canonical,
    exhaustive_search,
    flood_sectors,
    is_standard,
    oracle_sink_free,
    oracle_tau,
    verify_certificate,
)
from braidfol.surface_model import build_diagram
from braidfol.train_track import tau_sup

from conftest import WORKED


def worked_assignment(worked):
    _, a = apply_template(build_diagram(worked), 2, pair=True)
    return a.with_choices([(1, 1, "L")])


class TestFlood:
    def test_worked_matches(self, worked):
        a = worked_assignment(worked)
        assert canonical(flood_sectors(a)) == canonical(compute_sectors(a))
        assert oracle_sink_free(flood_sectors(a))

    def test_empty_one_sector(self, worked):
        s = flood_sectors(manual_assign(build_diagram(worked), []))
        assert len(s.fiber_sectors()) == 1

    def test_pair_templates_match(self, worked):
        from braidfol.braid_core import LetterRef

        for s in range(1, worked.count(2) + 1):
            _, a = apply_template(build_diagram(worked), 2, pair=True, at=LetterRef(2, s))
            assert canonical(flood_sectors(a)) == canonical(compute_sectors(a))


class TestSearch:
    def test_trefoil_scale(self):
        r = exhaustive_search(parse_braid("1 1 1"))
        assert r.best_tau == 1 and r.explored == 9

    def test_small_braid_baseline(self, small):
        # frozen from the full 3^4 enumeration
        r = exhaustive_search(small)
        assert (r.best_tau, r.explored, r.sink_free_count) == (3, 81, 46)
        assert oracle_sink_free(flood_sectors(r.best_assignment))

    def test_family_extensions(self, worked):
        # adding first-column arcs to the certified assignment never raises the supremum
        # unless the linking graph leaves the pair/triple shapes the deduction rule covers
        cert = construct(worked)
        for j in (2, 3):
            for d in "LR":
                a = cert.assignment.with_choices([(1, j, d)])
                assert oracle_tau(a)[0] <= cert.tau_sup
        r = exhaustive_search(worked, base=cert.assignment, arcs=[(1, 2), (1, 3)])
        assert r.explored == 9
        if r.best_tau > cert.tau_sup:
            assert tau_sup(r.best_assignment).ledger.extrapolated

    @pytest.mark.parametrize(
        "word", ["1 1 1 1 1", "1 1 1 1 1 1 1", "1 2 1 2 1 2 1 2", "1 2 1 2 1 2 1 2 1 2", "1 2 3 1 2 3 1 2 3"]
    )
    def test_torus_knots_reach_the_l_space_bound(self, word):
        # torus knots are L-space knots: slope 2g-1 surgery has no taut foliation, so no
        # sink free assignment may carry it, and the full search attains everything below it
        b = standardize(parse_braid(word))
        assert exhaustive_search(b).best_tau == 2 * genus(b) - 1

    def test_search_dominates_construct(self):
        for w in standardized_prime_words(4, 10):
            assert exhaustive_search(w).best_tau >= construct(w).tau_sup

    def test_cap(self, worked):
        with pytest.raises(TooLarge):
            exhaustive_search(worked, max_arcs=23)
        with pytest.raises(TooLarge):
            exhaustive_search(parse_braid(WORKED + " 3 3 2 3 3 2"), max_arcs=100)
        with pytest.raises(TooLarge):
            exhaustive_search(parse_braid("1 2^2 1^2 2"), max_arcs=2)

    def test_links_rejected(self):
        with pytest.raises(NotAKnot):
            exhaustive_search(parse_braid("1 1 2 1 2"))

    def test_json(self, small):
        data = exhaustive_search(small).to_dict()
        assert data["best_tau"] == 3 and isinstance(data["best_assignment"], list)


class TestLinkingOracle:
    def test_worked(self, worked):
        assert brute_linked_pairs(worked_assignment(worked)) == [((3, 1), (3, 2))]


class TestVerify:
    def test_round_trip(self, worked):
        cert = construct(worked)
        assert verify_certificate(cert)
        assert verify_certificate(cert.to_json())
        assert verify_certificate(cert.to_dict())

    def test_tampered_tau(self, worked):
        data = construct(worked).to_dict()
        data["tau_sup"] += 1
        assert not verify_certificate(data)

    def test_flipped_direction(self, worked):
        data = construct(worked).to_dict()
        for k in range(len(data["directions"])):
            mutated = json.loads(json.dumps(data))
            mutated["directions"][k] = "L" if mutated["directions"][k] == "R" else "R"
            assert not verify_certificate(mutated)

    def test_tampered_genus(self, worked):
        data = construct(worked).to_dict()
        data["genus"] = 11
        assert not verify_certificate(data)

    def test_malformed(self):
        with pytest.raises(FormatError):
            verify_certificate("{not json")
        with pytest.raises(FormatError):
            verify_certificate("[1, 2]")
        with pytest.raises(FormatError):
            verify_certificate({"braid": "1 1 1"})
        with pytest.raises(FormatError):
            verify_certificate(42)


class TestStandardScanner:
    def test_examples(self, worked):
        assert is_standard(worked)
        assert not is_standard(parse_braid("1 2 1 2 2"))
        assert not is_standard(parse_braid("2 1 3 2 1 1"))  # sigma1 sigma2 sigma1 after commuting sigma3 away
