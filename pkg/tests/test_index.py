import random

import pytest
from hypothesis import given, settings

from helpers import diagrams, fixture_diagram, oracle_pairs, random_diagram
from vknot.families import FIGURE_EIGHT_CODE, KISHINO_CODE, TREFOIL_CODE, VIRTUAL_TREFOIL_CODE
from vknot.gauss import parse_gauss_code
from vknot.index import (
    MEMBER,
    NONMEMBER,
    UNRESOLVED,
    all_pairs,
    combined_lower_bound,
    enumerate_unknottable_pairs,
    replay_certificate,
    unknotting_index_diagram,
    unknotting_index_knot,
)
from vknot.triviality import SearchBudget, simplify_monotone, witness
from vknot.writhe import PairBound as P

TREFOIL_MEMBERS = {P(0, 1), P(0, 2), P(1, 1), P(2, 0), P(2, 1), P(3, 0)}
SMALL = SearchBudget(max_nodes=300)


def members(verdicts):
    return {p for p, r in verdicts.items() if r.status == MEMBER}


def test_trefoil_pair_set():
    verdicts = enumerate_unknottable_pairs(parse_gauss_code(TREFOIL_CODE))
    assert members(verdicts) == TREFOIL_MEMBERS
    assert all(r.status == NONMEMBER for p, r in verdicts.items() if p not in TREFOIL_MEMBERS)


def test_trefoil_pair_set_without_pruning():
    verdicts = enumerate_unknottable_pairs(parse_gauss_code(TREFOIL_CODE), use_bounds=False)
    assert members(verdicts) == TREFOIL_MEMBERS


def test_empty_diagram():
    g = parse_gauss_code("")
    assert members(enumerate_unknottable_pairs(g)) == {P(0, 0)}
    r = unknotting_index_diagram(g)
    assert r.exact and r.upper == P(0, 0)
    k = unknotting_index_knot(g)
    assert k.exact and k.upper == P(0, 0)


@pytest.mark.parametrize("code", [TREFOIL_CODE, VIRTUAL_TREFOIL_CODE])
def test_trefoils_have_index_zero_one(code):
    g = parse_gauss_code(code)
    r = unknotting_index_diagram(g)
    assert r.exact and r.upper == P(0, 1)
    assert replay_certificate(g, r.certificate)
    k = unknotting_index_knot(g)
    assert k.exact and k.upper == P(0, 1)


def test_kishino_diagram_bracket():
    g = parse_gauss_code(KISHINO_CODE)
    verdicts = enumerate_unknottable_pairs(g)
    assert P(1, 0) in members(verdicts)
    r = unknotting_index_diagram(g)
    assert not r.exact
    assert r.upper == P(1, 0)
    assert r.lower == P(0, 0)
    assert r.unresolved and all(p.m == 0 for p in r.unresolved)
    assert replay_certificate(g, r.certificate)
    flat = unknotting_index_diagram(g, flat_assertion=True)
    assert flat.exact and flat.upper == P(1, 0)


@pytest.mark.parametrize(
    "spec, flat, expected",
    [
        ("virtual-trefoil-sum:n=1", False, P(0, 1)),
        ("virtual-trefoil-sum:n=3", False, P(0, 3)),
        ("trefoil-sum:n=2", False, P(0, 2)),
        ("kishino-changed", True, P(1, 0)),
        ("kishino-changed#trefoil-sum:n=1", True, P(1, 1)),
        ("twisted:l=3,r=0", False, P(1, 0)),
        ("kishino", False, P(0, 0)),
    ],
)
def test_combined_lower_bound(spec, flat, expected):
    assert combined_lower_bound(fixture_diagram(spec), flat) == expected


def test_report_json_fields():
    r = unknotting_index_diagram(parse_gauss_code(TREFOIL_CODE)).as_dict()
    assert r["status"] == "exact"
    assert r["pair"] == [0, 1]
    assert {"lower", "upper", "certificate", "lower_bound_provenance", "unresolved"} <= set(r)


# properties


@settings(max_examples=40, deadline=None)
@given(diagrams(max_chords=4))
def test_exact_pair_is_the_least_member(g):
    verdicts = enumerate_unknottable_pairs(g, SMALL)
    r = unknotting_index_diagram(g, SMALL)
    assert r.upper is not None
    assert replay_certificate(g, r.certificate)
    assert r.certificate.pair == r.upper
    if r.exact:
        assert all(r.upper <= p for p in members(verdicts))
        assert all(verdicts[p].status == NONMEMBER for p in all_pairs(g.chord_count) if p < r.upper)
    else:
        assert r.lower in r.unresolved
        assert verdicts[r.lower].status == UNRESOLVED


@settings(max_examples=40, deadline=None)
@given(diagrams(max_chords=4))
def test_every_member_certificate_replays(g):
    for p, res in enumerate_unknottable_pairs(g, SMALL).items():
        if res.status == MEMBER:
            c = res.certificate
            assert c.pair == p
            assert not set(c.virtualized) & set(c.changed)
            assert replay_certificate(g, c)


@settings(max_examples=30, deadline=None)
@given(diagrams(max_chords=4))
def test_trivial_knots_and_only_they_get_zero_zero(g):
    r = unknotting_index_knot(g, SearchBudget(max_nodes=200), SMALL)
    assert replay_certificate(g, r.certificate)
    if simplify_monotone(g).chord_count == 0:
        assert r.exact and r.upper == P(0, 0)
    if witness(simplify_monotone(g)) is not None:
        assert r.lower > P(0, 0)
    if r.exact and r.upper == P(0, 0):
        assert not r.certificate.virtualized and not r.certificate.changed


@pytest.mark.parametrize("spec", ["kishino", FIGURE_EIGHT_CODE, "twisted:l=1,r=1,c_sign=-1"])
def test_more_budget_never_loosens_the_bracket(spec):
    g = fixture_diagram(spec)
    small = unknotting_index_diagram(g, SearchBudget(max_nodes=50))
    large = unknotting_index_diagram(g, SearchBudget(max_nodes=2000))
    assert large.upper <= small.upper
    assert large.lower >= small.lower


def test_pair_set_matches_oracle_on_random_diagrams():
    rng = random.Random(17)
    for _ in range(15):
        g = random_diagram(rng, rng.randint(1, 3))
        assert members(enumerate_unknottable_pairs(g, SMALL)) == oracle_pairs(g, 300)
