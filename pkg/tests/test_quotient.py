import json

import pytest

from artifact.bass_serre import act, build_ball, classify
from artifact.outbs import example_family
from artifact.quotient import (
    FamilyRejected,
    QuotientElliptic,
    QuotientHyperbolic,
    WrongShape,
    corollary_checks,
    edge_join,
    family_from_json,
    family_validate,
    make_family,
    quotient_ball,
    quotient_classify,
    quotient_independence,
    quotient_kc_check,
    quotient_to_dot,
    require_family,
    theorem_a_check,
)
from artifact.groups import Dihedral, subgroup_closure
from artifact.words import parse_word


@pytest.fixture(scope="module")
def rot2():
    return example_family("6.9")


@pytest.fixture(scope="module")
def rot3():
    return example_family("6.10")


@pytest.fixture(scope="module")
def q_rot2(rot2):
    gog, family = rot2
    return quotient_ball(build_ball(gog, radius=3, budget=4), family)


def test_normalized_families_are_normal(rot2, rot3):
    for gog, family in (rot2, rot3):
        report = family_validate(gog, family)
        assert report.ok
        assert family.notes


def test_as_written_family_is_rejected_with_witness():
    gog, family = example_family("6.9", mode="as-written")
    report = family_validate(gog, family)
    assert not report.ok and report.rejected_vertex == "B"
    assert report.message == "R_B is not normal in G_B: conjugating (0,1) by (1/3,0) gives (2/3,1)"
    with pytest.raises(FamilyRejected) as info:
        require_family(gog, family)
    assert info.value.vertex == "B"


def test_normalize_mode_on_finite_vertex(loop_gog):
    family = make_family(loop_gog, {"A": ["iota"]}, mode="normalize")
    report = family_validate(loop_gog, family)
    assert report.ok
    assert report.family.assignments["A"].order == 4
    assert any("normal closure" in n for n in report.family.notes)


def test_make_family_checks_vertex(edge412):
    with pytest.raises(ValueError):
        make_family(edge412, {"B": ["psi"]})


def test_family_json_round_trip(rot2):
    gog, family = rot2
    data = json.loads(json.dumps(family.to_json(gog)))
    again = family_from_json(gog, data)
    assert {v: R.order for v, R in again.assignments.items()} == {v: R.order for v, R in family.assignments.items()}


def test_rotation_squared_base_valence_two(q_rot2):
    assert q_rot2.is_tree()
    assert q_rot2.valence(()) == 2


def test_rotation_cubed_diameter_is_bounded(rot3):
    gog, family = rot3
    for r in (2, 3, 4):
        q = quotient_ball(build_ball(gog, radius=r, budget=4), family)
        assert q.is_tree()
        assert q.diameter() == 2


def test_quotient_is_deterministic(rot2):
    gog, family = rot2
    a = quotient_ball(build_ball(gog, radius=2, budget=4), family)
    b = quotient_ball(build_ball(gog, radius=2, budget=4), family)
    assert quotient_to_dot(a) == quotient_to_dot(b)
    assert quotient_to_dot(a).startswith('graph "quotient" {')


def test_quotient_classes_respect_family(rot2, q_rot2):
    gog, family = rot2
    r_elements = [gog.from_vertex("A", r) for r in family.assignments["A"]]
    for v in q_rot2.source.vertices:
        if len(v) <= 1:
            for r in r_elements:
                w = act(gog, r, v)
                if w in q_rot2.class_of:
                    assert q_rot2.cls(w) == q_rot2.cls(v)


def test_rotation_squared_classification(rot2):
    gog, family = rot2
    ball = build_ball(gog, radius=2, budget=4)
    for word in ("psi*phi:2", "psi*phi:3"):
        verdict = quotient_classify(ball, family, parse_word(gog, word))
        assert isinstance(verdict, QuotientHyperbolic)
        assert verdict.translation_length == 2
    assert isinstance(quotient_classify(ball, family, gog.named("iota")), QuotientElliptic)


def test_quotient_elliptic_for_tree_elliptic(rot2):
    gog, family = rot2
    ball = build_ball(gog, radius=2, budget=4)
    for word in ("psi", "phi:1", "phi:2*psi*phi:2^-1"):
        g = parse_word(gog, word)
        assert classify(gog, g).kind == "elliptic"
        assert isinstance(quotient_classify(ball, family, g), QuotientElliptic)


def test_rotation_cubed_collapses_hyperbolic(rot3):
    gog, family = rot3
    ball = build_ball(gog, radius=2, budget=4)
    g = parse_word(gog, "psi*phi:2")
    assert classify(gog, g).kind == "hyperbolic"
    assert isinstance(quotient_classify(ball, family, g), QuotientElliptic)


def test_quotient_independence(rot2):
    gog, family = rot2
    ball = build_ball(gog, radius=2, budget=4)
    g, h = parse_word(gog, "psi*phi:2"), parse_word(gog, "psi*phi:3")
    assert type(quotient_independence(ball, family, g, h)).__name__ == "Independent"


def test_quotient_kc(q_rot2):
    cert = quotient_kc_check(q_rot2, 1, 4)
    assert cert.passed
    assert cert.scope.startswith("quotient")


def test_non_elementary_criterion_passes_for_rotation_squared(rot2):
    gog, family = rot2
    report = theorem_a_check(gog, family)
    assert report.verdict == "pass"
    assert report.cond1.status == "fail"
    assert report.cond2.status == "pass"
    assert report.cond2.detail["witness"]
    assert report.to_json()["verdict"] == "pass"


def test_non_elementary_criterion_fails_for_rotation_cubed(rot3):
    gog, family = rot3
    report = theorem_a_check(gog, family)
    assert report.verdict == "fail"


def test_non_elementary_criterion_rejects_as_written_family():
    gog, family = example_family("6.9", mode="as-written")
    with pytest.raises(FamilyRejected):
        theorem_a_check(gog, family)


def test_edge_join_orders(rot2, rot3):
    for (gog, family), order_A in ((rot2, 8), (rot3, 16)):
        KB = edge_join(gog, family, "B", "e")
        assert KB.order == 12 and not KB.is_whole_group()
        KA = edge_join(gog, family, "A", "~e")
        assert KA.order == order_A
        assert KA.is_whole_group() == (order_A == 16)


def test_single_edge_criterion(rot2, rot3):
    gog, family = rot2
    assert corollary_checks(gog, family, "B").passed
    gog, family = rot3
    report = corollary_checks(gog, family, "B")
    assert not report.passed
    assert report.clauses["1"]["status"] == "fail"


def test_edge_and_loop_criteria_check_shape(rot2, loop_gog):
    gog, family = rot2
    with pytest.raises(WrongShape):
        corollary_checks(gog, family, "C")
    with pytest.raises(WrongShape):
        corollary_checks(loop_gog, make_family(loop_gog, {}), "B")
    with pytest.raises(ValueError):
        corollary_checks(gog, family, "D")


def test_loop_criterion(loop_gog):
    trivial = corollary_checks(loop_gog, make_family(loop_gog, {}), "C")
    assert trivial.passed
    G = loop_gog.vertex_groups["A"]
    whole = make_family(loop_gog, {"A": [(1, 0), (0, 1)]})
    assert subgroup_closure(G, [(1, 0), (0, 1)]).order == Dihedral(4).order
    assert not corollary_checks(loop_gog, whole, "C").passed
