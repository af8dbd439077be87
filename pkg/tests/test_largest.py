import pytest

from artifact.acyl import check_kc
from artifact.largest import (
    SearchBudgetExhausted,
    domain_diameter,
    enumerate_x,
    equivalence_check,
    largest_report,
    x_membership,
    y_generators,
    y_length,
)
from artifact.outbs import build_ray_gog
from artifact.words import parse_word


def test_domain_diameter(edge412, loop_gog, ray412):
    assert domain_diameter(edge412) == 1
    assert domain_diameter(loop_gog) == 1
    assert domain_diameter(ray412) == 4


def test_x_membership(edge412):
    g = parse_word(edge412, "psi*phi:1")
    assert x_membership(edge412, g)
    assert not x_membership(edge412, edge412.power(g, 2))
    assert x_membership(edge412, edge412.named("iota"))


def test_y_length(edge412):
    assert y_length(edge412, parse_word(edge412, "psi*phi:1")) == 2
    assert y_length(edge412, edge412.identity()) == 0
    assert y_length(edge412, edge412.named("psi")) == 1
    assert y_length(edge412, parse_word(edge412, "psi*phi:1*iota")) == 3


def test_y_length_counts_stable_letters(loop_gog):
    t = loop_gog.from_edge("t")
    assert y_length(loop_gog, t) == 1
    assert y_length(loop_gog, loop_gog.power(t, 3)) == 3


def test_y_generators_lie_in_x(edge412, loop_gog):
    for gog in (edge412, loop_gog):
        D = domain_diameter(gog)
        assert all(x_membership(gog, g, D) for _, g in y_generators(gog))
    names = [n for n, _ in y_generators(loop_gog)]
    assert "stable:t" in names


def test_enumerate_x_moves_little(edge412):
    elements = list(enumerate_x(edge412, 200, budget=4))
    assert len(elements) == 200
    assert all(g.length <= 3 for g in elements)


def test_equivalence_edge(edge412):
    report = equivalence_check(edge412, sample_budget=500, budget=6)
    assert report.passed
    assert report.D == 1 and report.y_bound == 7
    assert report.max_y_length == 3
    assert report.to_json()["passed"] is True


def test_equivalence_loop(loop_gog):
    report = equivalence_check(loop_gog, sample_budget=400, budget=None)
    assert report.passed
    assert report.max_y_length <= report.y_bound


def test_enumerate_x_needs_finite_base():
    from artifact.bass_serre import rebase
    from artifact.outbs import build_edge_gog

    gog = rebase(build_edge_gog(4, 12), "B")
    with pytest.raises(SearchBudgetExhausted):
        list(enumerate_x(gog, 5))


def test_largest_certified_on_edge(edge412):
    cert = check_kc(edge412, 1, 4, radius=3, budget=4)
    report = largest_report(edge412, cert)
    assert report.verdict == "Largest-certified"
    assert all(r.passed for r in report.rows)


def test_largest_without_certificate(edge412):
    report = largest_report(edge412, None)
    assert report.verdict == "Inconclusive"
    assert [r.key for r in report.rows if not r.passed] == ["acylindrical"]


def test_largest_ray_is_inconclusive_with_witness():
    gog = build_ray_gog(2, 4, 10)
    report = largest_report(gog, None)
    assert report.verdict == "Inconclusive"
    failing = {r.key for r in report.rows if not r.passed}
    assert {"finite-graph", "acylindrical"} <= failing
    data = report.to_json()
    assert data["nonacyl_witness"]["k"] == 6
    assert data["nonacyl_witness"]["vertex_group_order"] > 100
