import random

import pytest

from artifact.bass_serre import (
    CertificateUnavailable,
    Elliptic,
    Hyperbolic,
    Independent,
    SameAxis,
    act,
    axis_segment,
    ball_to_dot,
    build_ball,
    classify,
    distance,
    independence_verdict,
    terminal_vertex,
    vertex_stabilizer_contains,
)
from artifact.outbs import build_edge_gog, build_ray_gog, valence_expect, x_level
from artifact.words import parse_word


def word_corpus(count=200, seed=7, letters=("psi", "iota", "phi:1", "phi:2", "phi:3"), max_len=4):
    rng = random.Random(seed)
    words = set()
    while len(words) < count:
        n = rng.randint(1, max_len)
        words.add("*".join(rng.choice(letters) for _ in range(n)))
    return sorted(words)


def test_base_valence_four(edge412):
    ball = build_ball(edge412, radius=2, budget=6)
    assert len(ball.neighbors(())) == 4
    assert ball.is_tree()


def test_radius_zero():
    ball = build_ball(build_edge_gog(4, 12), radius=0)
    assert ball.vertices == [()]


def test_ray_valences(ray24):
    ball = build_ball(ray24, radius=4, budget=None)
    for v in ball.vertices:
        if len(v) < 4:
            assert ball.valence_in_ball(v) == valence_expect(x_level(v), 2, 4)


def test_truncation_is_flagged(edge412):
    ball = build_ball(edge412, radius=2, budget=4)
    b_vertices = [v for v in ball.vertices if terminal_vertex(edge412, v) == "B" and len(v) < 2]
    assert b_vertices and all(v in ball.truncated for v in b_vertices)
    assert () not in ball.truncated


def test_ball_is_deterministic(edge412):
    a = build_ball(edge412, radius=3, budget=4)
    b = build_ball(edge412, radius=3, budget=4)
    assert a.vertices == b.vertices
    assert ball_to_dot(a) == ball_to_dot(b)


def test_seeds_are_included(edge412):
    g = parse_word(edge412, "psi*phi:4*psi*phi:5")
    ball = build_ball(edge412, radius=1, budget=2, seeds=[g])
    assert g.syllables in ball
    assert ball.is_tree()


def test_action_basics(edge412):
    ball = build_ball(edge412, radius=2, budget=4)
    ident = edge412.identity()
    assert all(act(edge412, ident, v) == v for v in ball.vertices)
    iota = edge412.named("iota")
    assert act(edge412, iota, ()) == ()
    psi = edge412.named("psi")
    base_edge_end = ball.children[()][0]
    assert act(edge412, psi, base_edge_end) != base_edge_end


def test_action_is_isometric(edge412):
    ball = build_ball(edge412, radius=3, budget=4)
    rng = random.Random(3)
    for text in word_corpus(20, seed=11):
        g = parse_word(edge412, text)
        for _ in range(10):
            x, y = rng.choice(ball.vertices), rng.choice(ball.vertices)
            assert distance(x, y) == distance(act(edge412, g, x), act(edge412, g, y))


def test_vertex_stabilizers(edge412):
    B_vertex = ((edge412.vertex_groups["A"].identity(), "e"),)
    for c in edge412.origin_image("e"):
        g = edge412.from_vertex("A", c)
        assert vertex_stabilizer_contains(edge412, g, ())
        assert vertex_stabilizer_contains(edge412, g, B_vertex)
    assert not vertex_stabilizer_contains(edge412, edge412.named("psi"), B_vertex)
    assert vertex_stabilizer_contains(edge412, edge412.named("phi:1"), B_vertex)


def test_classify_examples(edge412):
    assert isinstance(classify(edge412, edge412.named("iota")), Elliptic)
    verdict = classify(edge412, parse_word(edge412, "psi*phi:1"))
    assert isinstance(verdict, Hyperbolic) and verdict.translation_length == 2
    for i in range(1, 7):
        assert isinstance(classify(edge412, parse_word(edge412, f"psi*phi:{i}")), Hyperbolic)


def test_classify_conjugated_element(edge412):
    g = parse_word(edge412, "phi:2*psi*phi:1*phi:2^-1")
    verdict = classify(edge412, g)
    assert isinstance(verdict, Hyperbolic) and verdict.translation_length == 2
    h = parse_word(edge412, "phi:3*psi*phi:3^-1")
    verdict = classify(edge412, h)
    assert isinstance(verdict, Elliptic)
    assert act(edge412, h, verdict.fixed_vertex) == verdict.fixed_vertex


def test_classify_matches_brute_force(ray24):
    ball = build_ball(ray24, radius=6, budget=None)
    assert not ball.truncated
    for text in word_corpus():
        g = parse_word(ray24, text)
        brute = min(distance(v, act(ray24, g, v)) for v in ball.vertices)
        assert classify(ray24, g).translation_length == brute, text


def test_hyperbolic_sets_agree_across_structures():
    edge = build_edge_gog(2, 4)
    ray = build_ray_gog(2, 4, 8)
    for text in word_corpus(200, seed=5, letters=("psi", "iota", "phi:1", "phi:2", "phi:3", "phi:4")):
        assert classify(edge, parse_word(edge, text)).kind == classify(ray, parse_word(ray, text)).kind, text


def test_axis_segment(edge412):
    g = parse_word(edge412, "psi*phi:1")
    seg = axis_segment(edge412, g, 8)
    assert len(seg) - 1 >= 8
    kinds = [terminal_vertex(edge412, v) for v in seg]
    assert all(a != b for a, b in zip(kinds, kinds[1:]))
    seg_inv = axis_segment(edge412, edge412.inverse(g), 8)
    assert set(seg_inv) & set(seg)
    g2 = edge412.power(g, 2)
    verdict = classify(edge412, g2)
    assert verdict.translation_length == 4
    assert set(axis_segment(edge412, g2, 8)) <= set(axis_segment(edge412, g, 24))


def test_axis_of_elliptic_raises(edge412):
    with pytest.raises(CertificateUnavailable):
        axis_segment(edge412, edge412.named("psi"), 4)


def test_independence(edge412):
    g = parse_word(edge412, "psi*phi:2")
    h = parse_word(edge412, "psi*phi:3")
    assert isinstance(independence_verdict(edge412, g, h), Independent)
    assert isinstance(independence_verdict(edge412, g, g), SameAxis)
    assert isinstance(independence_verdict(edge412, g, edge412.inverse(g)), SameAxis)


def test_independence_requires_hyperbolic(edge412):
    with pytest.raises(ValueError):
        independence_verdict(edge412, edge412.named("psi"), parse_word(edge412, "psi*phi:1"))


def test_dot_output(edge412):
    ball = build_ball(edge412, radius=1, budget=2)
    text = ball_to_dot(ball)
    assert text.startswith('graph "ball" {')
    assert text.count(" -- ") == len(ball) - 1
    assert "truncated=true" in text
