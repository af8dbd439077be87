import pytest

from artifact.outbs import (
    NotProperDivisor,
    build_edge_gog,
    build_ray_gog,
    collapse_ray_check,
    outbs_params,
    valence_expect,
)

CASES = [(p, p * n) for p in (2, 3, 4) for n in (2, 3, -2, -3)]


def _is_identity(gog, g):
    return g == gog.identity()


@pytest.mark.parametrize("p,q", CASES)
def test_edge_relations(p, q):
    gog = build_edge_gog(p, q)
    n = q // p
    psi, iota = gog.named("psi"), gog.named("iota")
    phi = {k: gog.named(f"phi:{k}") for k in range(1, 9)}
    assert _is_identity(gog, gog.multiply(gog.power(psi, p), gog.power(phi[1], -n)))
    for k in range(1, 8):
        assert gog.power(phi[k + 1], n) == phi[k]
    assert gog.product([iota, psi, iota]) == gog.inverse(psi)
    for k in (1, 4, 8):
        assert gog.product([iota, phi[k], iota]) == gog.inverse(phi[k])
    assert _is_identity(gog, gog.power(iota, 2))


@pytest.mark.parametrize("p,q", CASES)
def test_element_orders(p, q):
    gog = build_edge_gog(p, q)
    params = outbs_params(p, q)
    A, B = gog.vertex_groups["A"], gog.vertex_groups["B"]
    assert A.element_order(gog.resolve_name("psi")[1]) == p * abs(params.n - 1)
    for k in range(1, 6):
        assert B.element_order(gog.resolve_name(f"phi:{k}")[1]) == abs(params.n) ** k * abs(params.n - 1)


@pytest.mark.parametrize("p,q", CASES)
def test_ray_relations(p, q):
    gog = build_ray_gog(p, q, 5)
    n = q // p
    psi = gog.named("psi")
    phi = {k: gog.named(f"phi:{k}") for k in range(1, 6)}
    assert gog.power(psi, p) == gog.power(phi[1], n)
    for k in range(1, 5):
        assert gog.power(phi[k + 1], n) == phi[k]


def test_negative_p_is_normalized():
    assert outbs_params(-4, -12) == outbs_params(4, 12)


@pytest.mark.parametrize(
    "p,q,text",
    [
        (2, 3, "Z_{2|p−q|} ⋊ Z_2 = Z_2 ⋊ Z_2"),
        (3, 3, "Z ⋊ (Z_2 × Z_2)"),
        (3, -3, "Z_{2p} ⋊ Z_2 = Z_6 ⋊ Z_2"),
        (4, 6, "Z_{2|p−q|} ⋊ Z_2 = Z_4 ⋊ Z_2"),
    ],
)
def test_not_proper_divisor(p, q, text):
    with pytest.raises(NotProperDivisor) as info:
        outbs_params(p, q)
    assert info.value.isomorphism_type == text


def test_bad_parameters():
    with pytest.raises(ValueError):
        outbs_params(1, 4)
    with pytest.raises(ValueError):
        outbs_params(0, 4)
    with pytest.raises(ValueError):
        build_ray_gog(2, 4, 0)


def test_valence_expect():
    assert valence_expect(0, 4, 12) == 4
    assert valence_expect(3, 4, 12) == 4
    assert valence_expect(0, 2, 4) == 2
    assert valence_expect(1, 2, 4) == 3
    assert valence_expect(2, 2, -4) == 3


@pytest.mark.parametrize("p,q,L", [(2, 4, 1), (2, 4, 4), (4, 12, 3), (3, -6, 3), (2, -6, 2)])
def test_collapse_matches_edge_structure(p, q, L):
    report = collapse_ray_check(p, q, L)
    assert report.match
    assert report.vertices == ["v0", report.merged_vertex]


def test_collapse_order_does_not_matter():
    a = collapse_ray_check(2, 4, 4)
    b = collapse_ray_check(2, 4, 4, lowest_first=True)
    assert a.match and b.match
    assert a.merged_order == b.merged_order == 2 * 2**4


def test_ray_meta_flags_infinite_graph():
    assert build_ray_gog(2, 4, 3).meta["infinite_graph"]
    assert not build_edge_gog(2, 4).meta.get("infinite_graph")
