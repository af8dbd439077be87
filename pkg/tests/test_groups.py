from fractions import Fraction

import pytest

from artifact.groups import (
    LFD,
    ClosureExceedsBound,
    Dihedral,
    GroupError,
    Table,
    coset_equal,
    group_from_json,
    is_normal_in,
    normal_closure,
    subgroup_closure,
    subgroup_contains,
    transversal_stream,
)


def F(a, b=1):
    return Fraction(a, b)


def test_iota_psi_relation():
    D8 = Dihedral(8)
    assert D8.multiply((0, 1), (1, 0)) == (7, 1)
    assert D8.multiply((0, 1), (1, 0)) == D8.multiply(D8.inverse((1, 0)), (0, 1))


def test_identity_multiplication():
    D8 = Dihedral(8)
    assert D8.multiply(D8.identity(), (5, 1)) == (5, 1)


def test_lfd_cube_of_third_is_one():
    B = LFD(3, 6)
    x = (F(1, 3), 0)
    assert B.power(x, 3) == (F(1), 0)


def test_element_orders():
    assert Dihedral(8).element_order((1, 0)) == 8
    assert Dihedral(8).element_order((0, 0)) == 1
    assert LFD(3, 6).element_order((F(1, 3), 0)) == 18
    assert LFD(3, 6).element_order((F(5, 27), 1)) == 2


def test_lfd_canonical_form_and_validation():
    B = LFD(3, 6)
    assert B.multiply((F(5), 0), (F(2), 0)) == (F(1), 0)
    assert B.multiply((F(1, 3), 1), (F(1, 3), 0)) == (F(0), 1)
    with pytest.raises(GroupError):
        B.check((F(1, 2), 0))
    with pytest.raises(GroupError):
        B.check((F(7), 0))


def test_closures():
    B = LFD(3, 6)
    assert subgroup_closure(B, [(F(3), 0), (F(0), 1)]).order == 4
    assert subgroup_closure(B, []).order == 1
    assert subgroup_closure(B, [(F(1), 0), (F(0), 1)]).order == 12


def test_closure_bound_is_loud():
    with pytest.raises(ClosureExceedsBound):
        subgroup_closure(LFD(3, 6), [(F(1, 81), 0)], bound=100)


def test_membership_and_cosets():
    B = LFD(3, 6)
    H = subgroup_closure(B, [(F(1), 0), (F(0), 1)])
    assert not subgroup_contains(H, (F(2, 9), 0))
    assert subgroup_contains(H, B.identity())
    D8 = Dihedral(8)
    C = subgroup_closure(D8, [(4, 0), (0, 1)])
    for c in C:
        assert coset_equal((1, 0), D8.multiply((1, 0), c), C)


def test_transversals():
    D8 = Dihedral(8)
    C = subgroup_closure(D8, [(4, 0), (0, 1)])
    assert list(transversal_stream(D8, C)) == [(0, 0), (1, 0), (2, 0), (3, 0)]
    whole = subgroup_closure(D8, [(1, 0), (0, 1)])
    assert list(transversal_stream(D8, whole)) == [(0, 0)]


def test_lfd_transversal_is_injective_on_cosets():
    B = LFD(3, 6)
    H = subgroup_closure(B, [(F(1), 0), (F(0), 1)])
    stream = transversal_stream(B, H)
    reps = [next(stream) for _ in range(12)]
    assert reps[0] == B.identity()
    for i, a in enumerate(reps):
        for b in reps[i + 1:]:
            assert not coset_equal(a, b, H)


def test_normality():
    D8 = Dihedral(8)
    assert is_normal_in(subgroup_closure(D8, [(2, 0)]), D8)
    assert is_normal_in(subgroup_closure(D8, []), D8)
    assert is_normal_in(subgroup_closure(D8, [(2, 0), (0, 1)]), D8)
    assert not is_normal_in(subgroup_closure(D8, [(0, 1)]), D8)
    B = LFD(3, 6)
    verdict = is_normal_in(subgroup_closure(B, [(F(1), 0), (F(0), 1)]), B)
    assert not verdict
    assert verdict.conjugator == (F(1, 3), 0)
    assert verdict.element == (F(0), 1)
    assert verdict.conjugate == (F(2, 3), 1)
    assert is_normal_in(subgroup_closure(B, [(F(1), 0)]), B)


def test_normal_closure_finite():
    D8 = Dihedral(8)
    closure = normal_closure(subgroup_closure(D8, [(0, 1)]), D8)
    assert closure.order == 8
    assert is_normal_in(closure, D8)


def test_table_validation():
    with pytest.raises(GroupError):
        Table(((0, 1), (0, 1)))
    Z3 = Table.cyclic(3)
    assert Z3.element_order(1) == 3


def test_json_round_trip():
    for G in (Dihedral(8), LFD(-2, 6), Table.cyclic(4)):
        H = group_from_json(G.to_json())
        assert H == G
        stream = G.stream()
        for _ in range(10):
            g = next(stream, None)
            if g is not None:
                assert H.element_from_json(G.element_to_json(g)) == g
    B = LFD(3, 6)
    assert B.element_to_json((F(2, 9), 1)) == {"rot": "2/9", "ref": 1}
    assert B.element_from_json({"rot": "2/9", "ref": 1}) == (F(2, 9), 1)
