from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cofree.errors import ArityMismatch, MixedRings, ParseError
from cofree.exactalg import (
    QQ,
    ZZ,
    ModuleElement,
    ModuleSpace,
    Proj,
    TensorElement,
    Zmod,
    apply_factorwise,
    augment,
    drop_unit_factors,
    embed_k,
    embed_v,
    parse_ring,
    pr_k,
    pr_v,
    tensor_join,
    tensor_of,
    unit_space,
)

Z4 = Zmod(4)

ints = st.integers(-50, 50)
fracs = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def scalars(ring):
    return (fracs if ring is QQ else ints).map(ring)


@pytest.mark.parametrize("ring", [ZZ, Z4, QQ], ids=str)
def test_ring_axioms(ring):
    @settings(max_examples=200, deadline=None)
    @given(scalars(ring), scalars(ring), scalars(ring))
    def check(a, b, c):
        assert (a + b) + c == a + (b + c)
        assert a + b == b + a
        assert (a * b) * c == a * (b * c)
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c
        assert a + ring.zero == a
        assert a * ring.one == a
        assert a + (-a) == ring.zero

    check()


def test_ring_examples():
    assert Z4(3) + Z4(3) == Z4(2)
    assert QQ(Fraction(1, 2)) * QQ(Fraction(2, 3)) == QQ(Fraction(1, 3))
    assert ZZ(7) + ZZ.zero == ZZ(7)
    assert str(Z4(-1)) == "3"


def test_mixed_rings_rejected():
    with pytest.raises(MixedRings):
        ZZ(1) + Z4(1)
    with pytest.raises(MixedRings):
        Z4(ZZ(1))


def test_parse_ring_and_scalars():
    assert parse_ring("ring Zmod 4") == Z4
    assert parse_ring("ring Q") is QQ
    assert QQ.parse_scalar("-3/6") == QQ(Fraction(-1, 2))
    with pytest.raises(ParseError):
        ZZ.parse_scalar("1/2")
    with pytest.raises(ParseError):
        parse_ring("ring R")


def test_module_examples():
    V = ModuleSpace(ZZ, 2)
    assert V.element([1, 2]) + V.element([3, 4]) == V.element([4, 6])
    assert 0 * V.element([5, -1]) == V.zero()
    W = ModuleSpace(Z4, 2)
    assert 2 * W.element([3, 1]) == W.element([2, 2])


def test_augmented_projections():
    A = augment(ModuleSpace(ZZ, 2))
    x = A.element([2, 5, 7])
    assert pr_v(x) == A.base.element([2, 5])
    assert pr_k(x) == ZZ(7)
    assert embed_v(A.base.element([1, 0])) == A.element([1, 0, 0])
    assert pr_v(embed_k(3, A)) == A.base.zero()
    assert A.basis_name(2) == "k" and A.basis_name(0) == "b1"


def test_tensor_join_examples():
    V = ModuleSpace(ZZ, 2)
    e1, e2 = V.basis(0), V.basis(1)
    got = tensor_join(TensorElement.from_element(2 * e1), TensorElement.from_element(3 * e2))
    assert got == TensorElement(ZZ, (V, V), {(0, 1): 6})
    zero = TensorElement.zero(ZZ, (V,))
    assert tensor_join(zero, TensorElement.from_element(e1)).is_zero()
    got = tensor_join(TensorElement.from_element(e1 + e2), TensorElement.from_element(e1))
    assert got == TensorElement(ZZ, (V, V), {(0, 0): 1, (1, 0): 1})


@settings(max_examples=100, deadline=None)
@given(st.lists(ints, min_size=2, max_size=2), st.lists(ints, min_size=2, max_size=2),
       st.lists(ints, min_size=2, max_size=2))
def test_tensor_join_associative(a, b, c):
    V = ModuleSpace(ZZ, 2)
    x, y, z = (TensorElement.from_element(V.element(v)) for v in (a, b, c))
    assert tensor_join(tensor_join(x, y), z) == tensor_join(x, tensor_join(y, z))


def test_apply_factorwise_examples():
    A = augment(ModuleSpace(ZZ, 1))
    x = tensor_of([A.element([1, 1]), A.element([1, 1])])
    got = drop_unit_factors(apply_factorwise(x, (Proj.V, Proj.K)))
    assert got == TensorElement(ZZ, (A.base,), {(0,): 1})
    assert apply_factorwise(x, (Proj.I, Proj.I)) == x
    y = tensor_of([embed_k(2, A), embed_k(3, A)])
    assert drop_unit_factors(apply_factorwise(y, (Proj.K, Proj.K))).as_scalar() == ZZ(6)
    with pytest.raises(ArityMismatch):
        apply_factorwise(x, (Proj.V,))


def test_drop_unit_factors_examples():
    V = ModuleSpace(ZZ, 2)
    K = unit_space(ZZ)
    x = TensorElement(ZZ, (V, K), {(0, 0): 6})
    assert drop_unit_factors(x) == TensorElement(ZZ, (V,), {(0,): 6})
    assert drop_unit_factors(TensorElement(ZZ, (K, K), {(0, 0): 6})).as_scalar() == ZZ(6)
    x = TensorElement(ZZ, (V, K, V), {(0, 0, 1): 1})
    assert drop_unit_factors(x) == TensorElement(ZZ, (V, V), {(0, 1): 1})


def test_tensor_format():
    A = augment(ModuleSpace(ZZ, 1))
    x = tensor_of([A.element([2, 1]), A.element([2, 1])])
    assert x.format() == "4 * (b1 ⊗ b1) + 2 * (b1 ⊗ k) + 2 * (k ⊗ b1) + 1 * (k ⊗ k)"
    assert TensorElement.zero(ZZ, (A,)).format() == "0"
    assert TensorElement.scalar(ZZ, 5).format() == "5"


def test_immutability():
    x = ZZ(1)
    with pytest.raises(AttributeError):
        x.value = 2
    V = ModuleSpace(ZZ, 1)
    with pytest.raises(AttributeError):
        V.basis(0).coords = (2,)
    assert isinstance(V.basis(0), ModuleElement)
