import random

import pytest

from cofree.errors import InvalidArity, NotPlain
from cofree.exactalg import QQ, ZZ, ModuleSpace, Proj, TensorElement, apply_factorwise, augment, drop_unit_factors
from cofree.gentree import build_literal, from_precoalgebra, scale_tree, sum_trees, zero_tree
from cofree.gradetree import LEAF, enumerate_trees, join, parse_tree, trees_with_leaves
from cofree.normality import (
    bl_family,
    check_coassociativity_up_to,
    check_composites_up_to,
    check_counitality_up_to,
    check_generalized_nonproj,
    eval_projected,
    format_tuple,
    is_normal_up_to,
    is_weakly_normal_up_to,
    parse_tuple,
    pcan,
    pdeg,
    sigma_of_n,
)
from cofree.rephom import epsilon, evaluate, pi

import oracles

A1 = augment(ModuleSpace(ZZ, 1))
V1 = A1.base
K, V, I = Proj.K, Proj.V, Proj.I


def defective():
    """Root (1,1) with L(1) label (1,1) and R(1) label (2,1)."""
    return build_literal(A1, ([1, 1], [[1, 1]], [[2, 1]]))


def deep_defective():
    """Weakly normal at the root up to 2 leaves; both depth-1 subtrees are defective."""
    child = ([1, 1], [[1, 1]], [[2, 1]])
    return build_literal(A1, ([1, 1], [child], [child]))


def test_tuple_helpers():
    assert pcan((V, K, I, V)) == (V, I, V)
    assert pdeg((K, K)) == 0
    assert pdeg((V, V, K)) == 2
    assert parse_tuple("V,K,I") == (V, K, I)
    assert format_tuple((V, K, I)) == "V,K,I"
    with pytest.raises(NotPlain):
        pdeg((V, I))


def test_eval_projected_examples(sigma_g):
    rng = random.Random(1)
    sigma = oracles.random_literal(rng, A1, 3)
    for t in enumerate_trees(4):
        assert eval_projected(sigma, t, (I,) * t.leaf_count) == evaluate(sigma, t)
    got = eval_projected(sigma_g, parse_tree("(* *)"), (V, K))
    assert got == TensorElement(ZZ, (V1,), {(0,): 2})
    for t in enumerate_trees(4):
        assert eval_projected(sigma_g, t, (K,) * t.leaf_count).as_scalar() == ZZ.one


def test_weak_normality_examples(sigma_g):
    assert is_weakly_normal_up_to(sigma_g, 4).passed
    assert is_weakly_normal_up_to(zero_tree(A1), 4).passed
    report = is_weakly_normal_up_to(defective(), 2)
    assert not report.passed
    w = report.witness
    assert (w["t"], w["u"]) == ("(* *)", "(* *)")
    assert {w["alpha"], w["beta"]} == {"V,K", "K,V"}
    with pytest.raises(InvalidArity):
        is_weakly_normal_up_to(sigma_g, 0)


def test_weak_normality_witness_pnc(sigma_nc):
    report = is_weakly_normal_up_to(sigma_nc, 4)
    assert report.witness == {
        "t": "*", "alpha": "K", "value_t": "1",
        "u": "(* *)", "beta": "K,K", "value_u": "0",
    }


def test_normality_examples(sigma_g):
    assert is_normal_up_to(sigma_g, 4, 3).passed
    sigma = deep_defective()
    assert is_weakly_normal_up_to(sigma, 2).passed
    assert is_normal_up_to(sigma, 2, 0).passed
    report = is_normal_up_to(sigma, 2, 1)
    assert not report.passed
    assert report.witness["position"] == "L(1)"


def test_max_depth_zero_is_weak_normality():
    rng = random.Random(6)
    for _ in range(10):
        sigma = oracles.random_literal(rng, A1, 3, 2)
        assert is_normal_up_to(sigma, 3, 0).passed == is_weakly_normal_up_to(sigma, 3).passed


def test_generalized_invariance(sigma_g):
    assert check_generalized_nonproj(sigma_g, 4).passed
    one = eval_projected(sigma_g, LEAF, (I,))
    assert eval_projected(sigma_g, parse_tree("(* *)"), (I, K)) == one
    assert not check_generalized_nonproj(defective(), 2).passed


def _coassoc_oracle(sigma, max_leaves):
    """Both sides of the tree equation from the brute-force evaluator."""
    for n in range(3, max_leaves + 1):
        for a in range(1, n - 1):
            for b in range(1, n - a):
                for t in trees_with_leaves(a):
                    for u in trees_with_leaves(b):
                        for v in trees_with_leaves(n - a - b):
                            lhs = oracles.brute_force_eval(sigma, join(join(t, u), v))
                            rhs = oracles.brute_force_eval(sigma, join(t, join(u, v)))
                            if lhs != rhs:
                                return False
    return True


def _counit_oracle(sigma, max_leaves):
    for t in enumerate_trees(max_leaves):
        ids = (I,) * t.leaf_count
        value = oracles.brute_force_eval(sigma, t)
        left = drop_unit_factors(apply_factorwise(oracles.brute_force_eval(sigma, join(LEAF, t)), (K,) + ids))
        right = drop_unit_factors(apply_factorwise(oracles.brute_force_eval(sigma, join(t, LEAF)), ids + (K,)))
        if left != value or right != value:
            return False
    return True


def test_coassociativity_examples(sigma_g, sigma_nc):
    assert check_coassociativity_up_to(sigma_g, 5).passed
    assert check_coassociativity_up_to(zero_tree(A1), 5).passed
    # the non-coassociative precoalgebra still yields a tree passing the equation
    assert _coassoc_oracle(sigma_nc, 5) is True
    assert check_coassociativity_up_to(sigma_nc, 5).passed


def test_coassociativity_agrees_with_oracle():
    rng = random.Random(21)
    for _ in range(8):
        sigma = oracles.random_literal(rng, A1, 4, 2)
        assert check_coassociativity_up_to(sigma, 4).passed == _coassoc_oracle(sigma, 4)


def test_counitality_examples(sigma_g, sigma_nc):
    assert check_counitality_up_to(sigma_g, 5).passed
    assert check_counitality_up_to(zero_tree(A1), 5).passed
    scaled = scale_tree(2, sigma_g)
    assert _counit_oracle(scaled, 4) is True
    assert check_counitality_up_to(scaled, 5).passed
    report = check_counitality_up_to(sigma_nc, 5)
    assert not report.passed and report.witness["t"] == "*"
    assert _counit_oracle(sigma_nc, 1) is False


def test_composites(sigma_g):
    assert check_composites_up_to(sigma_g, 4).passed
    P, phi = oracles.divided_power(QQ)
    for k in range(P.rank):
        assert check_composites_up_to(from_precoalgebra(P, phi, P.basis(k)), 4).passed


def test_sigma_of_n(sigma_g):
    assert sigma_of_n(sigma_g, 2) == TensorElement(ZZ, (V1, V1), {(0, 0): 4})
    assert sigma_of_n(sigma_g, 0).as_scalar() == ZZ.one
    assert sigma_of_n(zero_tree(A1), 3).is_zero()
    with pytest.raises(InvalidArity):
        sigma_of_n(sigma_g, -1)


def test_bl_family(sigma_g):
    fam = bl_family(sigma_g, 3)
    assert [v.format() for v in fam] == ["1", "2 * (b1)", "4 * (b1 ⊗ b1)", "8 * (b1 ⊗ b1 ⊗ b1)"]
    assert fam[0].as_scalar() == epsilon(sigma_g)
    assert fam[1] == TensorElement.from_element(pi(sigma_g))
    P, phi = oracles.grouplike(ZZ, 5)
    other = from_precoalgebra(P, phi, P.basis(0))
    summed = bl_family(sum_trees(sigma_g, other), 1)
    assert summed[1] == TensorElement(ZZ, (V1,), {(0,): 7})
