"""
Representative homomorphisms T(K) -> T(V+K) and the precoalgebra structure
(delta, epsilon, pi) on them.

A homomorphism is determined by its values on grading trees.  The value at
a join is computed from the root's children:

    f(*)       = label of the root
    f(t  u)    = sum_i  g_i(t) (x) h_i(u)

where g_i, h_i are generated by the i-th L- and R-subtrees.  Values are
memoised on the generating-tree nodes, so shared subtrees are evaluated
once per grading tree.
"""

from __future__ import annotations

from typing import NamedTuple

from cofree.errors import InvalidArity
from cofree.exactalg import (
    ModuleElement,
    Scalar,
    TensorElement,
    pr_k,
    pr_v,
    tensor_join,
)
from cofree.gentree import GeneratingTree, scale_tree, sum_trees
from cofree.gradetree import GradingTree, enumerate_trees


class RepHom:
    """The homomorphism generated by a generating tree."""

    __slots__ = ("generator",)

    def __init__(self, generator: GeneratingTree):
        self.generator = generator

    @property
    def space(self):
        return self.generator.space

    @property
    def ring(self):
        return self.generator.ring

    def __call__(self, t: GradingTree) -> TensorElement:
        return evaluate(self, t)

    def __add__(self, other: RepHom) -> RepHom:
        return RepHom(sum_trees(self.generator, other.generator))

    def __rmul__(self, lam) -> RepHom:
        return RepHom(scale_tree(lam, self.generator))

    def __repr__(self):
        return f"RepHom({type(self.generator).__name__})"


class SplitPair(NamedTuple):
    left: RepHom
    right: RepHom


def _as_tree(f) -> GeneratingTree:
    return f.generator if isinstance(f, RepHom) else f


def _eval(node: GeneratingTree, t: GradingTree) -> TensorElement:
    memo = node._values
    value = memo.get(t)
    if value is not None:
        return value
    if t.is_leaf:
        value = TensorElement.from_element(node.label)
    else:
        lefts, rights = node.branches()
        value = TensorElement.sum(
            (tensor_join(_eval(g, t.left), _eval(h, t.right)) for g, h in zip(lefts, rights)),
            node.ring,
            (node.space,) * t.leaf_count,
        )
    # concurrent fills compute equal values, so last-writer-wins is harmless
    memo[t] = value
    return value


def evaluate(f, t: GradingTree) -> TensorElement:
    """f(t) as an element of (V+K)^(x)leaves(t).  Accepts a RepHom or a generating tree."""
    return _eval(_as_tree(f), t)


def delta(f) -> list[SplitPair]:
    """One pair per root index i: (hom of L(i)-subtree, hom of R(i)-subtree)."""
    lefts, rights = _as_tree(f).branches()
    return [SplitPair(RepHom(g), RepHom(h)) for g, h in zip(lefts, rights)]


def theta(f) -> ModuleElement:
    return _as_tree(f).label


def epsilon(f) -> Scalar:
    return pr_k(theta(f))


def pi(f) -> ModuleElement:
    return pr_v(theta(f))


def phi_eval(pairs, t: GradingTree, space=None) -> TensorElement:
    """
    The homomorphism attached to sum_i g_i (x) h_i: zero on ``*`` and
    sum_i g_i(t_l) (x) h_i(t_r) on a join.  ``space`` (the V+K space) is
    only needed to type the zero value of an empty pair list.
    """
    pairs = list(pairs)
    if space is None:
        if not pairs:
            raise ValueError("phi_eval of an empty pair list needs the target space")
        space = pairs[0].left.space
    if t.is_leaf:
        return TensorElement.zero(space.ring, (space,))
    return TensorElement.sum(
        (tensor_join(evaluate(g, t.left), evaluate(h, t.right)) for g, h in pairs),
        space.ring,
        (space,) * t.leaf_count,
    )


def iterated_delta(f, n: int) -> list[tuple[RepHom, ...]]:
    """
    [[delta]]^n(f) as a list of n-tuples, always expanding the leftmost
    factor.  Association-independence only holds for coassociative inputs.
    """
    if n < 1:
        raise InvalidArity(f"iterated delta needs n >= 1, got {n}")
    f = f if isinstance(f, RepHom) else RepHom(f)
    out = [(f,)]
    for _ in range(n - 1):
        out = [(g, h) + tuple(rest) for first, *rest in out for g, h in delta(first)]
    return out


def iterated_delta_right(f, n: int) -> list[tuple[RepHom, ...]]:
    """Same as iterated_delta but always expanding the rightmost factor."""
    if n < 1:
        raise InvalidArity(f"iterated delta needs n >= 1, got {n}")
    f = f if isinstance(f, RepHom) else RepHom(f)
    out = [(f,)]
    for _ in range(n - 1):
        out = [tuple(head) + (g, h) for *head, last in out for g, h in delta(last)]
    return out


def equal_up_to(f, g, max_leaves: int) -> bool:
    """
    Bounded extensional equality: True iff f and g agree on every grading
    tree with at most ``max_leaves`` leaves.  A semidecision only; equality
    beyond the bound is not established.
    """
    return first_difference(f, g, max_leaves) is None


def first_difference(f, g, max_leaves: int) -> GradingTree | None:
    for t in enumerate_trees(max_leaves):
        if evaluate(f, t) != evaluate(g, t):
            return t
    return None


def theta_tensor(tuples, space) -> TensorElement:
    """theta^(x)n applied to a list of n-tuples of homomorphisms, summed."""
    tuples = list(tuples)
    n = len(tuples[0]) if tuples else 1
    return TensorElement.sum(
        (_join_all(TensorElement.from_element(theta(h)) for h in tup) for tup in tuples),
        space.ring,
        (space,) * n,
    )


def _join_all(parts):
    parts = iter(parts)
    out = next(parts)
    for p in parts:
        out = tensor_join(out, p)
    return out

