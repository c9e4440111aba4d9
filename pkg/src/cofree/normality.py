"""
Projection tuples, projected evaluation sigma[[t || alpha]], and bounded
checks of weak normality, normality and the coalgebra laws, plus the
Block-Leroux family sigma[[0]], sigma[[1]], ...

Every check here is a semidecision: it sweeps all grading trees up to a
bound and reports the first counterexample in a fixed order.  Tuples are
enumerated lexicographically with PrK < PrV < Id.
"""

from __future__ import annotations

from itertools import product

from cofree.errors import InvalidArity, NotPlain
from cofree.exactalg import (
    Proj,
    TensorElement,
    apply_factorwise,
    drop_unit_factors,
    tensor_join,
)
from cofree.gentree import GeneratingTree, format_position, positions
from cofree.gradetree import LEAF, GradingTree, enumerate_trees, join, left_comb, trees_with_leaves
from cofree.rephom import RepHom, epsilon, evaluate, iterated_delta, pi
from cofree.reports import NormalityReport

PLAIN = (Proj.K, Proj.V)
GENERALIZED = (Proj.K, Proj.V, Proj.I)


def parse_tuple(text: str) -> tuple[Proj, ...]:
    """``"V,K,I"`` -> (Proj.V, Proj.K, Proj.I)."""
    return tuple(Proj(p.strip()) for p in text.split(",") if p.strip())


def format_tuple(alpha) -> str:
    return ",".join(str(Proj(a)) for a in alpha)


def is_plain(alpha) -> bool:
    return all(Proj(a) is not Proj.I for a in alpha)


def pdeg(alpha) -> int:
    alpha = tuple(Proj(a) for a in alpha)
    if not is_plain(alpha):
        raise NotPlain(f"pdeg of generalized tuple {format_tuple(alpha)}")
    return sum(1 for a in alpha if a is Proj.V)


def pcan(alpha) -> tuple[Proj, ...]:
    return tuple(Proj(a) for a in alpha if Proj(a) is not Proj.K)


def projection_tuples(n: int, generalized: bool = False):
    return product(GENERALIZED if generalized else PLAIN, repeat=n)


def _tree(sigma) -> GeneratingTree:
    return sigma.generator if isinstance(sigma, RepHom) else sigma


def eval_projected(sigma, t: GradingTree, alpha) -> TensorElement:
    """
    sigma[[t || alpha]]: project each factor of f(t), then drop the K
    factors.  For a plain tuple of pdeg a the result lives in V^(x)a.
    """
    value = evaluate(_tree(sigma), t)
    return drop_unit_factors(apply_factorwise(value, alpha))


def _invariance_sweep(sigma, max_leaves, key, generalized):
    """
    First counterexample to "eval_projected depends only on key(alpha)".

    Tuples inside one grading tree are compared before the tree is compared
    with earlier trees, so a defect visible in a single shape is reported
    on that shape.
    """
    reference = {}
    for t in enumerate_trees(max_leaves):
        local = {}
        for alpha in projection_tuples(t.leaf_count, generalized):
            k = key(alpha)
            value = eval_projected(sigma, t, alpha)
            if k in local:
                u, beta, other = local[k]
                if value != other:
                    return _witness(u, beta, other, t, alpha, value)
            else:
                local[k] = (t, alpha, value)
        for k, (t0, alpha0, value0) in local.items():
            if k in reference:
                u, beta, other = reference[k]
                if value0 != other:
                    return _witness(u, beta, other, t0, alpha0, value0)
            else:
                reference[k] = (t0, alpha0, value0)
    return None


def _witness(t, alpha, value_t, u, beta, value_u):
    return {
        "t": t.text,
        "alpha": format_tuple(alpha),
        "value_t": value_t.format(),
        "u": u.text,
        "beta": format_tuple(beta),
        "value_u": value_u.format(),
    }


def _check_bound(max_leaves):
    if max_leaves < 1:
        raise InvalidArity(f"max_leaves must be >= 1, got {max_leaves}")


def is_weakly_normal_up_to(sigma, max_leaves: int) -> NormalityReport:
    """Plain tuples of equal pdeg give equal values, over all trees with <= max_leaves leaves."""
    _check_bound(max_leaves)
    witness = _invariance_sweep(sigma, max_leaves, pdeg, generalized=False)
    return NormalityReport("weak-normality", max_leaves, None, witness)


def is_normal_up_to(sigma, max_leaves: int, max_depth: int) -> NormalityReport:
    """Weak normality of every subtree at a position of length <= max_depth."""
    _check_bound(max_leaves)
    if max_depth < 0:
        raise InvalidArity(f"max_depth must be >= 0, got {max_depth}")
    seen = set()
    for s, node in positions(_tree(sigma), max_depth):
        # shared nodes (lazy trees reuse subtrees) only need one sweep
        if id(node) in seen:
            continue
        seen.add(id(node))
        witness = _invariance_sweep(node, max_leaves, pdeg, generalized=False)
        if witness is not None:
            witness = {"position": format_position(s), **witness}
            return NormalityReport("normality", max_leaves, max_depth, witness)
    return NormalityReport("normality", max_leaves, max_depth, None)


def check_generalized_nonproj(sigma, max_leaves: int) -> NormalityReport:
    """Generalized tuples (Id allowed) with equal pcan give equal values."""
    _check_bound(max_leaves)
    witness = _invariance_sweep(sigma, max_leaves, pcan, generalized=True)
    return NormalityReport("generalized-invariance", max_leaves, None, witness)


def _splits(total_max, parts):
    """All tuples of ``parts`` positive leaf counts with sum <= total_max."""
    if parts == 0:
        yield ()
        return
    for k in range(1, total_max - parts + 2):
        for rest in _splits(total_max - k, parts - 1):
            yield (k,) + rest


def check_coassociativity_up_to(sigma, max_leaves: int) -> NormalityReport:
    """f((t u) v) = f(t (u v)) for all t, u, v with at most max_leaves leaves in total."""
    _check_bound(max_leaves)
    node = _tree(sigma)
    for a, b, c in _splits(max_leaves, 3):
        for t in trees_with_leaves(a):
            for u in trees_with_leaves(b):
                for v in trees_with_leaves(c):
                    lhs = evaluate(node, join(join(t, u), v))
                    rhs = evaluate(node, join(t, join(u, v)))
                    if lhs != rhs:
                        witness = {
                            "t": t.text,
                            "u": u.text,
                            "v": v.text,
                            "f((t u) v)": lhs.format(),
                            "f(t (u v))": rhs.format(),
                        }
                        return NormalityReport("coassociativity", max_leaves, None, witness)
    return NormalityReport("coassociativity", max_leaves, None, None)


def check_counitality_up_to(sigma, max_leaves: int) -> NormalityReport:
    """f(t) = sigma[[* t || K,I..I]] = sigma[[t * || I..I,K]] for leaf counts <= max_leaves."""
    _check_bound(max_leaves)
    node = _tree(sigma)
    for t in enumerate_trees(max_leaves):
        ids = (Proj.I,) * t.leaf_count
        value = evaluate(node, t)
        left = eval_projected(node, join(LEAF, t), (Proj.K,) + ids)
        right = eval_projected(node, join(t, LEAF), ids + (Proj.K,))
        for name, other in (("sigma[[* t || K,I..]]", left), ("sigma[[t * || ..I,K]]", right)):
            if other != value:
                witness = {"t": t.text, "f(t)": value.format(), name: other.format()}
                return NormalityReport("counitality", max_leaves, None, witness)
    return NormalityReport("counitality", max_leaves, None, None)


def pi_tensor(f, a: int) -> TensorElement:
    """pi^(x)a applied to [[delta]]^a(f); for a = 0 this is epsilon(f)."""
    f = f if isinstance(f, RepHom) else RepHom(f)
    if a == 0:
        return TensorElement.scalar(f.ring, epsilon(f))
    base = f.space.base
    parts = []
    for tup in iterated_delta(f, a):
        out = TensorElement.from_element(pi(tup[0]))
        for h in tup[1:]:
            out = tensor_join(out, TensorElement.from_element(pi(h)))
        parts.append(out)
    return TensorElement.sum(parts, f.ring, (base,) * a)


def check_composites_up_to(sigma, max_n: int) -> NormalityReport:
    """
    For every n <= max_n and plain alpha of length n: the projected value on
    the left comb with n leaves equals pi^(x)a of [[delta]]^a(f), a = pdeg.
    """
    _check_bound(max_n)
    node = _tree(sigma)
    f = RepHom(node)
    cache = {}
    for n in range(1, max_n + 1):
        t = left_comb(n)
        for alpha in projection_tuples(n):
            a = pdeg(alpha)
            if a not in cache:
                cache[a] = pi_tensor(f, a)
            lhs = eval_projected(node, t, alpha)
            if lhs != cache[a]:
                witness = {
                    "t": t.text,
                    "alpha": format_tuple(alpha),
                    "projected": lhs.format(),
                    "pi^a delta^a": cache[a].format(),
                }
                return NormalityReport("composites", max_n, None, witness)
    return NormalityReport("composites", max_n, None, None)


def sigma_of_n(sigma, n: int) -> TensorElement:
    """
    sigma[[n]]: the all-PrV projection on the left comb with n leaves, and
    PrK of the root label for n = 0.  Meaningful for weakly normal trees;
    the caller is responsible for having checked that.
    """
    if n < 0:
        raise InvalidArity(f"degree must be >= 0, got {n}")
    node = _tree(sigma)
    if n == 0:
        return eval_projected(node, LEAF, (Proj.K,))
    return eval_projected(node, left_comb(n), (Proj.V,) * n)


def bl_family(sigma, N: int) -> list[TensorElement]:
    """[sigma[[0]], ..., sigma[[N]]].  Over a non-field ring this is still computed."""
    if N < 0:
        raise InvalidArity(f"degree must be >= 0, got {N}")
    return [sigma_of_n(sigma, n) for n in range(N + 1)]
