"""
The couniversal morphism phi~ : D -> Rep(V) out of a finite precoalgebra,
and bounded checks that it is the unique precoalgebra morphism with
pi . phi~ = phi.

Uniqueness is only checked as far as the defining recursion goes:

    phi~(d)(*)     = phi(d) + eps'(d)
    phi~(d)(t u)   = sum_i phi~(d_L(i))(t) (x) phi~(d_R(i))(u)

on trees up to the bound.  Nothing is claimed beyond it.
"""

from __future__ import annotations

from cofree.exactalg import ModuleElement, TensorElement, embed_k, embed_v, tensor_join
from cofree.gentree import from_precoalgebra
from cofree.gradetree import enumerate_trees
from cofree.precoalgebra import (
    FinitePrecoalgebra,
    LinearMap,
    canonical_split,
    check_admissible,
)
from cofree.rephom import RepHom, SplitPair, delta, epsilon, evaluate, phi_eval, pi
from cofree.reports import CheckResult, VerificationReport


class _Tilde:
    """phi~ on elements of D; all elements share one lazily built tree family."""

    def __init__(self, P, phi):
        self.P = P
        self.phi = phi
        self.root = None

    def __call__(self, d: ModuleElement) -> RepHom:
        if self.root is None:
            self.root = from_precoalgebra(self.P, self.phi, d)
            return RepHom(self.root)
        return RepHom(self.root.builder.node(d))


def build_tilde(P: FinitePrecoalgebra, phi: LinearMap, d: ModuleElement) -> RepHom:
    """phi~(d), generated by the tree sigma(d)."""
    return RepHom(from_precoalgebra(P, phi, d))


def tilde_map(P, phi):
    """A callable d -> phi~(d) whose trees share nodes across calls."""
    return _Tilde(P, phi)


def verify_factorization(P, phi, bound: int = 4, tilde=None) -> VerificationReport:
    """pi(phi~(b_k)) = phi(b_k) for every basis element; exact."""
    tilde = tilde or tilde_map(P, phi)
    witness = None
    for k in range(P.rank):
        b = P.basis(k)
        got = pi(tilde(b))
        if got != phi(b):
            witness = {"basis": P.space.basis_name(k), "pi(phi~(d))": str(got), "phi(d)": str(phi(b))}
            break
    report = VerificationReport(bound)
    report.checks.append(CheckResult("factorization", witness is None, witness, "exact"))
    return report


def verify_morphism(P, phi, bound: int = 4, tilde=None, split=canonical_split) -> VerificationReport:
    """
    eps-square exactly, and the delta-square compared through phi_eval on
    every join t u with at most ``bound`` leaves: delta(phi~(d)) against
    the pairs (phi~(d_L(i)), phi~(d_R(i))) of the fixed splitting of d.
    """
    tilde = tilde or tilde_map(P, phi)
    report = VerificationReport(bound)
    eps_witness = None
    for k in range(P.rank):
        b = P.basis(k)
        got = epsilon(tilde(b))
        if got != P.counit(b):
            eps_witness = {"basis": P.space.basis_name(k), "epsilon(phi~(d))": str(got), "eps'(d)": str(P.counit(b))}
            break
    report.checks.append(CheckResult("morphism-epsilon", eps_witness is None, eps_witness, "exact"))

    # right-hand side from an independently built family of trees
    fresh = tilde_map(P, phi)
    joins = [t for t in enumerate_trees(bound) if not t.is_leaf]
    delta_witness = None
    for k in range(P.rank):
        b = P.basis(k)
        f = tilde(b)
        lhs_pairs = delta(f)
        rhs_pairs = [SplitPair(fresh(dl), fresh(dr)) for dl, dr in split(P, b)]
        for t in joins:
            lhs = phi_eval(lhs_pairs, t, f.space)
            rhs = phi_eval(rhs_pairs, t, f.space)
            if lhs != rhs:
                delta_witness = {
                    "basis": P.space.basis_name(k),
                    "t": t.left.text,
                    "u": t.right.text,
                    "Phi(delta(phi~(d)))": lhs.format(),
                    "Phi((phi~ x phi~)(delta'(d)))": rhs.format(),
                }
                break
        if delta_witness:
            break
    report.checks.append(CheckResult("morphism-delta", delta_witness is None, delta_witness))
    return report


class _RecursionOracle:
    """
    phi~(b_k)(t) from the two determining formulae alone, read straight off
    the structure tables (no generating tree, no chosen splitting).
    """

    def __init__(self, P, phi, space):
        self.P = P
        self.phi = phi
        self.space = space
        self.memo = {}

    def basis_value(self, k, t) -> TensorElement:
        key = (k, t)
        if key in self.memo:
            return self.memo[key]
        P = self.P
        b = P.basis(k)
        if t.is_leaf:
            label = embed_v(self.phi(b), self.space) + embed_k(P.eps[k], self.space)
            value = TensorElement.from_element(label)
        else:
            value = TensorElement.sum(
                (
                    c * tensor_join(self.basis_value(l, t.left), self.basis_value(m, t.right))
                    for (l, m), c in P.delta[k].items()
                ),
                P.ring,
                (self.space,) * t.leaf_count,
            )
        self.memo[key] = value
        return value


def verify_uniqueness_recursion(P, phi, bound: int = 4, tilde=None) -> VerificationReport:
    tilde = tilde or tilde_map(P, phi)
    report = VerificationReport(bound)
    witness = None
    oracle = None
    for k in range(P.rank):
        f = tilde(P.basis(k))
        if oracle is None:
            oracle = _RecursionOracle(P, phi, f.space)
        for t in enumerate_trees(bound):
            got = evaluate(f, t)
            want = oracle.basis_value(k, t)
            if got != want:
                witness = {
                    "basis": P.space.basis_name(k),
                    "t": t.text,
                    "phi~(d)(t)": got.format(),
                    "recursion": want.format(),
                }
                break
        if witness:
            break
    report.checks.append(
        CheckResult(
            "uniqueness-recursion",
            witness is None,
            witness,
            f"determining formulae checked on trees with <= {bound} leaves only",
        )
    )
    return report


def verify_all(P, phi, bound: int = 4) -> VerificationReport:
    """Admissibility (informational) followed by the three cofreeness checks."""
    tilde = tilde_map(P, phi)
    report = VerificationReport(bound)
    admissible = check_admissible(P)
    for c in admissible.checks:
        c.note = "informational"
        report.checks.append(c)
    report.extend(verify_factorization(P, phi, bound, tilde))
    report.extend(verify_morphism(P, phi, bound, tilde))
    report.extend(verify_uniqueness_recursion(P, phi, bound, tilde))
    return report


def cofreeness_passed(report: VerificationReport) -> bool:
    names = ("factorization", "morphism-epsilon", "morphism-delta", "uniqueness-recursion")
    return all(report[n].passed for n in names)
