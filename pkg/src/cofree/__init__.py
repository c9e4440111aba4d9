"""Explicit cofree precoalgebras and cofree coalgebras over an exact commutative ring."""

from cofree.exactalg import QQ, ZZ, ModuleSpace, Proj, TensorElement, Zmod, augment
from cofree.gentree import from_precoalgebra, literal_tree, scale_tree, sum_trees, zero_tree
from cofree.gradetree import LEAF, join, left_comb, parse_tree
from cofree.precoalgebra import FinitePrecoalgebra, LinearMap, parse_precoalgebra
from cofree.rephom import RepHom, delta, epsilon, evaluate, pi

__version__ = "0.1.0"

__all__ = [
    "QQ", "ZZ", "Zmod", "ModuleSpace", "Proj", "TensorElement", "augment",
    "from_precoalgebra", "literal_tree", "scale_tree", "sum_trees", "zero_tree",
    "LEAF", "join", "left_comb", "parse_tree",
    "FinitePrecoalgebra", "LinearMap", "parse_precoalgebra",
    "RepHom", "delta", "epsilon", "evaluate", "pi",
]
