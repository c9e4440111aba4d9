"""
Grading trees: finite full binary trees, written ``*`` for the one-node
tree and ``(t u)`` for the join of ``t`` and ``u``.
"""

from __future__ import annotations

from functools import lru_cache

from cofree.errors import BoundTooLarge, InvalidArity, ParseError

ENUMERATION_CAP = 100_000


class GradingTree:
    """Immutable full binary tree; equality and hashing go through the canonical text."""

    __slots__ = ("left", "right", "text", "leaf_count", "depth", "_hash")

    def __init__(self, left: GradingTree | None = None, right: GradingTree | None = None):
        if (left is None) != (right is None):
            raise ValueError("a grading tree node has zero or two children")
        if left is None:
            text, count, depth = "*", 1, 0
        else:
            text = f"({left.text} {right.text})"
            count = left.leaf_count + right.leaf_count
            depth = 1 + max(left.depth, right.depth)
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)
        object.__setattr__(self, "text", text)
        object.__setattr__(self, "leaf_count", count)
        object.__setattr__(self, "depth", depth)
        object.__setattr__(self, "_hash", hash(text))

    def __setattr__(self, name, value):
        raise AttributeError("GradingTree is immutable")

    @property
    def is_leaf(self) -> bool:
        return self.left is None

    def __eq__(self, other):
        if not isinstance(other, GradingTree):
            return NotImplemented
        return self.text == other.text

    def __hash__(self):
        return self._hash

    def __str__(self):
        return self.text

    def __repr__(self):
        return f"GradingTree({self.text!r})"


LEAF = GradingTree()


def join(t: GradingTree, u: GradingTree) -> GradingTree:
    return GradingTree(t, u)


def leaf_count(t: GradingTree) -> int:
    return t.leaf_count


def left_comb(n: int) -> GradingTree:
    """The comb with ``n`` leaves whose right children are all leaves: ((* *) *) for n=3."""
    if n < 1:
        raise InvalidArity(f"left comb needs n >= 1, got {n}")
    t = LEAF
    for _ in range(n - 1):
        t = join(t, LEAF)
    return t


def leaves(t: GradingTree) -> list[str]:
    """Leaf addresses as strings over {L, R}, left to right; '' is the root."""
    out = []

    def walk(node, path):
        if node.is_leaf:
            out.append(path)
        else:
            walk(node.left, path + "L")
            walk(node.right, path + "R")

    walk(t, "")
    return out


def inner_nodes(t: GradingTree) -> list[str]:
    """Addresses of the non-leaf nodes, in pre-order."""
    out = []

    def walk(node, path):
        if not node.is_leaf:
            out.append(path)
            walk(node.left, path + "L")
            walk(node.right, path + "R")

    walk(t, "")
    return out


@lru_cache(maxsize=None)
def trees_with_leaves(n: int) -> tuple[GradingTree, ...]:
    """All grading trees with exactly ``n`` leaves, sorted by text."""
    if n < 1:
        return ()
    if n == 1:
        return (LEAF,)
    out = [
        join(a, b)
        for k in range(1, n)
        for a in trees_with_leaves(k)
        for b in trees_with_leaves(n - k)
    ]
    return tuple(sorted(out, key=lambda t: t.text))


def catalan(n: int) -> int:
    c = 1
    for i in range(n):
        c = c * 2 * (2 * i + 1) // (i + 2)
    return c


def count_up_to(max_leaves: int) -> int:
    # trees with n leaves are counted by the (n-1)th Catalan number
    return sum(catalan(n - 1) for n in range(1, max_leaves + 1))


def enumerate_trees(max_leaves: int, cap: int = ENUMERATION_CAP) -> list[GradingTree]:
    """Every grading tree with at most ``max_leaves`` leaves, by leaf count then text."""
    if max_leaves < 1:
        raise InvalidArity(f"max_leaves must be >= 1, got {max_leaves}")
    total = count_up_to(max_leaves)
    if total > cap:
        raise BoundTooLarge(f"{total} grading trees with <= {max_leaves} leaves exceeds cap {cap}")
    return [t for n in range(1, max_leaves + 1) for t in trees_with_leaves(n)]


def format_tree(t: GradingTree) -> str:
    return t.text


def parse_tree(text: str) -> GradingTree:
    """Parse ``t ::= "*" | "(" t " " t ")"``; extra whitespace is tolerated."""
    pos = 0
    n = len(text)

    def skip():
        nonlocal pos
        while pos < n and text[pos].isspace():
            pos += 1

    def node():
        nonlocal pos
        skip()
        if pos >= n:
            raise ParseError("unexpected end of tree", pos)
        ch = text[pos]
        if ch == "*":
            pos += 1
            return LEAF
        if ch == "(":
            pos += 1
            left = node()
            right = node()
            skip()
            if pos >= n or text[pos] != ")":
                raise ParseError("expected ')'", pos)
            pos += 1
            return join(left, right)
        raise ParseError(f"unexpected character {ch!r}", pos)

    t = node()
    skip()
    if pos != n:
        raise ParseError("trailing input after tree", pos)
    return t
