"""
Generating trees.

A generating tree is only ever observed through three things: the label of
its root (an element of V+K), its arity n >= 1 (the root has 2n children)
and its children ``child("L", i)`` / ``child("R", i)`` for 1 <= i <= n.
Infinite trees are therefore represented lazily.  Every node expands once
and keeps the result, so repeated observation returns identical objects.

Literal trees are finite: nodes written without children are truncation
points, and asking for their arity or children raises TruncationExceeded.
"""

from __future__ import annotations

import re
from typing import NamedTuple

from cofree.errors import (
    InvalidPosition,
    MixedRings,
    OddChildCount,
    ParseError,
    SpaceMismatch,
    TruncationExceeded,
)
from cofree.exactalg import (
    AugmentedSpace,
    ModuleElement,
    ModuleSpace,
    RingSpec,
    augment,
    embed_k,
    embed_v,
)
from cofree.precoalgebra import canonical_split


class Pos(NamedTuple):
    side: str  # "L" or "R"
    index: int  # 1-based

    def __str__(self):
        return f"{self.side}({self.index})"


def format_position(r) -> str:
    return "".join(str(p) for p in r) or "ε"


_POS_RE = re.compile(r"([LR])\(([0-9]+)\)")


def parse_position(text: str) -> tuple[Pos, ...]:
    """Parse ``L(1)R(2)``; the empty string or ``ε`` is the root."""
    text = text.strip()
    if text in ("", "ε", "e"):
        return ()
    out = []
    pos = 0
    while pos < len(text):
        m = _POS_RE.match(text, pos)
        if not m:
            raise ParseError("bad position symbol", pos)
        index = int(m.group(2))
        if index < 1:
            raise ParseError("position indices start at 1", pos)
        out.append(Pos(m.group(1), index))
        pos = m.end()
    return tuple(out)


class GeneratingTree:
    """Base class: subclasses provide ``_make_label`` and ``_make_branches``."""

    space: AugmentedSpace

    def __init__(self, space: AugmentedSpace):
        self.space = space
        self._label = None
        self._branches = None
        # evaluation memo, keyed by grading tree; filled by cofree.rephom
        self._values = {}

    @property
    def ring(self) -> RingSpec:
        return self.space.ring

    @property
    def label(self) -> ModuleElement:
        if self._label is None:
            self._label = self._make_label()
        return self._label

    def branches(self) -> tuple[tuple[GeneratingTree, ...], tuple[GeneratingTree, ...]]:
        """(L-children, R-children), each of length ``arity``."""
        if self._branches is None:
            lefts, rights = self._make_branches()
            lefts, rights = tuple(lefts), tuple(rights)
            if len(lefts) != len(rights) or not lefts:
                raise OddChildCount(f"node has {len(lefts)} L- and {len(rights)} R-children")
            self._branches = (lefts, rights)
        return self._branches

    @property
    def arity(self) -> int:
        return len(self.branches()[0])

    def child(self, side: str, i: int) -> GeneratingTree:
        lefts, rights = self.branches()
        kids = lefts if side == "L" else rights
        if not 1 <= i <= len(kids):
            raise InvalidPosition(f"{side}({i}) exceeds arity {len(kids)}")
        return kids[i - 1]

    def _make_label(self) -> ModuleElement:
        raise NotImplementedError

    def _make_branches(self):
        raise NotImplementedError


class LiteralTree(GeneratingTree):
    """An explicit finite tree; ``lefts is None`` marks a truncation point."""

    def __init__(self, space, label, lefts=None, rights=None, path=()):
        super().__init__(space)
        label = label if isinstance(label, ModuleElement) else ModuleElement(space, label)
        if label.space != space:
            raise SpaceMismatch(f"label in {label.space}, tree over {space}")
        self._label = label
        self.path = tuple(path)
        if (lefts is None) != (rights is None):
            raise OddChildCount("both or neither of the child lists must be given")
        if lefts is not None:
            if len(lefts) != len(rights) or not lefts:
                raise OddChildCount(f"{len(lefts) + len(rights)} children at {format_position(path)}")
            self._branches = (tuple(lefts), tuple(rights))

    @property
    def truncated(self) -> bool:
        return self._branches is None

    @property
    def depth(self) -> int:
        if self._branches is None:
            return 0
        lefts, rights = self._branches
        return 1 + max(c.depth for c in lefts + rights)

    def _make_branches(self):
        raise TruncationExceeded(format_position(self.path))


class ZeroTree(GeneratingTree):
    """Arity 1, every label zero; its only two children are itself."""

    def _make_label(self):
        return self.space.zero()

    def _make_branches(self):
        return (self,), (self,)


class SumTree(GeneratingTree):
    def __init__(self, sigma: GeneratingTree, tau: GeneratingTree):
        if sigma.space != tau.space:
            raise SpaceMismatch(f"{sigma.space} vs {tau.space}")
        super().__init__(sigma.space)
        self.sigma = sigma
        self.tau = tau

    def _make_label(self):
        return self.sigma.label + self.tau.label

    def _make_branches(self):
        sl, sr = self.sigma.branches()
        tl, tr = self.tau.branches()
        return sl + tl, sr + tr


class ScaleTree(GeneratingTree):
    """Scales the labels at all-L positions (the root included); the rest is shared."""

    def __init__(self, lam, sigma: GeneratingTree):
        try:
            lam = sigma.ring(lam)
        except TypeError as exc:
            raise MixedRings(str(exc)) from None
        super().__init__(sigma.space)
        self.lam = lam
        self.sigma = sigma

    def _make_label(self):
        return self.lam * self.sigma.label

    def _make_branches(self):
        lefts, rights = self.sigma.branches()
        return tuple(ScaleTree(self.lam, c) for c in lefts), rights


class PrecoalgebraTree(GeneratingTree):
    """
    The tree sigma(d): label eps'(d_r) + phi(d_r) at position r, children
    from canonical_split.  Nodes are shared per element of D, so the tree
    of a group-like element is a single self-looping node.
    """

    def __init__(self, builder: _PrecoalgebraBuilder, d: ModuleElement):
        super().__init__(builder.space)
        self.builder = builder
        self.element = d

    def _make_label(self):
        b = self.builder
        return embed_v(b.phi(self.element), self.space) + embed_k(
            b.P.counit(self.element), self.space
        )

    def _make_branches(self):
        pairs = canonical_split(self.builder.P, self.element)
        return (
            tuple(self.builder.node(dl) for dl, _ in pairs),
            tuple(self.builder.node(dr) for _, dr in pairs),
        )


class _PrecoalgebraBuilder:
    def __init__(self, P, phi):
        if phi.domain != P.space:
            raise SpaceMismatch(f"phi is defined on {phi.domain}, not on {P.space}")
        self.P = P
        self.phi = phi
        self.space = augment(phi.codomain)
        self._nodes = {}

    def node(self, d: ModuleElement) -> PrecoalgebraTree:
        if d.space != self.P.space:
            raise SpaceMismatch(f"{d.space} is not the precoalgebra's space")
        # setdefault keeps concurrent fills consistent
        n = self._nodes.get(d.coords)
        if n is None:
            n = self._nodes.setdefault(d.coords, PrecoalgebraTree(self, d))
        return n


def from_precoalgebra(P, phi, d: ModuleElement) -> GeneratingTree:
    """The generating tree sigma(d) of the couniversal construction."""
    return _PrecoalgebraBuilder(P, phi).node(d)


def zero_tree(space: ModuleSpace) -> ZeroTree:
    """Zero tree over V+K; ``space`` may be V itself or an augmented space."""
    if not isinstance(space, AugmentedSpace):
        space = augment(space)
    return ZeroTree(space)


def sum_trees(sigma: GeneratingTree, tau: GeneratingTree) -> GeneratingTree:
    return SumTree(sigma, tau)


def scale_tree(lam, sigma: GeneratingTree) -> GeneratingTree:
    return ScaleTree(lam, sigma)


def subtree_at(sigma: GeneratingTree, s) -> GeneratingTree:
    if isinstance(s, str):
        s = parse_position(s)
    node = sigma
    for k, p in enumerate(s):
        try:
            node = node.child(p.side, p.index)
        except InvalidPosition as exc:
            raise InvalidPosition(f"{exc} at {format_position(s[:k + 1])}") from None
    return node


def label_at(sigma: GeneratingTree, r) -> ModuleElement:
    return subtree_at(sigma, r).label


def positions(sigma: GeneratingTree, max_len: int):
    """Every position sequence of length <= max_len, by length then child order."""
    level = [((), sigma)]
    for length in range(max_len + 1):
        yield from level
        if length == max_len:
            break
        nxt = []
        for r, node in level:
            lefts, rights = node.branches()
            for i, c in enumerate(lefts, 1):
                nxt.append((r + (Pos("L", i),), c))
            for i, c in enumerate(rights, 1):
                nxt.append((r + (Pos("R", i),), c))
        level = nxt


# -- literal text format -----------------------------------------------------
#   node ::= "{" label-vector " children [" node* "]" "}"


def literal_tree(text: str, ring: RingSpec) -> LiteralTree:
    """Parse a literal tree; the label length fixes rank(V) + 1."""
    parser = _LiteralParser(text, ring)
    tree = parser.node()
    parser.skip()
    if parser.pos != len(text):
        raise ParseError("trailing input after literal tree", parser.pos)
    _fix_paths(tree)
    return tree


class _LiteralParser:
    _LABEL = re.compile(r"[^\s{}\[\]]+")

    def __init__(self, text, ring):
        self.text = text
        self.ring = ring
        self.pos = 0
        self.space = None

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def expect(self, token):
        self.skip()
        if not self.text.startswith(token, self.pos):
            raise ParseError(f"expected {token!r}", self.pos)
        self.pos += len(token)

    def node(self):
        self.expect("{")
        self.skip()
        start = self.pos
        m = self._LABEL.match(self.text, self.pos)
        if not m:
            raise ParseError("expected a label vector", self.pos)
        self.pos = m.end()
        try:
            coords = [self.ring.parse_scalar(c) for c in m.group(0).split(",")]
        except ParseError as exc:
            raise ParseError(str(exc), start) from None
        if self.space is None:
            self.space = augment(ModuleSpace(self.ring, len(coords) - 1, "V"))
        elif len(coords) != self.space.rank:
            raise ParseError(
                f"label has {len(coords)} coordinates, expected {self.space.rank}", start
            )
        self.expect("children")
        self.expect("[")
        kids = []
        self.skip()
        while self.pos < len(self.text) and self.text[self.pos] == "{":
            kids.append(self.node())
            self.skip()
        self.expect("]")
        self.expect("}")
        if len(kids) % 2:
            raise OddChildCount(f"{len(kids)} children (must be even)", start)
        label = ModuleElement(self.space, coords)
        if not kids:
            return LiteralTree(self.space, label)
        n = len(kids) // 2
        return LiteralTree(self.space, label, kids[:n], kids[n:])


def _fix_paths(tree: LiteralTree, path=()):
    tree.path = path
    if tree._branches is not None:
        lefts, rights = tree._branches
        for i, c in enumerate(lefts, 1):
            _fix_paths(c, path + (Pos("L", i),))
        for i, c in enumerate(rights, 1):
            _fix_paths(c, path + (Pos("R", i),))


def format_literal(sigma: GeneratingTree, depth: int | None = None) -> str:
    """
    Serialise a tree.  Literal trees print in full; any other tree needs
    ``depth``, below which nodes are written without children.
    """

    def fmt(node, d):
        stop = (
            (isinstance(node, LiteralTree) and node.truncated)
            or (depth is not None and d >= depth)
        )
        if stop:
            return f"{{{node.label} children []}}"
        lefts, rights = node.branches()
        kids = " ".join(fmt(c, d + 1) for c in lefts + rights)
        return f"{{{node.label} children [{kids}]}}"

    if depth is None and not isinstance(sigma, LiteralTree):
        raise ValueError("a depth is required to serialise a lazy tree")
    return fmt(sigma, 0)


def truncate(sigma: GeneratingTree, depth: int) -> LiteralTree:
    """Copy the top ``depth`` levels of any tree into a literal tree."""

    def copy(node, d, path):
        if d >= depth:
            return LiteralTree(node.space, node.label, path=path)
        lefts, rights = node.branches()
        return LiteralTree(
            node.space,
            node.label,
            [copy(c, d + 1, path + (Pos("L", i),)) for i, c in enumerate(lefts, 1)],
            [copy(c, d + 1, path + (Pos("R", i),)) for i, c in enumerate(rights, 1)],
            path,
        )

    return copy(sigma, 0, ())


def build_literal(space: AugmentedSpace, spec, path=()) -> LiteralTree:
    """
    Build a literal tree from nested Python data: ``(label, lefts, rights)``
    or just ``label`` for a truncation point.
    """
    if isinstance(spec, tuple) and len(spec) == 3 and isinstance(spec[1], (list, tuple)):
        label, lefts, rights = spec
        return LiteralTree(
            space,
            label,
            [build_literal(space, c, path + (Pos("L", i),)) for i, c in enumerate(lefts, 1)],
            [build_literal(space, c, path + (Pos("R", i),)) for i, c in enumerate(rights, 1)],
            path,
        )
    return LiteralTree(space, spec, path=path)
