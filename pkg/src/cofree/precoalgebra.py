"""
Finite-rank precoalgebras given by structure tables, linear maps between
free modules, and the line-oriented precoalgebra file format.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from cofree.errors import ParseError, SpaceMismatch
from cofree.exactalg import (
    ModuleElement,
    ModuleSpace,
    RingSpec,
    Scalar,
    TensorElement,
    parse_ring,
)
from cofree.reports import CheckResult, VerificationReport


class LinearMap:
    """A matrix with ``codomain.rank`` rows and ``domain.rank`` columns."""

    def __init__(self, domain: ModuleSpace, codomain: ModuleSpace, matrix):
        if domain.ring != codomain.ring:
            raise SpaceMismatch("domain and codomain over different rings")
        rows = tuple(tuple(domain.ring(c) for c in row) for row in matrix)
        if len(rows) != codomain.rank or any(len(r) != domain.rank for r in rows):
            raise SpaceMismatch(
                f"matrix shape does not match {codomain.rank}x{domain.rank}"
            )
        self.domain = domain
        self.codomain = codomain
        self.matrix = rows

    @classmethod
    def from_columns(cls, domain, codomain, columns):
        columns = [list(c) for c in columns]
        if len(columns) != domain.rank or any(len(c) != codomain.rank for c in columns):
            raise SpaceMismatch("column data does not match the map's shape")
        return cls(domain, codomain, [[col[i] for col in columns] for i in range(codomain.rank)])

    @classmethod
    def zero(cls, domain, codomain):
        return cls(domain, codomain, [[0] * domain.rank for _ in range(codomain.rank)])

    def column(self, k: int) -> ModuleElement:
        return ModuleElement(self.codomain, [row[k] for row in self.matrix])

    def __call__(self, x: ModuleElement) -> ModuleElement:
        if x.space != self.domain:
            raise SpaceMismatch(f"{x.space} is not the domain {self.domain}")
        zero = self.domain.ring.zero
        return ModuleElement(
            self.codomain, [sum((a * b for a, b in zip(row, x.coords)), zero) for row in self.matrix]
        )

    def compose(self, other: LinearMap) -> LinearMap:
        """``self`` after ``other``."""
        if other.codomain != self.domain:
            raise SpaceMismatch("maps are not composable")
        zero = self.domain.ring.zero
        m = [
            [sum((self.matrix[i][j] * other.matrix[j][k] for j in range(self.domain.rank)), zero)
             for k in range(other.domain.rank)]
            for i in range(self.codomain.rank)
        ]
        return LinearMap(other.domain, self.codomain, m)

    def __eq__(self, other):
        if not isinstance(other, LinearMap):
            return NotImplemented
        return (self.domain, self.codomain, self.matrix) == (other.domain, other.codomain, other.matrix)


class FinitePrecoalgebra:
    """
    ``delta[k]`` maps (l, m) to the coefficient of b_l (x) b_m in delta'(b_k);
    ``eps[k]`` is eps'(b_k).  No axioms are assumed.
    """

    def __init__(self, space: ModuleSpace, delta, eps):
        ring = space.ring
        r = space.rank
        if len(delta) != r or len(eps) != r:
            raise SpaceMismatch(f"structure tables do not have {r} rows")
        table = []
        for row in delta:
            clean = {}
            for (l, m), c in dict(row).items():
                if not (0 <= l < r and 0 <= m < r):
                    raise SpaceMismatch(f"basis index ({l}, {m}) out of range for rank {r}")
                c = ring(c)
                if c:
                    clean[(l, m)] = c
            table.append(clean)
        self.space = space
        self.delta = tuple(table)
        self.eps = tuple(ring(c) for c in eps)

    @property
    def ring(self) -> RingSpec:
        return self.space.ring

    @property
    def rank(self) -> int:
        return self.space.rank

    def basis(self, k: int) -> ModuleElement:
        return self.space.basis(k)

    def counit(self, d: ModuleElement) -> Scalar:
        self._check(d)
        return sum((c * e for c, e in zip(d.coords, self.eps)), self.ring.zero)

    def comultiply(self, d: ModuleElement) -> TensorElement:
        """delta'(d) as an element of D (x) D."""
        self._check(d)
        terms = {}
        for k, c in enumerate(d.coords):
            if not c:
                continue
            for lm, coeff in self.delta[k].items():
                terms[lm] = terms[lm] + c * coeff if lm in terms else c * coeff
        return TensorElement(self.ring, (self.space, self.space), terms)

    def _check(self, d):
        if d.space != self.space:
            raise SpaceMismatch(f"{d.space} is not the precoalgebra's space")


def canonical_split(P: FinitePrecoalgebra, d: ModuleElement) -> list[tuple[ModuleElement, ModuleElement]]:
    """
    The fixed representation delta'(d) = sum_i d_L(i) (x) d_R(i).

    One pair per nonzero coordinate k of d and table entry (l, m), in that
    order, with the whole coefficient folded into the left factor.  An empty
    result is padded to the single pair (0, 0).
    """
    P._check(d)
    pairs = []
    for k, c in enumerate(d.coords):
        if not c:
            continue
        for (l, m) in sorted(P.delta[k]):
            pairs.append(((c * P.delta[k][(l, m)]) * P.basis(l), P.basis(m)))
    if not pairs:
        zero = P.space.zero()
        pairs.append((zero, zero))
    return pairs


def _apply_delta_at(P: FinitePrecoalgebra, x: TensorElement, slot: int) -> TensorElement:
    """Apply delta' to tensor factor ``slot`` of ``x``."""
    factors = x.factors[:slot] + (P.space, P.space) + x.factors[slot + 1:]
    terms = {}
    for idx, c in x.terms.items():
        for (l, m), coeff in P.delta[idx[slot]].items():
            key = idx[:slot] + (l, m) + idx[slot + 1:]
            terms[key] = terms[key] + c * coeff if key in terms else c * coeff
    return TensorElement(P.ring, factors, terms)


def _apply_counit_at(P: FinitePrecoalgebra, x: TensorElement, slot: int) -> TensorElement:
    factors = x.factors[:slot] + x.factors[slot + 1:]
    terms = {}
    for idx, c in x.terms.items():
        key = idx[:slot] + idx[slot + 1:]
        v = c * P.eps[idx[slot]]
        terms[key] = terms[key] + v if key in terms else v
    return TensorElement(P.ring, factors, terms)


def check_admissible(P: FinitePrecoalgebra) -> VerificationReport:
    """Coassociativity and both counit laws, basis element by basis element."""
    report = VerificationReport(bound=0)
    coassoc = None
    counit = None
    for k in range(P.rank):
        b = TensorElement.from_element(P.basis(k))
        dk = P.comultiply(P.basis(k))
        if coassoc is None:
            lhs = _apply_delta_at(P, dk, 0)
            rhs = _apply_delta_at(P, dk, 1)
            if lhs != rhs:
                coassoc = {
                    "basis": P.space.basis_name(k),
                    "(delta x id) delta": lhs.format(),
                    "(id x delta) delta": rhs.format(),
                }
        if counit is None:
            left = _apply_counit_at(P, dk, 0)
            right = _apply_counit_at(P, dk, 1)
            for side, val in (("(eps x id) delta", left), ("(id x eps) delta", right)):
                if val != b:
                    counit = {"basis": P.space.basis_name(k), side: val.format(), "expected": b.format()}
                    break
    report.checks.append(CheckResult("coassociativity", coassoc is None, coassoc))
    report.checks.append(CheckResult("counitality", counit is None, counit))
    return report


def is_admissible(P: FinitePrecoalgebra) -> bool:
    return check_admissible(P).passed


# -- file format ------------------------------------------------------------

_DELTA_TERM = re.compile(r"(-?[0-9]+(?:/[0-9]+)?)\*\(b([0-9]+),b([0-9]+)\)")
_BASIS = re.compile(r"b([0-9]+)")


@dataclass
class PrecoalgebraFile:
    """A parsed precoalgebra file: the precoalgebra together with phi : D -> V."""

    precoalgebra: FinitePrecoalgebra
    phi: LinearMap

    @property
    def ring(self):
        return self.precoalgebra.ring


def _basis_index(token, rank, lineno):
    m = _BASIS.fullmatch(token.strip())
    if not m:
        raise ParseError(f"expected a basis name b<k>, got {token!r}", f"line {lineno}")
    k = int(m.group(1))
    if not 1 <= k <= rank:
        raise ParseError(f"basis index {k} outside 1..{rank}", f"line {lineno}")
    return k - 1


def parse_precoalgebra(text: str, ring: RingSpec | None = None) -> PrecoalgebraFile:
    """
    Parse the line format::

        ring Z|Zmod n|Q
        rank r
        rankV r'
        delta b<k> = c*(b<l>,b<m>) + ...
        eps b<k> = c
        phi b<k> = c1,...,c_r'

    Missing delta/eps/phi lines mean zero.  ``ring`` overrides the header.
    Blank lines and ``#`` comments are skipped.
    """
    header_ring = None
    rank = rank_v = None
    entries = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        word = line.split()[0]
        if word == "ring":
            header_ring = parse_ring(line)
        elif word in ("rank", "rankV"):
            parts = line.split()
            if len(parts) != 2 or not parts[1].isdigit():
                raise ParseError(f"bad {word} line {line!r}", f"line {lineno}")
            if word == "rank":
                rank = int(parts[1])
            else:
                rank_v = int(parts[1])
        elif word in ("delta", "eps", "phi"):
            if "=" not in line:
                raise ParseError(f"missing '=' in {line!r}", f"line {lineno}")
            lhs, rhs = line.split("=", 1)
            entries.append((lineno, word, lhs.split()[1:], rhs.strip()))
        else:
            raise ParseError(f"unknown directive {word!r}", f"line {lineno}")
    ring = ring or header_ring
    if ring is None:
        raise ParseError("no ring header")
    if rank is None or rank_v is None:
        raise ParseError("both 'rank' and 'rankV' lines are required")

    delta = [dict() for _ in range(rank)]
    eps = [ring.zero] * rank
    phi_cols = [[ring.zero] * rank_v for _ in range(rank)]
    for lineno, word, lhs, rhs in entries:
        if len(lhs) != 1:
            raise ParseError("expected one basis name before '='", f"line {lineno}")
        k = _basis_index(lhs[0], rank, lineno)
        try:
            if word == "eps":
                eps[k] = ring.parse_scalar(rhs)
            elif word == "phi":
                coords = [ring.parse_scalar(c) for c in rhs.split(",")]
                if len(coords) != rank_v:
                    raise ParseError(
                        f"phi value has {len(coords)} coordinates, rankV is {rank_v}",
                        f"line {lineno}",
                    )
                phi_cols[k] = coords
            else:
                compact = rhs.replace(" ", "")
                terms = compact.split("+") if compact != "0" else []
                for term in terms:
                    m = _DELTA_TERM.fullmatch(term)
                    if not m:
                        raise ParseError(f"bad delta term {term!r}", f"line {lineno}")
                    c = ring.parse_scalar(m.group(1))
                    lm = (
                        _basis_index("b" + m.group(2), rank, lineno),
                        _basis_index("b" + m.group(3), rank, lineno),
                    )
                    delta[k][lm] = delta[k].get(lm, ring.zero) + c
        except ParseError as exc:
            if exc.pos is None:
                raise ParseError(str(exc), f"line {lineno}") from None
            raise
    space = ModuleSpace(ring, rank, "D")
    V = ModuleSpace(ring, rank_v, "V")
    P = FinitePrecoalgebra(space, delta, eps)
    return PrecoalgebraFile(P, LinearMap.from_columns(space, V, phi_cols))


def format_precoalgebra(P: FinitePrecoalgebra, phi: LinearMap) -> str:
    lines = [P.ring.header(), f"rank {P.rank}", f"rankV {phi.codomain.rank}"]
    for k in range(P.rank):
        if P.delta[k]:
            terms = " + ".join(
                f"{c}*(b{l + 1},b{m + 1})" for (l, m), c in sorted(P.delta[k].items())
            )
            lines.append(f"delta b{k + 1} = {terms}")
    for k in range(P.rank):
        if P.eps[k]:
            lines.append(f"eps b{k + 1} = {P.eps[k]}")
    for k in range(P.rank):
        col = phi.column(k)
        if not col.is_zero():
            lines.append(f"phi b{k + 1} = {col}")
    return "\n".join(lines) + "\n"
