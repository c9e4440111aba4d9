"""
Exact coefficient rings, finite-rank free modules and sparse tensors.

Three rings are supported: the integers, the integers modulo n and the
rationals.  Nothing here ever touches a float.

Basis indices are 0-based in the Python API and printed 1-based (``b1``,
``b2``, ...).  In an augmented space V+K the K-coordinate is the last one
and prints as ``k``.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from numbers import Integral, Rational

from cofree.errors import ArityMismatch, MixedRings, ParseError, SpaceMismatch


@dataclass(frozen=True)
class RingSpec:
    kind: str  # "Z", "Zmod" or "Q"
    modulus: int | None = None

    def __post_init__(self):
        if self.kind not in ("Z", "Zmod", "Q"):
            raise ValueError(f"unknown ring kind {self.kind!r}")
        if self.kind == "Zmod":
            if not isinstance(self.modulus, int) or self.modulus < 2:
                raise ValueError("IntegersMod needs a modulus >= 2")
        elif self.modulus is not None:
            raise ValueError(f"ring {self.kind} takes no modulus")

    def __call__(self, value) -> Scalar:
        if isinstance(value, Scalar):
            if value.ring != self:
                raise MixedRings(f"{value.ring} scalar used in {self}")
            return value
        return Scalar(self, value)

    @property
    def zero(self) -> Scalar:
        return Scalar(self, 0)

    @property
    def one(self) -> Scalar:
        return Scalar(self, 1)

    def header(self) -> str:
        if self.kind == "Zmod":
            return f"ring Zmod {self.modulus}"
        return f"ring {self.kind}"

    def parse_scalar(self, text: str) -> Scalar:
        text = text.strip()
        m = _SCALAR_RE.fullmatch(text)
        if not m:
            raise ParseError(f"bad scalar literal {text!r}")
        if m.group(2) is not None:
            if self.kind != "Q":
                raise ParseError(f"fraction {text!r} is not an element of {self}")
            den = int(m.group(2))
            if den == 0:
                raise ParseError(f"zero denominator in {text!r}")
            return Scalar(self, Fraction(int(m.group(1)), den))
        return Scalar(self, int(m.group(1)))

    def __str__(self):
        return self.header()[len("ring "):]


_SCALAR_RE = re.compile(r"(-?[0-9]+)(?:/([0-9]+))?")

ZZ = RingSpec("Z")
QQ = RingSpec("Q")


def Zmod(n: int) -> RingSpec:
    return RingSpec("Zmod", n)


def parse_ring(line: str) -> RingSpec:
    """Parse a header line ``ring Z`` | ``ring Zmod <n>`` | ``ring Q``."""
    words = line.split()
    if words[:1] != ["ring"]:
        raise ParseError(f"expected a ring header, got {line!r}")
    rest = words[1:]
    try:
        if rest == ["Z"]:
            return ZZ
        if rest == ["Q"]:
            return QQ
        if len(rest) == 2 and rest[0] == "Zmod":
            return Zmod(int(rest[1]))
    except ValueError as exc:
        raise ParseError(f"bad ring header {line!r}: {exc}") from None
    raise ParseError(f"bad ring header {line!r}")


class Scalar:
    """An element of a coefficient ring; immutable, canonically reduced."""

    __slots__ = ("ring", "value")

    def __init__(self, ring: RingSpec, value):
        if isinstance(value, Scalar):
            value = value.value
        if ring.kind == "Q":
            if not isinstance(value, Rational):
                raise TypeError(f"cannot make a rational from {value!r}")
            value = Fraction(value)
        else:
            if isinstance(value, Fraction) and value.denominator == 1:
                value = value.numerator
            if not isinstance(value, Integral):
                raise TypeError(f"cannot make an element of {ring} from {value!r}")
            value = int(value)
            if ring.kind == "Zmod":
                value %= ring.modulus
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    def _other(self, other) -> Scalar:
        if type(other) is Scalar:
            if other.ring is not self.ring and other.ring != self.ring:
                raise MixedRings(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, Integral):
            return Scalar(self.ring, other)
        return NotImplemented

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return _reduced(self.ring, self.value + other.value)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return _reduced(self.ring, self.value - other.value)

    def __rsub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return _reduced(self.ring, other.value - self.value)

    def __mul__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return _reduced(self.ring, self.value * other.value)

    __rmul__ = __mul__

    def __neg__(self):
        return _reduced(self.ring, -self.value)

    def __eq__(self, other):
        if isinstance(other, Scalar):
            if other.ring != self.ring:
                raise MixedRings(f"{self.ring} vs {other.ring}")
            return self.value == other.value
        if isinstance(other, Integral):
            return self == Scalar(self.ring, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, self.value))

    def __bool__(self):
        return self.value != 0

    def __str__(self):
        return str(self.value)

    def __repr__(self):
        return f"Scalar({self.ring}, {self.value})"


def _reduced(ring: RingSpec, value) -> Scalar:
    # value is the result of ring operations on canonical values; skip validation
    if ring.modulus is not None:
        value %= ring.modulus
    out = object.__new__(Scalar)
    object.__setattr__(out, "ring", ring)
    object.__setattr__(out, "value", value)
    return out


def ring_add(a: Scalar, b: Scalar) -> Scalar:
    return a + b


def ring_mul(a: Scalar, b: Scalar) -> Scalar:
    return a * b


def ring_neg(a: Scalar) -> Scalar:
    return -a


def ring_eq(a: Scalar, b: Scalar) -> bool:
    return a == b


# -- free modules ------------------------------------------------------------


@dataclass(frozen=True)
class ModuleSpace:
    ring: RingSpec
    rank: int
    tag: str = "V"

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("rank must be >= 0")

    def element(self, coords) -> ModuleElement:
        return ModuleElement(self, coords)

    def zero(self) -> ModuleElement:
        return ModuleElement(self, [0] * self.rank)

    def basis(self, k: int) -> ModuleElement:
        coords = [0] * self.rank
        coords[k] = 1
        return ModuleElement(self, coords)

    def basis_name(self, k: int) -> str:
        return f"b{k + 1}"


@dataclass(frozen=True)
class AugmentedSpace(ModuleSpace):
    """V+K presented as a space of rank ``base.rank + 1``; K is the last coordinate."""

    base: ModuleSpace | None = None

    def basis_name(self, k: int) -> str:
        return "k" if k == self.rank - 1 else f"b{k + 1}"


@dataclass(frozen=True)
class UnitSpace(ModuleSpace):
    """The rank-1 factor K that a K-projection lands in."""

    def basis_name(self, k: int) -> str:
        return "k"


def augment(space: ModuleSpace) -> AugmentedSpace:
    return AugmentedSpace(space.ring, space.rank + 1, space.tag + "+K", space)


def unit_space(ring: RingSpec) -> UnitSpace:
    return UnitSpace(ring, 1, "K")


class ModuleElement:
    __slots__ = ("space", "coords")

    def __init__(self, space: ModuleSpace, coords):
        coords = tuple(space.ring(c) for c in coords)
        if len(coords) != space.rank:
            raise SpaceMismatch(f"{len(coords)} coordinates for a rank-{space.rank} space")
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "coords", coords)

    def __setattr__(self, name, value):
        raise AttributeError("ModuleElement is immutable")

    def _check(self, other):
        if not isinstance(other, ModuleElement):
            raise TypeError(f"expected a module element, got {other!r}")
        if other.space != self.space:
            raise SpaceMismatch(f"{self.space} vs {other.space}")

    def __add__(self, other):
        self._check(other)
        return ModuleElement(self.space, [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other):
        self._check(other)
        return ModuleElement(self.space, [a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self):
        return ModuleElement(self.space, [-a for a in self.coords])

    def __rmul__(self, lam):
        lam = self.space.ring(lam)
        return ModuleElement(self.space, [lam * a for a in self.coords])

    def __eq__(self, other):
        if not isinstance(other, ModuleElement):
            return NotImplemented
        return self.space == other.space and self.coords == other.coords

    def __hash__(self):
        return hash((self.space, self.coords))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __str__(self):
        return ",".join(str(c) for c in self.coords)

    def __repr__(self):
        return f"ModuleElement({self.space.tag}: {self})"


def elem_add(x: ModuleElement, y: ModuleElement) -> ModuleElement:
    return x + y


def elem_scale(lam, x: ModuleElement) -> ModuleElement:
    return lam * x


def _augmented(x: ModuleElement) -> AugmentedSpace:
    if not isinstance(x.space, AugmentedSpace):
        raise SpaceMismatch(f"{x.space} is not an augmented space")
    return x.space


def pr_v(x: ModuleElement) -> ModuleElement:
    space = _augmented(x)
    return ModuleElement(space.base, x.coords[:-1])


def pr_k(x: ModuleElement) -> Scalar:
    _augmented(x)
    return x.coords[-1]


def embed_v(v: ModuleElement, space: AugmentedSpace | None = None) -> ModuleElement:
    space = space or augment(v.space)
    if space.base != v.space:
        raise SpaceMismatch(f"{v.space} does not embed into {space}")
    return ModuleElement(space, v.coords + (space.ring.zero,))


def embed_k(lam, space: AugmentedSpace) -> ModuleElement:
    lam = space.ring(lam)
    return ModuleElement(space, [0] * space.base.rank + [lam])


# -- sparse tensors ----------------------------------------------------------


class Proj(enum.Enum):
    """Per-factor map of a projection tuple; declaration order is the enumeration order."""

    K = "K"
    V = "V"
    I = "I"  # noqa: E741

    def __str__(self):
        return self.value


class TensorElement:
    """
    A sparse element of ``factors[0] (x) ... (x) factors[n-1]``.

    ``terms`` maps index tuples to nonzero scalars.  With no factors the
    element is a plain scalar stored under the empty tuple.
    """

    __slots__ = ("ring", "factors", "terms", "_hash")

    def __init__(self, ring: RingSpec, factors, terms=None):
        factors = tuple(factors)
        for sp in factors:
            if sp.ring != ring:
                raise MixedRings(f"factor over {sp.ring} in a tensor over {ring}")
        clean = {}
        for idx, c in (terms or {}).items():
            idx = tuple(idx)
            if len(idx) != len(factors):
                raise ArityMismatch(f"index {idx} for {len(factors)} factors")
            for i, sp in zip(idx, factors):
                if not 0 <= i < sp.rank:
                    raise ArityMismatch(f"index {i} out of range for rank {sp.rank}")
            c = ring(c)
            if c:
                clean[idx] = c
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "factors", factors)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("TensorElement is immutable")

    @classmethod
    def _trusted(cls, ring, factors, terms):
        # terms already canonical
        self = object.__new__(cls)
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "factors", factors)
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "_hash", None)
        return self

    @classmethod
    def zero(cls, ring, factors=()):
        return cls._trusted(ring, tuple(factors), {})

    @classmethod
    def scalar(cls, ring, c):
        return cls(ring, (), {(): c})

    @classmethod
    def from_element(cls, x: ModuleElement):
        return cls._trusted(
            x.space.ring, (x.space,), {(i,): c for i, c in enumerate(x.coords) if c}
        )

    @classmethod
    def sum(cls, items, ring, factors):
        """Sum an iterable of tensors sharing ``factors``."""
        factors = tuple(factors)
        acc = {}
        for x in items:
            if x.factors != factors:
                raise SpaceMismatch("summands live in different tensor powers")
            for idx, c in x.terms.items():
                acc[idx] = acc[idx] + c if idx in acc else c
        return cls._trusted(ring, factors, {k: v for k, v in acc.items() if v})

    @property
    def arity(self) -> int:
        return len(self.factors)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, idx) -> Scalar:
        return self.terms.get(tuple(idx), self.ring.zero)

    def as_scalar(self) -> Scalar:
        if self.factors:
            raise ArityMismatch("tensor has factors; not a scalar")
        return self.coefficient(())

    def _check(self, other):
        if not isinstance(other, TensorElement):
            raise TypeError(f"expected a tensor, got {other!r}")
        if other.ring != self.ring:
            raise MixedRings(f"{self.ring} vs {other.ring}")
        if other.factors != self.factors:
            raise SpaceMismatch("tensors live in different tensor powers")

    def __add__(self, other):
        self._check(other)
        return TensorElement.sum((self, other), self.ring, self.factors)

    def __neg__(self):
        return TensorElement._trusted(
            self.ring, self.factors, {k: -v for k, v in self.terms.items()}
        )

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, lam):
        lam = self.ring(lam)
        terms = {}
        for k, v in self.terms.items():
            c = lam * v
            if c:
                terms[k] = c
        return TensorElement._trusted(self.ring, self.factors, terms)

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return (
            self.ring == other.ring
            and self.factors == other.factors
            and self.terms == other.terms
        )

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(
                self, "_hash", hash((self.factors, frozenset(self.terms.items())))
            )
        return self._hash

    def format(self) -> str:
        if not self.terms:
            return "0"
        if not self.factors:
            return str(self.terms[()])
        parts = []
        for idx in sorted(self.terms):
            names = " ⊗ ".join(sp.basis_name(i) for sp, i in zip(self.factors, idx))
            parts.append(f"{self.terms[idx]} * ({names})")
        return " + ".join(parts)

    __str__ = format

    def __repr__(self):
        return f"TensorElement({self.format()})"


def tensor_join(a: TensorElement, b: TensorElement) -> TensorElement:
    """Concatenate factor lists; coefficients multiply."""
    if a.ring != b.ring:
        raise MixedRings(f"{a.ring} vs {b.ring}")
    terms = {}
    for ia, ca in a.terms.items():
        for ib, cb in b.terms.items():
            c = ca * cb
            if c:
                terms[ia + ib] = c
    return TensorElement._trusted(a.ring, a.factors + b.factors, terms)


def tensor_of(vectors) -> TensorElement:
    """The pure tensor ``v1 (x) ... (x) vn`` of module elements."""
    vectors = list(vectors)
    if not vectors:
        raise ArityMismatch("need at least one vector")
    out = TensorElement.from_element(vectors[0])
    for v in vectors[1:]:
        out = tensor_join(out, TensorElement.from_element(v))
    return out


def apply_factorwise(x: TensorElement, maps) -> TensorElement:
    """Apply PrV / PrK / Id to each factor.  PrK factors become the unit space K."""
    maps = tuple(Proj(m) for m in maps)
    if len(maps) != x.arity:
        raise ArityMismatch(f"{len(maps)} maps for {x.arity} factors")
    factors = []
    for m, sp in zip(maps, x.factors):
        if m is Proj.I:
            factors.append(sp)
            continue
        if not isinstance(sp, AugmentedSpace):
            raise SpaceMismatch(f"projection {m} applied to non-augmented factor {sp}")
        factors.append(sp.base if m is Proj.V else unit_space(x.ring))
    terms = {}
    for idx, c in x.terms.items():
        out = []
        for m, sp, i in zip(maps, x.factors, idx):
            if m is Proj.I:
                out.append(i)
            elif m is Proj.V:
                if i == sp.rank - 1:
                    break
                out.append(i)
            else:
                if i != sp.rank - 1:
                    break
                out.append(0)
        else:
            terms[tuple(out)] = c
    return TensorElement._trusted(x.ring, tuple(factors), terms)


def drop_unit_factors(x: TensorElement) -> TensorElement:
    """Fold K factors into the coefficients; what remains lives in V^(x)a."""
    keep = [j for j, sp in enumerate(x.factors) if not isinstance(sp, UnitSpace)]
    factors = tuple(x.factors[j] for j in keep)
    terms = {}
    for idx, c in x.terms.items():
        key = tuple(idx[j] for j in keep)
        terms[key] = terms[key] + c if key in terms else c
    return TensorElement._trusted(x.ring, factors, {k: v for k, v in terms.items() if v})


def tensor_basis(factors):
    """All index tuples of a tensor power, in lexicographic order."""
    return product(*(range(sp.rank) for sp in factors))
