# tropadic/adic/monomials.py
"""Toric monoids, terms and polynomials of the monoid semiring S[M].

Coefficients are written multiplicatively as t^a; a Term stores the exponent
a in Gamma together with the lattice exponent u, so `t^a * chi^u` is
Term(a, u). Polynomials keep one coefficient per exponent: since S is totally
ordered, a sum of two terms with equal exponent is the larger term.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from functools import cached_property

from constants import MAX_FACE_RANK
from . import linalg
from .errors import DimensionMismatch, MonoidMismatch, NotStronglyConvex, RankTooLarge
from .geometry import Cone, dual_cone, hilbert_basis
from .scalars import BOTTOM, ZERO, FieldScalar, ext_max

logger = logging.getLogger(__name__)


class MonoidKind(Enum):
    LATTICE = "ZZ"
    AFFINE = "NN"
    CONE = "cone"


@dataclass(frozen=True)
class ToricMonoid:
    """M = sigma^v cap Z^n for a strongly convex rational cone sigma."""
    rank: int
    kind: MonoidKind
    cone: Cone

    def __post_init__(self):
        if self.cone.dim != self.rank:
            raise DimensionMismatch(f"cone lives in Z^{self.cone.dim}, monoid in Z^{self.rank}")
        if self.kind is MonoidKind.CONE:
            if self.rank > MAX_FACE_RANK:
                raise RankTooLarge(f"cone monoids are supported up to rank {MAX_FACE_RANK}")
            if not self.cone.is_strongly_convex():
                raise NotStronglyConvex(f"{self.cone} contains a line")

    @classmethod
    def lattice(cls, n):
        return cls(n, MonoidKind.LATTICE, Cone.zero(n))

    @classmethod
    def affine(cls, n):
        return cls(n, MonoidKind.AFFINE, Cone.negative_orthant(n))

    @classmethod
    def from_rays(cls, n, rays):
        """Monoid of the cone spanned by `rays`; recognizes Z^n and N^n."""
        rays = sorted({linalg.primitive(tuple(int(x) for x in r)) for r in rays if any(r)})
        if not rays:
            return cls.lattice(n)
        if sorted(rays) == sorted(Cone.negative_orthant(n).rays):
            return cls.affine(n)
        return cls(n, MonoidKind.CONE, Cone(n, tuple(rays)))

    @property
    def is_lattice(self):
        return self.kind is MonoidKind.LATTICE

    @property
    def is_affine(self):
        return self.kind is MonoidKind.AFFINE

    @property
    def dual(self):
        return dual_cone(self.cone)

    def contains(self, u):
        return monoid_contains(self, u)

    @cached_property
    def generators(self):
        return hilbert_basis(self)

    def pullback(self, basis):
        """M cap span(basis), written in the coordinates of `basis`."""
        rays = []
        for r in self.cone.rays:
            rays.append(tuple(sum(a * b for a, b in zip(r, v)) for v in basis))
        return ToricMonoid.from_rays(len(basis), rays)

    def __str__(self):
        if self.is_lattice:
            return f"ZZ^{self.rank}"
        if self.is_affine:
            return f"NN^{self.rank}"
        return str(self.cone)


def monoid_contains(monoid, u):
    if len(u) != monoid.rank:
        raise DimensionMismatch(f"exponent {tuple(u)} has length {len(u)}, monoid rank is {monoid.rank}")
    if monoid.is_lattice:
        return True
    if monoid.is_affine:
        return all(x >= 0 for x in u)
    return monoid.dual.contains(u)


@dataclass(frozen=True)
class Term:
    """The term t^coeff * chi^exponent."""
    coeff: FieldScalar
    exponent: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeff", FieldScalar.of(self.coeff))
        object.__setattr__(self, "exponent", tuple(int(x) for x in self.exponent))

    @classmethod
    def constant(cls, a, n):
        return cls(a, (0,) * n)

    @classmethod
    def monomial(cls, u):
        return cls(ZERO, u)

    def __mul__(self, other):
        if len(self.exponent) != len(other.exponent):
            raise DimensionMismatch("terms over lattices of different rank")
        return Term(self.coeff + other.coeff, tuple(a + b for a, b in zip(self.exponent, other.exponent)))

    def power(self, n):
        return Term(self.coeff * n, tuple(n * x for x in self.exponent))

    def __str__(self):
        coeff = str(self.coeff)
        if "+" in coeff or "-" in coeff[1:]:
            coeff = f"({coeff})"
        parts = [f"t^{coeff}"]
        for i, e in enumerate(self.exponent):
            if e:
                parts.append(f"x{i + 1}^{e}")
        return "*".join(parts)


@dataclass(frozen=True, eq=False)
class Polynomial:
    """Finite max-sum of terms; `coeffs` is a sorted tuple of (exponent, coefficient)."""
    monoid: ToricMonoid
    coeffs: tuple = ()

    @classmethod
    def zero(cls, monoid):
        return cls(monoid, ())

    @classmethod
    def one(cls, monoid):
        return cls(monoid, (((0,) * monoid.rank, ZERO),))

    @classmethod
    def from_terms(cls, monoid, terms):
        table = {}
        for term in terms:
            if not monoid_contains(monoid, term.exponent):
                raise MonoidMismatch(f"exponent {term.exponent} is not in {monoid}")
            table[term.exponent] = ext_max(table.get(term.exponent, BOTTOM), term.coeff)
        return cls(monoid, tuple(sorted(table.items())))

    def terms(self):
        return [Term(a, u) for u, a in self.coeffs]

    def coefficient(self, u):
        for v, a in self.coeffs:
            if v == tuple(u):
                return a
        return BOTTOM

    def exponents(self):
        return [u for u, _ in self.coeffs]

    @property
    def is_zero(self):
        return not self.coeffs

    def __len__(self):
        return len(self.coeffs)

    def __add__(self, other):
        return poly_add(self, other)

    def __mul__(self, other):
        return poly_mul(self, other)

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.monoid == other.monoid and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __str__(self):
        if self.is_zero:
            return "0"
        return " + ".join(str(t) for t in self.terms())


def _check_same_monoid(f, g):
    if f.monoid != g.monoid:
        raise MonoidMismatch(f"polynomials over {f.monoid} and {g.monoid}")


def poly_add(f, g):
    _check_same_monoid(f, g)
    table = dict(f.coeffs)
    for u, a in g.coeffs:
        table[u] = ext_max(table.get(u, BOTTOM), a)
    return Polynomial(f.monoid, tuple(sorted(table.items())))


def poly_mul(f, g):
    """Max-plus convolution: the coefficient of chi^u is max over v + w = u of f_v + g_w."""
    _check_same_monoid(f, g)
    table = {}
    for v, a in f.coeffs:
        for w, b in g.coeffs:
            u = tuple(x + y for x, y in zip(v, w))
            table[u] = ext_max(table.get(u, BOTTOM), a + b)
    return Polynomial(f.monoid, tuple(sorted(table.items())))
