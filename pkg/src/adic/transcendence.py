# tropadic/adic/transcendence.py
"""Algebraic independence over S for finitely generated value groups.

Generators are lex tuples written additively; a monomial relation
a_1^u_1 ... a_m^u_m = b with b in S^x is a rational dependence modulo the
Gamma-span of the first coordinate direction.
"""

import logging
from dataclasses import dataclass

from . import linalg
from .errors import NotInContInterior, WidthMismatch
from .monomials import Term
from .primes import ideal_kernel_face, in_cont, normalize, psi_eval
from .scalars import ZERO, CoefficientGroup, FieldScalar, coordinate_vector

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ExtensionSpec:
    base: CoefficientGroup
    generators: tuple

    def __post_init__(self):
        generators = tuple(self.generators)
        for g in generators:
            if g.is_bottom:
                raise ValueError("generators of a semifield extension must be nonzero")
        if len({g.width for g in generators}) > 1:
            raise WidthMismatch("generators have different widths")
        object.__setattr__(self, "generators", generators)

    @property
    def width(self):
        return self.generators[0].width if self.generators else 1

    def vector(self, i):
        return coordinate_vector(self.generators[i].entries)

    def base_vectors(self):
        """The Gamma-span, embedded as (gamma, 0, ..., 0)."""
        pad = (ZERO,) * (self.width - 1)
        return [coordinate_vector((g,) + pad) for g in self.base.basis]


@dataclass(frozen=True)
class Relation:
    """sum exponents[i] * generators[i] = (b, 0, ..., 0)."""
    exponents: dict
    b: FieldScalar


@dataclass(frozen=True)
class IndependenceResult:
    verdict: bool
    relation: Relation = None

    def __bool__(self):
        return self.verdict


def is_alg_independent(ext, subset):
    subset = list(subset)
    if not subset:
        return IndependenceResult(True)
    vectors = [ext.vector(i) for i in subset] + ext.base_vectors()
    equations = [tuple(v[c] for v in vectors) for c in range(len(vectors[0]))]
    solutions = linalg.nullspace(equations, len(vectors))
    if not solutions:
        return IndependenceResult(True)
    ints, _ = linalg.clear_denominators(solutions[0])
    ints = linalg.primitive(ints)
    m = len(subset)
    exponents = {i: u for i, u in zip(subset, ints[:m]) if u}
    b = ZERO
    for q, g in zip(ints[m:], ext.base.basis):
        b = b - g * q
    logger.debug("monomial relation %s = %s", exponents, b)
    return IndependenceResult(False, Relation(exponents, b))


def _rank_over_base(ext, indices):
    base = ext.base_vectors()
    return linalg.rank([ext.vector(i) for i in indices] + base) - linalg.rank(base)


def trdeg(ext):
    """rk(L^x / S^x)."""
    return _rank_over_base(ext, range(len(ext.generators)))


def transcendence_basis(ext):
    """Greedy: keep a generator iff it stays independent of the kept ones."""
    kept = []
    for i in range(len(ext.generators)):
        if is_alg_independent(ext, kept + [i]).verdict:
            kept.append(i)
    return kept


def is_algebraic_over(ext, subset, index):
    """Is generator `index` algebraic over S(generators in subset)."""
    subset = list(subset)
    return _rank_over_base(ext, subset + [index]) == _rank_over_base(ext, subset)


def extension_from_prime(prime):
    """The value group of kappa(P): S^x together with Psi(chi^e_j) for each coordinate."""
    if not in_cont(prime) or not ideal_kernel_face(prime).trivial:
        raise NotInContInterior(f"{prime.matrix} is not in Cont with trivial ideal kernel")
    normal = normalize(prime)
    n = normal.monoid.rank
    generators = [psi_eval(normal, Term.monomial(tuple(int(i == j) for j in range(n)))) for i in range(n)]
    return ExtensionSpec(normal.gamma, tuple(generators))
