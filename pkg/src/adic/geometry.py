# tropadic/adic/geometry.py
"""Rational polyhedral cones in N = Z^n and their duals.

The dual of sigma is taken with the sign convention
sigma^v = {u : <v, u> <= 0 for all v in sigma}, so the totally negative
orthant has the nonnegative orthant as dual.
"""

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

from constants import DUAL_CACHE_SIZE, MAX_FACE_RANK, MAX_HILBERT_RANK
from . import linalg
from .errors import DimensionMismatch, NotStronglyConvex, RankTooLarge
from .scalars import BOTTOM, ZERO

logger = logging.getLogger(__name__)


def _pairing(r, u):
    return sum(int(a) * int(b) for a, b in zip(r, u))


@dataclass(frozen=True)
class Cone:
    """Cone in N_R = R^dim spanned by primitive integer rays."""
    dim: int
    rays: tuple = ()

    def __post_init__(self):
        rays = []
        for r in self.rays:
            r = tuple(int(x) for x in r)
            if len(r) != self.dim:
                raise DimensionMismatch(f"ray {r} does not live in Z^{self.dim}")
            if not any(r):
                raise NotStronglyConvex("the zero vector is not a ray")
            if linalg.primitive(r) != r:
                raise ValueError(f"ray {r} is not primitive")
            if r in rays:
                raise ValueError(f"ray {r} listed twice")
            rays.append(r)
        object.__setattr__(self, "rays", tuple(rays))

    @classmethod
    def negative_orthant(cls, n):
        return cls(n, tuple(tuple(-int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def zero(cls, n):
        return cls(n, ())

    @property
    def dimension(self):
        """Dimension of the linear span of the cone."""
        return linalg.rank([tuple(Fraction(x) for x in r) for r in self.rays])

    def is_full_dimensional(self):
        return self.dimension == self.dim

    def is_strongly_convex(self):
        # sigma contains no line exactly when its dual is full-dimensional
        dual = dual_cone(self)
        return linalg.rank([tuple(Fraction(x) for x in g) for g in dual.all_generators]) == self.dim

    def contains_vector(self, v):
        """True iff the integer vector v lies in the cone (tested against the dual)."""
        dual = dual_cone(self)
        if any(_pairing(l, v) != 0 for l in dual.lineality):
            return False
        return all(_pairing(g, v) <= 0 for g in dual.generators)

    def __str__(self):
        return "cone{rays=[" + ",".join("[" + ",".join(str(x) for x in r) + "]" for r in self.rays) + "]}"


@dataclass(frozen=True)
class DualCone:
    """sigma^v as inequalities <r, u> <= 0 and as generators.

    `generators` are the extremal rays of the pointed part; `lineality` is a
    saturated lattice basis of sigma^perp, which sigma^v contains as a subspace.
    """
    dim: int
    inequalities: tuple
    generators: tuple
    lineality: tuple

    @property
    def all_generators(self):
        return self.generators + self.lineality + tuple(tuple(-x for x in l) for l in self.lineality)

    def contains(self, u):
        return all(_pairing(r, u) <= 0 for r in self.inequalities)


def _check_rank(n, cap):
    if n > cap:
        raise RankTooLarge(f"lattice rank {n} exceeds the supported rank {cap}")


def dual_cone(sigma):
    """Half-space and generator description of sigma^v.

    Extremal rays come from enumerating sets of tight inequalities whose
    solution line (inside the complement of the lineality space) is feasible.
    """
    _check_rank(sigma.dim, MAX_FACE_RANK)
    return _dual_cone(sigma)


@lru_cache(maxsize=DUAL_CACHE_SIZE)
def _dual_cone(sigma):
    n = sigma.dim
    ineqs = sigma.rays
    lineality = tuple(linalg.integer_kernel(ineqs, n))
    pointed_dim = n - len(lineality)
    lineality_rows = [tuple(Fraction(x) for x in l) for l in lineality]
    generators = []
    for tight in itertools.combinations(ineqs, max(pointed_dim - 1, 0)):
        rows = [tuple(Fraction(x) for x in r) for r in tight] + lineality_rows
        line = linalg.nullspace(rows, n)
        if len(line) != 1:
            continue
        g, _ = linalg.clear_denominators(line[0])
        g = linalg.primitive(g)
        for candidate in (g, tuple(-x for x in g)):
            if all(_pairing(r, candidate) <= 0 for r in ineqs) and candidate not in generators:
                generators.append(candidate)
    generators.sort()
    dual = DualCone(n, ineqs, tuple(generators), lineality)
    logger.debug("dual of %s: %d generators, lineality %d", sigma, len(generators), len(lineality))
    return dual


def faces(sigma):
    """All faces of sigma, from {0} up to sigma itself, ordered by dimension."""
    _check_rank(sigma.dim, MAX_FACE_RANK)
    dual = dual_cone(sigma)
    found = {}
    gens = dual.generators
    for size in range(len(gens) + 1):
        for subset in itertools.combinations(gens, size):
            u = tuple(sum(g[i] for g in subset) for i in range(sigma.dim))
            rays = tuple(r for r in sigma.rays if _pairing(r, u) == 0)
            if rays not in found:
                found[rays] = Cone(sigma.dim, rays)
    return sorted(found.values(), key=lambda tau: (tau.dimension, tau.rays))


def smallest_face_containing(sigma, vectors):
    """The smallest face of sigma containing every given vector of sigma."""
    for tau in faces(sigma):
        if all(tau.contains_vector(v) for v in vectors):
            return tau
    raise ValueError("vectors do not lie in the cone")


def perp_lattice(tau):
    """Saturated lattice basis of Lambda intersected with tau^perp."""
    if not tau.rays:
        return [tuple(int(i == j) for j in range(tau.dim)) for i in range(tau.dim)]
    return linalg.integer_kernel(tau.rays, tau.dim)


def relative_interior_point(sigma, tau):
    """Integer point in the relative interior of the face sigma^v cap tau^perp."""
    dual = dual_cone(sigma)
    point = [0] * sigma.dim
    for g in dual.all_generators:
        if all(_pairing(r, g) == 0 for r in tau.rays):
            for i in range(sigma.dim):
                point[i] += g[i]
    return tuple(point)


def hilbert_basis(monoid):
    """Finite generating set of the monoid sigma^v cap Lambda.

    Lattice points are enumerated in an l1-ball by increasing norm; a point is
    kept unless it is h + z for a kept h and a monoid element z, both of
    smaller norm. Every point of the ball is then a sum of kept points.
    """
    n = monoid.rank
    if monoid.is_lattice:
        return [tuple(s * int(i == j) for j in range(n)) for i in range(n) for s in (1, -1)]
    if monoid.is_affine:
        return [tuple(int(i == j) for j in range(n)) for i in range(n)]
    _check_rank(n, MAX_HILBERT_RANK)
    dual = dual_cone(monoid.cone)
    radius = hilbert_radius(dual)
    points = [u for u in l1_ball(n, radius) if any(u) and dual.contains(u)]
    points.sort(key=lambda u: (sum(abs(x) for x in u), u))
    kept = []
    for u in points:
        norm = sum(abs(x) for x in u)
        reducible = False
        for h in kept:
            if sum(abs(x) for x in h) >= norm:
                continue
            z = tuple(a - b for a, b in zip(u, h))
            if any(z) and sum(abs(x) for x in z) < norm and dual.contains(z):
                reducible = True
                break
        if not reducible:
            kept.append(u)
    logger.debug("hilbert basis of %s: %d elements from %d points", monoid, len(kept), len(points))
    return kept


def hilbert_radius(dual):
    return sum(sum(abs(x) for x in g) for g in dual.all_generators)


def l1_ball(n, radius):
    """Integer points with l1 norm at most radius."""
    if n == 0:
        yield ()
        return
    for first in range(-radius, radius + 1):
        for rest in l1_ball(n - 1, radius - abs(first)):
            yield (first,) + rest


@dataclass(frozen=True)
class Stratum:
    """The stratum V_tau containing a prime: its face and a basis of Lambda cap tau^perp."""
    face: Cone
    perp_basis: tuple

    @cached_property
    def perp_rank(self):
        return len(self.perp_basis)


def stratum_of(prime):
    """The face tau with prime in V_tau, read off the ideal kernel."""
    from . import primes
    kernel = primes.ideal_kernel_face(prime)
    return Stratum(kernel.face, tuple(perp_lattice(kernel.face)))


def stratum_restrict(prime):
    """The prime of S[Lambda cap tau^perp] corresponding to `prime` in V_tau."""
    from . import primes
    stratum = stratum_of(prime)
    return primes.restrict(prime, stratum.perp_basis)


def dual_rays(monoid):
    """Generators of sigma^v as a cone, lineality directions included with both signs."""
    n = monoid.rank
    units = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    if monoid.is_lattice:
        return units + [tuple(-x for x in e) for e in units]
    if monoid.is_affine:
        return units
    return list(dual_cone(monoid.cone).all_generators)


def in_closure_region(monoid, omega, values):
    """True iff the point `values` of N_R(sigma) lies in the closure of omega + sigma.

    `omega` is a finite vector; `values` may hold BOTTOM on the coordinates its
    face kills. Only dual generators vanishing on that face are tested.
    """
    for g in dual_rays(monoid):
        if any(v is BOTTOM and g[j] for j, v in enumerate(values)):
            continue
        gap = ZERO
        for j, (w_new, w) in enumerate(zip(values, omega)):
            if g[j] and w_new is not BOTTOM:
                gap = gap + (w_new - w) * g[j]
        if gap.sign() > 0:
            return False
    return True
