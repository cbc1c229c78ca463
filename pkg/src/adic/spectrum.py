# tropadic/adic/spectrum.py
"""Which primes of S[M] extend to series convergent at P.

The decisions here all reduce to the point Phi(P) of N_R(sigma) read off the
first normalized row: P' extends iff Phi(P') lies in the closure of
Phi(P) + sigma, i.e. iff Phi(P')(u) <= Phi(P)(u) on monoid generators.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction

from constants import SIGN_START_BITS, WITNESS_MAX_BETA, WITNESS_MAX_DENOMINATOR
from .errors import (BaseMismatch, GammaMismatch, MonoidMismatch, NoGenerators, NotInContInterior,
                     RankTooLarge, WitnessSearchExhausted)
from .geometry import Cone, in_closure_region
from .monomials import Term
from .primes import (require_cont, contains, ideal_kernel_face, maximal_above, normalize,
                     poly_value, same_prime)
from .scalars import BOTTOM, ZERO, lex_compare

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TropicalPoint:
    """Monoid map M -> T, u -> <values, u>, BOTTOM off tau^perp.

    `values` has one entry per lattice coordinate, BOTTOM on the coordinates
    the face kills.
    """
    face: Cone
    values: tuple

    def evaluate(self, u):
        total = ZERO
        for v, e in zip(self.values, u):
            if not e:
                continue
            if v is BOTTOM:
                return BOTTOM
            total = total + v * e
        return total

    def __str__(self):
        return "(" + ", ".join(str(v) for v in self.values) + ")"


def phi(prime):
    require_cont(prime)
    first = normalize(prime).matrix.rows[0]
    return TropicalPoint(ideal_kernel_face(prime).face, tuple(first[1:]))


def _check_pair(pprime, prime):
    require_cont(pprime, prime)
    if pprime.monoid != prime.monoid:
        raise MonoidMismatch(f"primes over {pprime.monoid} and {prime.monoid}")
    if pprime.gamma != prime.gamma:
        raise GammaMismatch(f"primes over {pprime.gamma} and {prime.gamma}")
    if not ideal_kernel_face(prime).trivial:
        raise NotInContInterior(f"{prime.matrix} has a nontrivial ideal kernel")


def _at_most(a, b):
    return a is BOTTOM or a <= b


@dataclass(frozen=True)
class StarResult:
    """`witness` is a monomial m with |m|_P < 1 < |m|_{P'}."""
    verdict: bool
    witness: Term = None
    generator: tuple = None

    def __bool__(self):
        return self.verdict


def _lower_bound(x):
    """A positive rational at most x, for x > 0."""
    if x.is_rational():
        return x.rational_part
    bits = SIGN_START_BITS
    while True:
        lo, _ = x.enclosure(bits)
        if lo > 0:
            return lo
        bits *= 2


def separating_monomial(value, value_prime, u):
    """m = t^alpha chi^(beta u) with alpha + beta value < 0 < alpha + beta value_prime.

    Needs value < value_prime. Integer alpha are tried before fractional ones.
    """
    gap = value_prime - value
    if gap.sign() <= 0:
        raise WitnessSearchExhausted(f"no monomial separates {value} from {value_prime}")
    needed = int(1 / _lower_bound(gap)) + 2
    for q in range(1, WITNESS_MAX_DENOMINATOR + 1):
        for beta in range(1, max(WITNESS_MAX_BETA, needed) + 1):
            minus_alpha = Fraction((value * (q * beta)).floor() + 1, q)
            if (value_prime * beta - minus_alpha).sign() > 0:
                logger.debug("separating monomial found at beta=%d, denominator %d", beta, q)
                return Term(-minus_alpha, tuple(beta * x for x in u))
    raise WitnessSearchExhausted(f"no separating monomial for values {value} < {value_prime}",
                                 max_beta=max(WITNESS_MAX_BETA, needed), max_denominator=WITNESS_MAX_DENOMINATOR)


def prop_star(pprime, prime):
    """Checks c |m|_P >= |m|_{P'} for all terms, on a generating set of M."""
    _check_pair(pprime, prime)
    try:
        generators = prime.monoid.generators
    except RankTooLarge as e:
        raise NoGenerators(f"no monoid generators for {prime.monoid}: {e}") from e
    point, point_prime = phi(prime), phi(pprime)
    for u in generators:
        value, value_prime = point.evaluate(u), point_prime.evaluate(u)
        if _at_most(value_prime, value):
            continue
        witness = separating_monomial(value, value_prime, u)
        return StarResult(False, witness, u)
    return StarResult(True)


def extends_to_cnvg(pprime, prime):
    return prop_star(pprime, prime).verdict


def crown_affine(pprime, prime):
    """On N^n: extends iff p'_i <= p_i coordinatewise."""
    _check_pair(pprime, prime)
    if not prime.monoid.is_affine:
        raise MonoidMismatch(f"the coordinatewise test needs an affine monoid, got {prime.monoid}")
    return all(_at_most(b, a) for a, b in zip(phi(prime).values, phi(pprime).values))


def crown_torus(pprime, prime):
    """On Z^n: extends iff P' is contained in the maximal prime above P."""
    _check_pair(pprime, prime)
    if not prime.monoid.is_lattice:
        raise MonoidMismatch(f"the containment test needs a lattice monoid, got {prime.monoid}")
    return contains(pprime, maximal_above(prime)).verdict


def crown_geometric(pprime, prime):
    """Phi(P') in the closure of Phi(P) + sigma, tested against dual generators."""
    _check_pair(pprime, prime)
    return in_closure_region(prime.monoid, phi(prime).values, phi(pprime).values)


def closure_member(f, g, pprime, prime):
    """Whether (f, g) lies in the closure of P' inside Cont(Cnvg_P)."""
    for series in (f, g):
        if not same_prime(series.base, prime):
            raise BaseMismatch(f"series over {series.base.matrix}, expected {prime.matrix}")
    return f.eval_at(pprime).value == g.eval_at(pprime).value


def specializes(p1, p2):
    """Is P2 a specialization of P1, i.e. P2 contained in P1."""
    return contains(p2, p1)


def basic_open_member(p0, f, g):
    """P0 in R(f | g): |f| <= |g| != 0."""
    require_cont(p0)
    value_g = poly_value(p0, g)
    if value_g.is_bottom:
        return False
    return lex_compare(poly_value(p0, f), value_g) <= 0
