# tropadic/adic/series.py
"""Series convergent at a prime, kept as a polynomial part plus a radius.

A TruncatedSeries stands for every series that agrees with its stored
polynomial above the precision radius eps. The base prime is normalized on
construction, so radii are read in the coordinates of the normal form and
Psi(t^g) = (g, 0, ..., 0).
"""

import logging
from dataclasses import dataclass
from enum import Enum

from constants import DEFAULT_HORIZON, THRESHOLD_SAMPLES
from .errors import (BaseMismatch, InsufficientPrecision, InvalidStream, MonoidMismatch,
                     NotCertified, NotInContInterior, NotInImage, WidthMismatch)
from .monomials import Polynomial, Term
from .primes import ideal_kernel_face, in_cont, normalize, poly_leading_terms, poly_value, psi_eval
from .scalars import BOTTOM, FieldScalar, LexTuple, lex_compare
from . import spectrum

logger = logging.getLogger(__name__)


def interior_base(prime):
    """Normal form of a prime in Cont with trivial ideal kernel."""
    if not in_cont(prime) or not ideal_kernel_face(prime).trivial:
        raise NotInContInterior(f"{prime.matrix} is not in Cont with trivial ideal kernel")
    return normalize(prime)


def gamma_threshold(prime, g):
    """Psi(t^g) under a normalized prime."""
    return psi_eval(prime, Term.constant(g, prime.monoid.rank))


@dataclass(frozen=True, eq=False)
class TruncatedSeries:
    """`precision` is None for an exact series."""
    base: object
    poly: Polynomial
    precision: LexTuple = None

    def __post_init__(self):
        base = interior_base(self.base)
        object.__setattr__(self, "base", base)
        if self.poly.monoid != base.monoid:
            raise MonoidMismatch(f"series over {self.poly.monoid} on a prime over {base.monoid}")
        eps = self.precision
        if eps is not None:
            if eps.is_bottom:
                eps = None
            elif eps.width != base.width:
                raise WidthMismatch(f"precision of width {eps.width} for a prime of width {base.width}")
        object.__setattr__(self, "precision", eps)
        if eps is not None:
            kept = [t for t in self.poly.terms() if lex_compare(psi_eval(base, t), eps) > 0]
            if len(kept) != len(self.poly):
                object.__setattr__(self, "poly", Polynomial.from_terms(base.monoid, kept))

    @classmethod
    def exact(cls, base, poly):
        return cls(base, poly, None)

    @classmethod
    def with_gamma_precision(cls, base, poly, g):
        """Series known up to terms of value at most Psi(t^g)."""
        normal = interior_base(base)
        return cls(normal, poly, gamma_threshold(normal, g))

    @property
    def is_exact(self):
        return self.precision is None

    @property
    def eps(self):
        return LexTuple.bottom(self.base.width) if self.precision is None else self.precision

    def eval_at(self, pprime):
        return eval_at(self, pprime)

    def __add__(self, other):
        return series_add(self, other)

    def __mul__(self, other):
        return series_mul(self, other)

    def __str__(self):
        precision = "exact" if self.is_exact else str(self.precision)
        return f"series {{ terms: {self.poly}; precision: {precision} }}"


def _check_base(f, g):
    if f.base != g.base:
        raise BaseMismatch(f"series over {f.base.matrix} and {g.base.matrix}")


def _combine_precision(eps):
    return None if eps.is_bottom else eps


def series_add(f, g):
    _check_base(f, g)
    return TruncatedSeries(f.base, f.poly + g.poly, _combine_precision(f.eps + g.eps))


def _joined_norm(f):
    return poly_value(f.base, f.poly) + f.eps


def series_mul(f, g):
    """Product; the radius is max(eps_f |g|, eps_g |f|) with |h| the norm joined with eps_h."""
    _check_base(f, g)
    eps = f.eps * _joined_norm(g) + g.eps * _joined_norm(f)
    return TruncatedSeries(f.base, f.poly * g.poly, _combine_precision(eps))


class DistanceOutcome(Enum):
    EXACT = "exact"
    BELOW_PRECISION = "below_precision"


@dataclass(frozen=True)
class Distance:
    outcome: DistanceOutcome
    value: LexTuple


def distance(f, g):
    """d_P(f, g): the largest value of a term where the stored coefficients differ."""
    _check_base(f, g)
    value = LexTuple.bottom(f.base.width)
    for u in sorted(set(f.poly.exponents()) | set(g.poly.exponents())):
        a, b = f.poly.coefficient(u), g.poly.coefficient(u)
        if a is not BOTTOM and b is not BOTTOM and a == b:
            continue
        top = a if b is BOTTOM or (a is not BOTTOM and a >= b) else b
        value = value + psi_eval(f.base, Term(top, u))
    bound = f.eps + g.eps
    if bound.is_bottom or lex_compare(value, bound) > 0:
        return Distance(DistanceOutcome.EXACT, value)
    return Distance(DistanceOutcome.BELOW_PRECISION, bound)


def series_equal_within(f, g, radius):
    """d_P(f, g) <= radius, when the stored data decides it."""
    d = distance(f, g)
    if lex_compare(d.value, radius) <= 0:
        return True
    if d.outcome is DistanceOutcome.EXACT:
        return False
    raise InsufficientPrecision(f"distance is only known to be at most {d.value}")


def norm_at(f):
    """|f| under the canonical extension of the base: the largest term value."""
    value = poly_value(f.base, f.poly)
    if not f.is_exact and lex_compare(value, f.eps) <= 0:
        raise InsufficientPrecision(f"stored terms do not rise above the radius {f.eps}")
    return value


def eval_at(f, pprime):
    """Value and leading terms of f at the closure of P' in Cont(Cnvg_P)."""
    if not spectrum.extends_to_cnvg(pprime, f.base):
        raise NotInImage(f"{pprime.matrix} does not extend to series convergent at {f.base.matrix}")
    leading = poly_leading_terms(pprime, f.poly)
    if not f.is_exact:
        # eps.first is a Gamma value, so the leading value is read under P' with pivot 1
        normal = normalize(pprime)
        lead = psi_eval(normal, leading.terms[0]).first if leading.terms else BOTTOM
        if lead is BOTTOM or lead <= f.eps.first:
            raise InsufficientPrecision(
                f"leading value {leading.value} is not separated from the radius {f.eps}")
    return leading


# --- Streams ---

@dataclass(frozen=True)
class DecayCertificate:
    """Claims Psi(m_{n+1}) <= Psi(m_n) * Psi(ratio) for every n >= start."""
    start: int
    ratio: Term


@dataclass(frozen=True)
class SeriesStream:
    """The affine family m_n = t^(coeff0 + n coeff_step) chi^(exp0 + n exp_step)."""
    coeff0: object
    coeff_step: FieldScalar
    exp0: tuple
    exp_step: tuple
    certificate: DecayCertificate = None

    def __post_init__(self):
        object.__setattr__(self, "exp0", tuple(int(x) for x in self.exp0))
        object.__setattr__(self, "exp_step", tuple(int(x) for x in self.exp_step))
        object.__setattr__(self, "coeff_step", FieldScalar.of(self.coeff_step))
        if self.coeff0 is not BOTTOM:
            object.__setattr__(self, "coeff0", FieldScalar.of(self.coeff0))
        if len(self.exp0) != len(self.exp_step):
            raise InvalidStream("exp0 and exp_step have different lengths")
        if self.coeff0 is not BOTTOM and not any(self.exp_step):
            raise InvalidStream("exp_step must be nonzero")

    @property
    def is_zero(self):
        return self.coeff0 is BOTTOM

    def term(self, n):
        if self.is_zero:
            return None
        return Term(self.coeff0 + self.coeff_step * n,
                    tuple(a + n * b for a, b in zip(self.exp0, self.exp_step)))

    def validate(self, monoid):
        if self.is_zero:
            return
        if len(self.exp0) != monoid.rank:
            raise InvalidStream(f"stream exponents have length {len(self.exp0)}, monoid rank is {monoid.rank}")
        if not monoid.contains(self.exp0) or not monoid.contains(self.exp_step):
            raise InvalidStream(f"stream exponents leave {monoid}")


class ConvergenceKind(Enum):
    CERTIFIED = "certified"
    VERIFIED_TO_HORIZON = "verified_to_horizon"
    DIVERGES = "diverges"


@dataclass(frozen=True)
class ConvergenceVerdict:
    kind: ConvergenceKind
    threshold: LexTuple = None
    exceeding: int = 0


def _certificate_holds(stream, base, horizon):
    cert = stream.certificate
    ratio = psi_eval(base, cert.ratio)
    if ratio.is_bottom or ratio.first.sign() >= 0:
        logger.warning("decay ratio %s does not shrink the leading coordinate", cert.ratio)
        return False
    previous = psi_eval(base, stream.term(cert.start))
    for n in range(cert.start, cert.start + horizon):
        current = psi_eval(base, stream.term(n + 1))
        if lex_compare(current, previous * ratio) > 0:
            logger.warning("decay certificate fails at index %d", n)
            return False
        previous = current
    return True


def converges(stream, prime, horizon=DEFAULT_HORIZON):
    """Checks that only finitely many terms of the stream lie above each Gamma-threshold."""
    base = interior_base(prime)
    stream.validate(base.monoid)
    if stream.is_zero:
        return ConvergenceVerdict(ConvergenceKind.CERTIFIED)
    if stream.certificate is not None:
        if _certificate_holds(stream, base, horizon):
            return ConvergenceVerdict(ConvergenceKind.CERTIFIED)
        logger.warning("falling back to threshold sampling")
    values = [psi_eval(base, stream.term(n)) for n in range(horizon + 1)]
    top = values[0].first.floor()
    for j in range(THRESHOLD_SAMPLES):
        g = top - 1 - j
        b = gamma_threshold(base, g)
        # Gamma-thresholds only see the leading coordinate
        exceeding = sum(v.first >= g for v in values)
        logger.debug("threshold %s: %d of %d indices at or above", b, exceeding, len(values))
        if exceeding == len(values):
            return ConvergenceVerdict(ConvergenceKind.DIVERGES, b, exceeding)
    return ConvergenceVerdict(ConvergenceKind.VERIFIED_TO_HORIZON)


def _enumerate_above(stream, base, threshold):
    """Terms with value >= threshold and the largest value among omitted ones."""
    start = stream.certificate.start
    kept, omitted = [], LexTuple.bottom(base.width)
    n = 0
    while True:
        term = stream.term(n)
        value = psi_eval(base, term)
        if lex_compare(value, threshold) >= 0:
            kept.append(term)
        else:
            omitted = omitted + value
            if n >= start:
                return kept, omitted
        n += 1


def partial_sum(stream, prime, threshold, horizon=DEFAULT_HORIZON):
    """Sum of all terms of a certified stream with value at least `threshold`."""
    base = interior_base(prime)
    verdict = converges(stream, base, horizon)
    if verdict.kind is not ConvergenceKind.CERTIFIED:
        raise NotCertified(f"stream convergence is {verdict.kind.value}, not certified")
    if stream.is_zero:
        return Polynomial.zero(base.monoid)
    kept, _ = _enumerate_above(stream, base, threshold)
    return Polynomial.from_terms(base.monoid, kept)


def series_from_stream(stream, prime, threshold, horizon=DEFAULT_HORIZON):
    """The certified partial sum, with the largest omitted value as radius."""
    base = interior_base(prime)
    if stream.is_zero:
        return TruncatedSeries.exact(base, Polynomial.zero(base.monoid))
    poly = partial_sum(stream, base, threshold, horizon)
    _, omitted = _enumerate_above(stream, base, threshold)
    return TruncatedSeries(base, poly, _combine_precision(omitted))
