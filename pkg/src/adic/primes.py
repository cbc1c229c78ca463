# tropadic/adic/primes.py
"""Prime congruences given by defining matrices.

A k x (n+1) matrix C sends the term t^a chi^u to the lex tuple C (a; u), and
two terms are identified (ordered) when their tuples are equal (ordered).
Column 0 is the coefficient column. A BOTTOM column kills every term whose
exponent is positive in that coordinate.

Containment P' <= P is decided on the rational space V of log-term vectors
(Gamma-coordinates of a plus u in Q^n) by comparing the rows of both matrices
as field-valued linear forms on shrinking rational subspaces.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction

from constants import MONOID_SHIFT_LIMIT
from . import linalg
from .errors import (BottomColumnHit, DimensionMismatch, GammaMismatch, IdentityHasNoClass,
                     InvalidMatrix, MonoidMismatch, NotInCont, WidthMismatch, WitnessSearchExhausted)
from .geometry import Cone, perp_lattice, relative_interior_point, smallest_face_containing
from .monomials import Term, ToricMonoid
from .scalars import BOTTOM, ZERO, CoefficientGroup, FieldScalar, LexTuple, lex_compare

logger = logging.getLogger(__name__)


def _entry(x):
    return BOTTOM if x is BOTTOM else FieldScalar.of(x)


@dataclass(frozen=True)
class DefiningMatrix:
    rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(_entry(x) for x in row) for row in self.rows)
        if not rows or not rows[0]:
            raise InvalidMatrix("a defining matrix needs at least one row and one column")
        width = len(rows[0])
        if any(len(row) != width for row in rows):
            raise WidthMismatch("rows of a defining matrix must have equal length")
        for j in range(width):
            column = [row[j] for row in rows]
            bottoms = sum(x is BOTTOM for x in column)
            if bottoms and bottoms != len(column):
                raise InvalidMatrix(f"column {j} mixes -inf with finite entries")
        if rows[0][0] is BOTTOM:
            raise InvalidMatrix("the coefficient column cannot be -inf")
        for x in (row[0] for row in rows):
            if x.sign() < 0:
                raise InvalidMatrix("the coefficient column must be lexicographically >= 0")
            if x.sign() > 0:
                break
        object.__setattr__(self, "rows", rows)

    @property
    def nrows(self):
        return len(self.rows)

    @property
    def ncols(self):
        return len(self.rows[0])

    @property
    def bottom_columns(self):
        """Lattice coordinates (0-based) whose column is -inf."""
        return tuple(j - 1 for j in range(1, self.ncols) if self.rows[0][j] is BOTTOM)

    def row(self, i):
        return self.rows[i]

    def __str__(self):
        return "[" + ", ".join("[" + ", ".join(str(x) for x in row) + "]" for row in self.rows) + "]"


@dataclass(frozen=True)
class PrimeCongruence:
    monoid: ToricMonoid
    gamma: CoefficientGroup
    matrix: DefiningMatrix

    def __post_init__(self):
        if self.matrix.ncols != self.monoid.rank + 1:
            raise DimensionMismatch(
                f"matrix has {self.matrix.ncols} columns, monoid rank {self.monoid.rank} needs {self.monoid.rank + 1}")
        bottom = self.matrix.bottom_columns
        if bottom and self.monoid.is_lattice:
            raise InvalidMatrix("-inf columns need an affine or cone monoid")
        if bottom and not self.monoid.is_affine:
            generators = self.monoid.dual.all_generators
            for j in bottom:
                if any(g[j] < 0 for g in generators):
                    raise InvalidMatrix(f"coordinate {j + 1} takes negative values on {self.monoid}")

    @classmethod
    def of(cls, monoid, rows, gamma=None):
        return cls(monoid, gamma or CoefficientGroup.rationals(), DefiningMatrix(tuple(rows)))

    @property
    def width(self):
        return self.matrix.nrows

    def __str__(self):
        return f"prime {{ monoid: {self.monoid}; gamma: {self.gamma}; matrix: {self.matrix} }}"


# --- Evaluation ---

def psi_eval(prime, term):
    """The lex tuple C (a; u) of the term, BOTTOM when the term is in the ideal kernel."""
    k = prime.matrix.nrows
    u = term.exponent
    if len(u) != prime.monoid.rank:
        raise DimensionMismatch(f"term {term} does not match {prime.monoid}")
    for j in prime.matrix.bottom_columns:
        if u[j] > 0:
            return LexTuple.bottom(k)
        if u[j] < 0:
            raise MonoidMismatch(f"term {term} is not in {prime.monoid}")
    values = []
    for row in prime.matrix.rows:
        value = row[0] * term.coeff
        for j, e in enumerate(u):
            if e:
                value = value + row[j + 1] * e
        values.append(value)
    return LexTuple(k, tuple(values))


def compare_terms(prime, m1, m2):
    """-1, 0 or 1 as m1 is below, equivalent to, or above m2 under the prime."""
    return lex_compare(psi_eval(prime, m1), psi_eval(prime, m2))


def poly_value(prime, f):
    value = LexTuple.bottom(prime.width)
    for term in f.terms():
        value = value + psi_eval(prime, term)
    return value


@dataclass(frozen=True)
class LeadingTerms:
    value: LexTuple
    terms: tuple


def poly_leading_terms(prime, f):
    """The P-value of f and the terms attaining it."""
    value = poly_value(prime, f)
    if value.is_bottom:
        return LeadingTerms(value, tuple(t for t in f.terms()))
    return LeadingTerms(value, tuple(t for t in f.terms() if psi_eval(prime, t) == value))


# --- Normal form and Cont ---

def _pivot_scale(x, coefficient_column):
    if coefficient_column:
        return x.inverse()
    if x.is_rational():
        return FieldScalar.rational(1 / abs(x.rational_part))
    lead = next(c for c in x.coords if c)
    return FieldScalar.rational(1 / abs(lead))


def normalize(prime):
    """Positive row scalings and downward row additions, then zero rows dropped.

    Neither operation changes the prime. For a prime in Cont the first column
    becomes the first standard basis vector.
    """
    rows = [list(r) for r in prime.matrix.rows]
    finite = [j for j in range(prime.matrix.ncols) if rows[0][j] is not BOTTOM]
    for i in range(len(rows)):
        lead = next((j for j in finite if not rows[i][j].is_zero()), None)
        if lead is None:
            continue
        scale = _pivot_scale(rows[i][lead], lead == 0)
        rows[i] = [x if x is BOTTOM else x * scale for x in rows[i]]
        pivot = rows[i][lead]
        for r in range(i + 1, len(rows)):
            if rows[r][lead].is_zero():
                continue
            factor = rows[r][lead] / pivot
            rows[r] = [x if x is BOTTOM else x - factor * p for x, p in zip(rows[r], rows[i])]
    kept = [r for r in rows if any(not rows_j.is_zero() for rows_j in (r[j] for j in finite))]
    if not kept:
        kept = [rows[0]]
    return PrimeCongruence(prime.monoid, prime.gamma, DefiningMatrix(tuple(tuple(r) for r in kept)))


def in_cont(prime):
    return prime.matrix.rows[0][0].sign() > 0


def require_cont(*primes):
    for p in primes:
        if not in_cont(p):
            raise NotInCont(f"the (1,1) entry of {p.matrix} is not positive")


def maximal_above(prime):
    """The unique maximal prime of Cont containing P: the first row of its normal form."""
    require_cont(prime)
    normal = normalize(prime)
    return PrimeCongruence(prime.monoid, prime.gamma, DefiningMatrix((normal.matrix.rows[0],)))


# --- Ideal kernels and restriction ---

@dataclass(frozen=True)
class KernelFace:
    """The face tau of sigma with ideal kernel {a chi^u : u not in tau^perp}."""
    face: Cone
    bottom_columns: tuple

    @property
    def trivial(self):
        return not self.face.rays


def ideal_kernel_face(prime):
    monoid = prime.monoid
    bottom = prime.matrix.bottom_columns
    n = monoid.rank
    if not bottom:
        return KernelFace(Cone.zero(n), ())
    negatives = [tuple(-int(i == j) for i in range(n)) for j in bottom]
    if monoid.is_affine:
        return KernelFace(Cone(n, tuple(sorted(negatives))), bottom)
    return KernelFace(smallest_face_containing(monoid.cone, negatives), bottom)


def kernel_contains(prime, term):
    return psi_eval(prime, term).is_bottom


def face_interior_point(monoid, face):
    """Integer point of M in the relative interior of M cap tau^perp."""
    n = monoid.rank
    if monoid.is_lattice:
        return (0,) * n
    if monoid.is_affine:
        killed = {r.index(-1) for r in face.rays}
        return tuple(0 if i in killed else 1 for i in range(n))
    return relative_interior_point(monoid.cone, face)


def restrict(prime, basis):
    """Pullback of the prime to the monoid algebra of M cap span(basis)."""
    n = prime.monoid.rank
    basis = [tuple(int(x) for x in b) for b in basis]
    for b in basis:
        if len(b) != n:
            raise DimensionMismatch(f"basis vector {b} is not in Z^{n}")
        if any(b[j] for j in prime.matrix.bottom_columns):
            raise BottomColumnHit(f"basis vector {b} meets a -inf column")
    rows = []
    for row in prime.matrix.rows:
        new_row = [row[0]]
        for b in basis:
            value = ZERO
            for j, e in enumerate(b):
                if e:
                    value = value + row[j + 1] * e
            new_row.append(value)
        rows.append(tuple(new_row))
    return PrimeCongruence(prime.monoid.pullback(basis), prime.gamma, DefiningMatrix(tuple(rows)))


def kernel_free_part(prime):
    """The restriction to Lambda cap tau^perp together with the basis used."""
    kernel = ideal_kernel_face(prime)
    basis = perp_lattice(kernel.face) if not kernel.trivial else [
        tuple(int(i == j) for j in range(prime.monoid.rank)) for i in range(prime.monoid.rank)]
    if kernel.trivial:
        return prime, basis
    return restrict(prime, basis), basis


# --- Log-term space ---

def log_forms(prime):
    """Rows of a kernel-free prime as field-valued linear forms on V = Gamma (+) Q^n."""
    gammas = prime.gamma.basis
    forms = []
    for row in prime.matrix.rows:
        forms.append(tuple(row[0] * g for g in gammas) + tuple(row[1:]))
    return forms


def log_term_vector(prime, term):
    return tuple(prime.gamma.coordinates(term.coeff)) + tuple(Fraction(x) for x in term.exponent)


def form_value(form, v):
    value = ZERO
    for c, x in zip(form, v):
        if x:
            value = value + c * Fraction(x)
    return value


def form_components(form):
    """The four rational forms whose common kernel is the rational kernel of `form`."""
    return [tuple(c.coords[t] for c in form) for t in range(4)]


def _vanishes(form, space):
    return all(form_value(form, w).is_zero() for w in space)


def _drop_vanishing(forms, space):
    while forms and _vanishes(forms[0], space):
        forms = forms[1:]
    return forms


def _negate(v):
    return tuple(-x for x in v)


def _combine(space, coefficients):
    dim = len(space[0])
    return tuple(sum((c * w[i] for c, w in zip(coefficients, space)), Fraction(0)) for i in range(dim))


def _separate(space, a_vals, b_vals):
    """Rational v in span(space) with a(v) > 0 > b(v) for non-proportional forms a, b."""
    j0 = next(j for j, x in enumerate(a_vals) if not x.is_zero())
    ratio = b_vals[j0] / a_vals[j0]
    proportional = all((b - ratio * a).is_zero() for a, b in zip(a_vals, b_vals))
    if proportional:
        # ratio < 0 here, so any w with a(w) > 0 works
        w = space[j0]
        return w if a_vals[j0].sign() > 0 else _negate(w)
    pair = None
    for i in range(len(space)):
        for j in range(i + 1, len(space)):
            det = a_vals[i] * b_vals[j] - a_vals[j] * b_vals[i]
            if not det.is_zero():
                pair = (i, j, det)
                break
        if pair:
            break
    i, j, det = pair
    # Solve x a_i + y a_j = 1 and x b_i + y b_j = -1 over the field, then approximate.
    x = (b_vals[j] + a_vals[j]) / det
    y = (-a_vals[i] - b_vals[i]) / det
    bits = 4
    while True:
        coefficients = [Fraction(0)] * len(space)
        coefficients[i] = x.approx(bits)
        coefficients[j] = y.approx(bits)
        a_v = sum((c * a for c, a in zip(coefficients, a_vals) if c), ZERO)
        b_v = sum((c * b for c, b in zip(coefficients, b_vals) if c), ZERO)
        if a_v.sign() > 0 and b_v.sign() < 0:
            return _combine(space, coefficients)
        bits *= 2


def order_counterexample(primed_forms, plain_forms, dim):
    """Rational v with primed(v) >=lex 0 and plain(v) <lex 0, or None if none exists."""
    space = linalg.unit_vectors(dim)
    primed, plain = list(primed_forms), list(plain_forms)
    depth = 0
    while True:
        primed = _drop_vanishing(primed, space)
        plain = _drop_vanishing(plain, space)
        if not plain:
            return None
        b = plain[0]
        b_vals = [form_value(b, w) for w in space]
        if not primed:
            w = next(w for w, x in zip(space, b_vals) if not x.is_zero())
            return w if form_value(b, w).sign() < 0 else _negate(w)
        a = primed[0]
        a_vals = [form_value(a, w) for w in space]
        j0 = next(j for j, x in enumerate(a_vals) if not x.is_zero())
        ratio = b_vals[j0] / a_vals[j0]
        if ratio.sign() > 0 and all((y - ratio * x).is_zero() for x, y in zip(a_vals, b_vals)):
            space = linalg.intersect_kernel(space, form_components(a))
            primed, plain = primed[1:], plain[1:]
            depth += 1
            logger.debug("containment step %d: proportional rows, subspace dim %d", depth, len(space))
            continue
        logger.debug("containment step %d: rows not positively proportional", depth)
        return _separate(space, a_vals, b_vals)


# --- Containment ---

@dataclass(frozen=True)
class ContainmentResult:
    """`witness` is a term pair (m1, m2) with m1 <=_{P'} m2 but m1 >_P m2."""
    verdict: bool
    witness: tuple = None
    reason: str = None

    def __bool__(self):
        return self.verdict


def _below_in_first_coordinate(prime, value):
    """A rational b with Psi(t^b) <lex value, for a finite value."""
    lead = prime.matrix.rows[0][0]
    return Fraction((value.first / lead).floor() - 1)


def _kernel_witness(pprime, prime, kernel_p, kernel):
    n = prime.monoid.rank
    inner_p = Term.monomial(face_interior_point(prime.monoid, kernel_p.face))
    if kernel_contains(prime, inner_p):
        b = _below_in_first_coordinate(pprime, psi_eval(pprime, inner_p))
        witness = (Term.constant(b, n), inner_p)
    else:
        inner = Term.monomial(face_interior_point(prime.monoid, kernel.face))
        b = _below_in_first_coordinate(prime, psi_eval(prime, inner))
        witness = (inner, Term.constant(b, n))
    return ContainmentResult(False, witness, "kernel")


def _lift_counterexample(prime, basis, face, v):
    r = prime.gamma.rank
    lattice_part, scale = linalg.clear_denominators(v[r:])
    coeff = ZERO
    for q, g in zip(v[:r], prime.gamma.basis):
        coeff = coeff + g * (q * scale)
    n = prime.monoid.rank
    u = tuple(sum(w * b[i] for w, b in zip(lattice_part, basis)) for i in range(n))
    shift = face_interior_point(prime.monoid, face)
    for k in range(MONOID_SHIFT_LIMIT):
        low = tuple(k * e for e in shift)
        high = tuple(a + b for a, b in zip(u, low))
        if prime.monoid.contains(high) and prime.monoid.contains(low):
            return (Term(ZERO, low), Term(coeff, high))
    raise WitnessSearchExhausted(f"could not shift exponent {u} into {prime.monoid}",
                                 shifts=MONOID_SHIFT_LIMIT)


def contains(pprime, prime):
    """Decides P' <= P; on failure returns a separating term pair."""
    require_cont(pprime, prime)
    if pprime.monoid != prime.monoid:
        raise MonoidMismatch(f"primes over {pprime.monoid} and {prime.monoid}")
    if pprime.gamma != prime.gamma:
        raise GammaMismatch(f"primes over {pprime.gamma} and {prime.gamma}")
    kernel_p, kernel = ideal_kernel_face(pprime), ideal_kernel_face(prime)
    if kernel_p.face != kernel.face:
        return _kernel_witness(pprime, prime, kernel_p, kernel)
    restricted_p, basis = kernel_free_part(pprime)
    restricted, _ = kernel_free_part(prime)
    dim = prime.gamma.rank + len(basis)
    v = order_counterexample(log_forms(restricted_p), log_forms(restricted), dim)
    if v is None:
        return ContainmentResult(True)
    return ContainmentResult(False, _lift_counterexample(prime, basis, kernel.face, v), "order")


def same_prime(p, q):
    return bool(contains(p, q)) and bool(contains(q, p))


# --- Archimedean classes and the matrix Hahn embedding ---

def arch_classes(prime):
    """1-based leading indices realized by nonzero values of terms."""
    require_cont(prime)
    restricted, basis = kernel_free_part(prime)
    space = linalg.unit_vectors(prime.gamma.rank + len(basis))
    classes = []
    for i, form in enumerate(log_forms(restricted)):
        if not space:
            break
        if _vanishes(form, space):
            continue
        classes.append(i + 1)
        space = linalg.intersect_kernel(space, form_components(form))
    return classes


def class_of(x):
    """1-based index of the first nonzero entry of a lex tuple."""
    if x.is_bottom:
        raise IdentityHasNoClass("the bottom element has no archimedean class")
    for i, e in enumerate(x.entries):
        if not e.is_zero():
            return i + 1
    raise IdentityHasNoClass("the identity has no archimedean class")


def pi_truncate(x):
    """Projection onto the leading factor."""
    return x.first


def j_include(a, k):
    """Inclusion of T as the leading factor of R^k_lex."""
    if a is BOTTOM:
        return LexTuple.bottom(k)
    return LexTuple(k, (FieldScalar.of(a),) + (ZERO,) * (k - 1))
