# tropadic/adic/scalars.py
"""Exact scalars: the real field Q(r2, r3), the bottom element, and lex tuples.

A FieldScalar is stored by its coordinates over the basis {1, r2, r3, r6}.
Signs are decided by dyadic interval enclosures of the square roots, refined
until the enclosure excludes zero; zero itself is read off the coordinates.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering

from constants import SIGN_START_BITS
from . import linalg
from .errors import DivisionByZero, GammaMismatch, WidthMismatch

logger = logging.getLogger(__name__)

RADICANDS = (1, 2, 3, 6)


def _coerce(value):
    if isinstance(value, FieldScalar):
        return value
    if isinstance(value, (int, Fraction)):
        return FieldScalar.rational(value)
    return NotImplemented


@total_ordering
@dataclass(frozen=True, eq=False)
class FieldScalar:
    """Element a + b*r2 + c*r3 + d*r6 of Q(r2, r3)."""
    coords: tuple

    def __post_init__(self):
        if len(self.coords) != 4:
            raise ValueError(f"FieldScalar needs 4 coordinates, got {len(self.coords)}")
        object.__setattr__(self, "coords", tuple(Fraction(c) for c in self.coords))

    @classmethod
    def rational(cls, q):
        return cls((Fraction(q), 0, 0, 0))

    @classmethod
    def of(cls, value):
        result = _coerce(value)
        if result is NotImplemented:
            raise TypeError(f"Cannot build a FieldScalar from {type(value).__name__}")
        return result

    # --- predicates ---

    def is_zero(self):
        return not any(self.coords)

    def is_rational(self):
        return not any(self.coords[1:])

    @property
    def rational_part(self):
        return self.coords[0]

    # --- arithmetic ---

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldScalar(tuple(a + b for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self):
        return FieldScalar(tuple(-a for a in self.coords))

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b, c, d = self.coords
        e, f, g, h = other.coords
        return FieldScalar((
            a * e + 2 * b * f + 3 * c * g + 6 * d * h,
            a * f + b * e + 3 * (c * h + d * g),
            a * g + c * e + 2 * (b * h + d * f),
            a * h + d * e + b * g + c * f,
        ))

    __rmul__ = __mul__

    def conjugate(self, flip_r2=False, flip_r3=False):
        a, b, c, d = self.coords
        if flip_r2:
            b, d = -b, -d
        if flip_r3:
            c, d = -c, -d
        return FieldScalar((a, b, c, d))

    def inverse(self):
        if self.is_zero():
            raise DivisionByZero("division by zero in Q(r2, r3)")
        # x * conj3(x) lies in Q(r2); its own conjugate then gives a rational norm.
        conj = self.conjugate(flip_r3=True)
        y = self * conj
        p, q = y.coords[0], y.coords[1]
        norm = p * p - 2 * q * q
        return conj * FieldScalar((p / norm, -q / norm, 0, 0))

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    # --- order ---

    def enclosure(self, bits):
        """Rationals lo <= self <= hi, with width O(2^-bits)."""
        scale = 1 << bits
        lo = hi = Fraction(0)
        for coef, n in zip(self.coords, RADICANDS):
            if not coef:
                continue
            if n == 1:
                lo += coef
                hi += coef
                continue
            r = math.isqrt(n << (2 * bits))
            root_lo, root_hi = Fraction(r, scale), Fraction(r + 1, scale)
            if coef > 0:
                lo += coef * root_lo
                hi += coef * root_hi
            else:
                lo += coef * root_hi
                hi += coef * root_lo
        return lo, hi

    def sign(self):
        if self.is_zero():
            return 0
        if self.is_rational():
            return 1 if self.coords[0] > 0 else -1
        bits = SIGN_START_BITS
        while True:
            lo, hi = self.enclosure(bits)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            bits *= 2

    def floor(self):
        if self.is_rational():
            return math.floor(self.coords[0])
        bits = SIGN_START_BITS
        while True:
            lo, hi = self.enclosure(bits)
            if math.floor(lo) == math.floor(hi):
                return math.floor(lo)
            bits *= 2

    def approx(self, bits=SIGN_START_BITS):
        """Rational midpoint of the enclosure at the given precision."""
        if self.is_rational():
            return self.coords[0]
        lo, hi = self.enclosure(bits)
        return (lo + hi) / 2

    def __float__(self):
        return float(self.approx(64))

    def __eq__(self, other):
        if other is BOTTOM:
            return False
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.coords == other.coords

    def __hash__(self):
        if self.is_rational():
            return hash(self.coords[0])
        return hash(self.coords)

    def __lt__(self, other):
        if other is BOTTOM:
            return False
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self - other).sign() < 0

    def __repr__(self):
        return f"FieldScalar({self})"

    def __str__(self):
        atoms = []
        for coef, n in zip(self.coords, RADICANDS):
            if not coef:
                continue
            suffix = "" if n == 1 else f"r{n}"
            text = f"{abs(coef)}{suffix}"
            if not atoms:
                atoms.append(f"-{text}" if coef < 0 else text)
            else:
                atoms.append(f"{'-' if coef < 0 else '+'}{text}")
        return "".join(atoms) or "0"


class _Bottom:
    """The tropical zero -inf; least element, absorbing for tropical products."""
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __lt__(self, other):
        return other is not self

    def __le__(self, other):
        return True

    def __gt__(self, other):
        return False

    def __ge__(self, other):
        return other is self

    def __hash__(self):
        return hash("-inf")

    def __repr__(self):
        return "BOTTOM"

    def __str__(self):
        return "-inf"

    def __reduce__(self):
        return (_Bottom, ())


BOTTOM = _Bottom()

ZERO = FieldScalar.rational(0)
ONE = FieldScalar.rational(1)
SQRT2 = FieldScalar((0, 1, 0, 0))
SQRT3 = FieldScalar((0, 0, 1, 0))
SQRT6 = FieldScalar((0, 0, 0, 1))


def is_bottom(x):
    return x is BOTTOM


def ext_max(a, b):
    """Tropical sum of two ExtScalars."""
    if a is BOTTOM:
        return b
    if b is BOTTOM:
        return a
    return a if a >= b else b


def ext_add(a, b):
    """Tropical product of two ExtScalars (real addition, BOTTOM absorbing)."""
    if a is BOTTOM or b is BOTTOM:
        return BOTTOM
    return a + b


def ext_compare(a, b):
    if a is BOTTOM or b is BOTTOM:
        return (a is not BOTTOM) - (b is not BOTTOM)
    return (a - b).sign()


def scalar_arith(op, x, y):
    """Exact field arithmetic; `op` is one of add, sub, mul, div."""
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"Unknown scalar operation: {op}")


def scalar_sign(x):
    return x.sign()


def coordinate_vector(entries):
    """Rational coordinates of a vector of field scalars, four per entry."""
    return tuple(c for e in entries for c in FieldScalar.of(e).coords)


@total_ordering
@dataclass(frozen=True, eq=False)
class LexTuple:
    """Element of R^k with the lexicographic order; `entries` is None for BOTTOM.

    Semifield sum is lex-max, semifield product is entrywise addition.
    """
    width: int
    entries: tuple = None

    def __post_init__(self):
        if self.entries is not None:
            entries = tuple(FieldScalar.of(e) for e in self.entries)
            if len(entries) != self.width:
                raise WidthMismatch(f"LexTuple of width {self.width} got {len(entries)} entries")
            object.__setattr__(self, "entries", entries)

    @classmethod
    def of(cls, entries):
        entries = tuple(entries)
        return cls(len(entries), entries)

    @classmethod
    def bottom(cls, width):
        return cls(width, None)

    @classmethod
    def identity(cls, width):
        return cls(width, (ZERO,) * width)

    @property
    def is_bottom(self):
        return self.entries is None

    @property
    def first(self):
        return BOTTOM if self.entries is None else self.entries[0]

    def _check_width(self, other):
        if self.width != other.width:
            raise WidthMismatch(f"widths {self.width} and {other.width} differ")

    def __add__(self, other):
        if self.is_bottom:
            return other
        if other.is_bottom:
            return self
        self._check_width(other)
        return self if lex_compare(self, other) >= 0 else other

    def __mul__(self, other):
        self._check_width(other)
        if self.is_bottom or other.is_bottom:
            return LexTuple.bottom(self.width)
        return LexTuple(self.width, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def power(self, n):
        """The n-th semifield power, i.e. n times the vector."""
        if self.is_bottom:
            return self
        return LexTuple(self.width, tuple(e * n for e in self.entries))

    def __eq__(self, other):
        if not isinstance(other, LexTuple):
            return NotImplemented
        if self.is_bottom or other.is_bottom:
            return self.is_bottom and other.is_bottom
        return self.width == other.width and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __lt__(self, other):
        return lex_compare(self, other) < 0

    def __str__(self):
        if self.is_bottom:
            return "-inf"
        return "(" + ", ".join(str(e) for e in self.entries) + ")"


def lex_compare(a, b):
    """Returns -1, 0 or 1; BOTTOM is least and comparable with any width."""
    if a.is_bottom or b.is_bottom:
        return (not a.is_bottom) - (not b.is_bottom)
    if a.width != b.width:
        raise WidthMismatch(f"cannot compare widths {a.width} and {b.width}")
    for x, y in zip(a.entries, b.entries):
        s = (x - y).sign()
        if s:
            return s
    return 0


@dataclass(frozen=True, eq=False)
class CoefficientGroup:
    """Gamma = log S^x as a Q-subspace of Q(r2, r3); `full` stands for S = T."""
    basis: tuple = ()
    full: bool = False

    def __post_init__(self):
        if self.full:
            object.__setattr__(self, "basis", (ONE, SQRT2, SQRT3, SQRT6))
            return
        basis = tuple(FieldScalar.of(b) for b in self.basis)
        vectors = [b.coords for b in basis]
        if linalg.rank(vectors) != len(vectors):
            raise GammaMismatch("coefficient group basis is not Q-linearly independent")
        if not linalg.in_span(vectors, ONE.coords):
            raise GammaMismatch("coefficient group must contain 1")
        object.__setattr__(self, "basis", basis)

    @classmethod
    def rationals(cls):
        return cls(basis=(ONE,))

    @classmethod
    def whole_field(cls):
        return cls(full=True)

    @classmethod
    def span(cls, generators):
        """Gamma spanned by 1 and the given scalars."""
        vectors = linalg.span_basis([ONE.coords] + [FieldScalar.of(g).coords for g in generators])
        if len(vectors) == 4:
            return cls(full=True)
        return cls(basis=tuple(FieldScalar(v) for v in vectors))

    @property
    def rank(self):
        return len(self.basis)

    def vectors(self):
        return [b.coords for b in self.basis]

    def contains(self, x):
        if x is BOTTOM:
            return True
        if self.full:
            return True
        return linalg.in_span(self.vectors(), x.coords)

    def coordinates(self, x):
        """Rational q with x = sum q_i * basis_i."""
        q = linalg.solve_coefficients(self.vectors(), x.coords)
        if q is None:
            raise GammaMismatch(f"{x} is not in the coefficient group {self}")
        return q

    def __eq__(self, other):
        if not isinstance(other, CoefficientGroup):
            return NotImplemented
        if self.rank != other.rank:
            return False
        return all(other.contains(b) for b in self.basis)

    def __hash__(self):
        return hash((self.full, self.rank))

    def __str__(self):
        if self.full:
            return "full"
        if self.rank == 1:
            return "QQ"
        return "span[" + ", ".join(str(b) for b in self.basis) + "]"
