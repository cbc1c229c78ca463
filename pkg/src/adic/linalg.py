# tropadic/adic/linalg.py
"""Exact linear algebra over the rationals.

Vectors are tuples of Fractions and matrices are lists of such rows. Rank and
nullspace computations go through sympy matrices of Rationals; the integer
kernel is computed by hand with unimodular column operations so the basis it
returns is saturated.
"""

import logging
from fractions import Fraction
from math import gcd

import sympy

logger = logging.getLogger(__name__)


def _to_rational(x):
    x = Fraction(x)
    return sympy.Rational(x.numerator, x.denominator)


def _to_fraction(r):
    r = sympy.Rational(r)
    return Fraction(int(r.p), int(r.q))


def to_matrix(rows, ncols):
    """Builds a sympy Matrix of Rationals; an empty row list gives a 0 x ncols matrix."""
    if not rows:
        return sympy.zeros(0, ncols)
    return sympy.Matrix([[_to_rational(x) for x in row] for row in rows])


def unit_vectors(n):
    return [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]


def is_zero_vector(v):
    return all(x == 0 for x in v)


def dot(u, v):
    return sum((Fraction(a) * Fraction(b) for a, b in zip(u, v)), Fraction(0))


def rank(rows):
    rows = [r for r in rows if not is_zero_vector(r)]
    if not rows:
        return 0
    return to_matrix(rows, len(rows[0])).rank()


def nullspace(rows, ncols):
    """Basis of {x in Q^ncols : r.x = 0 for every row r}."""
    if ncols == 0:
        return []
    rows = [r for r in rows if not is_zero_vector(r)]
    if not rows:
        return unit_vectors(ncols)
    basis = to_matrix(rows, ncols).nullspace()
    return [tuple(_to_fraction(v[i]) for i in range(ncols)) for v in basis]


def span_basis(vectors):
    """Greedy independent subset of `vectors` spanning the same space."""
    kept = []
    for v in vectors:
        if is_zero_vector(v):
            continue
        if rank(kept + [v]) > len(kept):
            kept.append(tuple(Fraction(x) for x in v))
    return kept


def in_span(vectors, v):
    if is_zero_vector(v):
        return True
    return rank(list(vectors) + [v]) == rank(list(vectors))


def solve_coefficients(vectors, v):
    """Returns q with sum(q_i * vectors_i) == v, or None when v is outside the span.

    `vectors` must be linearly independent.
    """
    if not vectors:
        return () if is_zero_vector(v) else None
    a = to_matrix(vectors, len(v)).T
    b = sympy.Matrix([_to_rational(x) for x in v])
    try:
        solution, params = a.gauss_jordan_solve(b)
    except ValueError:
        return None
    if params.shape[0]:
        solution = solution.subs({p: 0 for p in params})
    return tuple(_to_fraction(solution[i]) for i in range(len(vectors)))


def intersect_kernel(basis, forms):
    """Basis of {w in span(basis) : f.w = 0 for every rational form f}."""
    if not basis:
        return []
    relations = [[dot(f, w) for w in basis] for f in forms]
    combos = nullspace(relations, len(basis))
    dim = len(basis[0])
    result = []
    for lam in combos:
        result.append(tuple(sum((lam[j] * basis[j][i] for j in range(len(basis))), Fraction(0))
                            for i in range(dim)))
    return result


def integer_kernel(rows, ncols):
    """Saturated Z-basis of {x in Z^ncols : A x = 0} for an integer matrix A.

    Column-reduces A with unimodular operations tracked in U, so that A U has
    its nonzero columns first; the remaining columns of U span the kernel.
    """
    a = [[int(x) for x in row] for row in rows]
    u = [[int(i == j) for j in range(ncols)] for i in range(ncols)]

    def swap(j, k):
        for mat in (a, u):
            for row in mat:
                row[j], row[k] = row[k], row[j]

    def axpy(j, k, q):
        # column j -= q * column k
        for mat in (a, u):
            for row in mat:
                row[j] -= q * row[k]

    pivot = 0
    for i in range(len(a)):
        if pivot >= ncols:
            break
        while True:
            nonzero = [j for j in range(pivot, ncols) if a[i][j] != 0]
            if not nonzero:
                break
            j0 = min(nonzero, key=lambda j: abs(a[i][j]))
            if j0 != pivot:
                swap(j0, pivot)
            reduced = True
            for j in range(pivot + 1, ncols):
                if a[i][j]:
                    axpy(j, pivot, a[i][j] // a[i][pivot])
                    if a[i][j]:
                        reduced = False
            if reduced:
                break
        if a[i][pivot] != 0:
            pivot += 1
    return [tuple(u[k][j] for k in range(ncols)) for j in range(pivot, ncols)]


def primitive(v):
    """Divides an integer vector by the gcd of its entries."""
    g = 0
    for x in v:
        g = gcd(g, int(x))
    if g == 0:
        return tuple(int(x) for x in v)
    return tuple(int(x) // g for x in v)


def clear_denominators(v):
    """Smallest positive integer multiple of a rational vector with integer entries."""
    lcm = 1
    for x in v:
        d = Fraction(x).denominator
        lcm = lcm * d // gcd(lcm, d)
    return tuple(int(Fraction(x) * lcm) for x in v), lcm
