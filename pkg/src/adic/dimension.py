# tropadic/adic/dimension.py
"""Ranks, heights and dimension bounds for primes with trivial ideal kernel.

Everything is rational linear algebra on field coordinates: a column of the
normalized matrix is a vector of R^k, read as a vector of Q^(4k).
"""

import logging
from dataclasses import dataclass
from enum import Enum

from . import linalg
from .errors import (ChainConstructionFailed, DimensionMismatch, MonoidMismatch, NotInContInterior,
                     WPerpendicular)
from .primes import PrimeCongruence, DefiningMatrix, contains, ideal_kernel_face, in_cont, normalize
from .scalars import ZERO, coordinate_vector

logger = logging.getLogger(__name__)


def _interior_normal(prime):
    if not in_cont(prime) or not ideal_kernel_face(prime).trivial:
        raise NotInContInterior(f"{prime.matrix} is not in Cont with trivial ideal kernel")
    return normalize(prime)


def _require_lattice(prime):
    if not prime.monoid.is_lattice:
        raise MonoidMismatch(f"chains are built on lattice monoids, not {prime.monoid}; restrict first")


def _columns(prime):
    rows = prime.matrix.rows
    return [tuple(row[j] for row in rows) for j in range(prime.matrix.ncols)]


def _gamma_directions(prime):
    """Gamma-multiples of the coefficient column: the image of the constants."""
    column = _columns(prime)[0]
    return [coordinate_vector(g * x for x in column) for g in prime.gamma.basis]


def dim_base(monoid):
    return monoid.rank


def quotient_rank(prime):
    """rk(kappa(P)^x / S^x) = dim (V + W) / W."""
    normal = _interior_normal(prime)
    lattice = [coordinate_vector(c) for c in _columns(normal)[1:]]
    constants = _gamma_directions(normal)
    return linalg.rank(lattice + constants) - linalg.rank(constants)


def _kernel_system(normal):
    """Nullspace of sum q_i gamma_i col_0 + sum u_j col_j = 0, in unknowns (q, u)."""
    vectors = _gamma_directions(normal) + [coordinate_vector(c) for c in _columns(normal)[1:]]
    # each unknown is a column of the linear system
    equations = [tuple(v[i] for v in vectors) for i in range(len(vectors[0]))]
    return linalg.nullspace(equations, len(vectors))


def kernel_rank(prime):
    """Rank of the lattice of terms with Psi equal to the identity."""
    return len(_kernel_system(_interior_normal(prime)))


def kernel_exponents(prime):
    """Integer exponent parts u of a basis of the kernel of pi_P."""
    normal = _interior_normal(prime)
    r = normal.gamma.rank
    exponents = []
    for v in _kernel_system(normal):
        u, _ = linalg.clear_denominators(v[r:])
        exponents.append(linalg.primitive(u))
    return exponents


def height(prime):
    return prime.monoid.rank - quotient_rank(prime)


class DimReason(Enum):
    T_COEFFS = "T_COEFFS"
    FULL_DIM_CONE = "FULL_DIM_CONE"
    BOUNDS_MEET = "BOUNDS_MEET"
    BOUNDS_ONLY = "BOUNDS_ONLY"


@dataclass(frozen=True)
class DimReport:
    dim_base: int
    q_rank: int
    height: int
    dim_top_lower: int
    dim_top_upper: int
    exact: bool
    reason: DimReason


def dim_top_report(prime):
    n = dim_base(prime.monoid)
    q = quotient_rank(prime)
    lower, upper = n - q, n
    if prime.gamma.full:
        reason = DimReason.T_COEFFS
    elif prime.monoid.is_affine or (n and prime.monoid.cone.is_full_dimensional()):
        reason = DimReason.FULL_DIM_CONE
    elif lower == upper:
        reason = DimReason.BOUNDS_MEET
    else:
        reason = DimReason.BOUNDS_ONLY
    exact = reason is not DimReason.BOUNDS_ONLY
    if exact:
        lower = upper = n
    return DimReport(n, q, n - q, lower, upper, exact, reason)


def extend_chain(prime, w):
    """Appends the row (0 | w), refining P on the kernel of pi_P."""
    _require_lattice(prime)
    n = prime.monoid.rank
    if len(w) != n:
        raise DimensionMismatch(f"covector of length {len(w)} for lattice rank {n}")
    exponents = kernel_exponents(prime)
    if not any(linalg.dot(w, u) for u in exponents):
        raise WPerpendicular(f"covector {tuple(w)} vanishes on the kernel of pi_P")
    row = (ZERO,) + tuple(w)
    return PrimeCongruence(prime.monoid, prime.gamma, DefiningMatrix(prime.matrix.rows + (row,)))


def build_maximal_chain(prime):
    """P = P0 > P1 > ... > Pk with k = height(P), each link checked by containment."""
    _require_lattice(prime)
    chain = [prime]
    for step in range(height(prime)):
        current = chain[-1]
        w = kernel_exponents(current)[0]
        refined = extend_chain(current, w)
        if not contains(refined, current) or contains(current, refined):
            raise ChainConstructionFailed(f"chain step {step + 1} is not a strict containment",
                                          step=step + 1)
        logger.debug("chain step %d appends covector %s", step + 1, w)
        chain.append(refined)
    return chain
