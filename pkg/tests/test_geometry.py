import pytest

from constants import DUAL_CACHE_SIZE
from adic import geometry
from adic.errors import NotStronglyConvex, RankTooLarge
from adic.geometry import (Cone, dual_cone, dual_rays, faces, hilbert_basis, in_closure_region,
                           perp_lattice, relative_interior_point, smallest_face_containing,
                           stratum_of, stratum_restrict)
from adic.monomials import ToricMonoid
from adic.primes import PrimeCongruence
from adic.scalars import BOTTOM, FieldScalar
from strategies import SQRT2, SQRT3

DIAGONAL = Cone(2, ((-1, -1),))


def _decomposes(u, basis, dual, depth=8, seen=None):
    """Brute-force check that u is a sum of at most `depth` basis elements."""
    seen = {} if seen is None else seen
    if not any(u):
        return True
    if depth == 0:
        return False
    if (u, depth) not in seen:
        seen[(u, depth)] = any(
            dual.contains(z) and _decomposes(z, basis, dual, depth - 1, seen)
            for z in (tuple(a - b for a, b in zip(u, h)) for h in basis))
    return seen[(u, depth)]


# --- Duals and faces ---

def test_dual_of_negative_orthant():
    dual = dual_cone(Cone.negative_orthant(2))
    assert set(dual.all_generators) == {(1, 0), (0, 1)}
    assert dual.contains((2, 3))
    assert not dual.contains((-1, 0))


def test_dual_of_zero_cone_is_everything():
    dual = dual_cone(Cone.zero(2))
    assert dual.generators == ()
    assert len(dual.lineality) == 2
    assert dual.contains((-5, 7))


def test_dual_of_diagonal_ray():
    dual = dual_cone(DIAGONAL)
    assert dual.contains((3, -2))
    assert not dual.contains((-2, 1))
    assert dual.generators == ((1, 1),)
    assert set(dual.lineality) <= {(1, -1), (-1, 1)}


def test_faces():
    assert [tau.rays for tau in faces(DIAGONAL)] == [(), ((-1, -1),)]
    assert len(faces(Cone.negative_orthant(2))) == 4
    assert [tau.rays for tau in faces(Cone.zero(2))] == [()]


def test_smallest_face_and_perp():
    orthant = Cone.negative_orthant(2)
    tau = smallest_face_containing(orthant, [(0, -1)])
    assert tau.rays == ((0, -1),)
    assert perp_lattice(tau) in ([(1, 0)], [(-1, 0)])
    point = relative_interior_point(orthant, tau)
    assert point[1] == 0 and point[0] > 0


def test_line_is_not_strongly_convex():
    with pytest.raises(NotStronglyConvex):
        ToricMonoid.from_rays(2, [(1, 0), (-1, 0)])


def test_rank_cap():
    with pytest.raises(RankTooLarge):
        dual_cone(Cone.zero(5))


# --- Hilbert bases ---

def test_hilbert_basis_of_diagonal_halfplane():
    monoid = ToricMonoid.from_rays(2, [(-1, -1)])
    basis = hilbert_basis(monoid)
    assert set(basis) == {(1, 0), (0, 1), (1, -1), (-1, 1)}
    dual = monoid.dual
    for u in [(a, b) for a in range(-4, 5) for b in range(-4, 5) if a + b >= 0]:
        assert _decomposes(u, basis, dual)


def test_hilbert_basis_of_standard_monoids():
    assert set(hilbert_basis(ToricMonoid.affine(2))) == {(1, 0), (0, 1)}
    assert set(hilbert_basis(ToricMonoid.lattice(1))) == {(1,), (-1,)}


def test_hilbert_basis_of_a_simplicial_cone():
    # dual of cone{(-1,0),(1,-2)} is u1 >= 0, 2 u2 >= u1
    monoid = ToricMonoid.from_rays(2, [(-1, 0), (1, -2)])
    basis = hilbert_basis(monoid)
    dual = monoid.dual
    for u in [(a, b) for a in range(0, 6) for b in range(0, 6) if dual.contains((a, b))]:
        assert _decomposes(u, basis, dual, depth=12)
    assert set(basis) == {(0, 1), (1, 1), (2, 1)}


# --- Strata and the closure region ---

def test_stratum_of_interior_prime():
    prime = PrimeCongruence.of(ToricMonoid.lattice(2), [(1, SQRT2, SQRT3)])
    stratum = stratum_of(prime)
    assert stratum.face.rays == ()
    assert stratum.perp_rank == 2
    assert stratum_restrict(prime).matrix == prime.matrix


def test_stratum_of_affine_prime():
    prime = PrimeCongruence.of(ToricMonoid.affine(2), [(1, 2, BOTTOM)])
    stratum = stratum_of(prime)
    assert stratum.face.rays == ((0, -1),)
    restricted = stratum_restrict(prime)
    assert restricted.monoid == ToricMonoid.affine(1)
    assert restricted.matrix.rows == ((FieldScalar.rational(1), FieldScalar.rational(2)),)


def test_dual_rays():
    assert len(dual_rays(ToricMonoid.lattice(2))) == 4
    assert dual_rays(ToricMonoid.affine(2)) == [(1, 0), (0, 1)]


def test_closure_region():
    monoid = ToricMonoid.from_rays(2, [(-1, -1)])
    omega = (SQRT2, SQRT3)
    assert in_closure_region(monoid, omega, (FieldScalar.rational(0), SQRT3 - SQRT2))
    assert not in_closure_region(monoid, omega, (FieldScalar.rational(2), SQRT3))
    affine = ToricMonoid.affine(2)
    assert in_closure_region(affine, (FieldScalar.rational(1), FieldScalar.rational(1)),
                             (BOTTOM, FieldScalar.rational(0)))


def test_dual_cone_cache_is_bounded():
    first = dual_cone(Cone(2, [(-1, -1)]))
    assert dual_cone(Cone(2, [(-1, -1)])) is first
    for k in range(1, DUAL_CACHE_SIZE + 20):
        dual_cone(Cone(2, [(-1, -k)]))
    assert geometry._dual_cone.cache_info().currsize <= DUAL_CACHE_SIZE
