# tests/test_acceptance.py
"""Seeded end-to-end suites over randomly drawn primes and series."""

import random
from fractions import Fraction

import pytest

from adic.errors import InvalidMatrix
from adic.monomials import Polynomial, Term, ToricMonoid
from adic.primes import PrimeCongruence, compare_terms, in_cont, normalize, psi_eval
from adic.scalars import BOTTOM, FieldScalar, LexTuple
from adic.series import DistanceOutcome, TruncatedSeries, distance, series_equal_within
from adic.spectrum import crown_affine, crown_geometric, crown_torus, prop_star
from strategies import SQRT2, SQRT3
from utils import get_seed

Z1 = ToricMonoid.lattice(1)
P = PrimeCongruence.of(Z1, [(1, 0)])
P_FINE = PrimeCongruence.of(Z1, [(1, 1), (0, 1)])


def _rational(rng):
    return Fraction(rng.randint(-12, 12), rng.randint(1, 6))


def _scalar(rng):
    """Denominators up to 6, with optional r2 and r3 parts."""
    x = FieldScalar.rational(_rational(rng))
    if rng.random() < 0.4:
        x = x + SQRT2 * _rational(rng)
    if rng.random() < 0.3:
        x = x + SQRT3 * _rational(rng)
    return x


def _term(rng, n):
    return Term(_rational(rng), tuple(rng.randint(-4, 4) for _ in range(n)))


# --- The motivating family 1 + t^-n x^n ---

@pytest.mark.parametrize("n", range(1, 11))
def test_motivating_family(n):
    one = Polynomial.from_terms(Z1, [Term(0, (0,))])
    tail = Polynomial.from_terms(Z1, [Term(-n, (n,))])
    d = distance(TruncatedSeries.exact(P, one), TruncatedSeries.exact(P, one + tail))
    assert d.outcome is DistanceOutcome.EXACT
    assert d.value == LexTuple.of((-n,))
    zero = TruncatedSeries.exact(P, Polynomial.zero(Z1))
    small = TruncatedSeries.exact(P, tail)
    assert series_equal_within(zero, small, LexTuple.of((-n,)))
    assert not series_equal_within(zero, small, LexTuple.of((-n - 1,)))


def test_motivating_prime_is_rejected_with_a_separating_monomial():
    result = prop_star(P_FINE, P)
    assert not result
    m = result.witness
    assert psi_eval(P, m).first.sign() < 0
    assert psi_eval(P_FINE, m).first.sign() > 0


# --- Crown fast paths ---

@pytest.mark.slow
def test_crown_affine_fast_path():
    rng = random.Random(get_seed())
    for _ in range(500):
        n = rng.randint(1, 3)
        monoid = ToricMonoid.affine(n)
        prime = PrimeCongruence.of(monoid, [(1,) + tuple(_scalar(rng) for _ in range(n))])
        entries = tuple(BOTTOM if rng.random() < 0.2 else _scalar(rng) for _ in range(n))
        pprime = PrimeCongruence.of(monoid, [(1,) + entries])
        result = prop_star(pprime, prime)
        assert result.verdict == crown_affine(pprime, prime) == crown_geometric(pprime, prime)
        if not result:
            assert psi_eval(prime, result.witness).first.sign() < 0


@pytest.mark.slow
def test_crown_torus_fast_path():
    rng = random.Random(get_seed())
    for _ in range(500):
        n = rng.randint(1, 2)
        monoid = ToricMonoid.lattice(n)
        rows = [(1,) + tuple(_scalar(rng) for _ in range(n))]
        prime = PrimeCongruence.of(monoid, rows)
        pprime_rows = [(rng.choice([1, 2]),) + tuple(_scalar(rng) for _ in range(n))]
        if rng.random() < 0.5:
            pprime_rows.append((rng.choice([0, 1]),) + tuple(_scalar(rng) for _ in range(n)))
        pprime = PrimeCongruence.of(monoid, pprime_rows)
        assert prop_star(pprime, prime).verdict == crown_torus(pprime, prime)


# --- Normal form invariance ---

def _random_matrix_prime(rng):
    for _ in range(20):
        width = rng.randint(1, 3)
        lead = rng.choice([0, 1, 2, Fraction(1, 3)])
        rows = [(lead, _scalar(rng), _scalar(rng))]
        for _ in range(width - 1):
            first = rng.choice([-1, 0, 1]) if lead else rng.choice([0, 1])
            rows.append((first, _scalar(rng), _scalar(rng)))
        try:
            return PrimeCongruence.of(ToricMonoid.lattice(2), rows)
        except InvalidMatrix:
            continue
    return PrimeCongruence.of(ToricMonoid.lattice(2), [(1, 0, 0)])


@pytest.mark.slow
def test_normalize_keeps_every_verdict():
    rng = random.Random(get_seed())
    for _ in range(500):
        prime = _random_matrix_prime(rng)
        normal = normalize(prime)
        assert in_cont(normal) == in_cont(prime)
        for _ in range(100):
            m1, m2 = _term(rng, 2), _term(rng, 2)
            assert compare_terms(normal, m1, m2) == compare_terms(prime, m1, m2)
