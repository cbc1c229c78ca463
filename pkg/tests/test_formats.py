import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import formats
from adic.errors import ParseError
from adic.monomials import Polynomial, Term, ToricMonoid
from adic.primes import PrimeCongruence
from adic.series import TruncatedSeries
from adic.scalars import BOTTOM, FieldScalar, LexTuple
from strategies import SQRT2, SQRT3, affine_primes, lattice_primes, polynomials

PRIME_TEXT = "prime { monoid: ZZ^1; gamma: QQ; matrix: [[1, 1], [0, 1]] }"


# --- Scalars and terms ---

def test_parse_scalar():
    assert formats.parse_scalar("3/2") == Fraction(3, 2)
    assert formats.parse_scalar("r3-r2") == SQRT3 - SQRT2
    assert formats.parse_scalar(" 1 + 2r2 ") == SQRT2 * 2 + 1
    assert formats.parse_ext("-inf") is BOTTOM


@pytest.mark.parametrize("text", ["", "abc", "1 2", "1/0"])
def test_parse_scalar_errors(text):
    with pytest.raises(ParseError):
        formats.parse_scalar(text)


def test_parse_term():
    assert formats.parse_term("t^-5*x1^5", 1) == Term(-5, (5,))
    assert formats.parse_term("x2", 2) == Term(0, (0, 1))
    assert formats.parse_term("t^(r3-r2)*x1^-1*x2^2", 2) == Term(SQRT3 - SQRT2, (-1, 2))
    assert formats.parse_term("t^-inf", 1) is None
    with pytest.raises(ParseError):
        formats.parse_term("x3", 2)
    with pytest.raises(ParseError):
        formats.parse_term("t5", 1)


def test_parse_poly():
    monoid = ToricMonoid.lattice(1)
    f = formats.parse_poly("t^0 + t^-5*x1^5 + t^-inf*x1", monoid)
    assert f.terms() == [Term(0, (0,)), Term(-5, (5,))]
    assert formats.parse_poly("0", monoid).is_zero
    with pytest.raises(ParseError):
        formats.parse_poly("t^0 + ", monoid)


# --- Structures ---

def test_parse_monoid():
    assert formats.parse_monoid("ZZ^2") == ToricMonoid.lattice(2)
    assert formats.parse_monoid("NN^1") == ToricMonoid.affine(1)
    assert formats.parse_monoid("cone{rays=[[-1,-1]]}") == ToricMonoid.from_rays(2, [(-1, -1)])
    with pytest.raises(ParseError):
        formats.parse_monoid("QQ^2")
    with pytest.raises(ParseError):
        formats.parse_monoid("cone{rays=[[1,0],[1]]}")


def test_parse_gamma():
    assert formats.parse_gamma("QQ").rank == 1
    assert formats.parse_gamma("full").full
    assert formats.parse_gamma("span[r2]").rank == 2
    with pytest.raises(ParseError):
        formats.parse_gamma("RR")


def test_parse_prime():
    prime = formats.parse_prime(PRIME_TEXT)
    assert prime.monoid == ToricMonoid.lattice(1)
    assert prime.matrix.rows[1] == (FieldScalar.rational(0), FieldScalar.rational(1))
    affine = formats.parse_prime("prime { monoid: NN^2; matrix: [[1, r2, -inf]] }")
    assert affine.matrix.bottom_columns == (1,)
    with pytest.raises(ParseError):
        formats.parse_prime("prime { monoid: ZZ^1 }")
    with pytest.raises(ParseError):
        formats.parse_prime("series { monoid: ZZ^1; matrix: [[1, 0]] }")


def test_parse_series_inline_prime():
    f = formats.parse_series(f"series {{ prime: {PRIME_TEXT}; terms: t^0 + x1; precision: -3 }}")
    assert f.eps == LexTuple.of((-3, 0))
    assert len(f.poly) == 2
    assert formats.parse_series(f"series {{ prime: {PRIME_TEXT}; terms: 0 }}").is_exact


def test_parse_series_prime_path(tmp_path):
    (tmp_path / "p.prime").write_text("prime { monoid: ZZ^1; matrix: [[1, 0]] }")
    path = tmp_path / "f.series"
    path.write_text("series { prime: p.prime; terms: t^0 + t^-5*x1^5; precision: exact }")
    f = formats.load_series(str(path))
    assert f.is_exact and len(f.poly) == 2


def test_missing_file():
    with pytest.raises(ParseError):
        formats.load_prime("/nonexistent/p.prime")


def test_parse_stream():
    s = formats.parse_stream(
        "stream { coeff0: 0; coeff_step: -1; exp0: [0]; exp_step: [1]; cert: {N: 2, ratio: t^-1*x1} }")
    assert s.term(3) == Term(-3, (3,))
    assert s.certificate.start == 2
    assert s.certificate.ratio == Term(-1, (1,))
    zero = formats.parse_stream("stream { coeff0: -inf; coeff_step: 0; exp0: [0]; exp_step: [0] }")
    assert zero.is_zero
    with pytest.raises(ParseError):
        formats.parse_stream("stream { coeff0: 0; coeff_step: 0; exp0: [0]; exp_step: [1]; cert: {N: x} }")


def test_parse_int_rows():
    assert formats.parse_int_rows("[[1,0],[0,1]]") == [(1, 0), (0, 1)]
    assert formats.parse_int_rows("1,1") == [(1, 1)]
    with pytest.raises(ParseError):
        formats.parse_int_rows("[[1, a]]")


# --- JSON ---

def test_encode_lex():
    assert formats.encode_lex(LexTuple.of((-5,))) == {"q": ["-5", "0", "0", "0"]}
    assert formats.encode_lex(LexTuple.of((0, SQRT2))) == [{"q": ["0", "0", "0", "0"]},
                                                          {"q": ["0", "1", "0", "0"]}]
    assert formats.encode_lex(LexTuple.bottom(2)) == "-inf"


def test_encode_term_and_prime():
    assert formats.encode_term(Term(Fraction(1, 2), (2, 0))) == {
        "coeff": {"q": ["1/2", "0", "0", "0"]}, "exp": [2, 0], "text": "t^1/2*x1^2"}
    encoded = formats.encode_prime(formats.parse_prime(PRIME_TEXT))
    assert encoded["monoid"] == "ZZ^1" and encoded["gamma"] == "QQ"
    assert encoded["matrix"][1][1] == {"q": ["1", "0", "0", "0"]}


def test_dumps_is_deterministic():
    text = formats.dumps({"verdict": True, "a": [1]})
    assert text == '{"a":[1],"v":1,"verdict":true}'
    assert json.loads(formats.dumps(formats.error_payload("parse_error", "bad"))) == {
        "v": 1, "error": {"code": "parse_error", "message": "bad"}}


# --- Text round trips ---

@settings(max_examples=40, deadline=None)
@given(st.one_of(lattice_primes(2), affine_primes(2)))
def test_prime_text_round_trip(prime):
    assert formats.parse_prime(formats.format_prime(prime)) == prime


@settings(max_examples=40, deadline=None)
@given(polynomials(ToricMonoid.lattice(2)))
def test_poly_text_round_trip(f):
    assert formats.parse_poly(formats.format_poly(f), f.monoid) == f


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([[(1, 0)], [(1, SQRT2)], [(1, 1), (0, 1)]]), polynomials(ToricMonoid.lattice(1)),
       polynomials(ToricMonoid.lattice(1)), st.integers(-6, 2), st.booleans())
def test_series_text_round_trip(rows, f, g, gamma, exact):
    base = PrimeCongruence.of(ToricMonoid.lattice(1), rows)
    series = TruncatedSeries.with_gamma_precision(base, f, gamma)
    series = series * (TruncatedSeries.exact(base, g) if exact else series)
    parsed = formats.parse_series(formats.format_series(series))
    assert parsed.base.matrix == series.base.matrix
    assert parsed.poly == series.poly
    assert parsed.precision == series.precision


def test_format_series_keeps_the_full_radius():
    base = PrimeCongruence.of(ToricMonoid.lattice(1), [(1, 1), (0, 1)])
    f = TruncatedSeries(base, Polynomial.from_terms(base.monoid, [Term(0, (0,))]), LexTuple.of((-2, 3)))
    text = formats.format_series(f, "p.prime")
    assert text.endswith("precision: (-2, 3) }")
