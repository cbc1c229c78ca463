# tropadic/formats.py
"""Text grammars for scalars, terms, polynomials, monoids, primes, series and
streams, and the JSON encoding of results.

Parsers in the `_take_*` style consume a prefix and return (value, rest).
"""

import json
import logging
import os
import re
from fractions import Fraction

from constants import JSON_SCHEMA_VERSION
from adic.errors import ParseError
from adic.monomials import MonoidKind, Polynomial, Term, ToricMonoid
from adic.primes import DefiningMatrix, PrimeCongruence
from adic.scalars import BOTTOM, SQRT2, SQRT3, SQRT6, ZERO, CoefficientGroup, FieldScalar, LexTuple
from adic.series import DecayCertificate, SeriesStream, TruncatedSeries

logger = logging.getLogger(__name__)

_ATOM = re.compile(r'\s*([+-]?)\s*(\d+(?:/\d+)?)?(r2|r3|r6)?')
_RADICALS = {"r2": SQRT2, "r3": SQRT3, "r6": SQRT6}
_VARIABLE = re.compile(r'\s*\*?\s*x(\d+)(?:\^(-?\d+))?')
_BLOCK = re.compile(r'^\s*(\w+)\s*\{(.*)\}\s*$', re.DOTALL)
_MONOID = re.compile(r'^\s*(ZZ|NN)\s*\^\s*(\d+)\s*$')
_CONE = re.compile(r'^\s*cone\s*\{\s*rays\s*=\s*(\[.*\])\s*\}\s*$', re.DOTALL)
_SPAN = re.compile(r'^\s*span\s*\[(.*)\]\s*$', re.DOTALL)


# --- Scalars ---

def _take_atom(s):
    """One signed atom `[+-] rational [r2|r3|r6]`, or (None, s) if none starts here."""
    m = _ATOM.match(s)
    sign, number, radical = m.groups()
    if number is None and radical is None:
        return None, s
    try:
        value = FieldScalar.rational(Fraction(number) if number else 1)
    except ZeroDivisionError as e:
        raise ParseError(f"zero denominator in {number!r}") from e
    if radical:
        value = value * _RADICALS[radical]
    if sign == "-":
        value = -value
    return value, s[m.end():]


def parse_scalar(text):
    rest = text.strip()
    if not rest:
        raise ParseError("empty scalar")
    total, first = ZERO, True
    while rest.strip():
        if not first and rest.lstrip()[0] not in "+-":
            raise ParseError(f"expected '+' or '-' in scalar {text!r}")
        atom, rest = _take_atom(rest)
        if atom is None:
            raise ParseError(f"malformed scalar {text!r}")
        total = total + atom
        first = False
    return total


def parse_ext(text):
    if text.strip() == "-inf":
        return BOTTOM
    return parse_scalar(text)


# --- Terms and polynomials ---

def _take_coefficient(s):
    s = s.lstrip()
    if s.startswith("-inf"):
        return BOTTOM, s[4:]
    if s.startswith("("):
        close = s.find(")")
        if close < 0:
            raise ParseError(f"unbalanced parenthesis in {s!r}")
        return parse_ext(s[1:close]), s[close + 1:]
    atom, rest = _take_atom(s)
    if atom is None:
        raise ParseError(f"expected a coefficient exponent at {s!r}")
    return atom, rest


def parse_term(text, n):
    """`t^<coeff>*x1^e1*...`; variables are 1-based and the `t^` part may be omitted."""
    s = text.strip()
    coeff = ZERO
    if s.startswith("t"):
        if not s[1:].lstrip().startswith("^"):
            raise ParseError(f"expected 't^' in term {text!r}")
        coeff, s = _take_coefficient(s[1:].lstrip()[1:])
    exponent = [0] * n
    while s.strip():
        m = _VARIABLE.match(s)
        if not m:
            raise ParseError(f"unexpected {s.strip()!r} in term {text!r}")
        index = int(m.group(1))
        if not 1 <= index <= n:
            raise ParseError(f"variable x{index} out of range for rank {n}")
        exponent[index - 1] += int(m.group(2)) if m.group(2) is not None else 1
        s = s[m.end():]
    if coeff is BOTTOM:
        return None
    return Term(coeff, tuple(exponent))


def _split_top_level(text, sep):
    parts, depth, current = [], 0, []
    for ch in text:
        if ch in "([{":
            depth += 1
        elif ch in ")]}":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(current))
            current = []
        else:
            current.append(ch)
    if depth != 0:
        raise ParseError(f"unbalanced brackets in {text!r}")
    parts.append("".join(current))
    return parts


def parse_poly(text, monoid):
    if text.strip() == "0":
        return Polynomial.zero(monoid)
    terms = []
    for part in _split_top_level(text, "+"):
        if not part.strip():
            raise ParseError(f"empty term in polynomial {text!r}")
        term = parse_term(part, monoid.rank)
        if term is not None:
            terms.append(term)
    return Polynomial.from_terms(monoid, terms)


# --- Monoids, Gamma, matrices ---

def _parse_int_list(text):
    try:
        value = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"malformed integer list {text!r}: {e}") from e
    return value


def parse_monoid(text):
    m = _MONOID.match(text)
    if m:
        kind, n = m.group(1), int(m.group(2))
        return ToricMonoid.lattice(n) if kind == MonoidKind.LATTICE.value else ToricMonoid.affine(n)
    m = _CONE.match(text)
    if not m:
        raise ParseError(f"unknown monoid {text.strip()!r}")
    rays = _parse_int_list(m.group(1))
    if not rays or not all(isinstance(r, list) and r for r in rays):
        raise ParseError("cone needs a nonempty list of rays")
    n = len(rays[0])
    if any(len(r) != n for r in rays):
        raise ParseError("cone rays have different lengths")
    return ToricMonoid.from_rays(n, rays)


def parse_gamma(text):
    s = text.strip()
    if s == "QQ":
        return CoefficientGroup.rationals()
    if s == "full":
        return CoefficientGroup.whole_field()
    m = _SPAN.match(s)
    if not m:
        raise ParseError(f"unknown coefficient group {s!r}")
    return CoefficientGroup.span([parse_scalar(x) for x in _split_top_level(m.group(1), ",") if x.strip()])


def parse_matrix(text):
    s = text.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise ParseError(f"matrix must be a bracketed list of rows: {s!r}")
    rows = []
    for row in _split_top_level(s[1:-1], ","):
        row = row.strip()
        if not (row.startswith("[") and row.endswith("]")):
            raise ParseError(f"malformed matrix row {row!r}")
        rows.append(tuple(parse_ext(x) for x in _split_top_level(row[1:-1], ",")))
    return DefiningMatrix(tuple(rows))


def parse_ext_list(text):
    s = text.strip()
    if s.startswith("[") and s.endswith("]"):
        s = s[1:-1]
    return [parse_ext(x) for x in _split_top_level(s, ",") if x.strip()]


# --- Blocks ---

def _parse_block(text, expected):
    """`name { key: value; ... }` into a dict, in the key=value style of release files."""
    m = _BLOCK.match(text)
    if not m or m.group(1) != expected:
        raise ParseError(f"expected a '{expected} {{ ... }}' block")
    fields = {}
    for item in _split_top_level(m.group(2), ";"):
        item = item.strip()
        if not item:
            continue
        if ":" not in item:
            raise ParseError(f"field without ':' in {expected} block: {item!r}")
        key, value = item.split(":", 1)
        fields[key.strip()] = value.strip()
    return fields


def _require(fields, keys, block):
    missing = [k for k in keys if k not in fields]
    if missing:
        raise ParseError(f"{block} block is missing {', '.join(missing)}")


def parse_prime(text):
    fields = _parse_block(text, "prime")
    _require(fields, ("monoid", "matrix"), "prime")
    monoid = parse_monoid(fields["monoid"])
    gamma = parse_gamma(fields.get("gamma", "QQ"))
    return PrimeCongruence(monoid, gamma, parse_matrix(fields["matrix"]))


def _read(path):
    try:
        with open(path, "r") as f:
            return f.read()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e}") from e


def load_prime(path):
    return parse_prime(_read(path))


def parse_series(text, base_dir="."):
    fields = _parse_block(text, "series")
    _require(fields, ("prime", "terms"), "series")
    ref = fields["prime"]
    if ref.startswith("prime"):
        prime = parse_prime(ref)
    else:
        prime = load_prime(os.path.join(base_dir, ref))
    poly = parse_poly(fields["terms"], prime.monoid)
    precision = fields.get("precision", "exact").strip()
    if precision in ("exact", "-inf"):
        return TruncatedSeries.exact(prime, poly)
    if precision.startswith("("):
        if not precision.endswith(")"):
            raise ParseError(f"unbalanced precision tuple {precision!r}")
        return TruncatedSeries(prime, poly, LexTuple.of(parse_ext_list(precision[1:-1])))
    return TruncatedSeries.with_gamma_precision(prime, poly, parse_scalar(precision))


def load_series(path):
    return parse_series(_read(path), os.path.dirname(os.path.abspath(path)))


def _parse_certificate(text, n):
    s = text.strip()
    if not (s.startswith("{") and s.endswith("}")):
        raise ParseError(f"certificate must be braced: {s!r}")
    fields = {}
    for item in _split_top_level(s[1:-1], ","):
        if ":" not in item:
            raise ParseError(f"malformed certificate field {item!r}")
        key, value = item.split(":", 1)
        fields[key.strip()] = value.strip()
    _require(fields, ("N", "ratio"), "cert")
    try:
        start = int(fields["N"])
    except ValueError as e:
        raise ParseError(f"certificate index must be an integer: {fields['N']!r}") from e
    ratio = parse_term(fields["ratio"], n)
    if ratio is None:
        raise ParseError("certificate ratio cannot be -inf")
    return DecayCertificate(start, ratio)


def parse_stream(text):
    fields = _parse_block(text, "stream")
    _require(fields, ("coeff0", "coeff_step", "exp0", "exp_step"), "stream")
    exp0 = _parse_int_list(fields["exp0"])
    exp_step = _parse_int_list(fields["exp_step"])
    certificate = _parse_certificate(fields["cert"], len(exp0)) if "cert" in fields else None
    return SeriesStream(parse_ext(fields["coeff0"]), parse_scalar(fields["coeff_step"]),
                        tuple(exp0), tuple(exp_step), certificate)


def load_stream(path):
    return parse_stream(_read(path))


# --- Text output ---

def format_prime(prime):
    return str(prime)


def format_poly(f):
    return str(f)


def format_series(f, prime_ref=None):
    """The base prime is written inline unless `prime_ref` names a file."""
    if prime_ref is None:
        prime_ref = format_prime(f.base)
    precision = "exact" if f.is_exact else str(f.precision)
    return f"series {{ prime: {prime_ref}; terms: {f.poly}; precision: {precision} }}"


# --- JSON ---

def encode_rational(q):
    return str(Fraction(q))


def encode_scalar(x):
    if x is BOTTOM:
        return "-inf"
    return {"q": [encode_rational(c) for c in x.coords]}


def encode_lex(x):
    """Width-1 tuples are written as a bare scalar."""
    if x.is_bottom:
        return "-inf"
    if x.width == 1:
        return encode_scalar(x.entries[0])
    return [encode_scalar(e) for e in x.entries]


def encode_term(m):
    return {"coeff": encode_scalar(m.coeff), "exp": list(m.exponent), "text": str(m)}


def encode_poly(f):
    return [encode_term(t) for t in f.terms()]


def encode_matrix(matrix):
    return [[encode_scalar(x) for x in row] for row in matrix.rows]


def encode_prime(prime):
    return {"monoid": str(prime.monoid), "gamma": str(prime.gamma), "matrix": encode_matrix(prime.matrix),
            "text": format_prime(prime)}


def encode_series(f):
    return {"terms": encode_poly(f.poly), "precision": "exact" if f.is_exact else encode_lex(f.precision)}


def encode_cone(cone):
    return [list(r) for r in cone.rays]


def dumps(payload):
    """Deterministic JSON with the schema version on top."""
    return json.dumps({"v": JSON_SCHEMA_VERSION, **payload}, sort_keys=True, separators=(",", ":"))


def error_payload(code, message):
    return {"error": {"code": code, "message": message}}


def parse_int_rows(text):
    """`[[1,0],[0,1]]`, `[1,0]` or `1,0` into a list of integer tuples."""
    s = text.strip()
    value = _parse_int_list(s if s.startswith("[") else f"[{s}]")
    if value and not isinstance(value[0], list):
        value = [value]
    try:
        return [tuple(int(x) for x in row) for row in value]
    except (TypeError, ValueError) as e:
        raise ParseError(f"expected integer vectors, got {text!r}") from e
