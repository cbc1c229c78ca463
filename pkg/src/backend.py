# tropadic/backend.py

import logging

import formats
import plot
from utils import order_symbol
from adic import dimension, geometry, primes, series, spectrum, transcendence
from adic.errors import ParseError, TropadicError
from adic.scalars import BOTTOM, LexTuple

logger = logging.getLogger(__name__)


class Workspace:
    """Objects loaded for one invocation, keyed by the file they came from."""

    def __init__(self):
        self.primes = {}
        self.series = {}
        self.streams = {}

    def prime(self, path):
        if path not in self.primes:
            logger.debug("Loading prime %s", path)
            self.primes[path] = formats.load_prime(path)
        return self.primes[path]

    def series_at(self, path):
        if path not in self.series:
            logger.debug("Loading series %s", path)
            self.series[path] = formats.load_series(path)
        return self.series[path]

    def stream(self, path):
        if path not in self.streams:
            logger.debug("Loading stream %s", path)
            self.streams[path] = formats.load_stream(path)
        return self.streams[path]


def _run_verb(verb, action):
    """Runs one verb, returning (success, error_msg, payload); payload holds `code` on failure."""
    logger.info("Running %s", verb)
    try:
        payload = action()
    except TropadicError as e:
        logger.error("%s failed (%s): %s", verb, e.code, e)
        return False, str(e), {"code": e.code}
    except Exception as e:
        logger.exception("Unexpected error in %s", verb)
        return False, f"{verb} failed: {e}", {"code": "internal"}
    logger.info("%s finished", verb)
    return True, "", payload


def _witness(pair):
    return [formats.encode_term(m) for m in pair]


def _term(text, prime):
    term = formats.parse_term(text, prime.monoid.rank)
    if term is None:
        raise ParseError(f"term {text!r} is the zero term")
    return term


# --- primes ---

def verb_normalize(ws, args):
    return {"prime": formats.encode_prime(primes.normalize(ws.prime(args.p)))}


def verb_compare(ws, args):
    prime = ws.prime(args.p)
    m1, m2 = _term(args.m1, prime), _term(args.m2, prime)
    return {"order": order_symbol(primes.compare_terms(prime, m1, m2)),
            "psi1": formats.encode_lex(primes.psi_eval(prime, m1)),
            "psi2": formats.encode_lex(primes.psi_eval(prime, m2))}


def verb_cont_check(ws, args):
    return {"verdict": primes.in_cont(ws.prime(args.p))}


def verb_contains(ws, args):
    result = primes.contains(ws.prime(args.pprime), ws.prime(args.p))
    payload = {"verdict": result.verdict}
    if not result.verdict:
        payload["witness"] = _witness(result.witness)
        payload["reason"] = result.reason
    return payload


def verb_maximal_above(ws, args):
    return {"prime": formats.encode_prime(primes.maximal_above(ws.prime(args.p)))}


def verb_leading(ws, args):
    prime = ws.prime(args.p)
    leading = primes.poly_leading_terms(prime, formats.parse_poly(args.f, prime.monoid))
    return {"value": formats.encode_lex(leading.value), "terms": [formats.encode_term(t) for t in leading.terms]}


def verb_arch(ws, args):
    return {"classes": primes.arch_classes(ws.prime(args.p))}


def verb_restrict(ws, args):
    prime = ws.prime(args.p)
    return {"prime": formats.encode_prime(primes.restrict(prime, formats.parse_int_rows(args.basis)))}


# --- spectrum ---

def verb_phi(ws, args):
    point = spectrum.phi(ws.prime(args.p))
    return {"face": formats.encode_cone(point.face), "values": [formats.encode_scalar(v) for v in point.values]}


def verb_crown(ws, args):
    result = spectrum.prop_star(ws.prime(args.pprime), ws.prime(args.p))
    payload = {"verdict": result.verdict}
    if not result.verdict:
        payload["witness"] = formats.encode_term(result.witness)
    return payload


def verb_specializes(ws, args):
    return {"verdict": spectrum.specializes(ws.prime(args.p1), ws.prime(args.p2)).verdict}


def verb_open_member(ws, args):
    prime = ws.prime(args.p)
    f = formats.parse_poly(args.f, prime.monoid)
    g = formats.parse_poly(args.g, prime.monoid)
    return {"verdict": spectrum.basic_open_member(prime, f, g)}


# --- series ---

def verb_series_dist(ws, args):
    d = series.distance(ws.series_at(args.f), ws.series_at(args.g))
    return {"outcome": d.outcome.value, "value": formats.encode_lex(d.value)}


def verb_series_mul(ws, args):
    product = series.series_mul(ws.series_at(args.f), ws.series_at(args.g))
    return {"series": formats.encode_series(product), "text": formats.format_series(product)}


def verb_series_eval(ws, args):
    leading = series.eval_at(ws.series_at(args.f), ws.prime(args.pprime))
    return {"value": formats.encode_lex(leading.value), "terms": [formats.encode_term(t) for t in leading.terms]}


def verb_series_converges(ws, args):
    verdict = series.converges(ws.stream(args.stream), ws.prime(args.p), args.horizon)
    payload = {"verdict": verdict.kind.value}
    if verdict.threshold is not None:
        payload["threshold"] = formats.encode_lex(verdict.threshold)
        payload["exceeding"] = verdict.exceeding
    return payload


def verb_partial_sum(ws, args):
    base = series.interior_base(ws.prime(args.p))
    threshold = series.gamma_threshold(base, formats.parse_scalar(args.threshold))
    poly = series.partial_sum(ws.stream(args.stream), base, threshold, args.horizon)
    return {"poly": formats.encode_poly(poly), "text": formats.format_poly(poly)}


# --- dimension and transcendence ---

def verb_dim(ws, args):
    report = dimension.dim_top_report(ws.prime(args.p))
    return {"dim_base": report.dim_base, "q_rank": report.q_rank, "height": report.height,
            "dim_top_lower": report.dim_top_lower, "dim_top_upper": report.dim_top_upper,
            "exact": report.exact, "reason": report.reason.value}


def verb_height(ws, args):
    return {"height": dimension.height(ws.prime(args.p))}


def verb_chain(ws, args):
    return {"chain": [formats.encode_prime(p) for p in dimension.build_maximal_chain(ws.prime(args.p))]}


def verb_trdeg(ws, args):
    generators = []
    for text in args.gen:
        entries = formats.parse_ext_list(text)
        if not entries or any(e is BOTTOM for e in entries):
            raise ParseError(f"generator {text!r} must be a nonempty tuple of finite scalars")
        generators.append(LexTuple.of(entries))
    ext = transcendence.ExtensionSpec(formats.parse_gamma(args.gamma), tuple(generators))
    return {"trdeg": transcendence.trdeg(ext), "basis": transcendence.transcendence_basis(ext)}


# --- geometry ---

def verb_hilbert(ws, args):
    monoid = formats.parse_monoid(args.monoid)
    return {"monoid": str(monoid), "generators": [list(u) for u in monoid.generators]}


def verb_strata(ws, args):
    if args.p:
        prime = ws.prime(args.p)
        stratum = geometry.stratum_of(prime)
        return {"face": formats.encode_cone(stratum.face), "perp": [list(b) for b in stratum.perp_basis],
                "restricted": formats.encode_prime(geometry.stratum_restrict(prime))}
    monoid = formats.parse_monoid(args.monoid)
    faces = geometry.faces(monoid.cone)
    return {"faces": [{"rays": formats.encode_cone(tau), "perp": [list(b) for b in geometry.perp_lattice(tau)]}
                      for tau in faces]}


def verb_plot(ws, args):
    samples = [ws.prime(path) for path in args.pprime or []]
    return plot.plot_closure_region(ws.prime(args.p), samples, args.out)


VERBS = {
    "normalize": verb_normalize,
    "compare": verb_compare,
    "cont-check": verb_cont_check,
    "contains": verb_contains,
    "maximal-above": verb_maximal_above,
    "phi": verb_phi,
    "crown": verb_crown,
    "specializes": verb_specializes,
    "open-member": verb_open_member,
    "series-dist": verb_series_dist,
    "series-mul": verb_series_mul,
    "series-eval": verb_series_eval,
    "series-converges": verb_series_converges,
    "dim": verb_dim,
    "height": verb_height,
    "chain": verb_chain,
    "trdeg": verb_trdeg,
    "hilbert": verb_hilbert,
    "strata": verb_strata,
    "plot": verb_plot,
    "leading": verb_leading,
    "arch": verb_arch,
    "partial-sum": verb_partial_sum,
    "restrict": verb_restrict,
}


def run(verb, args, workspace=None):
    workspace = workspace or Workspace()
    if verb not in VERBS:
        return False, f"Unknown verb: {verb}", {"code": ParseError.code}
    return _run_verb(verb, lambda: VERBS[verb](workspace, args))
