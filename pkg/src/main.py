#!/usr/bin/env python3
"""
tropadic - command-line entry point
"""

import argparse
import logging
import sys

import backend
import formats
from constants import APP_NAME, DEFAULT_HORIZON, EXIT_ERROR, EXIT_OK, EXIT_PARSE_ERROR
from adic.errors import ParseError

LOG_FORMAT = '%(asctime)s - %(levelname)s - %(filename)s:%(lineno)d - %(message)s'


def _add(subparsers, verb, help_text, *options):
    parser = subparsers.add_parser(verb, help=help_text)
    for flags, kwargs in options:
        parser.add_argument(*flags, **kwargs)
    return parser


def _file(flag, help_text, required=True):
    return ((flag,), {"required": required, "help": help_text})


def build_parser():
    parser = argparse.ArgumentParser(prog=APP_NAME, description="Adic spectra of toric monoid semirings.")
    level = parser.add_mutually_exclusive_group()
    level.add_argument("--verbose", action="store_true", help="log debug messages to stderr")
    level.add_argument("--quiet", action="store_true", help="log warnings and errors only")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = _file("--p", "prime file")
    pprime = _file("--pprime", "prime file for P'")
    horizon = (("--horizon",), {"type": int, "default": DEFAULT_HORIZON, "help": "indices checked"})

    _add(sub, "normalize", "normal form of a defining matrix", p)
    _add(sub, "compare", "order two terms under a prime", p,
         (("--m1",), {"required": True}), (("--m2",), {"required": True}))
    _add(sub, "cont-check", "is the prime in Cont", p)
    _add(sub, "contains", "decide P' contained in P", pprime, p)
    _add(sub, "maximal-above", "maximal prime of Cont above P", p)
    _add(sub, "phi", "the point Phi(P)", p)
    _add(sub, "crown", "does P' extend to series convergent at P", p, pprime)
    _add(sub, "specializes", "is P2 a specialization of P1", _file("--p1", "prime file"), _file("--p2", "prime file"))
    _add(sub, "open-member", "is P in R(f | g)", p,
         (("--f",), {"required": True, "help": "polynomial"}), (("--g",), {"required": True, "help": "polynomial"}))
    _add(sub, "series-dist", "distance of two series", _file("--f", "series file"), _file("--g", "series file"))
    _add(sub, "series-mul", "product of two series", _file("--f", "series file"), _file("--g", "series file"))
    _add(sub, "series-eval", "evaluate a series at a closure prime", _file("--f", "series file"), pprime)
    _add(sub, "series-converges", "convergence of a stream at P", _file("--stream", "stream file"), p, horizon)
    _add(sub, "dim", "dimension report", p)
    _add(sub, "height", "height of P", p)
    _add(sub, "chain", "maximal chain below P", p)
    _add(sub, "trdeg", "transcendence degree of a value group",
         (("--gamma",), {"default": "QQ", "help": "QQ | span[..] | full"}),
         (("--gen",), {"action": "append", "default": [], "help": "generator tuple, repeatable"}))
    _add(sub, "hilbert", "Hilbert basis of a monoid", (("--monoid",), {"required": True}))
    strata = _add(sub, "strata", "faces and strata", _file("--p", "prime file", required=False))
    strata.add_argument("--monoid", help="ZZ^n | NN^n | cone{rays=[[..],..]}")
    _add(sub, "plot", "SVG of Phi(P) + sigma with sample primes", p,
         (("--pprime",), {"action": "append", "help": "sample prime file, repeatable"}),
         (("--out",), {"default": "closure.svg", "help": "output SVG path"}))
    _add(sub, "leading", "P-leading terms of a polynomial", p, (("--f",), {"required": True}))
    _add(sub, "arch", "archimedean classes of P", p)
    _add(sub, "partial-sum", "certified partial sum of a stream", _file("--stream", "stream file"), p,
         (("--threshold",), {"required": True, "help": "g, for the threshold Psi(t^g)"}), horizon)
    _add(sub, "restrict", "pull P back along a sublattice basis", p,
         (("--basis",), {"required": True, "help": "[[..],..]"}))
    return parser


def main(argv=None):
    """Main entry point for the tropadic command line."""
    parser = build_parser()
    args = parser.parse_args(argv)

    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr)

    if args.verb == "strata" and not (args.p or args.monoid):
        success, err, payload = False, "strata needs --p or --monoid", {"code": ParseError.code}
    else:
        success, err, payload = backend.run(args.verb, args)

    if success:
        print(formats.dumps(payload))
        return EXIT_OK
    print(formats.dumps(formats.error_payload(payload["code"], err)))
    return EXIT_PARSE_ERROR if payload["code"] == ParseError.code else EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
