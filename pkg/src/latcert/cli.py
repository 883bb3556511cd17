"""Command-line front end: JSON in/out, deterministic reports, exit codes.

Exit codes: 0 = pass/true/found; 1 = fail/false/not-found-within-bounds;
2 = usage or malformed input; 3 = resource cap exhausted.
"""

import argparse
import json
import sys
from fractions import Fraction

from . import __version__, exact
from .actions import action_from_obj, coinvariant_lattice, invariant_lattice
from .catalog import CATALOG_NAMES, make
from .discforms import disc_form, ell, ell_p, form_to_obj
from .embeddings import nikulin_existence, nikulin_uniqueness, search_embedding
from .errors import LatcertError, NotFoundWithinBounds, ResourceCap, TooLarge
from .lattice import (
    Lattice,
    RationalSubspace,
    lattice_from_obj,
    lattice_to_obj,
    sublattice,
)
from .pipelines import (
    DEFAULT_CAP,
    DEFAULT_COORD_BOUND,
    DEFAULT_NORM_BOUND,
    Certificate,
    certificate_to_obj,
    ghv_converse,
    ghv_forward,
    lemma_standard_check,
    period_construct,
    star_check,
    star_search,
    thm1_condition_ii,
    _jsonable,
)
from .shortvec import roots

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_CAP = 3


def _emit(obj):
    payload = dict(obj)
    payload["version"] = __version__
    sys.stdout.write(json.dumps(_jsonable(payload), sort_keys=True, separators=(",", ":")))
    sys.stdout.write("\n")


def _read_json(path):
    if path == "-":
        return json.load(sys.stdin)
    with open(path) as fh:
        return json.load(fh)


def _load_lattice(path):
    return lattice_from_obj(_read_json(path))


def _load_action(path):
    return action_from_obj(_read_json(path))


def _prime_divisors(n):
    n = abs(n)
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _cmd_lat_info(args):
    lat = _load_lattice(args.file)
    p, n, z = lat.signature()
    report = {
        "rank": lat.rank,
        "signature": [p, n, z],
        "even": lat.is_even(),
        "det": lat.det(),
    }
    if z == 0 and lat.is_even() and lat.rank:
        form = disc_form(lat)
        report["disc_invariants"] = list(form.invariant_factors)
        report["ell"] = ell(form)
        report["ell_p"] = {str(q): ell_p(form, q) for q in _prime_divisors(lat.det())}
    _emit(report)
    return EXIT_PASS


def _cmd_lat_roots(args):
    lat = _load_lattice(args.file)
    found = roots(lat)
    if args.count_only:
        _emit({"count": len(found)})
    else:
        _emit({"count": len(found), "roots": found})
    return EXIT_PASS


def _cmd_lat_disc(args):
    lat = _load_lattice(args.file)
    _emit(form_to_obj(disc_form(lat)))
    return EXIT_PASS


def _cmd_catalog(args):
    wanted = args.name.lower()
    for name in CATALOG_NAMES:
        if name.lower() == wanted:
            _emit(lattice_to_obj(make(name)))
            return EXIT_PASS
    sys.stderr.write(f"unknown catalog name: {args.name}\n")
    return EXIT_USAGE


def _cmd_grp_invariant(args):
    action = _load_action(args.file)
    inv = invariant_lattice(action)
    coinv = coinvariant_lattice(action)
    report = {
        "rk_invariant": inv.rank,
        "rk_coinvariant": coinv.rank,
        "invariant_gram": inv.gram_rows(),
        "coinvariant_gram": coinv.gram_rows(),
    }
    code = EXIT_PASS
    if args.lemma:
        leech = make("Leech")
        if action.lattice.gram == leech.gram:
            cert = thm1_condition_ii(action)
        else:
            cert = Certificate(
                kind="thm1-ii",
                passed=False,
                evidence={"precondition_failed": ["action is not on the catalog Leech lattice"]},
            )
        report["lemma_suite"] = certificate_to_obj(cert)
        code = EXIT_PASS if cert.passed else EXIT_FAIL
    _emit(report)
    return code


def _cmd_embed_check(args):
    lat = _load_lattice(args.lat)
    try:
        p, n = (int(x) for x in args.target.split(","))
    except ValueError:
        sys.stderr.write("--target expects P,N\n")
        return EXIT_USAGE
    existence = nikulin_existence(lat, (p, n))
    uniqueness = nikulin_uniqueness(lat, (p, n))
    _emit(
        {
            "target": [p, n],
            "existence": {"status": existence.status, "reasons": [list(r[:2]) for r in existence.reasons]},
            "uniqueness": {"status": uniqueness.status, "reasons": [list(r[:2]) for r in uniqueness.reasons]},
        }
    )
    return EXIT_PASS if existence.status == "guaranteed" else EXIT_FAIL


def _cmd_embed_search(args):
    src = _load_lattice(args.src)
    dst = _load_lattice(args.dst)
    witness = search_embedding(src, dst, node_cap=args.cap)
    if witness is None:
        _emit({"found": False, "cap": args.cap})
        return EXIT_FAIL
    _emit({"found": True, "map": witness.map_rows(), "primitive": witness.primitive, "cap": args.cap})
    return EXIT_PASS


def _cmd_thm1_check(args):
    cert = thm1_condition_ii(_load_action(args.action))
    _emit(certificate_to_obj(cert))
    return EXIT_PASS if cert.passed else EXIT_FAIL


def _cmd_ghv_forward(args):
    cert = ghv_forward(_load_lattice(args.lg))
    _emit(certificate_to_obj(cert))
    return EXIT_PASS if cert.passed else EXIT_FAIL


def _cmd_ghv_converse(args):
    cert = ghv_converse(_load_action(args.action))
    _emit(certificate_to_obj(cert))
    return EXIT_PASS if cert.passed else EXIT_FAIL


def _cmd_star_check(args):
    lat = _load_lattice(args.l)
    context = _load_lattice(args.context)
    if lat.basis is None:
        sys.stderr.write("L must carry a basis inside the context lattice\n")
        return EXIT_USAGE
    cert = star_check(lat, context)
    _emit(certificate_to_obj(cert))
    return EXIT_PASS if cert.passed else EXIT_FAIL


def _cmd_star_search(args):
    context = _load_lattice(args.context)
    found = star_search(
        context,
        norm_bound=args.norm_bound,
        coord_bound=args.coord_bound,
        cap=args.cap,
    )
    if found is None:
        _emit(
            {
                "found": False,
                "bounds": {
                    "norm_bound": args.norm_bound,
                    "coord_bound": args.coord_bound,
                    "cap": args.cap,
                },
            }
        )
        return EXIT_FAIL
    lat, cert = found
    _emit(
        {
            "found": True,
            "lattice": lattice_to_obj(lat),
            "certificate": certificate_to_obj(cert),
        }
    )
    return EXIT_PASS


def _cmd_period_build(args):
    ng = _load_lattice(args.ng)
    v = None
    if args.v is not None:
        v = [Fraction(x) for x in args.v.split(",")]
    cert = period_construct(
        ng,
        v=v,
        norm_bound=args.norm_bound,
        coord_bound=args.coord_bound,
        cap=args.cap,
    )
    _emit(certificate_to_obj(cert))
    return EXIT_PASS if cert.passed else EXIT_FAIL


def build_parser():
    parser = argparse.ArgumentParser(prog="latcert")
    parser.add_argument("--threads", type=int, default=1, help="accepted for interface stability; execution is single-threaded")
    sub = parser.add_subparsers(dest="command", required=True)

    lat = sub.add_parser("lat").add_subparsers(dest="sub", required=True)
    p = lat.add_parser("info")
    p.add_argument("file")
    p.set_defaults(func=_cmd_lat_info)
    p = lat.add_parser("roots")
    p.add_argument("file")
    p.add_argument("--count-only", action="store_true")
    p.set_defaults(func=_cmd_lat_roots)
    p = lat.add_parser("disc")
    p.add_argument("file")
    p.set_defaults(func=_cmd_lat_disc)

    p = sub.add_parser("catalog")
    p.add_argument("name")
    p.set_defaults(func=_cmd_catalog)

    grp = sub.add_parser("grp").add_subparsers(dest="sub", required=True)
    p = grp.add_parser("invariant")
    p.add_argument("file")
    p.add_argument("--lemma", action="store_true")
    p.set_defaults(func=_cmd_grp_invariant)

    embed = sub.add_parser("embed").add_subparsers(dest="sub", required=True)
    p = embed.add_parser("check")
    p.add_argument("lat")
    p.add_argument("--target", required=True)
    p.set_defaults(func=_cmd_embed_check)
    p = embed.add_parser("search")
    p.add_argument("src")
    p.add_argument("dst")
    p.add_argument("--cap", type=int, default=10**7)
    p.set_defaults(func=_cmd_embed_search)

    thm1 = sub.add_parser("thm1").add_subparsers(dest="sub", required=True)
    p = thm1.add_parser("check")
    p.add_argument("action")
    p.set_defaults(func=_cmd_thm1_check)

    ghv = sub.add_parser("ghv").add_subparsers(dest="sub", required=True)
    p = ghv.add_parser("forward")
    p.add_argument("lg")
    p.set_defaults(func=_cmd_ghv_forward)
    p = ghv.add_parser("converse")
    p.add_argument("action")
    p.set_defaults(func=_cmd_ghv_converse)

    star = sub.add_parser("star").add_subparsers(dest="sub", required=True)
    p = star.add_parser("check")
    p.add_argument("l")
    p.add_argument("context")
    p.set_defaults(func=_cmd_star_check)
    p = star.add_parser("search")
    p.add_argument("context")
    p.add_argument("--norm-bound", type=int, default=DEFAULT_NORM_BOUND)
    p.add_argument("--coord-bound", type=int, default=DEFAULT_COORD_BOUND)
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.set_defaults(func=_cmd_star_search)

    period = sub.add_parser("period").add_subparsers(dest="sub", required=True)
    p = period.add_parser("build")
    p.add_argument("ng")
    p.add_argument("--v")
    p.add_argument("--norm-bound", type=int, default=DEFAULT_NORM_BOUND)
    p.add_argument("--coord-bound", type=int, default=DEFAULT_COORD_BOUND)
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.set_defaults(func=_cmd_period_build)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_PASS
    try:
        return args.func(args)
    except (ResourceCap, TooLarge) as exc:
        sys.stderr.write(f"resource cap: {exc}\n")
        return EXIT_CAP
    except NotFoundWithinBounds as exc:
        sys.stderr.write(f"not found within bounds: {exc}\n")
        return EXIT_FAIL
    except FileNotFoundError as exc:
        sys.stderr.write(f"cannot read input: {exc}\n")
        return EXIT_USAGE
    except (json.JSONDecodeError, KeyError, ValueError, AssertionError, LatcertError) as exc:
        sys.stderr.write(f"malformed input: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
