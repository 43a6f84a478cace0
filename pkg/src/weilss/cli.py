"""Command line entry point: ``weilss <subcommand>``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import asdict
from pathlib import Path

from . import harness
from .characters import (
    FrobeniusAction,
    GroupSpec,
    check_necessary,
    check_sufficient,
    minus_one_power_condition,
    nontrivial_characters,
)
from .errors import TheoremContradiction, WeilssError
from .exp_sums import AddChar, MultChar, gauss_sum, gauss_sum_lifted
from .families import predict
from .finite_field import make_field
from .weil import is_supersingular
from .zeta import ArtinSchreier, FermatCurve, LPolynomial, ThreePointCover, genus, l_polynomial, point_counts

EXIT_OK, EXIT_ERROR, EXIT_CONTRADICTION, EXIT_SKIPS = 0, 1, 2, 3


def _ints(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x.strip()]


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2, sort_keys=False))


def _curve(args):
    if args.family == "artin-schreier":
        return ArtinSchreier(args.p, args.qas if args.qas is not None else args.p, args.n)
    if args.family == "fermat":
        return FermatCurve(args.n, args.p, args.r)
    if args.a is None or args.b is None:
        raise SystemExit("three-point covers need --a and --b")
    return ThreePointCover(args.n, args.a, args.b, args.p, args.r)


def _add_curve_args(sp):
    sp.add_argument("--family", required=True, choices=["artin-schreier", "fermat", "three-point"])
    sp.add_argument("--p", type=int, required=True, help="characteristic")
    sp.add_argument("--r", type=int, default=1, help="base field F_{p^r} (Fermat, three-point)")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--qas", type=int, help="Artin-Schreier q in y^q - y = x^n (default p)")
    sp.add_argument("--a", type=int)
    sp.add_argument("--b", type=int)


def cmd_criterion(args) -> int:
    if args.group is None:
        if args.q is None or args.n is None:
            raise SystemExit("give --q and --n, or --group and --frob")
        s = minus_one_power_condition(args.q, args.n)
        print("none" if s is None else s)
        return EXIT_OK
    G = GroupSpec(tuple(_ints(args.group)))
    if args.frob is None:
        raise SystemExit("--group needs --frob")
    F = FrobeniusAction.multipliers(_ints(args.frob))
    if args.chars:
        data = json.loads(Path(args.chars).read_text())
        if isinstance(data, dict):
            data = data["characters"]
        chars = [G.character(c) for c in data]
    else:
        chars = nontrivial_characters(G)
    check = check_necessary if args.necessary else check_sufficient
    _emit(check(G, F, chars).to_json())
    return EXIT_OK


def cmd_gauss(args) -> int:
    ctx = make_field(args.p, args.k)
    chi = MultChar(ctx, args.char_order, args.char_index)
    psi = AddChar(ctx, ctx.one)
    g = gauss_sum(chi, psi) if args.r == 1 else gauss_sum_lifted(chi, psi, args.r)
    z = g.to_complex()
    _emit({"conductor": g.m, "coeffs": list(g.coeffs), "numeric": [z.real, z.imag], "abs": abs(z)})
    return EXIT_OK


def _open_cache(path, disabled):
    """File-backed cache, or an in-memory one that only lives for this command."""
    return harness.PointCountCache(None if disabled else path)


def cmd_zeta(args) -> int:
    C = _curve(args)
    cache = _open_cache(args.cache, args.no_cache)
    g = genus(C)
    L = l_polynomial(C, cache, point_cap=args.cap)
    counts = point_counts(C, max(g, 1), cache)
    if cache is not None:
        cache.flush()
    _emit({"curve": asdict(C) | {"family": C.family}, "genus": g, "q": C.q,
           "counts": counts.counts, "l_polynomial": list(L.coeffs)})
    return EXIT_OK


def cmd_sstest(args) -> int:
    L = LPolynomial(tuple(_ints(args.coeffs)), args.q, args.weight)
    _emit(is_supersingular(L).to_json())
    return EXIT_OK


def cmd_predict(args) -> int:
    _emit(predict(_curve(args)).to_json())
    return EXIT_OK


def cmd_survey(args) -> int:
    config = harness.SurveyConfig.from_json(json.loads(Path(args.config).read_text()))
    if args.workers is not None:
        config.workers = args.workers
    cache = _open_cache(args.cache, False)
    try:
        result = harness.survey(config, cache)
    except TheoremContradiction as exc:
        print(f"theorem contradiction, survey aborted: {exc}", file=sys.stderr)
        return EXIT_CONTRADICTION
    harness.write_csv(result.records, args.out)
    if args.jsonl:
        harness.write_jsonl(result.records, args.jsonl)
    _emit(result.summary)
    if args.strict and result.summary["skipped"]:
        print(f"{result.summary['skipped']} instances skipped by caps", file=sys.stderr)
        return EXIT_SKIPS
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="weilss", description="Supersingularity from character orbits and L-polynomials.")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("criterion", help="orbit criterion or the q^s = -1 (mod n) witness")
    sp.add_argument("--q", type=int)
    sp.add_argument("--n", type=int)
    sp.add_argument("--group", help="factor orders n1,n2,...")
    sp.add_argument("--frob", help="Frobenius multipliers m1,m2,... (one per factor)")
    sp.add_argument("--chars", help="JSON file with a list of exponent tuples (default: all nontrivial)")
    sp.add_argument("--necessary", action="store_true", help="run the necessity check instead")
    sp.set_defaults(func=cmd_criterion)

    sp = sub.add_parser("gauss", help="exact Gauss sum over F_{p^k}")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--k", type=int, default=1)
    sp.add_argument("--char-order", type=int, required=True)
    sp.add_argument("--char-index", type=int, default=1)
    sp.add_argument("--r", type=int, default=1, help="lift to F_{p^(k r)} through norm and trace")
    sp.set_defaults(func=cmd_gauss)

    sp = sub.add_parser("zeta", help="point counts and L-polynomial")
    _add_curve_args(sp)
    sp.add_argument("--cache", help="point-count cache file")
    sp.add_argument("--no-cache", action="store_true")
    sp.add_argument("--cap", type=int, default=10**7, help="largest q^g to count")
    sp.set_defaults(func=cmd_zeta)

    sp = sub.add_parser("sstest", help="supersingularity verdict for an L-polynomial")
    sp.add_argument("--coeffs", required=True, help="a_0,a_1,...,a_2g")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--weight", type=int, default=1)
    sp.set_defaults(func=cmd_sstest)

    sp = sub.add_parser("predict", help="criterion prediction for a curve")
    _add_curve_args(sp)
    sp.set_defaults(func=cmd_predict)

    sp = sub.add_parser("survey", help="run a parameter sweep")
    sp.add_argument("--config", required=True)
    sp.add_argument("--out", required=True, help="CSV report")
    sp.add_argument("--jsonl", help="also write JSON lines here")
    sp.add_argument("--cache")
    sp.add_argument("--workers", type=int)
    sp.add_argument("--strict", action="store_true", help="exit 3 if any instance was skipped")
    sp.set_defaults(func=cmd_survey)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (WeilssError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
