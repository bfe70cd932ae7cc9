"""Command-line front end.

Exit codes: 0 holds / certified / success, 1 fails with a witness,
2 inconclusive (bounds, unmet (ES), or theorem hypotheses unmet),
3 input or usage error.
"""
from __future__ import annotations

import argparse
import logging
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import report
from .arith import is_prime, is_squarefree, kronecker, val_p
from .criterion import (
    CERTIFIED_HOLDS,
    FAILS_WITH_WITNESS,
    HOLDS,
    REJECTED,
    compute_prime_sets,
    criterion_run,
    theorem2_certify,
)
from .errors import SunitFermatError
from .exprparse import parse_element
from .legendre_frey import (
    conductor_report,
    content_ideal,
    frey_invariants,
    j_of_lambda,
    jval_conditions,
    pgr_outside_S,
    phi_inverse,
    phi_map,
)
from .quadfield import fundamental_unit, make_field, ord_prime, splitting_type
from .sunit import (
    DEFAULT_BOUNDS,
    SearchBounds,
    SUnitSolution,
    canonical_set,
    enumerate_bruteforce,
    enumerate_param,
    rational_integral_solutions,
    s3_orbit,
    two_q_primes,
)

EXIT_OK, EXIT_FAILS, EXIT_INCONCLUSIVE, EXIT_USAGE = 0, 1, 2, 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _add_bounds(p: argparse.ArgumentParser) -> None:
    for name, default in DEFAULT_BOUNDS.as_dict().items():
        p.add_argument(f"--{name.replace('_', '-')}", type=int, default=default, dest=name)


def _bounds(args) -> SearchBounds:
    return SearchBounds(**{k: getattr(args, k) for k in DEFAULT_BOUNDS.as_dict()})


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sunitfermat", description=__doc__.splitlines()[0])
    parser.add_argument("--json", action="store_true", help="emit canonical JSON on stdout")
    parser.add_argument("--threads", type=int, default=1, help="worker processes")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("splitting", help="primes of O_K above p")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--p", type=int, required=True)

    p = sub.add_parser("sunit", help="solve lambda + mu = 1 for S = primes above 2 and q")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--method", choices=("brute", "param", "both"), default="both")
    _add_bounds(p)

    p = sub.add_parser("legendre", help="orbit, j-invariant and 2-adic conditions of lambda")
    p.add_argument("--d", type=int, default=13)
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--q", type=int, action="append", default=[],
                   help="odd prime to add to S (repeatable)")

    p = sub.add_parser("frey", help="Frey curve invariants and conductor data")
    p.add_argument("--d", type=int, default=13)
    for name in ("A", "B", "C", "a", "b", "c"):
        p.add_argument(f"--{name}", required=True)
    p.add_argument("--p", type=int, required=True)

    p = sub.add_parser("criterion", help="evaluate the criterion for (A, B, C)")
    p.add_argument("--d", type=int, required=True)
    for name in ("A", "B", "C"):
        p.add_argument(f"--{name}", required=True)
    p.add_argument("--assume-es", action="store_true",
                   help="assume the Eichler-Shimura conjecture for K")
    _add_bounds(p)

    p = sub.add_parser("theorem2", help="certify x^p + y^p + q^r z^p = 0 for a pair (d, q)")
    p.add_argument("--d", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--dmax", type=int, help="grid mode: all d <= dmax")
    p.add_argument("--qmax", type=int, help="grid mode: all q <= qmax")
    _add_bounds(p)

    p = sub.add_parser("selfcheck", help="randomised property checks")
    p.add_argument("--d", type=int, default=13)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=200)
    return parser


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(report.dumps(payload))
    else:
        print(text)


def cmd_splitting(args) -> int:
    F = make_field(args.d)
    primes = splitting_type(F, args.p)
    payload = {"schema": 1, "field": report.field_dict(F), "p": args.p,
               "primes": [P.as_dict() for P in primes]}
    text = "\n".join(
        f"{P}: {P.split_type}, f = {P.f}, e = {P.e}" + (f", root = {P.root}" if P.root is not None else "")
        for P in primes
    )
    _emit(args, payload, text)
    return EXIT_OK


def _solutions_payload(sols) -> list:
    return [report.solution_dict(s) for s in sols]


def cmd_sunit(args) -> int:
    F = make_field(args.d)
    bounds = _bounds(args)
    S = two_q_primes(F, args.q)
    payload = {"schema": 1, "field": report.field_dict(F), "q": args.q,
               "S": [P.as_dict() for P in S], "bounds": bounds.as_dict()}
    lines = [f"field {F}, S = {{{', '.join(map(str, S))}}}"]
    brute_ids = param_ids = None
    if args.method in ("brute", "both"):
        res = enumerate_bruteforce(F, S, bounds, workers=args.threads)
        brute_ids = {s.canonical_id for s in res.solutions}
        payload["brute"] = {"solutions": _solutions_payload(res.solutions),
                            "candidates": res.candidates, "completeness": res.completeness}
        lines.append(f"brute force ({res.candidates} candidates, {res.completeness}):")
        lines += [f"  {s}" for s in res.solutions]
    if args.method in ("param", "both"):
        ps = enumerate_param(F.d, args.q, bounds)
        rat = [SUnitSolution.from_lambda(F.elem(l), S) for l, _ in rational_integral_solutions(args.q, bounds)]
        sols = canonical_set([p.to_solution(F, args.q) for p in ps] + rat)
        param_ids = {s.canonical_id for s in sols}
        payload["param"] = {
            "tuples": [vars(p) for p in ps],
            "solutions": _solutions_payload(sols),
            "completeness": "up-to-bounds",
        }
        lines.append(f"parametrised + rational ({len(ps)} parametrised tuples, up-to-bounds):")
        lines += [f"  {s}" for s in sols]
    if args.method == "both":
        agree = brute_ids == param_ids
        payload["agreement"] = agree
        lines.append(f"agreement: {agree}")
        _emit(args, payload, "\n".join(lines))
        return EXIT_OK if agree else EXIT_FAILS
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def _two_adic(F, lam):
    out = []
    for P in splitting_type(F, 2):
        jv = jval_conditions(lam, 1 - lam, P)
        out.append({"prime": P.as_dict(), "cond_i": jv.cond_i, "cond_ii": jv.cond_ii,
                    "ord_j": jv.ord_j, "t": jv.t})
    return out


def cmd_legendre(args) -> int:
    F = make_field(args.d)
    lam = parse_element(args.lam, F)
    orbit = s3_orbit(lam)
    j = j_of_lambda(lam)
    curve = phi_inverse(lam)
    S = list(splitting_type(F, 2))
    for q in args.q:
        S += splitting_type(F, q)
    round_trip = phi_map(curve) == orbit
    integral = pgr_outside_S(j, S)
    payload = {
        "schema": 1, "field": report.field_dict(F), "lambda": lam,
        "orbit": list(orbit), "j": j, "curve_roots": list(curve.roots),
        "curve_j": curve.j, "round_trip": round_trip,
        "S": [P.as_dict() for P in S], "j_integral_outside_S": integral,
        "two_adic": _two_adic(F, lam),
    }
    lines = [
        f"lambda = {lam} in {F}",
        f"orbit: {{{', '.join(map(str, orbit))}}}",
        f"j = {j}",
        f"Legendre curve roots: {', '.join(map(str, curve.roots))}; orbit round trip: {round_trip}",
        f"j integral outside S = {{{', '.join(map(str, S))}}}: {integral}",
    ]
    for e in payload["two_adic"]:
        lines.append(f"  at P | 2 (e = {e['prime']['e']}, f = {e['prime']['f']}): "
                     f"t = {e['t']}, ord_j = {e['ord_j']}, (i) {e['cond_i']}, (ii) {e['cond_ii']}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_frey(args) -> int:
    F = make_field(args.d)
    vals = {n: parse_element(getattr(args, n), F) for n in ("A", "B", "C", "a", "b", "c")}
    frey = frey_invariants(vals["A"], vals["B"], vals["C"], vals["a"], vals["b"], vals["c"], args.p)
    S = compute_prime_sets(F, vals["A"], vals["B"], vals["C"]).S
    cond = conductor_report(frey, S)
    content = content_ideal(vals["a"], vals["b"], vals["c"])
    curve = frey.curve
    payload = {
        "schema": 1, "field": report.field_dict(F),
        "coefficients": {n: vals[n] for n in ("A", "B", "C")},
        "solution": {n: vals[n] for n in ("a", "b", "c")}, "p": args.p,
        "roots": list(curve.roots), "c4": curve.c4, "c6": curve.c6, "disc": curve.disc,
        "content": [[P.as_dict(), e] for P, e in content.factorization],
        "conductor": [e.as_dict() for e in cond],
    }
    lines = [
        f"Frey curve over {F}: roots {', '.join(map(str, curve.roots))}",
        f"c4 = {curve.c4}", f"c6 = {curve.c6}", f"disc = {curve.disc}",
        f"content: {'trivial' if content.is_trivial else content.factorization}",
    ]
    for e in cond:
        expo = e.exponent_lo if e.exact else f"[{e.exponent_lo}, {e.exponent_hi}]"
        lines.append(f"  {e.prime}: {e.kind}, ord(disc) = {e.ord_disc}, conductor exponent {expo}"
                     + (", in M_p" if e.in_M_p else ""))
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def _verdict_code(verdict: str) -> int:
    if verdict == HOLDS:
        return EXIT_OK
    if verdict == FAILS_WITH_WITNESS:
        return EXIT_FAILS
    return EXIT_INCONCLUSIVE


def cmd_criterion(args) -> int:
    F = make_field(args.d)
    A, B, C = (parse_element(getattr(args, n), F) for n in ("A", "B", "C"))
    rep = criterion_run(F, A, B, C, _bounds(args), conjecture_flag=args.assume_es,
                        workers=args.threads)
    _emit(args, report.criterion_dict(rep), report.criterion_text(rep))
    return _verdict_code(rep.verdict)


def _cert_code(cert) -> int:
    if cert.status == CERTIFIED_HOLDS:
        return EXIT_OK
    if cert.status == REJECTED:
        return EXIT_INCONCLUSIVE
    return EXIT_FAILS


def grid_pairs(dmax: int, qmax: int) -> list[tuple[int, int]]:
    ds = [d for d in range(13, dmax + 1) if d % 8 == 5 and is_squarefree(d)]
    qs = [q for q in range(29, qmax + 1) if q % 8 == 5 and is_prime(q)]
    return [(d, q) for d in ds for q in qs if kronecker(d, q) == -1]


def _grid_one(job):
    d, q, bounds = job
    cert = theorem2_certify(d, q, bounds)
    witnesses = sorted({str(o.condB_witness) for o in cert.report.outcomes if o.condB_witness})
    return {"d": d, "q": q, "status": cert.status,
            "relevant_solutions": len(cert.relevant_solutions),
            "solver_agreement": cert.report.solver_agreement,
            "condB_witnesses": witnesses}


def cmd_theorem2(args) -> int:
    bounds = _bounds(args)
    if args.dmax is not None or args.qmax is not None:
        if args.dmax is None or args.qmax is None:
            raise _UsageError("grid mode needs both --dmax and --qmax")
        jobs = [(d, q, bounds) for d, q in grid_pairs(args.dmax, args.qmax)]
        if args.threads > 1:
            with ProcessPoolExecutor(max_workers=args.threads) as ex:
                rows = list(ex.map(_grid_one, jobs))
        else:
            rows = [_grid_one(j) for j in jobs]
        rows.sort(key=lambda r: (r["d"], r["q"]))
        n_ok = sum(r["status"] == CERTIFIED_HOLDS for r in rows)
        payload = {"schema": 1, "kind": "theorem2-grid", "dmax": args.dmax, "qmax": args.qmax,
                   "pairs": rows, "certified": n_ok, "total": len(rows)}
        text = "\n".join(f"d = {r['d']:4d}  q = {r['q']:4d}  {r['status']}" for r in rows)
        text += f"\n{n_ok}/{len(rows)} pairs certified"
        _emit(args, payload, text)
        return EXIT_OK if n_ok == len(rows) else EXIT_FAILS
    if args.d is None or args.q is None:
        raise _UsageError("theorem2 needs --d and --q (or --dmax and --qmax)")
    cert = theorem2_certify(args.d, args.q, bounds, workers=args.threads)
    _emit(args, report.certificate_dict(cert), report.certificate_text(cert))
    for name, detail in cert.failed_hypotheses:
        print(f"hypothesis failed: {name}: {detail}", file=sys.stderr)
    return _cert_code(cert)


def cmd_selfcheck(args) -> int:
    """Random valuation and j-invariant checks; exit 1 on any violation."""
    rng = random.Random(args.seed)
    F = make_field(args.d)
    eps = fundamental_unit(F)
    primes = [2, 3, 5, 7]
    failures = 0
    for _ in range(args.count):
        x = F.elem(Fraction(rng.randint(-99, 99), rng.randint(1, 9)),
                   Fraction(rng.randint(-99, 99), rng.randint(1, 9)))
        if not x:
            continue
        for p in primes:
            lhs = val_p(x.norm(), p)
            rhs = sum(P.f * ord_prime(P, x) for P in splitting_type(F, p))
            failures += lhs != rhs
        lam = eps ** rng.randint(-4, 4) * (-1) ** rng.randint(0, 1) * Fraction(2) ** rng.randint(-6, 6)
        if lam != 1:
            try:
                _two_adic(F, lam)
            except AssertionError:
                failures += 1
    payload = {"schema": 1, "field": report.field_dict(F), "seed": args.seed,
               "count": args.count, "failures": failures}
    _emit(args, payload, f"{args.count} random cases in {F}: {failures} failures")
    return EXIT_OK if failures == 0 else EXIT_FAILS


COMMANDS = {
    "splitting": cmd_splitting,
    "sunit": cmd_sunit,
    "legendre": cmd_legendre,
    "frey": cmd_frey,
    "criterion": cmd_criterion,
    "theorem2": cmd_theorem2,
    "selfcheck": cmd_selfcheck,
}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        return COMMANDS[args.command](args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SunitFermatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
