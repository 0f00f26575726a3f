"""Command-line front end.

Commands (stdout is machine-readable JSON or CSV on every success path;
human commentary goes to stderr):

    hinv gen {ohm|dual-ohm|self-dual|second-mixed|strange3} --n N
             [--n-prime N'] [--extend M] [--out FILE]
    hinv certify FILE
    hinv dual FILE [--out FILE]
    hinv falsify FILE [--pair I J] [--emit-vectors] [--out FILE]
    hinv simulate --h FILE --oracle {worstcase|rotation:THETA|matrix:FILE}
                  --y0 {worstcase|FILE} [--steps K] [--r-sq R2]
    hinv sweep --family NAME --n-range A:B [--n-prime-range A:B]
    hinv oracle-check --seed S [--n-max K] [--inject-bug]

Exit codes: 0 success; 1 malformed input; certify: 2 invariance violated,
3 certificate violated; falsify: 4 nothing to falsify (input optimal),
5 input violates invariance (excess report emitted instead); oracle-check:
6 on any oracle mismatch.  Set HINV_COLOR=0/1 to force-disable/enable the
coloring of stderr summaries.
"""

import argparse
import json
import os
import random
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import numpy as np

from . import catalog, oracles, serialization, simulate, worstcase
from .algebra import h_dual
from .certify import (
    STATUS_INVARIANCE_VIOLATED,
    STATUS_OPTIMAL,
    certificates,
    certify,
    solve_lambda_by_elimination,
)

EXIT_OK = 0
EXIT_MALFORMED = 1
EXIT_INVARIANCE = 2
EXIT_CERTIFICATE = 3
EXIT_NOTHING_TO_FALSIFY = 4
EXIT_FALSIFY_INVARIANCE = 5
EXIT_ORACLE_MISMATCH = 6


def _use_color():
    env = os.environ.get("HINV_COLOR")
    if env == "0":
        return False
    if env == "1":
        return True
    return sys.stderr.isatty()


def _say(text, color=None):
    codes = {"green": "32", "red": "31", "yellow": "33"}
    if color in codes and _use_color():
        text = f"\x1b[{codes[color]}m{text}\x1b[0m"
    print(text, file=sys.stderr)


def _write_out(payload: str, path):
    if path in (None, "-"):
        sys.stdout.write(payload)
        if not payload.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(payload)
            if not payload.endswith("\n"):
                fh.write("\n")


def _load_hmatrix(path):
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
        return serialization.hmatrix_from_dict(data)
    except (OSError, ValueError, TypeError) as exc:
        _say(f"cannot read step matrix from {path}: {exc}", "red")
        raise SystemExit(EXIT_MALFORMED)


def _generate(family, n, n_prime):
    if family == "ohm":
        return catalog.ohm(n)
    if family == "dual-ohm":
        return catalog.dual_ohm(n)
    if family == "self-dual":
        if n_prime is None:
            raise ValueError("--n-prime is required for self-dual")
        return catalog.self_dual_mixed(n, n_prime)
    if family == "second-mixed":
        if n_prime is None:
            raise ValueError("--n-prime is required for second-mixed")
        return catalog.second_mixed(n, n_prime)
    if family == "strange3":
        return catalog.strange3()
    raise ValueError(f"unknown family {family!r}")


def cmd_gen(args):
    try:
        h = _generate(args.family, args.n, args.n_prime)
        if args.extend is not None:
            h = catalog.anytime_extend(h, args.extend)
    except ValueError as exc:
        _say(f"gen: {exc}", "red")
        return EXIT_MALFORMED
    _write_out(json.dumps(serialization.hmatrix_to_dict(h), indent=2), args.out)
    return EXIT_OK


def cmd_certify(args):
    h = _load_hmatrix(args.input)
    verdict = certify(h)
    _write_out(json.dumps(serialization.verdict_to_dict(verdict), indent=2), None)
    if verdict.status == STATUS_OPTIMAL:
        lam = verdict.certificates
        _say(f"optimal: horizon {h.n}, min certificate {lam.min_value()}", "green")
        return EXIT_OK
    if verdict.status == STATUS_INVARIANCE_VIOLATED:
        _say(f"invariance violated: max |residual| = {verdict.report.max_abs()}", "red")
        return EXIT_INVARIANCE
    pairs = ", ".join(f"({k},{j})" for k, j in verdict.negative)
    _say(f"certificate violated at {pairs}", "red")
    return EXIT_CERTIFICATE


def cmd_dual(args):
    h = _load_hmatrix(args.input)
    _write_out(json.dumps(serialization.hmatrix_to_dict(h_dual(h)), indent=2), args.out)
    return EXIT_OK


def cmd_falsify(args):
    h = _load_hmatrix(args.input)
    verdict = certify(h)
    if verdict.status == STATUS_OPTIMAL:
        _say("nothing to falsify: the method certifies optimal", "yellow")
        return EXIT_NOTHING_TO_FALSIFY
    if verdict.status == STATUS_INVARIANCE_VIOLATED:
        residual = worstcase.worst_case_residual_sq(h, 1)
        bound = Fraction(4, h.n ** 2)
        payload = {
            "status": "invariance_violated",
            "residual_sq": serialization.format_rational(residual),
            "bound_sq": serialization.format_rational(bound),
            "excess": serialization.format_rational(residual - bound),
        }
        _write_out(json.dumps(payload, indent=2), args.out)
        _say("invariance already violated: the cyclic operator exceeds the bound "
             f"by {payload['excess']}; no perturbation needed", "yellow")
        return EXIT_FALSIFY_INVARIANCE
    pair = tuple(args.pair) if args.pair else None
    try:
        if pair is not None:
            witness = worstcase.suboptimality_witness(h, pair[0], pair[1])
        else:
            witness = worstcase.suboptimality_witness(h)
    except ValueError as exc:
        _say(f"falsify: {exc}", "red")
        return EXIT_MALFORMED
    doc = serialization.witness_to_dict(witness)
    if args.emit_vectors:
        doc["vectors"] = [[float(x) for x in vec] for vec in worstcase.witness_vectors(witness)]
    _write_out(json.dumps(doc, indent=2), args.out)
    _say(f"witness at pair {witness.violated_pair}: residual_sq = "
         f"{doc['residual_sq']} > {doc['bound_sq']}", "green")
    return EXIT_OK


def _oracle_from_spec(spec, dim):
    if spec == "worstcase":
        return simulate.worst_case_oracle(dim)
    if spec.startswith("rotation:"):
        return simulate.rotation_oracle(float(spec.split(":", 1)[1]))
    if spec.startswith("matrix:"):
        with open(spec.split(":", 1)[1], encoding="utf-8") as fh:
            m = np.array(json.load(fh), dtype=float)
        return simulate.linear_oracle(m)
    raise ValueError(f"unknown oracle spec {spec!r}")


def cmd_simulate(args):
    h = _load_hmatrix(args.h)
    if args.steps is not None:
        if args.steps > h.n_minus_1:
            _say(f"--steps {args.steps} exceeds the matrix dimension {h.n_minus_1}", "red")
            return EXIT_MALFORMED
        h = h.truncate(args.steps)
    try:
        oracle = _oracle_from_spec(args.oracle, h.n)
        if args.y0 == "worstcase":
            if args.oracle != "worstcase":
                raise ValueError("--y0 worstcase only pairs with --oracle worstcase")
            y0 = simulate.worst_case_start(h.n, args.r_sq if args.r_sq else 1.0)
        else:
            with open(args.y0, encoding="utf-8") as fh:
                y0 = np.array(json.load(fh), dtype=float)
    except (OSError, ValueError) as exc:
        _say(f"simulate: {exc}", "red")
        return EXIT_MALFORMED
    r_sq = args.r_sq if args.r_sq is not None else float(y0 @ y0)
    traj = simulate.run(h, oracle, y0, r_sq=r_sq)
    print("k,residual_sq,bound_sq,ratio")
    for k, (res, bnd) in enumerate(zip(traj.residuals_sq, traj.bound_sq)):
        print(f"{k},{res:.17g},{bnd:.17g},{res / bnd:.17g}")
    return EXIT_OK


def _parse_range(text):
    lo, _, hi = text.partition(":")
    lo, hi = int(lo), int(hi or lo)
    if hi < lo:
        raise ValueError(f"empty range {text!r}")
    return range(lo, hi + 1)


def _sweep_cell(family, n, n_prime):
    h = _generate(family, n, n_prime)
    verdict = certify(h)
    min_lam = ""
    if verdict.certificates is not None:
        min_lam = serialization.format_rational(verdict.certificates.min_value())
    return (
        family,
        str(n),
        "" if n_prime is None else str(n_prime),
        verdict.status,
        min_lam,
        serialization.format_rational(verdict.report.max_abs()),
    )


def cmd_sweep(args):
    try:
        ns = _parse_range(args.n_range)
        cells = []
        if args.family == "strange3":
            cells.append((args.family, 4, None))  # fixed-size member
        else:
            for n in ns:
                if args.family in ("self-dual", "second-mixed"):
                    primes = (
                        _parse_range(args.n_prime_range)
                        if args.n_prime_range
                        else range(2, n - 1)
                    )
                    cells.extend((args.family, n, p) for p in primes if 2 <= p <= n - 2)
                else:
                    cells.append((args.family, n, None))
    except ValueError as exc:
        _say(f"sweep: {exc}", "red")
        return EXIT_MALFORMED
    print("family,n,n_prime,status,min_lambda,max_residual")
    with ThreadPoolExecutor() as pool:
        for row in pool.map(lambda cell: _sweep_cell(*cell), cells):
            print(",".join(row))
    return EXIT_OK


def _oracle_check_report(seed, n_max, inject_bug=False):
    """Run every oracle family; returns (lines, first_counterexample or None)."""
    rng = random.Random(seed)
    lines = []
    counterexample = None

    def record(name, ok, detail=""):
        nonlocal counterexample
        lines.append(f"{'PASS' if ok else 'FAIL'} {name}{': ' + detail if detail else ''}")
        if not ok and counterexample is None:
            counterexample = {"oracle": name, "detail": detail}

    from .algebra import p_invariant, q_partial

    mismatch = None
    for size in range(1, min(n_max, 6) + 1):
        for _ in range(3):
            h = oracles.random_h(rng, size)
            for k in range(1, size + 1):
                for m in range(0, k + 1):
                    fast = p_invariant(h, k, m)
                    slow = oracles.p_by_enumeration(h, k, m)
                    if inject_bug and mismatch is None:
                        slow += 1
                    if fast != slow:
                        mismatch = {"h": serialization.hmatrix_to_dict(h), "k": k, "m": m,
                                    "fast": str(fast), "slow": str(slow)}
                        break
                for m in range(1, k + 1):
                    for j in range(1, k + 1):
                        if q_partial(h, k, m, j) != oracles.q_by_enumeration(h, k, m, j):
                            mismatch = mismatch or {
                                "h": serialization.hmatrix_to_dict(h), "k": k, "m": m, "j": j}
                if mismatch:
                    break
            if mismatch:
                break
        if mismatch:
            break
    record("invariant-enumeration", mismatch is None, json.dumps(mismatch) if mismatch else "")

    lam_bad = None
    for n in range(3, min(n_max, 8) + 1):
        for _ in range(3):
            h = oracles.random_invariant_h(rng, n)
            if certificates(h) != solve_lambda_by_elimination(h):
                lam_bad = {"h": serialization.hmatrix_to_dict(h)}
                break
        if lam_bad:
            break
    record("certificate-solvers", lam_bad is None, json.dumps(lam_bad) if lam_bad else "")

    bad = oracles.check_vandermonde_convolution(20)
    record("vandermonde-convolution", not bad, str(bad[:3]) if bad else "")
    bad = oracles.check_hockey_stick(20)
    record("hockey-stick", not bad, str(bad[:3]) if bad else "")
    bad = oracles.check_binomial_sum_identities(20)
    record("binomial-sums", not bad, str(bad[:3]) if bad else "")

    return lines, counterexample


def cmd_oracle_check(args):
    if args.n_max > 8:
        _say("--n-max is capped at 8 (enumeration cost)", "red")
        return EXIT_MALFORMED
    lines, counterexample = _oracle_check_report(args.seed, args.n_max, args.inject_bug)
    for line in lines:
        print(line)
    if counterexample is not None:
        print(json.dumps({"counterexample": counterexample}))
        return EXIT_ORACLE_MISMATCH
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="hinv",
        description="Exact certification and construction of rate-optimal "
                    "fixed-step methods for nonexpansive fixed-point problems.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a named family member")
    p.add_argument("family", choices=["ohm", "dual-ohm", "self-dual", "second-mixed", "strange3"])
    p.add_argument("--n", type=int, default=4, help="horizon N (ignored by strange3)")
    p.add_argument("--n-prime", type=int, default=None, help="split column for mixed families")
    p.add_argument("--extend", type=int, default=None,
                   help="extend to this dimension with the forced per-iterate-optimal tail")
    p.add_argument("--out", default=None, help="output file ('-' or omit for stdout)")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("certify", help="certify a step-matrix file")
    p.add_argument("input")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("dual", help="anti-diagonal transpose of a step-matrix file")
    p.add_argument("input")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_dual)

    p = sub.add_parser("falsify", help="emit an exact rate-violation witness")
    p.add_argument("input")
    p.add_argument("--pair", type=int, nargs=2, metavar=("I", "J"), default=None,
                   help="negative-certificate pair to activate (default: smallest)")
    p.add_argument("--emit-vectors", action="store_true",
                   help="append float realization vectors to the witness JSON")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_falsify)

    p = sub.add_parser("simulate", help="run a step matrix against an operator oracle")
    p.add_argument("--h", required=True, help="step-matrix file")
    p.add_argument("--oracle", default="worstcase",
                   help="worstcase | rotation:THETA | matrix:FILE")
    p.add_argument("--y0", default="worstcase", help="worstcase | FILE (JSON array)")
    p.add_argument("--steps", type=int, default=None, help="run only this many steps")
    p.add_argument("--r-sq", type=float, default=None,
                   help="squared initial distance (default |y0|^2)")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("sweep", help="certify a family across a range of sizes (CSV)")
    p.add_argument("--family", required=True,
                   choices=["ohm", "dual-ohm", "self-dual", "second-mixed", "strange3"])
    p.add_argument("--n-range", required=True, help="A:B inclusive")
    p.add_argument("--n-prime-range", default=None, help="A:B inclusive (mixed families)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("oracle-check", help="run the slow-path oracles against the library")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--n-max", type=int, default=6)
    p.add_argument("--inject-bug", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_oracle_check)

    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SystemExit as exc:
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
