"""Command-line front end.

Every subcommand prints a JSON report (``schema: 1``) on stdout, or a short
summary with ``--format text``. Exit status: 0 when every check passes, 1 when
a check is falsified, 2 for usage errors and inputs outside a command's
preconditions (including powers that are not invertible).
"""

from __future__ import annotations

import argparse
import sys
import time
from fractions import Fraction

from . import certificates
from .appendix import replay_appendix
from .deligne import (
    closure_trace,
    dim_power_poly,
    eval_at,
    falling_binomial,
    rising_binomial,
    solve_dimension_equation,
)
from .errors import FalsifiedIdentity, NotInvertibleError, ZeroObjectError
from .report import Check, VerificationReport
from .rigidity import (
    build_dual,
    certify,
    check_subdimension,
    construct,
    dimension_roots_check,
    dual_isomorphism,
    power_object,
    verify_phi_quadratic,
)
from .supertensor import SuperSpace
from .symgroup import (
    Mode,
    Permutation,
    alg_multiply,
    check_recursion,
    embed_with_identity_strand,
    power_idempotent,
)

EXIT_OK, EXIT_FALSIFIED, EXIT_USAGE = 0, 1, 2


# -- per-command check builders ------------------------------------------------


def recursion_checks(n, mode):
    rep = check_recursion(n, mode)
    ident = Permutation.identity(n)
    f = power_idempotent(n, mode)
    sub = embed_with_identity_strand(power_idempotent(n - 1, mode))
    return [
        Check(
            f"recursion-{mode}-n{n}",
            rep.holds,
            {
                "coefficient": rep.coefficient,
                "identity_coefficient_lhs": rep.lhs.coefficient(ident),
                "identity_coefficient_rhs": rep.rhs.coefficient(ident),
                "lhs": rep.lhs,
                "rhs": rep.rhs,
            },
        ),
        Check(f"idempotent-{mode}-n{n}", alg_multiply(f, f) == f),
        Check(f"absorption-{mode}-n{n}", alg_multiply(f, sub) == f and alg_multiply(sub, f) == f),
    ]


def rigidity_checks(X, n, mode):
    cert, checks = certify(X, n, mode)
    _, _, iso_checks = dual_isomorphism(cert)
    checks = checks + iso_checks
    checks.append(dimension_roots_check(cert))
    if Mode(mode) is Mode.BOSONIC and X.odd_dim == 0:
        checks.append(Check("bosonic-subdimension", check_subdimension(X, n, mode)))
    result = {
        "dimension": cert.dimension,
        "sign": cert.sign,
        "branch": cert.branch,
        "certificate": certificates.certificate_to_json(cert),
    }
    return checks, result, cert


def appendix_checks():
    checks = replay_appendix()
    final = checks[-1]
    return checks, {"phi2_coefficients": final.witness}


def _cross_backend_checks(n, mode, max_d=4):
    poly = dim_power_poly(n, mode)
    checks = []
    for d in range(1, max_d + 1):
        computed = power_object(SuperSpace.of(d), n, mode).dim
        checks.append(Check(f"cross-backend-{mode}-n{n}-even{d}", eval_at(poly, d) == computed, {"computed": computed}))
    for q in range(1, 3):
        space = power_object(SuperSpace.of(0, q), n, mode).space
        checks.append(
            Check(f"cross-backend-{mode}-n{n}-odd{q}", eval_at(poly, -q) == space.superdim, {"superdim": space.superdim})
        )
    return checks


def dimpoly_checks(n, mode):
    mode = Mode(mode)
    poly = closure_trace(power_idempotent(n, mode))
    closed = falling_binomial(n) if mode is Mode.BOSONIC else rising_binomial(n)
    # the next power vanishes at dimension n (bosonic) or -n (fermionic)
    root = n if mode is Mode.BOSONIC else -n
    nxt = falling_binomial(n + 1) if mode is Mode.BOSONIC else rising_binomial(n + 1)
    checks = [
        Check(f"closed-form-{mode}-n{n}", poly == closed, {"trace": poly, "closed_form": closed}),
        Check(f"next-power-vanishes-{mode}-n{n}", eval_at(nxt, root) == 0),
        Check(f"line-at-t{root}-{mode}-n{n}", abs(eval_at(poly, root)) == 1, {"value": eval_at(poly, root)}),
    ]
    if n <= 4:
        checks.extend(_cross_backend_checks(n, mode))
    return checks, {"polynomial": poly, "text": str(poly)}


def solve_checks(n, bound):
    found = solve_dimension_equation(n, bound)
    return [Check(f"dichotomy-n{n}", found == {n, -1}, {"solutions": sorted(found, reverse=True)})], {
        "solutions": sorted(found, reverse=True)
    }


def suite_checks(fixtures=None):
    checks = []
    # 1. recursion identity
    for n in range(2, 7):
        for mode in Mode:
            checks.extend(recursion_checks(n, mode))
    # 2. quadratic relation on (n|0)
    for n in (2, 3, 4):
        con = construct(SuperSpace.of(n), n, "bosonic")
        quad = verify_phi_quadratic(con)
        want = (Fraction(1, n), Fraction(1 - n, n))
        ok = quad.passed and con.sign == 1 and (quad.witness["id_coefficient"], quad.witness["phi_coefficient"]) == want
        checks.append(Check(f"quadratic-n{n}", ok, {k: quad.witness[k] for k in ("sign", "id_coefficient", "phi_coefficient")}))
    # 3. dual certificates
    for even, odd, n, mode in certificates.BACKENDS:
        label = f"dual-X{even}-{odd}-n{n}-{mode}"
        try:
            _, cert_checks = certify(SuperSpace.of(even, odd), n, mode)
        except (FalsifiedIdentity, NotInvertibleError) as exc:
            checks.append(Check(label, False, {"error": str(exc)}))
            continue
        checks.extend(Check(f"{label}:{c.name}", c.passed) for c in cert_checks)
    # 4. dimension dichotomy
    for n in range(2, 21):
        checks.extend(solve_checks(n, 10**4)[0])
    # 5. and 6. polynomial identity, vanishing and cross-backend values
    for n in range(1, 7):
        checks.extend(dimpoly_checks(n, "bosonic")[0])
    # 7. appendix replay
    checks.extend(appendix_checks()[0])
    # 8. stored certificate fixtures
    checks.extend(certificates.verify_fixture_dir(fixtures))
    return checks


# -- argument parsing ------------------------------------------------------------


def _positive(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _nonneg(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be a non-negative integer")
    return value


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")

    parser = argparse.ArgumentParser(prog="rigidcert", description="Exact verification of duals built from invertible powers.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("recursion", parents=[common], help="recursion identity in QS_n")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--mode", choices=[m.value for m in Mode], default="bosonic")

    p = sub.add_parser("rigidity", parents=[common], help="build and certify the dual of X = (even|odd)")
    p.add_argument("--even", type=_nonneg, required=True)
    p.add_argument("--odd", type=_nonneg, required=True)
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--mode", choices=[m.value for m in Mode], default="bosonic")
    p.add_argument("--save", metavar="PATH", help="write the certificate JSON to PATH")

    sub.add_parser("appendix", parents=[common], help="replay the n = 3 diagrammatic computation")

    p = sub.add_parser("dimpoly", parents=[common], help="dimension polynomial of the n-th power")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--mode", choices=[m.value for m in Mode], default="bosonic")

    p = sub.add_parser("solve-t", parents=[common], help="integer solutions of binom(t, n) = ±1")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--bound", type=_positive, required=True)

    p = sub.add_parser("suite", parents=[common], help="run the full acceptance matrix")
    p.add_argument("--fixtures", metavar="DIR", help="directory of stored certificates (default: packaged)")
    return parser


def _execute(args, report):
    cmd = args.command
    if cmd == "recursion":
        if args.n < 2:
            raise ValueError("recursion needs --n >= 2")
        report.extend(recursion_checks(args.n, args.mode))
    elif cmd == "rigidity":
        X = SuperSpace.of(args.even, args.odd)
        checks, result, cert = rigidity_checks(X, args.n, args.mode)
        report.extend(checks)
        report.result = result
        if args.save:
            certificates.write_certificate(cert, args.save)
    elif cmd == "appendix":
        checks, result = appendix_checks()
        report.extend(checks)
        report.result = result
    elif cmd == "dimpoly":
        checks, result = dimpoly_checks(args.n, args.mode)
        report.extend(checks)
        report.result = result
    elif cmd == "solve-t":
        if args.n < 2 or args.bound < args.n:
            raise ValueError("solve-t needs --n >= 2 and --bound >= n")
        checks, result = solve_checks(args.n, args.bound)
        report.extend(checks)
        report.result = result
    elif cmd == "suite":
        report.extend(suite_checks(args.fixtures))


def run(argv=None):
    """Parse ``argv``, run the command, print the report; returns ``(exit_code, report)``."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0), None
    params = {k: v for k, v in vars(args).items() if k not in ("command", "format", "save", "fixtures")}
    report = VerificationReport(args.command, params)
    start = time.perf_counter()
    code = None
    try:
        _execute(args, report)
    except NotInvertibleError as exc:
        report.error = str(exc)
        code = EXIT_USAGE
    except (ZeroObjectError, ValueError) as exc:
        report.error = f"invalid input: {exc}"
        code = EXIT_USAGE
    except FalsifiedIdentity as exc:
        report.error = f"falsified: {exc}"
        code = EXIT_FALSIFIED
    report.elapsed_ms = int((time.perf_counter() - start) * 1000)
    if code is None:
        code = EXIT_OK if report.passed else EXIT_FALSIFIED
    print(report.text() if args.format == "text" else report.dumps())
    return code, report


def main(argv=None):
    code, _ = run(argv)
    sys.exit(code)


if __name__ == "__main__":
    main()
