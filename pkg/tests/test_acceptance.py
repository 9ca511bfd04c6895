"""Acceptance gate: eight criteria, exact equality (tolerance 0) throughout.

Each test records one line in ``RESULTS``; ``conftest.py`` prints them at the
end of the run. Running this file directly prints the same lines.
"""

import copy
import json
import shutil
import time
from contextlib import contextmanager
from fractions import Fraction
from math import comb

import pytest

from rigidcert.appendix import replay_appendix
from rigidcert.certificates import BACKENDS, FIXTURE_DIR, MAP_FIELDS, fixture_name, verify_certificate_json
from rigidcert.cli import run
from rigidcert.deligne import closure_trace, dim_power_poly, eval_at, falling_binomial, solve_dimension_equation
from rigidcert.rigidity import build_dual, certify, construct, power_object, verify_phi_quadratic, verify_psi_relation
from rigidcert.supertensor import SuperSpace
from rigidcert.symgroup import Mode, Permutation, antisymmetrizer, check_recursion

RESULTS = {}


@contextmanager
def criterion(number, title, limit=None):
    start = time.perf_counter()
    status = "FAIL"
    try:
        yield
        elapsed = time.perf_counter() - start
        if limit is not None:
            assert elapsed < limit, f"took {elapsed:.2f}s, limit {limit}s"
        status = "PASS"
    finally:
        elapsed = time.perf_counter() - start
        RESULTS[number] = f"[{status}] {number}. {title} ({elapsed:.2f}s)"


def test_criterion_1_recursion_identity():
    with criterion(1, "recursion identity, both modes, n=2..6", limit=10):
        for n in range(2, 7):
            for mode in Mode:
                assert check_recursion(n, mode).holds, (n, mode)
        rep = check_recursion(3, "bosonic")
        ident = Permutation.identity(3)
        assert rep.lhs.coefficient(ident) == rep.rhs.coefficient(ident) == Fraction(1, 6)


def test_criterion_2_quadratic_relation():
    with criterion(2, "quadratic relation for phi on (n|0), n=2,3,4", limit=30):
        for n in (2, 3, 4):
            con = construct(SuperSpace.of(n), n, "bosonic")
            assert con.sign == 1
            check = verify_phi_quadratic(con)
            assert check.passed
            assert check.witness["id_coefficient"] == Fraction(1, n)
            assert check.witness["phi_coefficient"] == Fraction(1 - n, n)
            if n == 3:
                assert (check.witness["id_coefficient"], check.witness["phi_coefficient"]) == (
                    Fraction(1, 3),
                    Fraction(-2, 3),
                )


def test_criterion_3_dual_certificates():
    with criterion(3, "dual certificates on the backend matrix"):
        for even, odd, n, mode in BACKENDS:
            cert, checks = certify(SuperSpace.of(even, odd), n, mode)
            by_name = {c.name: c.passed for c in checks}
            assert by_name["snake-X"] and by_name["snake-Y"], (even, odd, n, mode)
            assert verify_psi_relation(cert).passed, (even, odd, n, mode)
            assert all(by_name.values()), [k for k, v in by_name.items() if not v]


def test_criterion_4_dimension_dichotomy():
    with criterion(4, "integer solutions are exactly {n, -1}, n=2..20, bound 10^4", limit=5):
        for n in range(2, 21):
            assert solve_dimension_equation(n, 10**4) == {n, -1}, n


def test_criterion_5_polynomial_identity():
    with criterion(5, "closure trace equals the falling binomial, n<=6; next power vanishes at t=n"):
        for n in range(1, 7):
            assert closure_trace(antisymmetrizer(n)) == falling_binomial(n), n
            assert eval_at(closure_trace(antisymmetrizer(n + 1)), n) == 0, n


def test_criterion_6_cross_backend():
    with criterion(6, "polynomial values match computed exterior power dimensions, d,n<=4"):
        for n in range(1, 5):
            poly = dim_power_poly(n, "bosonic")
            for d in range(1, 5):
                computed = power_object(SuperSpace.of(d), n, "bosonic").dim
                assert eval_at(poly, d) == computed == comb(d, n), (n, d)


def test_criterion_7_appendix_replay():
    with criterion(7, "n=3 replay on (3|0): premise, three steps, final coefficients"):
        checks = replay_appendix()
        by_name = {c.name: c for c in checks}
        assert all(checks), [c.name for c in checks if not c.passed]
        assert by_name["sigma-LL"].witness == {"sign": 1}
        for step in ("step1-insert-sigma", "step2-abc", "step3-recursion"):
            assert by_name[step].passed
        assert checks[-1].name == "phi2-coefficients"
        assert checks[-1].witness == {"id": Fraction(1, 3), "phi": Fraction(-2, 3)}


def _suite_exit(fixtures, capsys):
    code, _ = run(["suite"] + ([] if fixtures is None else ["--fixtures", str(fixtures)]))
    capsys.readouterr()
    return code


def test_criterion_8_mutation_sensitivity(tmp_path, capsys):
    with criterion(8, "any single perturbed fixture entry makes suite exit nonzero"):
        assert _suite_exit(None, capsys) == 0
        # exhaustive: every rational entry of every fixture, checked with the
        # fixture verification that suite runs
        count = 0
        for row in BACKENDS:
            base = json.loads((FIXTURE_DIR / fixture_name(*row)).read_text())
            assert all(c.passed for c in verify_certificate_json(base))
            for name in MAP_FIELDS:
                for i, entries in enumerate(base[name]["entries"]):
                    for j, value in enumerate(entries):
                        obj = copy.deepcopy(base)
                        obj[name]["entries"][i][j] = str(Fraction(value) + 1)
                        assert not all(c.passed for c in verify_certificate_json(obj)), (row, name, i, j)
                        count += 1
        assert count > 200
        # end to end: one perturbed entry per fixture, full suite each time
        for k, row in enumerate(BACKENDS):
            fx = tmp_path / f"fx{k}"
            shutil.copytree(FIXTURE_DIR, fx)
            path = fx / fixture_name(*row)
            obj = json.loads(path.read_text())
            name = MAP_FIELDS[k % len(MAP_FIELDS)]
            obj[name]["entries"][0][0] = str(Fraction(obj[name]["entries"][0][0]) + Fraction(1, 2))
            path.write_text(json.dumps(obj))
            assert _suite_exit(fx, capsys) == 1, row


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
