import json
import shutil
import subprocess
import sys
from fractions import Fraction

import pytest

from rigidcert.certificates import FIXTURE_DIR, fixture_name
from rigidcert.cli import run


def call(capsys, *argv):
    code, _ = run(list(argv))
    out = capsys.readouterr().out
    return code, out


def call_json(capsys, *argv):
    code, out = call(capsys, *argv)
    return code, json.loads(out)


def test_appendix_example(capsys):
    code, report = call_json(capsys, "appendix")
    assert code == 0 and report["passed"]
    final = report["checks"][-1]
    assert final["name"] == "phi2-coefficients"
    assert final["witness"] == {"id": "1/3", "phi": "-2/3"}


def test_rigidity_example(capsys):
    code, report = call_json(capsys, "rigidity", "--even", "3", "--odd", "0", "--n", "3", "--mode", "bosonic")
    assert code == 0
    assert report["result"]["dimension"] == "3"
    assert report["schema"] == 1


def test_solve_t_example(capsys):
    code, report = call_json(capsys, "solve-t", "--n", "3", "--bound", "1000")
    assert code == 0
    assert report["result"]["solutions"] == [3, -1]


@pytest.mark.parametrize("mode", ["bosonic", "fermionic"])
def test_recursion_and_dimpoly(capsys, mode):
    assert call(capsys, "recursion", "--n", "4", "--mode", mode)[0] == 0
    code, report = call_json(capsys, "dimpoly", "--n", "3", "--mode", mode)
    assert code == 0
    assert [Fraction(c) for c in report["result"]["polynomial"]][-1] == Fraction(1, 6)


def test_non_invertible_power_exit_code(capsys):
    code, report = call_json(capsys, "rigidity", "--even", "2", "--odd", "1", "--n", "2")
    assert code == 2
    assert report["error"].startswith("power not invertible")
    assert not report["passed"]


def test_other_precondition_errors(capsys):
    code, report = call_json(capsys, "rigidity", "--even", "0", "--odd", "0", "--n", "2")
    assert code == 2 and "zero object" in report["error"]
    code, report = call_json(capsys, "solve-t", "--n", "5", "--bound", "2")
    assert code == 2 and not report["error"].startswith("power not invertible")


def test_usage_errors(capsys):
    assert run(["frobnicate"])[0] == 2
    assert run(["rigidity", "--even", "2"])[0] == 2
    assert run(["recursion", "--n", "-3"])[0] == 2
    assert run(["dimpoly", "--n", "2", "--mode", "neutral"])[0] == 2
    capsys.readouterr()


def test_reports_are_deterministic(capsys):
    first = call_json(capsys, "rigidity", "--even", "0", "--odd", "2", "--n", "2", "--mode", "fermionic")[1]
    second = call_json(capsys, "rigidity", "--even", "0", "--odd", "2", "--n", "2", "--mode", "fermionic")[1]
    first.pop("elapsed_ms"), second.pop("elapsed_ms")
    assert json.dumps(first, sort_keys=True) == json.dumps(second, sort_keys=True)


def test_no_floats_in_reports(capsys):
    _, out = call(capsys, "rigidity", "--even", "2", "--odd", "0", "--n", "2")

    def walk(x):
        if isinstance(x, float):
            raise AssertionError(f"float {x} in report")
        if isinstance(x, dict):
            for v in x.values():
                walk(v)
        if isinstance(x, list):
            for v in x:
                walk(v)

    walk(json.loads(out))


def test_text_format(capsys):
    code, out = call(capsys, "solve-t", "--n", "3", "--bound", "100", "--format", "text")
    assert code == 0
    assert out.startswith("solve-t: PASS")
    assert "solutions=[3, -1]" in out


def test_save_writes_certificate(capsys, tmp_path):
    target = tmp_path / "cert.json"
    code, _ = call(capsys, "rigidity", "--even", "2", "--odd", "0", "--n", "2", "--save", str(target))
    assert code == 0
    assert target.read_text() == (FIXTURE_DIR / fixture_name(2, 0, 2, "bosonic")).read_text()


def test_suite_passes_and_mutation_flips_exit_code(capsys, tmp_path):
    code, report = call_json(capsys, "suite")
    assert code == 0 and report["passed"]
    fx = tmp_path / "fx"
    shutil.copytree(FIXTURE_DIR, fx)
    path = fx / fixture_name(0, 3, 3, "fermionic")
    obj = json.loads(path.read_text())
    obj["phi_inv"]["entries"][0][0] = str(Fraction(obj["phi_inv"]["entries"][0][0]) + Fraction(1, 7))
    path.write_text(json.dumps(obj))
    code, report = call_json(capsys, "suite", "--fixtures", str(fx))
    assert code == 1
    failed = {c["name"] for c in report["checks"] if not c["passed"]}
    assert failed and all(name.startswith("X0-3_n3_fermionic") for name in failed)


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "rigidcert", "solve-t", "--n", "2", "--bound", "50"], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["solutions"] == [2, -1]
