import copy
import json
import shutil
from fractions import Fraction

import pytest

from rigidcert import certificates
from rigidcert.certificates import (
    BACKENDS,
    FIXTURE_DIR,
    MAP_FIELDS,
    certificate_to_json,
    fixture_name,
    regenerate_fixtures,
    verify_certificate_json,
    verify_fixture_dir,
)
from rigidcert.rigidity import build_dual
from rigidcert.supertensor import SuperSpace


def load(row):
    return json.loads((FIXTURE_DIR / fixture_name(*row)).read_text())


def passes(obj):
    return all(c.passed for c in verify_certificate_json(obj))


def entry_positions(obj):
    for name in MAP_FIELDS:
        for i, row in enumerate(obj[name]["entries"]):
            for j in range(len(row)):
                yield name, i, j


def test_packaged_fixtures_verify():
    checks = verify_fixture_dir()
    assert checks and all(checks), [c.name for c in checks if not c.passed]


@pytest.mark.parametrize("row", BACKENDS, ids=[fixture_name(*r) for r in BACKENDS])
def test_fixture_matches_fresh_build(row):
    even, odd, n, mode = row
    assert load(row) == json.loads(json.dumps(certificate_to_json(build_dual(SuperSpace.of(even, odd), n, mode))))


@pytest.mark.parametrize("row", [BACKENDS[0], BACKENDS[3], BACKENDS[5]], ids=lambda r: fixture_name(*r))
def test_every_single_entry_mutation_is_caught(row):
    base = load(row)
    assert passes(base)
    for name, i, j in entry_positions(base):
        for delta in (1, Fraction(-1, 3)):
            obj = copy.deepcopy(base)
            obj[name]["entries"][i][j] = str(Fraction(obj[name]["entries"][i][j]) + delta)
            assert not passes(obj), (name, i, j, delta)


def test_sampled_mutations_on_largest_fixture():
    base = load(BACKENDS[2])
    positions = list(entry_positions(base))
    for name, i, j in positions[:: max(1, len(positions) // 25)]:
        obj = copy.deepcopy(base)
        obj[name]["entries"][i][j] = str(Fraction(obj[name]["entries"][i][j]) + 1)
        assert not passes(obj), (name, i, j)


@pytest.mark.parametrize(
    "field,value",
    [("sign", -1), ("dimension", "3"), ("dimension", "1/2"), ("n", 3), ("L", "o"), ("Y", "eo"), ("X", "eee"), ("mode", "fermionic")],
)
def test_scalar_field_mutations_are_caught(field, value):
    obj = load(BACKENDS[0])
    obj[field] = value
    assert not passes(obj)


def test_malformed_fixture_reports_instead_of_raising():
    obj = load(BACKENDS[0])
    obj["phi"]["entries"] = [["x"]]
    checks = verify_certificate_json(obj)
    assert [c.name for c in checks] == ["fixture-parse"] and not checks[0].passed
    del obj["phi"]
    assert not passes(obj)


def test_missing_fixture_fails(tmp_path):
    shutil.copytree(FIXTURE_DIR, tmp_path / "fx")
    (tmp_path / "fx" / fixture_name(*BACKENDS[1])).unlink()
    assert not all(verify_fixture_dir(tmp_path / "fx"))


def test_regenerate_is_deterministic(tmp_path):
    regenerate_fixtures(tmp_path)
    for row in BACKENDS:
        assert (tmp_path / fixture_name(*row)).read_text() == (FIXTURE_DIR / fixture_name(*row)).read_text()
