"""JSON certificates and re-verification of stored ones.

A stored certificate is trusted for nothing: every identity is re-checked from
the stored matrices, and every stored value is compared with a fresh
construction, so changing any single entry makes verification fail.
"""

from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

from .report import Check
from .rigidity import DualCertificate, build_dual, dual_dimension, sign_branch, snake_checks
from .serialize import map_from_json, map_to_json, space_from_json
from .supertensor import GradedMap, SuperSpace, line_parity, tensor_map
from .symgroup import Mode

FIXTURE_DIR = Path(__file__).with_name("fixtures")
MAP_FIELDS = ("epsilon", "delta", "phi", "phi_inv", "ev", "co")

# rows of the acceptance matrix: (even, odd, n, mode)
BACKENDS = (
    (2, 0, 2, "bosonic"),
    (3, 0, 3, "bosonic"),
    (4, 0, 4, "bosonic"),
    (0, 1, 2, "bosonic"),
    (0, 1, 3, "bosonic"),
    (0, 2, 2, "fermionic"),
    (0, 3, 3, "fermionic"),
)


@lru_cache(maxsize=32)
def _fresh(X, n, mode):
    # construction is deterministic, so a reference build can be shared across checks
    return build_dual(X, n, mode)


def fixture_name(even, odd, n, mode):
    return f"X{even}-{odd}_n{n}_{Mode(mode).value}.json"


def certificate_to_json(cert: DualCertificate) -> dict:
    out = {
        "schema": 1,
        "X": str(cert.X),
        "n": cert.n,
        "mode": cert.mode.value,
        "L": str(cert.L),
        "Y": str(cert.Y),
        "sign": cert.sign,
        "dimension": str(cert.dimension),
    }
    for name in MAP_FIELDS:
        out[name] = map_to_json(getattr(cert, name))
    return out


def write_certificate(cert: DualCertificate, path):
    Path(path).write_text(json.dumps(certificate_to_json(cert), indent=1, sort_keys=True) + "\n")


def _load(obj):
    X = space_from_json(obj["X"])
    n = int(obj["n"])
    mode = Mode(obj["mode"])
    maps = {name: map_from_json(obj[name]) for name in MAP_FIELDS}
    sign = int(obj["sign"])
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    return DualCertificate(
        X=X,
        n=n,
        mode=mode,
        L=space_from_json(obj["L"]),
        Y=space_from_json(obj["Y"]),
        sign=sign,
        dimension=Fraction(obj["dimension"]),
        **maps,
    )


def verify_certificate_json(obj) -> list:
    """Re-verify a stored certificate; returns checks (never raises on bad data)."""
    try:
        cert = _load(obj)
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        return [Check("fixture-parse", False, {"error": f"{type(exc).__name__}: {exc}"})]
    X, Y, n = cert.X, cert.Y, cert.n
    ident = GradedMap.identity(X)
    checks = [Check("fixture-parse", True)]

    def guarded(name, fn):
        try:
            return Check(name, bool(fn()))
        except Exception as exc:  # any failure to re-derive counts against the fixture
            return Check(name, False, {"error": f"{type(exc).__name__}: {exc}"})

    checks.append(guarded("fixture-phi-definition", lambda: cert.phi == tensor_map(ident, cert.epsilon) @ tensor_map(cert.delta, ident)))
    checks.append(guarded("fixture-phi-inverse", lambda: (cert.phi @ cert.phi_inv).is_identity() and (cert.phi_inv @ cert.phi).is_identity()))
    checks.append(
        guarded(
            "fixture-phi-quadratic",
            lambda: cert.phi @ cert.phi
            == ident.scale(Fraction(1, n)) + cert.phi.scale(sign_branch(cert.sign, cert.mode) * Fraction(1 - n, n)),
        )
    )
    checks.append(guarded("fixture-ev-definition", lambda: cert.ev == cert.epsilon @ tensor_map(GradedMap.identity(Y), cert.phi_inv)))
    checks.append(guarded("fixture-co-definition", lambda: cert.co == cert.delta))
    try:
        checks.extend(Check(f"fixture-{c.name}", c.passed) for c in snake_checks(X, Y, cert.ev, cert.co))
    except Exception as exc:
        checks.append(Check("fixture-snake", False, {"error": str(exc)}))
    checks.append(guarded("fixture-dimension", lambda: dual_dimension(X, Y, cert.ev, cert.co) == cert.dimension))
    checks.append(guarded("fixture-sign", lambda: line_parity(cert.L) == cert.sign))

    def regression():
        fresh = _fresh(X, n, cert.mode)
        same = [fresh.L == cert.L, fresh.Y == cert.Y, fresh.sign == cert.sign, fresh.dimension == cert.dimension]
        same += [getattr(fresh, name) == getattr(cert, name) for name in MAP_FIELDS]
        return all(same)

    checks.append(guarded("fixture-matches-fresh-build", regression))
    return checks


def verify_fixture_dir(directory=None) -> list:
    """Verify every backend fixture in ``directory``; a missing file is a failure."""
    directory = Path(directory) if directory is not None else FIXTURE_DIR
    checks = []
    for row in BACKENDS:
        path = directory / fixture_name(*row)
        label = path.stem
        if not path.exists():
            checks.append(Check(f"{label}:present", False))
            continue
        try:
            obj = json.loads(path.read_text())
        except json.JSONDecodeError as exc:
            checks.append(Check(f"{label}:fixture-parse", False, {"error": str(exc)}))
            continue
        checks.extend(Check(f"{label}:{c.name}", c.passed, c.witness) for c in verify_certificate_json(obj))
    return checks


def regenerate_fixtures(directory=None):
    directory = Path(directory) if directory is not None else FIXTURE_DIR
    directory.mkdir(parents=True, exist_ok=True)
    for even, odd, n, mode in BACKENDS:
        write_certificate(build_dual(SuperSpace.of(even, odd), n, mode), directory / fixture_name(even, odd, n, mode))
