from fractions import Fraction

import pytest

from rigidcert.appendix import replay_appendix
from rigidcert.supertensor import SuperSpace

STEPS = [
    "sigma-LL",
    "step1-local",
    "step1-insert-sigma",
    "step2-snake-L",
    "step2-abc",
    "step3-recursion",
    "step3-dim-L",
    "step3-loop-term",
    "step3-crossed-term",
    "phi2-coefficients",
]


def test_default_replay_passes_every_step():
    checks = replay_appendix()
    assert [c.name for c in checks] == STEPS
    assert all(checks), [c.name for c in checks if not c.passed]


def test_final_coefficients():
    final = replay_appendix()[-1]
    assert final.name == "phi2-coefficients"
    assert final.witness == {"id": Fraction(1, 3), "phi": Fraction(-2, 3)}


def test_premise_on_bosonic_line():
    assert replay_appendix()[0].witness == {"sign": 1}


@pytest.mark.parametrize(
    "x,n,mode", [((2, 0), 2, "bosonic"), ((0, 1), 3, "bosonic"), ((0, 1), 2, "bosonic"), ((0, 2), 2, "fermionic")]
)
def test_replay_on_other_backends(x, n, mode):
    checks = replay_appendix(SuperSpace.of(*x), n, mode)
    assert all(checks), [c.name for c in checks if not c.passed]
