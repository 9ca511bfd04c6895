"""Step-by-step matrix replay of the diagrammatic computation of φ².

The diagram manipulations are checked semantically: each side of each displayed
equality is evaluated as an exact matrix and compared. Defaults reproduce the
n = 3 computation on ``X = (3|0)``; other backends run the same steps with the
general coefficients.
"""

from __future__ import annotations

from fractions import Fraction

from .report import Check
from .rigidity import abc_factors, construct, line_duality
from .supertensor import (
    GradedMap,
    SuperSpace,
    algebra_action,
    braiding,
    categorical_dimension,
    compose_all,
    permute_factors,
    tensor_map,
    tensor_maps,
)
from .symgroup import Mode, embed_with_identity_strand, last_transposition, power_idempotent, recursion_coefficient

_id = GradedMap.identity


def _two_phis(con):
    """Lower and upper halves of φ∘φ around the middle space X⊗Y⊗X⊗Y⊗X.

    With both δ's applied first, the middle space has factors
    ``[X, L, A, X, L, A, X]`` where ``Y = L ⊗ A``; L strands sit at 1 and 4.
    """
    X, Y = con.X, con.Y
    lower = tensor_map(con.delta, tensor_maps(_id(X), _id(Y), _id(X))) @ tensor_map(con.delta, _id(X))
    upper = tensor_map(_id(X), con.epsilon) @ tensor_maps(_id(X), _id(Y), _id(X), con.epsilon)
    factors = [X, con.L, con.P.space, X, con.L, con.P.space, X]
    return lower, upper, factors


def replay_appendix(X: SuperSpace | None = None, n: int = 3, mode="bosonic"):
    """Return the list of checks, one per displayed step plus its premises."""
    X = SuperSpace.of(3) if X is None else X
    mode = Mode(mode)
    con = construct(X, n, mode)
    s, L, lam = con.sign, con.L, con.Q.space
    phi2 = con.phi @ con.phi
    checks = []

    # premise: L ⊗ L braids by the line parity (σ_{L,L} = id for a bosonic line)
    sigma_ll = braiding(L, L)
    checks.append(Check("sigma-LL", sigma_ll == _id(L @ L).scale(s), {"sign": s}))

    # step 1: id_{L⊗L} = s·σ_{L,L} inserted between the two L strands
    lower, upper, factors = _two_phis(con)
    swap = permute_factors(factors, (0, 4, 2, 3, 1, 5, 6))
    middle = swap.source
    checks.append(Check("step1-local", swap.scale(s) == _id(middle), {"middle_dim": middle.dim}))
    swapped = compose_all(upper, swap, lower)
    checks.append(Check("step1-insert-sigma", phi2 == swapped.scale(s)))

    # step 2: the snake for L straightens the crossed strand, leaving A∘B∘C
    ev_lam, co_lam, ev_L, co_L = line_duality(lam)
    snake_l = tensor_map(_id(L), ev_L) @ tensor_map(co_L, _id(L))
    snake_lam = tensor_map(ev_L, _id(lam)) @ tensor_map(_id(lam), co_L)
    checks.append(Check("step2-snake-L", snake_l.is_identity() and snake_lam.is_identity()))
    A, B, C = abc_factors(con)
    abc = compose_all(A, B, C)
    checks.append(Check("step2-abc", swapped == abc, {"ambient_dim": B.source.dim}))

    # step 3: expand the middle idempotent with the recursion identity
    sub = embed_with_identity_strand(power_idempotent(n - 1, mode))
    f_sub = algebra_action(sub, X)
    sandwich = algebra_action(sub * last_transposition(n) * sub, X)
    B1 = tensor_maps(_id(L), f_sub, _id(X))
    B2 = tensor_maps(_id(L), sandwich, _id(X))
    c = Fraction(recursion_coefficient(n, mode), n)
    first, second = compose_all(A, B1, C), compose_all(A, B2, C)
    checks.append(Check("step3-recursion", abc == first.scale(Fraction(1, n)) + second.scale(c)))

    # dim L = s turns the closed L loop into a scalar; the crossed term is φ again
    dim_l = categorical_dimension(L)
    checks.append(Check("step3-dim-L", dim_l == s, {"dim_L": dim_l}))
    checks.append(Check("step3-loop-term", first.scale(s) == _id(X)))
    checks.append(Check("step3-crossed-term", second == con.phi))

    a = Fraction(1, n)
    b = s * c
    checks.append(
        Check(
            "phi2-coefficients",
            phi2 == _id(X).scale(a) + con.phi.scale(b),
            {"id": a, "phi": b},
        )
    )
    return checks
