"""Duals from an invertible exterior (or symmetric) power.

Given ``X`` with ``Λ = ∧^n X`` (bosonic mode) or ``Λ = S^n X`` (fermionic
mode) invertible, put ``L = Λ*`` and ``Y = L ⊗ ∧^{n-1}X``. Then

* ``ε = ev_Λ ∘ (L ⊗ π): Y ⊗ X -> 1`` with ``π = project_n ∘ (embed_{n-1} ⊗ X)``,
* ``δ = σ_{∧^{n-1}X, X⊗L} ∘ (ι ⊗ L) ∘ co_Λ: 1 -> X ⊗ Y`` with
  ``ι = (project_{n-1} ⊗ X) ∘ embed_n``,
* ``φ = (X ⊗ ε)(δ ⊗ X)`` satisfies ``φ² = (1/n) id + b (1-n)/n φ`` where the
  branch ``b = s·κ`` combines the line parity ``s`` of ``Λ`` with ``κ = +1``
  (bosonic) or ``-1`` (fermionic),
* ``ev_X = ε ∘ (Y ⊗ φ⁻¹)`` and ``co_X = δ`` make ``Y`` a dual of ``X``.

No sign is assumed: ``s`` is read off the power object, every identity is
checked exactly, and the inverse of ``φ`` is confirmed by multiplication.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    FalsifiedIdentity,
    NotInvertibleError,
    SnakeFailure,
    VerificationOrderError,
    ZeroObjectError,
)
from .linalg import QMatrix
from .report import Check
from .supertensor import (
    GradedMap,
    SplitSummand,
    SuperSpace,
    algebra_action,
    braiding,
    categorical_dimension,
    coevaluation,
    compose_all,
    evaluation,
    is_invertible,
    line_parity,
    permute_factors,
    split_idempotent,
    tensor_map,
    tensor_maps,
)
from .symgroup import Mode, embed_with_identity_strand, last_transposition, power_idempotent, recursion_coefficient

_id = GradedMap.identity


@dataclass(frozen=True)
class PowerObject:
    """``∧^n X`` or ``S^n X`` as a split summand of ``X^{⊗n}``."""

    base: SuperSpace
    n: int
    mode: Mode
    summand: SplitSummand

    @property
    def space(self):
        return self.summand.summand

    @property
    def dim(self):
        return self.summand.dim

    @property
    def embed(self):
        return self.summand.embed

    @property
    def project(self):
        return self.summand.project

    def is_invertible(self):
        return is_invertible(self.space)


def power_object(X: SuperSpace, n: int, mode="bosonic") -> PowerObject:
    mode = Mode(mode)
    if n < 1:
        raise ValueError("exponent must be at least 1")
    if n == 1:
        summand = split_idempotent(_id(X))
    else:
        summand = split_idempotent(algebra_action(power_idempotent(n, mode), X))
    return PowerObject(X, n, mode, summand)


def check_subdimension(X: SuperSpace, n: int, mode="bosonic") -> bool:
    """True iff the (n+1)-th exterior (bosonic) or symmetric (fermionic) power vanishes."""
    return power_object(X, n + 1, mode).dim == 0


def sign_branch(sign, mode):
    """Effective ``±`` in the quadratic relation and in the inverse of φ."""
    return sign if Mode(mode) is Mode.BOSONIC else -sign


def line_duality(lam: SuperSpace):
    """Duality data for ``L = Λ*`` with ``L* = Λ``, transported along the symmetry.

    Returns ``(ev_Λ, co_Λ, ev_L, co_L)`` with ``ev_L = ev_Λ ∘ σ_{Λ,L}`` and
    ``co_L = σ_{Λ,L} ∘ co_Λ``.
    """
    L = lam.dual()
    ev_lam, co_lam = evaluation(lam), coevaluation(lam)
    swap = braiding(lam, L)
    return ev_lam, co_lam, ev_lam @ swap, swap @ co_lam


def _require_invertible(Q: PowerObject):
    if not Q.is_invertible():
        kind = "exterior" if Q.mode is Mode.BOSONIC else "symmetric"
        raise NotInvertibleError(
            f"power not invertible: the {kind} power of degree {Q.n} of {Q.base!r} has dimension {Q.dim}, not 1"
        )


def _pi_iota(X, P, Q):
    pi = Q.project @ tensor_map(P.embed, _id(X))
    iota = tensor_map(P.project, _id(X)) @ Q.embed
    return pi, iota


def build_epsilon(X, n, mode, P: PowerObject, Q: PowerObject) -> GradedMap:
    """``ε = ev_Λ ∘ (L ⊗ π): L ⊗ ∧^{n-1}X ⊗ X -> 1``."""
    _require_invertible(Q)
    pi, _ = _pi_iota(X, P, Q)
    L = Q.space.dual()
    return evaluation(Q.space) @ tensor_map(_id(L), pi)


def build_delta(X, n, mode, P: PowerObject, Q: PowerObject) -> GradedMap:
    """``δ = σ_{∧^{n-1}X, X⊗L} ∘ (ι ⊗ L) ∘ co_Λ: 1 -> X ⊗ L ⊗ ∧^{n-1}X``."""
    _require_invertible(Q)
    _, iota = _pi_iota(X, P, Q)
    L = Q.space.dual()
    # the block braiding σ_{A, X⊗L} is the place permutation (A, X, L) -> (X, L, A)
    swap = permute_factors([P.space, X, L], (2, 0, 1))
    return compose_all(swap, tensor_map(iota, _id(L)), coevaluation(Q.space))


def build_phi_psi(X, n, mode, epsilon: GradedMap, delta: GradedMap):
    """``φ = (X ⊗ ε)(δ ⊗ X)`` on X and ``ψ = (ε ⊗ Y)(Y ⊗ δ)`` on Y."""
    # δ lands in X ⊗ Y with the Y index inner: row j of the first X-block has parity |x_0| + |y_j|
    Y = SuperSpace(tuple(p ^ X.parities[0] for p in delta.target.parities[: delta.target.dim // X.dim]))
    phi = tensor_map(_id(X), epsilon) @ tensor_map(delta, _id(X))
    psi = tensor_map(epsilon, _id(Y)) @ tensor_map(_id(Y), delta)
    return phi, psi


@dataclass
class Construction:
    """Intermediate state of the dual construction, before φ is inverted."""

    X: SuperSpace
    n: int
    mode: Mode
    P: PowerObject
    Q: PowerObject
    L: SuperSpace
    Y: SuperSpace
    sign: int
    epsilon: GradedMap
    delta: GradedMap
    phi: GradedMap
    psi: GradedMap
    quadratic: Check | None = None
    checks: list = field(default_factory=list)

    @property
    def branch(self):
        return sign_branch(self.sign, self.mode)


def construct(X: SuperSpace, n: int, mode="bosonic") -> Construction:
    mode = Mode(mode)
    if n < 2:
        raise ValueError("the construction needs n >= 2; use the built-in duals for n = 1")
    if X.dim == 0:
        raise ZeroObjectError("X is the zero object")
    P = power_object(X, n - 1, mode)
    Q = power_object(X, n, mode)
    _require_invertible(Q)
    L = Q.space.dual()
    Y = L @ P.space
    epsilon = build_epsilon(X, n, mode, P, Q)
    delta = build_delta(X, n, mode, P, Q)
    phi, psi = build_phi_psi(X, n, mode, epsilon, delta)
    return Construction(X, n, mode, P, Q, L, Y, line_parity(Q.space), epsilon, delta, phi, psi)


def split_checks(power: PowerObject):
    s = power.summand
    name = f"{'wedge' if power.mode is Mode.BOSONIC else 'sym'}{power.n}"
    return [
        Check(f"{name}-project-embed", (s.project @ s.embed).is_identity(), {"dim": s.dim}),
        Check(
            f"{name}-embed-project",
            s.idempotent == (algebra_action(power_idempotent(power.n, power.mode), power.base) if power.n > 1 else _id(power.base)),
        ),
    ]


def verify_phi_quadratic(con: Construction) -> Check:
    """``φ² = (1/n) id + b (1-n)/n φ`` with ``b`` the sign branch; records the check on ``con``."""
    n = con.n
    a = Fraction(1, n)
    b = con.branch * Fraction(1 - n, n)
    lhs = con.phi @ con.phi
    rhs = _id(con.X).scale(a) + con.phi.scale(b)
    check = Check(
        "phi-quadratic",
        lhs == rhs,
        {"sign": con.sign, "branch": con.branch, "id_coefficient": a, "phi_coefficient": b, "phi2": lhs, "rhs": rhs},
    )
    con.quadratic = check
    return check


def abc_factors(con: Construction):
    """The maps ``A``, ``B``, ``C`` with ``φ² = s·A∘B∘C``.

    ``B = L ⊗ f_n ⊗ X``; ``A`` and ``C`` close the L strand with ``ev_Λ`` and
    with ``co_L`` respectively, after ``L ⊗ f_{n-1} ⊗ σ_{X,X}``.
    """
    X, n, L = con.X, con.n, con.L
    lam = con.Q.space
    f_n = algebra_action(power_idempotent(n, con.mode), X)
    f_sub = algebra_action(power_idempotent(n - 1, con.mode), X) if n > 2 else _id(X)
    twist = tensor_maps(_id(L), f_sub, braiding(X, X))
    ev_lam, _, _, co_L = line_duality(lam)
    A = compose_all(tensor_map(ev_lam, _id(X)), tensor_maps(_id(L), con.Q.project, _id(X)), twist)
    B = tensor_maps(_id(L), f_n, _id(X))
    C = compose_all(twist, tensor_maps(_id(L), con.Q.embed, _id(X)), tensor_map(co_L, _id(X)))
    return A, B, C


def verify_abc_decomposition(con: Construction) -> Check:
    A, B, C = abc_factors(con)
    lhs = con.phi @ con.phi
    rhs = compose_all(A, B, C).scale(con.sign)
    return Check("phi2-abc", lhs == rhs, {"sign": con.sign, "ambient_dim": B.source.dim})


def invert_phi(con: Construction) -> GradedMap:
    """``φ⁻¹ = nφ + b(n-1) id``, the branch confirmed by two-sided multiplication."""
    if con.quadratic is None or not con.quadratic.passed:
        raise VerificationOrderError("verify_phi_quadratic must pass before inverting phi")
    n, phi, ident = con.n, con.phi, _id(con.X)
    working = []
    for b in (1, -1):
        candidate = phi.scale(n) + ident.scale(b * (n - 1))
        if phi @ candidate == ident and candidate @ phi == ident:
            working.append((b, candidate))
    if len(working) != 1 or working[0][0] != con.branch:
        raise FalsifiedIdentity(f"expected exactly the branch {con.branch} to invert phi, got {[b for b, _ in working]}")
    con.checks.append(Check("phi-inverse", True, {"branch": working[0][0]}))
    return working[0][1]


@dataclass(frozen=True)
class DualCertificate:
    X: SuperSpace
    n: int
    mode: Mode
    L: SuperSpace
    Y: SuperSpace
    epsilon: GradedMap
    delta: GradedMap
    phi: GradedMap
    phi_inv: GradedMap
    ev: GradedMap
    co: GradedMap
    sign: int
    dimension: Fraction
    checks: tuple = ()

    @property
    def branch(self):
        return sign_branch(self.sign, self.mode)

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def psi(self):
        Y = self.Y
        return tensor_map(self.epsilon, _id(Y)) @ tensor_map(_id(Y), self.delta)


def snake_checks(X, Y, ev, co):
    """Both snake relations for ``ev: Y⊗X -> 1``, ``co: 1 -> X⊗Y``."""
    first = tensor_map(_id(X), ev) @ tensor_map(co, _id(X))
    second = tensor_map(ev, _id(Y)) @ tensor_map(_id(Y), co)
    return [Check("snake-X", first.is_identity()), Check("snake-Y", second.is_identity())]


def dual_dimension(X, Y, ev, co) -> Fraction:
    """``ev ∘ σ_{X,Y} ∘ co``."""
    return compose_all(ev, braiding(X, Y), co).as_scalar()


def build_dual(X: SuperSpace, n: int, mode="bosonic") -> DualCertificate:
    """Run the whole construction and certify ``(Y, ev_X, co_X)`` exactly.

    Raises :class:`NotInvertibleError` when the power is not a line, and
    :class:`SnakeFailure` (or :class:`FalsifiedIdentity`) if an identity the
    construction relies on fails.
    """
    return _certificate_from(construct(X, n, mode))


def _certificate_from(con: Construction) -> DualCertificate:
    X = con.X
    checks = split_checks(con.P) + split_checks(con.Q)
    quad = verify_phi_quadratic(con)
    checks.append(quad)
    if not quad.passed:
        raise FalsifiedIdentity("phi does not satisfy its quadratic relation")
    phi_inv = invert_phi(con)
    checks.extend(con.checks)
    ev = con.epsilon @ tensor_map(_id(con.Y), phi_inv)
    co = con.delta
    snakes = snake_checks(X, con.Y, ev, co)
    if not all(snakes):
        raise SnakeFailure(f"snake relation failed: {[c.name for c in snakes if not c.passed]}")
    checks.extend(snakes)
    dim = dual_dimension(X, con.Y, ev, co)
    checks.append(Check("dimension", dim == X.superdim, {"dimension": dim, "superdim": X.superdim}))
    return DualCertificate(
        X, con.n, con.mode, con.L, con.Y, con.epsilon, con.delta, con.phi, phi_inv, ev, co, con.sign, dim, tuple(checks)
    )


def verify_psi_relation(cert: DualCertificate) -> Check:
    """``(ev_X ⊗ Y)(Y ⊗ co_X) = nψ² + b(n-1)ψ = id_Y``."""
    Y, n = cert.Y, cert.n
    psi = cert.psi()
    snake = tensor_map(cert.ev, _id(Y)) @ tensor_map(_id(Y), cert.co)
    middle = (psi @ psi).scale(n) + psi.scale(cert.branch * (n - 1))
    return Check(
        "psi-relation",
        snake == middle and middle.is_identity(),
        {"snake_equals_polynomial": snake == middle, "polynomial_is_identity": middle.is_identity()},
    )


def dual_isomorphism(cert: DualCertificate):
    """Isomorphism ``f: Y -> X*`` intertwining the certificate with the standard duality.

    ``f`` is obtained by solving ``ev_std ∘ (f ⊗ X) = ev_X`` over Q and is then
    checked against ``co``; the inverse is ``(ev_X ⊗ X*) ∘ (X* ⊗ co_std)``
    read the other way round, i.e. ``(ev_std ⊗ Y) ∘ (X* ⊗ co_X)``.
    Returns ``(f, f_inverse, checks)``.
    """
    X, Y = cert.X, cert.Y
    Xs = X.dual()
    ev_std, co_std = evaluation(X), coevaluation(X)
    unknowns = [(i, j) for i in range(Xs.dim) for j in range(Y.dim) if Xs.parities[i] == Y.parities[j]]
    columns = []
    for i, j in unknowns:
        rows = [[0] * Y.dim for _ in range(Xs.dim)]
        rows[i][j] = 1
        unit_map = GradedMap.from_rows(Y, Xs, rows)
        columns.append(list((ev_std @ tensor_map(unit_map, _id(X))).matrix.rows()[0]))
    system = QMatrix.from_rows([list(col) for col in zip(*columns)]) if columns else None
    rhs = cert.ev.matrix.T
    solution = system.solve(rhs) if system is not None else None
    if solution is None:
        return None, None, [Check("dual-iso-solvable", False)]
    rows = [[Fraction(0)] * Y.dim for _ in range(Xs.dim)]
    for (i, j), value in zip(unknowns, solution.rows()):
        rows[i][j] = value[0]
    f = GradedMap.from_rows(Y, Xs, rows)
    g = tensor_map(ev_std, _id(Y)) @ tensor_map(_id(Xs), cert.co)
    checks = [
        Check("dual-iso-solvable", True),
        Check("dual-iso-ev", ev_std @ tensor_map(f, _id(X)) == cert.ev),
        Check("dual-iso-co", tensor_map(_id(X), f) @ cert.co == co_std),
        Check("dual-iso-invertible", (f @ g).is_identity() and (g @ f).is_identity()),
    ]
    return f, g, checks


def certify(X: SuperSpace, n: int, mode="bosonic"):
    """All checks for one backend: the construction, the quadratic and A∘B∘C identities, the ψ relation."""
    con = construct(X, n, mode)
    cert = _certificate_from(con)
    checks = list(cert.checks)
    checks.append(verify_abc_decomposition(con))
    checks.append(verify_psi_relation(cert))
    checks.append(Check("line-dimension", categorical_dimension(cert.L) == cert.sign, {"sign": cert.sign}))
    return cert, checks


def dimension_roots_check(cert: DualCertificate) -> Check:
    """The dimension ``t`` makes the power's dimension polynomial equal ±1.

    Bosonic mode uses ``t(t-1)...(t-n+1)/n!``, fermionic mode the rising
    ``t(t+1)...(t+n-1)/n!`` (the dimension of ``S^n``).
    """
    from .deligne import dim_power_poly, eval_at

    value = eval_at(dim_power_poly(cert.n, cert.mode), cert.dimension)
    return Check("dimension-polynomial", value in (1, -1), {"value": value})


def recursion_in_backend(X: SuperSpace, n: int, mode="bosonic") -> Check:
    """Image of the group-algebra recursion identity acting on ``X^{⊗n}``."""
    mode = Mode(mode)
    top = power_idempotent(n, mode)
    sub = embed_with_identity_strand(power_idempotent(n - 1, mode))
    lhs = algebra_action(sub * top * sub, X)
    sandwich = algebra_action(sub * last_transposition(n) * sub, X)
    rhs = (algebra_action(sub, X) + sandwich.scale(recursion_coefficient(n, mode))).scale(Fraction(1, n))
    return Check("recursion-in-backend", lhs == rhs)


__all__ = [
    "PowerObject",
    "power_object",
    "check_subdimension",
    "Construction",
    "construct",
    "build_epsilon",
    "build_delta",
    "build_phi_psi",
    "verify_phi_quadratic",
    "verify_abc_decomposition",
    "invert_phi",
    "DualCertificate",
    "build_dual",
    "verify_psi_relation",
    "dual_isomorphism",
    "certify",
]
