"""Dimension polynomials in the interpolation parameter t.

Closing all strands of a permutation diagram leaves one loop per cycle, and
each loop evaluates to t, so the closure trace of ``a ∈ QS_n`` is
``Σ a_p t^{cycles(p)}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, lcm

from .errors import FalsifiedIdentity
from .symgroup import GroupAlgebraElement, Mode, power_idempotent


@dataclass(frozen=True)
class TracePolynomial:
    """Polynomial in t; ``coefficients[k]`` multiplies ``t**k``. No trailing zeros."""

    coefficients: tuple = ()

    def __post_init__(self):
        coeffs = [Fraction(c) for c in self.coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @classmethod
    def t(cls):
        return cls((0, 1))

    @classmethod
    def constant(cls, c):
        return cls((c,))

    @property
    def degree(self):
        return len(self.coefficients) - 1

    def __add__(self, other):
        a, b = self.coefficients, other.coefficients
        size = max(len(a), len(b))
        return TracePolynomial(tuple((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(size)))

    def __neg__(self):
        return TracePolynomial(tuple(-c for c in self.coefficients))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, TracePolynomial):
            return TracePolynomial(tuple(c * Fraction(other) for c in self.coefficients))
        a, b = self.coefficients, other.coefficients
        if not a or not b:
            return TracePolynomial()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] += x * y
        return TracePolynomial(tuple(out))

    __rmul__ = __mul__

    def __call__(self, t0):
        return eval_at(self, t0)

    def __str__(self):
        if not self.coefficients:
            return "0"
        terms = []
        for k, c in reversed(list(enumerate(self.coefficients))):
            if c:
                terms.append(f"{c}" + ("" if k == 0 else "*t" if k == 1 else f"*t^{k}"))
        return " + ".join(terms)

    def to_json(self):
        return [str(c) for c in self.coefficients]

    @classmethod
    def from_json(cls, data):
        return cls(tuple(Fraction(c) for c in data))


def eval_at(p: TracePolynomial, t0) -> Fraction:
    """Exact Horner evaluation."""
    t0 = Fraction(t0)
    if t0.denominator == 1:
        return _eval_integer(p, t0.numerator)
    acc = Fraction(0)
    for c in reversed(p.coefficients):
        acc = acc * t0 + c
    return acc


def _integer_form(p):
    """``(numerators highest degree first, den)`` with ``p = N(t) / den``."""
    den = lcm(1, *(c.denominator for c in p.coefficients))
    return [c.numerator * (den // c.denominator) for c in reversed(p.coefficients)], den


def _horner(nums, t0):
    acc = 0
    for c in nums:
        acc = acc * t0 + c
    return acc


def _eval_integer(p, t0):
    nums, den = _integer_form(p)
    return Fraction(_horner(nums, t0), den)


def closure_trace(a: GroupAlgebraElement) -> TracePolynomial:
    """Linear extension of ``p -> t^{cycles(p)}``."""
    coeffs = [Fraction(0)] * (a.degree + 1)
    for p, c in a.terms.items():
        coeffs[len(p.cycles())] += c
    return TracePolynomial(tuple(coeffs))


def falling_binomial(n: int) -> TracePolynomial:
    """``t(t-1)...(t-n+1)/n!``."""
    out = TracePolynomial.constant(1)
    for k in range(n):
        out = out * TracePolynomial((-k, 1))
    return out * Fraction(1, factorial(n))


def rising_binomial(n: int) -> TracePolynomial:
    """``t(t+1)...(t+n-1)/n!``."""
    out = TracePolynomial.constant(1)
    for k in range(n):
        out = out * TracePolynomial((k, 1))
    return out * Fraction(1, factorial(n))


def dim_power_poly(n: int, mode="bosonic") -> TracePolynomial:
    """Closure trace of the skew symmetrizer (bosonic) or symmetrizer (fermionic).

    The result is checked against the falling (bosonic) or rising (fermionic)
    binomial polynomial before it is returned.
    """
    mode = Mode(mode)
    if n < 1:
        raise ValueError("n must be at least 1")
    poly = closure_trace(power_idempotent(n, mode))
    closed = falling_binomial(n) if mode is Mode.BOSONIC else rising_binomial(n)
    if poly != closed:
        raise FalsifiedIdentity(f"closure trace {poly} differs from the closed form {closed}")
    return poly


def solve_dimension_equation(n: int, bound: int) -> set[int]:
    """All integers ``|t| <= bound`` with ``|binom(t, n)| = 1``, by exact evaluation."""
    if n < 2:
        raise ValueError("n must be at least 2")
    if bound < n:
        raise ValueError("bound must be at least n")
    return _scan(n, -bound, bound + 1)


def solve_dimension_equation_parallel(n: int, bound: int, workers: int = 4) -> set[int]:
    """Same as :func:`solve_dimension_equation`, scanning ranges in worker processes."""
    from concurrent.futures import ProcessPoolExecutor

    edges = [-bound + (2 * bound + 1) * k // workers for k in range(workers + 1)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = pool.map(_scan, [n] * workers, edges[:-1], edges[1:])
    return set().union(*parts)


def _scan(n, lo, hi):
    # |N(t)/den| == 1  <=>  |N(t)| == den, all in integers
    nums, den = _integer_form(falling_binomial(n))
    return {t for t in range(lo, hi) if abs(_horner(nums, t)) == den}
