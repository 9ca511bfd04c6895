"""Exact arithmetic in the group algebras QS_n.

Composition convention: ``(p ∘ q)(i) = p(q(i))`` (function application, the
right factor acts first). Products in the group algebra follow the same
convention, ``(a·b) = Σ a_p b_q (p ∘ q)``, so an action on tensor powers that
sends ``p`` to a place permutation is an algebra homomorphism.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial, lcm
from types import MappingProxyType

import numpy as np

from . import kernels
from .errors import DegreeCapError, DegreeMismatchError

DEGREE_CAP = 8


class Mode(str, enum.Enum):
    """Which idempotent defines the power: skew symmetrizer or symmetrizer."""

    BOSONIC = "bosonic"
    FERMIONIC = "fermionic"

    def __str__(self):
        return self.value


def _check_cap(n, cap=DEGREE_CAP):
    if n < 0:
        raise ValueError("degree must be non-negative")
    if n > cap:
        raise DegreeCapError(f"degree {n} exceeds cap {cap}")


@dataclass(frozen=True, order=True)
class Permutation:
    """Permutation of ``{0, ..., n-1}`` in one-line notation: ``i -> images[i]``."""

    images: tuple

    def __post_init__(self):
        images = tuple(int(i) for i in self.images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"{images} is not a permutation of 0..{len(images) - 1}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, n):
        return cls(tuple(range(n)))

    @classmethod
    def transposition(cls, n, i, j):
        images = list(range(n))
        images[i], images[j] = j, i
        return cls(tuple(images))

    @classmethod
    def from_cycles(cls, n, *cycles):
        """``from_cycles(3, (0, 1, 2))`` is the 3-cycle 0->1->2->0."""
        images = list(range(n))
        for cyc in cycles:
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                images[a] = b
        return cls(tuple(images))

    @classmethod
    def unrank(cls, n, rank):
        """Inverse of :meth:`rank` (lexicographic order of one-line notations)."""
        pool = list(range(n))
        images = []
        for i in range(n - 1, -1, -1):
            f = factorial(i)
            images.append(pool.pop(rank // f))
            rank %= f
        return cls(tuple(images))

    @property
    def degree(self):
        return len(self.images)

    def __call__(self, i):
        return self.images[i]

    def __len__(self):
        return len(self.images)

    def __str__(self):
        return "[" + " ".join(map(str, self.images)) + "]"

    def compose(self, other):
        return perm_compose(self, other)

    def inverse(self):
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def cycles(self):
        """Disjoint cycles including fixed points, each starting at its least element."""
        seen = set()
        out = []
        for start in range(self.degree):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            j = self.images[start]
            while j != start:
                cyc.append(j)
                seen.add(j)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def sign(self):
        return perm_sign(self)

    def rank(self):
        n = self.degree
        r = 0
        for i, x in enumerate(self.images):
            r += sum(1 for y in self.images[i + 1:] if y < x) * factorial(n - 1 - i)
        return r


def perm_compose(p: Permutation, q: Permutation) -> Permutation:
    """``r`` with ``r(i) = p(q(i))``."""
    if p.degree != q.degree:
        raise DegreeMismatchError(f"degrees {p.degree} and {q.degree} differ")
    return Permutation(tuple(p.images[j] for j in q.images))


def perm_sign(p: Permutation) -> int:
    # parity of n - (number of cycles)
    return -1 if (p.degree - len(p.cycles())) % 2 else 1


def all_permutations(n):
    """All of S_n in rank order."""
    return [Permutation(t) for t in itertools.permutations(range(n))]


@dataclass(frozen=True, eq=False)
class GroupAlgebraElement:
    """Element of QS_n as a sparse map ``Permutation -> Fraction``.

    Zero coefficients are dropped at construction. Instances are immutable.
    """

    degree: int
    terms: MappingProxyType = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for p, c in dict(self.terms).items():
            if not isinstance(p, Permutation):
                p = Permutation(p)
            if p.degree != self.degree:
                raise DegreeMismatchError(f"permutation {p} has degree {p.degree}, expected {self.degree}")
            c = Fraction(c)
            if c:
                clean[p] = clean.get(p, 0) + c
        clean = {p: c for p, c in sorted(clean.items()) if c}
        object.__setattr__(self, "terms", MappingProxyType(clean))

    @classmethod
    def identity(cls, n):
        return cls(n, {Permutation.identity(n): 1})

    @classmethod
    def basis(cls, p):
        return cls(p.degree, {p: 1})

    @classmethod
    def zero(cls, n):
        return cls(n, {})

    def coefficient(self, p):
        return self.terms.get(p, Fraction(0))

    def is_zero(self):
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms.items())

    def __eq__(self, other):
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        return self.degree == other.degree and dict(self.terms) == dict(other.terms)

    def __hash__(self):
        return hash((self.degree, tuple(self.terms.items())))

    def _check(self, other):
        if self.degree != other.degree:
            raise DegreeMismatchError(f"degrees {self.degree} and {other.degree} differ")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for p, c in other.terms.items():
            out[p] = out.get(p, 0) + c
        return GroupAlgebraElement(self.degree, out)

    def __neg__(self):
        return GroupAlgebraElement(self.degree, {p: -c for p, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = Fraction(c)
        return GroupAlgebraElement(self.degree, {p: c * x for p, x in self.terms.items()})

    def __rmul__(self, c):
        return self.scale(c)

    def __mul__(self, other):
        if isinstance(other, GroupAlgebraElement):
            return alg_multiply(self, other)
        return self.scale(other)

    def to_text(self):
        """Canonical text: terms sorted by one-line notation, e.g. ``1/2 [0 1] + -1/2 [1 0]``."""
        if not self.terms:
            return f"0 (degree {self.degree})"
        return " + ".join(f"{c} {p}" for p, c in self.terms.items())

    @classmethod
    def from_text(cls, text, degree=None):
        text = text.strip()
        if text.startswith("0 (degree"):
            return cls.zero(int(text.split()[-1].rstrip(")")))
        terms = {}
        for chunk in text.split(" + "):
            coef, perm = chunk.split(" ", 1)
            p = Permutation(tuple(int(x) for x in perm.strip("[]").split()))
            terms[p] = Fraction(coef)
        if degree is None:
            degree = next(iter(terms)).degree
        return cls(degree, terms)

    def to_json(self):
        return [[list(p.images), str(c)] for p, c in self.terms.items()]


def _integerize(elem):
    den = lcm(*(c.denominator for c in elem.terms.values())) if elem.terms else 1
    perms = np.array([p.images for p in elem.terms], dtype=object).reshape(len(elem.terms), elem.degree)
    coef = np.array([c.numerator * (den // c.denominator) for c in elem.terms.values()], dtype=object)
    return perms, coef, den


def alg_multiply(a: GroupAlgebraElement, b: GroupAlgebraElement) -> GroupAlgebraElement:
    """Convolution product ``Σ a_p b_q (p ∘ q)``."""
    a._check(b)
    n = a.degree
    _check_cap(n)
    if a.is_zero() or b.is_zero():
        return GroupAlgebraElement.zero(n)
    pa, ca, da = _integerize(a)
    pb, cb, db = _integerize(b)
    dense = kernels.convolve(pa, ca, pb, cb, factorial(n))
    den = da * db
    terms = {Permutation.unrank(n, int(r)): Fraction(dense[r], den) for r in np.flatnonzero(dense)}
    return GroupAlgebraElement(n, terms)


@lru_cache(maxsize=None)
def _averaging(n, signed):
    _check_cap(n)
    if n < 1:
        raise ValueError("n must be at least 1")
    w = Fraction(1, factorial(n))
    return GroupAlgebraElement(n, {p: (perm_sign(p) if signed else 1) * w for p in all_permutations(n)})


def antisymmetrizer(n: int) -> GroupAlgebraElement:
    """The skew symmetrizer ``e_n = (1/n!) Σ sign(σ) σ``."""
    return _averaging(n, True)


def symmetrizer(n: int) -> GroupAlgebraElement:
    """The symmetrizer ``h_n = (1/n!) Σ σ``."""
    return _averaging(n, False)


def power_idempotent(n, mode):
    return antisymmetrizer(n) if Mode(mode) is Mode.BOSONIC else symmetrizer(n)


def embed_with_identity_strand(a: GroupAlgebraElement) -> GroupAlgebraElement:
    """``a ⊗ 1``: extend each permutation by the fixed point ``n`` (0-indexed)."""
    n = a.degree + 1
    _check_cap(n)
    return GroupAlgebraElement(n, {Permutation(p.images + (n - 1,)): c for p, c in a.terms.items()})


def last_transposition(n: int) -> GroupAlgebraElement:
    """Basis element swapping the last two strands ``n-2`` and ``n-1``."""
    if n < 2:
        raise ValueError("need at least two strands")
    _check_cap(n)
    return GroupAlgebraElement.basis(Permutation.transposition(n, n - 2, n - 1))


def recursion_coefficient(n, mode):
    """Coefficient of the sandwiched transposition in the recursion identity.

    ``1 - n`` for skew symmetrizers. For symmetrizers the coefficient is
    ``n - 1``; tests re-derive it by solving the identity in QS_n.
    """
    return 1 - n if Mode(mode) is Mode.BOSONIC else n - 1


@dataclass(frozen=True)
class RecursionReport:
    n: int
    mode: Mode
    holds: bool
    lhs: GroupAlgebraElement
    rhs: GroupAlgebraElement
    coefficient: int


def check_recursion(n: int, mode="bosonic") -> RecursionReport:
    """Check ``(f⊗1) f_n (f⊗1) = (1/n)[(f⊗1) + c (f⊗1) s (f⊗1)]`` with ``f = f_{n-1}``.

    ``f`` is the skew symmetrizer (bosonic) or the symmetrizer (fermionic),
    ``s`` swaps the last two strands and ``c`` is :func:`recursion_coefficient`.
    """
    mode = Mode(mode)
    if n < 2:
        raise ValueError("recursion needs n >= 2")
    _check_cap(n)
    top = power_idempotent(n, mode)
    sub = embed_with_identity_strand(power_idempotent(n - 1, mode))
    coef = recursion_coefficient(n, mode)
    lhs = sub * top * sub
    rhs = (sub + coef * (sub * last_transposition(n) * sub)).scale(Fraction(1, n))
    return RecursionReport(n, mode, lhs == rhs, lhs, rhs, coef)
