"""Dense exact rational matrices.

A :class:`QMatrix` is stored as an integer numerator array (numpy ``object``
dtype, Python ints) over one positive common denominator, always reduced so
that equal matrices have identical representations.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm

import numpy as np

from . import kernels


def _reduce(num, den):
    if den == 0:
        raise ZeroDivisionError("zero denominator")
    if den < 0:
        num, den = -num, -den
    if den == 1:
        return num, den
    g = den
    for x in num.flat:
        if x:
            g = gcd(g, x)
            if g == 1:
                break
    if g > 1:
        num = num // g
        den //= g
    return num, den


class QMatrix:
    """Immutable rational matrix ``num / den``."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=1, *, _reduced=False):
        num = np.array(num, dtype=object)
        if num.ndim != 2:
            raise ValueError("QMatrix needs a 2-d array")
        if not _reduced:
            num, den = _reduce(num, int(den))
        num.flags.writeable = False
        self.num = num
        self.den = den

    # -- construction ---------------------------------------------------

    @classmethod
    def zeros(cls, rows, cols):
        return cls(np.zeros((rows, cols), dtype=object), 1, _reduced=True)

    @classmethod
    def identity(cls, size):
        num = np.zeros((size, size), dtype=object)
        for i in range(size):
            num[i, i] = 1
        return cls(num, 1, _reduced=True)

    @classmethod
    def from_rows(cls, rows):
        """Build from nested sequences of ints, Fractions or "a/b" strings."""
        rows = [[Fraction(x) for x in row] for row in rows]
        if not rows:
            raise ValueError("use QMatrix.zeros for empty matrices")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("ragged rows")
        den = reduce(lcm, (x.denominator for r in rows for x in r), 1)
        num = np.zeros((len(rows), width), dtype=object)
        for i, r in enumerate(rows):
            for j, x in enumerate(r):
                num[i, j] = x.numerator * (den // x.denominator)
        return cls(num, den)

    # -- basic protocol -------------------------------------------------

    @property
    def shape(self):
        return self.num.shape

    def __getitem__(self, idx):
        i, j = idx
        return Fraction(self.num[i, j], self.den)

    def __eq__(self, other):
        if not isinstance(other, QMatrix):
            return NotImplemented
        return self.shape == other.shape and self.den == other.den and np.array_equal(self.num, other.num)

    def __hash__(self):
        return hash((self.shape, self.den, tuple(self.num.flat)))

    def __repr__(self):
        return f"QMatrix({self.to_strings()!r})"

    def to_strings(self):
        """Row-major nested lists of rational strings ("a" or "a/b")."""
        return [[str(Fraction(x, self.den)) for x in row] for row in self.num]

    def rows(self):
        return [[Fraction(x, self.den) for x in row] for row in self.num]

    def is_zero(self):
        return not self.num.any()

    def nonzero_mask(self):
        return self.num != 0

    # -- arithmetic -----------------------------------------------------

    def __matmul__(self, other):
        if self.shape[1] != other.shape[0]:
            raise ValueError(f"cannot compose {self.shape} with {other.shape}")
        if 0 in self.shape or 0 in other.shape:
            return QMatrix.zeros(self.shape[0], other.shape[1])
        return QMatrix(kernels.matmul(self.num, other.num), self.den * other.den)

    def _aligned(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        den = lcm(self.den, other.den)
        return self.num * (den // self.den), other.num * (den // other.den), den

    def __add__(self, other):
        a, b, den = self._aligned(other)
        return QMatrix(a + b, den)

    def __sub__(self, other):
        a, b, den = self._aligned(other)
        return QMatrix(a - b, den)

    def __neg__(self):
        return QMatrix(-self.num, self.den, _reduced=True)

    def scale(self, c):
        c = Fraction(c)
        return QMatrix(self.num * c.numerator, self.den * c.denominator)

    def __rmul__(self, c):
        return self.scale(c)

    def kron(self, other):
        """Kronecker product, row-major block order (``self`` index outer)."""
        return QMatrix(np.kron(self.num, other.num), self.den * other.den, _reduced=self.den == other.den == 1)

    @property
    def T(self):
        return QMatrix(self.num.T.copy(), self.den, _reduced=True)

    def take(self, rows=None, cols=None):
        num = self.num
        if rows is not None:
            num = num[list(rows), :]
        if cols is not None:
            num = num[:, list(cols)]
        return QMatrix(num.copy(), self.den)

    def trace(self):
        return Fraction(sum(self.num[i, i] for i in range(min(self.shape))), self.den)

    # -- elimination ----------------------------------------------------

    def rref(self):
        """Reduced row echelon form: ``(R, pivots)`` with R the nonzero rows."""
        rows, pivots = kernels.rref(self.num)
        if not pivots:
            return QMatrix.zeros(0, self.shape[1]), []
        den = reduce(lcm, (int(rows[k, c]) for k, c in enumerate(pivots)), 1)
        num = np.empty(rows.shape, dtype=object)
        for k, c in enumerate(pivots):
            num[k] = rows[k] * (den // rows[k, c])
        return QMatrix(num, den), pivots

    def rank(self):
        return len(self.rref()[1])

    def rank_factorization(self):
        """Return ``(C, R, pivots)`` with ``self == C @ R``.

        ``C`` is the pivot columns of ``self`` (full column rank) and ``R`` the
        nonzero rows of the reduced row echelon form (full row rank).
        """
        r, pivots = self.rref()
        c = self.take(cols=pivots) if pivots else QMatrix.zeros(self.shape[0], 0)
        return c, r, pivots

    def solve(self, rhs):
        """One exact solution ``x`` of ``self @ x == rhs``, or None if inconsistent.

        Free variables are set to zero.
        """
        m, n = self.shape
        if rhs.shape[0] != m:
            raise ValueError("right-hand side has the wrong number of rows")
        aug = QMatrix(np.hstack([self.num * rhs.den, rhs.num * self.den]), self.den * rhs.den)
        r, pivots = aug.rref()
        if any(c >= n for c in pivots):
            return None
        sol = np.zeros((n, rhs.shape[1]), dtype=object)
        for k, c in enumerate(pivots):
            sol[c] = r.num[k, n:]
        return QMatrix(sol, r.den)
