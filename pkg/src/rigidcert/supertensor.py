"""Finite-dimensional super vector spaces over Q with even linear maps.

Tensor products are strict: the basis of ``V ⊗ W`` is indexed by pairs in
row-major order (``V`` index outer), so associativity and unit constraints are
identities on the nose and every coherence question is a matrix equality.
Only parity-preserving maps exist in this category; that is all the dual
construction needs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import lcm

import numpy as np

from .errors import DegreeCapError, DegreeMismatchError, NotIdempotentError, NotInvertibleError, ParityError
from .linalg import QMatrix
from .symgroup import GroupAlgebraElement, Permutation

MAX_DIM = 4096

EVEN, ODD = 0, 1


@dataclass(frozen=True)
class SuperSpace:
    """Space with one parity (0 even, 1 odd) per basis vector, in basis order."""

    parities: tuple = ()

    def __post_init__(self):
        parities = tuple(int(p) for p in self.parities)
        if any(p not in (0, 1) for p in parities):
            raise ValueError("parities must be 0 or 1")
        object.__setattr__(self, "parities", parities)

    @classmethod
    def of(cls, even, odd=0):
        """The space ``(even|odd)``: even basis vectors first."""
        return cls((EVEN,) * even + (ODD,) * odd)

    @classmethod
    def unit(cls):
        return cls((EVEN,))

    @classmethod
    def from_string(cls, s):
        """Parse a parity string such as ``"eeo"``."""
        table = {"e": EVEN, "o": ODD}
        try:
            return cls(tuple(table[c] for c in s))
        except KeyError:
            raise ValueError(f"bad parity string {s!r}") from None

    def __str__(self):
        return "".join("eo"[p] for p in self.parities)

    def __repr__(self):
        return f"SuperSpace({self.even_dim}|{self.odd_dim}: {str(self) or '-'})"

    @property
    def dim(self):
        return len(self.parities)

    @property
    def even_dim(self):
        return self.parities.count(EVEN)

    @property
    def odd_dim(self):
        return self.parities.count(ODD)

    @property
    def superdim(self):
        return self.even_dim - self.odd_dim

    def dual(self):
        """``V*`` in the dual basis; parities agree with ``V``."""
        return SuperSpace(self.parities)

    def __matmul__(self, other):
        return tensor_space(self, other)


def tensor_space(v: SuperSpace, w: SuperSpace) -> SuperSpace:
    dim = v.dim * w.dim
    if dim > MAX_DIM:
        raise DegreeCapError(f"tensor product of dimension {dim} exceeds {MAX_DIM}")
    return SuperSpace(tuple((a + b) % 2 for a in v.parities for b in w.parities))


def tensor_spaces(*spaces):
    return reduce(tensor_space, spaces, SuperSpace.unit())


def tensor_power(v, n):
    return tensor_spaces(*([v] * n))


def _parity_array(space):
    return np.array(space.parities, dtype=np.int64)


class GradedMap:
    """Even linear map ``source -> target``, an exact ``target.dim x source.dim`` matrix."""

    __slots__ = ("source", "target", "matrix")

    def __init__(self, source: SuperSpace, target: SuperSpace, matrix: QMatrix):
        if matrix.shape != (target.dim, source.dim):
            raise ValueError(f"matrix shape {matrix.shape} does not match {target.dim}x{source.dim}")
        if source.dim and target.dim:
            mixed = _parity_array(target)[:, None] != _parity_array(source)[None, :]
            if (matrix.nonzero_mask() & mixed).any():
                raise ParityError("map has a nonzero entry between basis vectors of different parity")
        self.source = source
        self.target = target
        self.matrix = matrix

    @classmethod
    def identity(cls, v):
        return cls(v, v, QMatrix.identity(v.dim))

    @classmethod
    def zero(cls, source, target):
        return cls(source, target, QMatrix.zeros(target.dim, source.dim))

    @classmethod
    def from_rows(cls, source, target, rows):
        if not rows or not rows[0]:
            return cls.zero(source, target)
        return cls(source, target, QMatrix.from_rows(rows))

    @classmethod
    def scalar(cls, c):
        """Endomorphism ``c·id`` of the unit."""
        return cls(SuperSpace.unit(), SuperSpace.unit(), QMatrix.from_rows([[c]]))

    def __repr__(self):
        return f"GradedMap({self.source} -> {self.target}, {self.matrix.to_strings()})"

    def __eq__(self, other):
        if not isinstance(other, GradedMap):
            return NotImplemented
        return self.source == other.source and self.target == other.target and self.matrix == other.matrix

    def __hash__(self):
        return hash((self.source, self.target, self.matrix))

    def __matmul__(self, other):
        """``self @ other`` is the composite ``self ∘ other``."""
        return compose(self, other)

    def _same_type(self, other):
        if (self.source, self.target) != (other.source, other.target):
            raise ValueError("maps have different source or target")

    def __add__(self, other):
        self._same_type(other)
        return GradedMap(self.source, self.target, self.matrix + other.matrix)

    def __sub__(self, other):
        self._same_type(other)
        return GradedMap(self.source, self.target, self.matrix - other.matrix)

    def __neg__(self):
        return GradedMap(self.source, self.target, -self.matrix)

    def scale(self, c):
        return GradedMap(self.source, self.target, self.matrix.scale(c))

    def __rmul__(self, c):
        return self.scale(c)

    def is_identity(self):
        return self.source == self.target and self.matrix == QMatrix.identity(self.source.dim)

    def as_scalar(self):
        """The rational ``c`` when this is ``c·id`` on a one-dimensional space."""
        if self.matrix.shape != (1, 1):
            raise ValueError("not a map between one-dimensional spaces")
        return self.matrix[0, 0]

    def rank(self):
        return self.matrix.rank()


def compose(g: GradedMap, f: GradedMap) -> GradedMap:
    """``g ∘ f``."""
    if f.target != g.source:
        raise ValueError(f"cannot compose: {f.target!r} is not {g.source!r}")
    return GradedMap(f.source, g.target, g.matrix @ f.matrix)


def compose_all(*maps):
    """``compose_all(h, g, f) = h ∘ g ∘ f``."""
    return reduce(compose, maps)


def tensor_map(f: GradedMap, g: GradedMap) -> GradedMap:
    """``f ⊗ g``. Both maps are even, so no Koszul correction appears."""
    return GradedMap(tensor_space(f.source, g.source), tensor_space(f.target, g.target), f.matrix.kron(g.matrix))


def tensor_maps(*maps):
    return reduce(tensor_map, maps)


def _place_permutation(spaces, images):
    """Target spaces, target flat index and Koszul sign for every source basis vector.

    Factor ``k`` of the source moves to position ``images[k]`` of the target.
    """
    m = len(spaces)
    if sorted(images) != list(range(m)):
        raise ValueError(f"{images} is not a permutation of {m} factors")
    dims = [v.dim for v in spaces]
    total = int(np.prod(dims)) if dims else 1
    if total > MAX_DIM:
        raise DegreeCapError(f"tensor product of dimension {total} exceeds {MAX_DIM}")
    targets = [None] * m
    for k, v in enumerate(spaces):
        targets[images[k]] = v
    if total == 0:
        return targets, np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64)
    idx = np.unravel_index(np.arange(total), dims) if m else ()
    par = [_parity_array(v)[i] for v, i in zip(spaces, idx)]
    tgt_idx = [None] * m
    for k in range(m):
        tgt_idx[images[k]] = idx[k]
    flat = np.ravel_multi_index(tgt_idx, [v.dim for v in targets]) if m else np.zeros(1, dtype=np.int64)
    exponent = np.zeros(total, dtype=np.int64)
    for k in range(m):
        for l in range(k + 1, m):
            if images[k] > images[l]:
                exponent += par[k] * par[l]
    sign = 1 - 2 * (exponent % 2)
    return targets, flat, sign


def permute_factors(spaces, images) -> GradedMap:
    """Koszul-signed map ``⊗spaces -> ⊗(permuted spaces)`` moving factor ``k`` to ``images[k]``."""
    spaces = list(spaces)
    images = tuple(images)
    targets, flat, sign = _place_permutation(spaces, images)
    src, tgt = tensor_spaces(*spaces), tensor_spaces(*targets)
    num = np.zeros((tgt.dim, src.dim), dtype=object)
    for col, (row, s) in enumerate(zip(flat, sign)):
        num[row, col] = int(s)
    return GradedMap(src, tgt, QMatrix(num, 1, _reduced=True))


def braiding(v: SuperSpace, w: SuperSpace) -> GradedMap:
    """``σ_{V,W}: v_i ⊗ w_j -> (-1)^{|i||j|} w_j ⊗ v_i``."""
    return permute_factors([v, w], (1, 0))


def evaluation(v: SuperSpace) -> GradedMap:
    """``ev_V: V* ⊗ V -> 1``, the dual-basis pairing."""
    d = v.dim
    num = np.zeros((1, d * d), dtype=object)
    for i in range(d):
        num[0, i * d + i] = 1
    return GradedMap(tensor_space(v.dual(), v), SuperSpace.unit(), QMatrix(num, 1, _reduced=True))


def coevaluation(v: SuperSpace) -> GradedMap:
    """``co_V: 1 -> V ⊗ V*``, ``1 -> Σ_i v_i ⊗ v^i``."""
    d = v.dim
    num = np.zeros((d * d, 1), dtype=object)
    for i in range(d):
        num[i * d + i, 0] = 1
    return GradedMap(SuperSpace.unit(), tensor_space(v, v.dual()), QMatrix(num, 1, _reduced=True))


def permutation_action(v: SuperSpace, n: int, p: Permutation) -> GradedMap:
    """Image of ``p ∈ S_n`` on ``V^{⊗n}``: the Koszul-signed place permutation."""
    if p.degree != n:
        raise DegreeMismatchError(f"permutation of degree {p.degree} acting on {n} factors")
    return permute_factors([v] * n, p.images)


def algebra_action(a: GroupAlgebraElement, v: SuperSpace) -> GradedMap:
    """Linear extension of :func:`permutation_action` to ``QS_n``."""
    n = a.degree
    space = tensor_power(v, n)
    num = np.zeros((space.dim, space.dim), dtype=object)
    den = lcm(1, *(c.denominator for c in a.terms.values()))
    cols = np.arange(space.dim)
    for p, c in a.terms.items():
        _, flat, sign = _place_permutation([v] * n, p.images)
        w = c.numerator * (den // c.denominator)
        for row, col, s in zip(flat, cols, sign):
            num[row, col] += w * int(s)
    return GradedMap(space, space, QMatrix(num, den))


@dataclass(frozen=True)
class SplitSummand:
    """Image of an idempotent ``e`` on ``ambient``: ``project∘embed = id``, ``embed∘project = e``."""

    ambient: SuperSpace
    summand: SuperSpace
    embed: GradedMap
    project: GradedMap

    @property
    def idempotent(self):
        return self.embed @ self.project

    @property
    def dim(self):
        return self.summand.dim


def split_idempotent(e: GradedMap, v: SuperSpace | None = None) -> SplitSummand:
    """Split ``e`` by an exact rank factorization ``e = C·R`` with ``R·C = id``.

    ``C`` is the pivot columns of ``e`` and ``R`` the nonzero rows of its
    reduced row echelon form; summand basis vector ``k`` inherits the parity of
    the ``k``-th pivot column.
    """
    if v is not None and (e.source != v or e.target != v):
        raise ValueError("idempotent is not an endomorphism of the given space")
    if e.source != e.target:
        raise NotIdempotentError("not an endomorphism")
    if e @ e != e:
        raise NotIdempotentError("e∘e != e")
    c, r, pivots = e.matrix.rank_factorization()
    summand = SuperSpace(tuple(e.source.parities[j] for j in pivots))
    embed = GradedMap(summand, e.source, c)
    project = GradedMap(e.source, summand, r)
    return SplitSummand(e.source, summand, embed, project)


def categorical_dimension(v: SuperSpace) -> Fraction:
    """``ev_V ∘ σ_{V,V*} ∘ co_V`` as a rational."""
    return compose_all(evaluation(v), braiding(v, v.dual()), coevaluation(v)).as_scalar()


def is_invertible(v: SuperSpace) -> bool:
    # a super vector space is invertible iff it is one-dimensional
    return v.dim == 1


def line_parity(v: SuperSpace) -> int:
    """+1 for an even line (``σ_{L,L} = id``), -1 for an odd line."""
    if not is_invertible(v):
        raise NotInvertibleError(f"{v!r} is not an invertible object")
    return 1 if v.parities[0] == EVEN else -1
