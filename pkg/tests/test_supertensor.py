from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rigidcert.errors import NotIdempotentError, NotInvertibleError, ParityError
from rigidcert.linalg import QMatrix
from rigidcert.supertensor import (
    GradedMap,
    SuperSpace,
    algebra_action,
    braiding,
    categorical_dimension,
    coevaluation,
    compose_all,
    evaluation,
    is_invertible,
    line_parity,
    permutation_action,
    permute_factors,
    split_idempotent,
    tensor_map,
    tensor_maps,
    tensor_power,
)
from rigidcert.symgroup import GroupAlgebraElement, Permutation, antisymmetrizer, perm_compose, symmetrizer

_id = GradedMap.identity

spaces = st.tuples(st.integers(0, 2), st.integers(0, 2)).filter(lambda t: sum(t) > 0).map(lambda t: SuperSpace.of(*t))
parity_strings = st.text("eo", min_size=1, max_size=3).map(SuperSpace.from_string)


@st.composite
def even_maps(draw, source, target):
    rows = [
        [draw(st.integers(-3, 3)) if source.parities[j] == target.parities[i] else 0 for j in range(source.dim)]
        for i in range(target.dim)
    ]
    return GradedMap.from_rows(source, target, rows)


@st.composite
def endo_pair(draw):
    v, w = draw(parity_strings), draw(parity_strings)
    return draw(even_maps(v, v)), draw(even_maps(w, w))


def test_tensor_space_examples():
    v = SuperSpace.of(2, 1)
    assert SuperSpace.unit() @ v == v
    assert v @ SuperSpace.unit() == v
    assert str(SuperSpace.of(1, 1) @ SuperSpace.of(1, 1)) == "eooe"
    assert (v @ v @ v).dim == 27
    assert SuperSpace.from_string("eoo") == SuperSpace.of(1, 2)


def test_odd_map_rejected():
    odd, even = SuperSpace.of(0, 1), SuperSpace.of(1)
    with pytest.raises(ParityError):
        GradedMap.from_rows(odd, even, [[1]])


@given(parity_strings, parity_strings)
def test_braiding_is_symmetric(v, w):
    assert (braiding(w, v) @ braiding(v, w)).is_identity()


def test_braiding_examples():
    flip = braiding(SuperSpace.of(1), SuperSpace.of(2))
    assert flip.matrix == QMatrix.from_rows([[1, 0], [0, 1]])
    flip = braiding(SuperSpace.of(2), SuperSpace.of(2))
    assert flip.matrix == QMatrix.from_rows([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]])
    odd = SuperSpace.of(0, 1)
    assert braiding(odd, odd).as_scalar() == -1


@given(parity_strings, parity_strings, parity_strings)
def test_hexagon(u, v, w):
    lhs = braiding(u, v @ w)
    rhs = tensor_map(_id(v), braiding(u, w)) @ tensor_map(braiding(u, v), _id(w))
    assert lhs == rhs


@given(endo_pair())
def test_braiding_natural(fg):
    f, g = fg
    s = braiding(f.source, g.source)
    assert s @ tensor_map(f, g) == tensor_map(g, f) @ s


@given(endo_pair(), st.data())
def test_interchange_law(fg, data):
    f, g = fg
    f2, g2 = data.draw(even_maps(f.source, f.source)), data.draw(even_maps(g.source, g.source))
    assert tensor_map(f, g) @ tensor_map(f2, g2) == tensor_map(f @ f2, g @ g2)


def test_tensor_identities():
    v = SuperSpace.of(2, 1)
    assert tensor_map(_id(v), _id(v)).is_identity()
    assert tensor_map(_id(SuperSpace.unit()), _id(v)) == _id(v)


@given(parity_strings)
def test_snake_relations(v):
    ev, co = evaluation(v), coevaluation(v)
    assert (tensor_map(_id(v), ev) @ tensor_map(co, _id(v))).is_identity()
    assert (tensor_map(ev, _id(v.dual())) @ tensor_map(_id(v.dual()), co)).is_identity()


def test_snake_example_and_dimensions():
    assert compose_all(evaluation(SuperSpace.of(1)), coevaluation(SuperSpace.of(1))).as_scalar() == 1
    assert categorical_dimension(SuperSpace.of(2, 1)) == 1
    assert categorical_dimension(SuperSpace.of(0, 1)) == -1


@given(spaces)
def test_dimension_is_superdimension(v):
    assert categorical_dimension(v) == v.even_dim - v.odd_dim


def test_lines():
    assert line_parity(SuperSpace.of(1)) == 1
    assert braiding(SuperSpace.of(1), SuperSpace.of(1)).as_scalar() == 1
    assert line_parity(SuperSpace.of(0, 1)) == -1
    assert is_invertible(SuperSpace.of(0, 1))
    assert not is_invertible(SuperSpace.of(1, 1))
    with pytest.raises(NotInvertibleError):
        line_parity(SuperSpace.of(2))


# -- permutation actions -------------------------------------------------------


def adjacent_action(v, n, i):
    """``s_i`` as ``id^{⊗i} ⊗ σ_{V,V} ⊗ id^{⊗(n-i-2)}``, built without permute_factors."""
    parts = [_id(v)] * i + [braiding(v, v)] + [_id(v)] * (n - i - 2)
    return tensor_maps(*parts)


@given(st.integers(2, 4), st.lists(st.integers(0, 2), max_size=6), parity_strings.filter(lambda v: v.dim <= 2))
def test_permutation_action_matches_reduced_words(n, word, v):
    word = [i for i in word if i < n - 1]
    p = Permutation.identity(n)
    m = _id(tensor_power(v, n))
    for i in word:
        p = perm_compose(p, Permutation.transposition(n, i, i + 1))
        m = m @ adjacent_action(v, n, i)
    assert permutation_action(v, n, p) == m


def test_permutation_action_examples():
    odd = SuperSpace.of(0, 1)
    assert permutation_action(odd, 2, Permutation((1, 0))).as_scalar() == -1
    v = SuperSpace.of(1, 1)
    assert permutation_action(v, 3, Permutation.identity(3)).is_identity()
    s0, s1 = adjacent_action(v, 3, 0), adjacent_action(v, 3, 1)
    assert s0 @ s1 @ s0 == s1 @ s0 @ s1
    cycle = Permutation.from_cycles(3, (0, 1, 2))
    assert permutation_action(v, 3, cycle) == s0 @ s1


@given(st.data())
def test_algebra_action_is_multiplicative(data):
    n = data.draw(st.integers(1, 3))
    v = data.draw(parity_strings.filter(lambda s: s.dim <= 2))
    perms = st.permutations(range(n)).map(lambda t: Permutation(tuple(t)))
    elems = [
        GroupAlgebraElement(n, data.draw(st.dictionaries(perms, st.integers(-3, 3), max_size=3))) for _ in range(2)
    ]
    a, b = elems
    assert algebra_action(a * b, v) == algebra_action(a, v) @ algebra_action(b, v)


def test_idempotent_actions():
    plane = SuperSpace.of(2)
    assert algebra_action(antisymmetrizer(2), plane).rank() == 1
    for n in (2, 3):
        e = algebra_action(antisymmetrizer(n), SuperSpace.of(3))
        assert e @ e == e


# -- splitting -----------------------------------------------------------------


@given(spaces)
def test_split_identity_and_zero(v):
    s = split_idempotent(_id(v))
    assert s.summand == v and s.embed.is_identity() and s.project.is_identity()
    assert split_idempotent(GradedMap.zero(v, v)).dim == 0


@pytest.mark.parametrize("v,n,mode", [("eee", 3, "b"), ("eoo", 2, "b"), ("oo", 2, "f"), ("eeo", 2, "f")])
def test_split_power_idempotents(v, n, mode):
    v = SuperSpace.from_string(v)
    f = antisymmetrizer(n) if mode == "b" else symmetrizer(n)
    e = algebra_action(f, v)
    s = split_idempotent(e)
    assert (s.project @ s.embed).is_identity()
    assert s.embed @ s.project == e
    assert s.dim == e.rank()


def test_split_wedge3_is_even_line():
    s = split_idempotent(algebra_action(antisymmetrizer(3), SuperSpace.of(3)))
    assert s.summand == SuperSpace.of(1)


def test_split_rejects_non_idempotent():
    v = SuperSpace.of(2)
    with pytest.raises(NotIdempotentError):
        split_idempotent(GradedMap.identity(v).scale(2))


def test_permute_factors_koszul_sign():
    odd = SuperSpace.of(0, 1)
    # cyclic shift of three odd factors is even: two transpositions
    assert permute_factors([odd] * 3, (1, 2, 0)).as_scalar() == 1
    assert permute_factors([odd, SuperSpace.of(1), odd], (2, 1, 0)).as_scalar() == -1
    with pytest.raises(ValueError):
        permute_factors([odd, odd], (0, 0))
