from random import Random

import pytest

from liecoh.errors import DimensionMismatch, PreconditionError
from liecoh.linalg import (
    Matrix,
    Quotient,
    Subspace,
    image,
    kernel,
    map_subspace,
    preimage,
    quotient_dim,
    rank,
    restricted_kernel,
    span_coordinates,
    subspace_intersect,
    subspace_sum,
)
from liecoh.randomized import random_matrix, random_subspace
from liecoh.scalar import Scalar

from oracle import to_sympy


@pytest.mark.parametrize("seed", range(25))
def test_rank_matches_sympy(seed):
    rng = Random(seed)
    m = random_matrix(rng, rng.randint(1, 6), rng.randint(1, 6), gaussian=True)
    assert rank(m) == to_sympy(m).rank()


@pytest.mark.parametrize("seed", range(15))
def test_kernel_is_annihilated_and_complete(seed):
    rng = Random(seed)
    m = random_matrix(rng, rng.randint(1, 5), rng.randint(1, 6), gaussian=True, density=0.4)
    ker = kernel(m)
    assert all(not m.apply(v) for v in ker.rows)
    assert ker.dim + rank(m) == m.ncols
    assert image(m).dim == rank(m)


def test_matrix_basics():
    a = Matrix.from_rows([[1, 2], [3, 4]])
    b = Matrix.from_rows([["i", 0], [0, 1]])
    assert (a @ Matrix.identity(2)) == a
    assert (a @ b)[0, 0] == Scalar(0, 1)
    assert (a - a).is_zero()
    assert a.transpose()[0, 1] == Scalar(3)
    assert not b.is_real() and a.is_real()
    with pytest.raises(DimensionMismatch):
        a @ Matrix.zero(3, 3)


def test_subspace_canonical_form():
    s1 = Subspace(3, [[1, 1, 0], [0, 1, 1]])
    s2 = Subspace(3, [[1, 2, 1], [2, 2, 0], [1, 0, -1]])
    assert s1 == s2 and hash(s1) == hash(s2)
    assert s1.dim == 2
    assert [1, 0, -1] in s1 and [1, 0, 0] not in s1


def test_sum_and_intersection():
    a = Subspace(4, [[1, 0, 0, 0], [0, 1, 0, 0]])
    b = Subspace(4, [[0, 1, 0, 0], [0, 0, 1, 0]])
    assert subspace_sum(a, b).dim == 3
    assert subspace_intersect(a, b) == Subspace(4, [[0, 1, 0, 0]])
    assert quotient_dim(subspace_sum(a, b), a) == 1
    with pytest.raises(DimensionMismatch):
        subspace_sum(a, Subspace(3))


def test_preimage_and_restricted_kernel():
    m = Matrix.from_rows([[1, 1, 0], [0, 0, 1]])
    target = Subspace(2, [[1, 0]])
    pre = preimage(m, target)
    assert pre == Subspace(3, [[1, 0, 0], [0, 1, 0]])
    assert map_subspace(m, pre).is_subspace_of(target)
    dom = Subspace(3, [[1, -1, 0], [0, 0, 1]])
    assert restricted_kernel([m], dom) == Subspace(3, [[1, -1, 0]])


def test_quotient_coordinates_and_induced_map():
    num = Subspace(3, [[1, 0, 0], [0, 1, 0]])
    den = Subspace(3, [[1, 1, 0]])
    q = Quotient(num, den)
    assert q.dim == 1
    assert q.coords([1, 1, 0]) == {}
    assert q.coords([2, 0, 0]) == q.coords([0, -2, 0]) != {}
    ident = Quotient(num, Subspace.zero(3)).induced_map(Matrix.identity(3), Quotient(num, Subspace.zero(3)))
    assert ident == Matrix.identity(2)
    with pytest.raises(PreconditionError):
        Quotient(den, Subspace(3, [[0, 0, 1]]))


def test_span_coordinates():
    e = Matrix(2, 2, {(0, 1): 1})
    h = Matrix(2, 2, {(0, 0): 1, (1, 1): -1})
    coords = span_coordinates([e, h])
    assert coords(h.scaled(3) + e.scaled(-1)) == {0: -1, 1: 3}
    with pytest.raises(PreconditionError):
        coords(Matrix(2, 2, {(1, 0): 1}))
    with pytest.raises(PreconditionError):
        span_coordinates([e, e.scaled(2)])


def test_random_subspace_dimension_bound():
    rng = Random(3)
    for _ in range(20):
        s = random_subspace(rng, 4)
        assert 0 <= s.dim <= 4
