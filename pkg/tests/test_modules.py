from random import Random

import pytest
import sympy as sp

from liecoh.algebra import Subalgebra
from liecoh.linalg import Subspace
from liecoh.modules import (
    adjoint_module,
    check_homomorphism,
    dual_module,
    forms_module,
    invariants,
    quotient_module,
    restrict,
    trivial_module,
)
from liecoh.randomized import random_algebra, random_module

from oracle import action_matrices


def test_adjoint_is_homomorphism(a2):
    assert check_homomorphism(adjoint_module(a2))


def test_invariants(a1):
    assert invariants(adjoint_module(a1)).dim == 0
    assert invariants(trivial_module(a1, 2)).dim == 2


def test_quotient_module(a1, a1_borel):
    q = quotient_module(a1, a1_borel)
    assert q.dim_M == 1 and check_homomorphism(q)
    # h . (f mod b) = -2 f mod b
    h_row = a1_borel.coordinates(a1.unit("h"))
    assert q.act(h_row)[0, 0] == -2


@pytest.mark.parametrize("seed", range(12))
def test_forms_module_is_a_module(seed):
    rng = Random(seed)
    g, rep = random_algebra(rng, max_dim=4)
    m = random_module(rng, g, rep)
    base = adjoint_module(g)
    for p in range(0, min(base.dim_M, 2) + 1):
        assert check_homomorphism(forms_module(base, p, m))


@pytest.mark.parametrize("seed", range(6))
def test_one_forms_match_tensor_formula(seed):
    # C^1(V; M) = V* (x) M, so X acts by -a^T (x) 1 + 1 (x) b
    rng = Random(seed)
    g, rep = random_algebra(rng, max_dim=4)
    m = random_module(rng, g, rep)
    base = adjoint_module(g)
    got = action_matrices(forms_module(base, 1, m))
    for a, b, c in zip(action_matrices(base), action_matrices(m), got):
        want = sp.kronecker_product(-a.T, sp.eye(b.shape[0])) + sp.kronecker_product(sp.eye(a.shape[0]), b)
        assert c == want


def test_dual_and_restrict(a1, a1_borel):
    d = dual_module(adjoint_module(a1))
    assert check_homomorphism(d)
    r = restrict(adjoint_module(a1), a1_borel)
    assert r.algebra.dim == 2 and check_homomorphism(r)


def test_forms_module_of_full_subalgebra_is_zero_dimensional(a1):
    q = quotient_module(a1, Subalgebra.full(a1))
    assert q.dim_M == 0
    assert forms_module(q, 0, trivial_module(q.algebra)).dim_M == 1


def test_restrict_to_line(a1):
    line = Subalgebra(a1, Subspace._from_sparse(3, [a1.unit("h")]))
    r = restrict(adjoint_module(a1), line)
    assert r.algebra.dim == 1
