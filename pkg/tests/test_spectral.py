from random import Random

import pytest

from liecoh.algebra import Subalgebra, abelian
from liecoh.cochains import CochainComplex
from liecoh.errors import PreconditionError, ValidationError
from liecoh.linalg import Matrix, Subspace
from liecoh.modules import adjoint_module, trivial_module
from liecoh.roots import hermitian_extension
from liecoh.spectral import (
    FilteredComplex,
    compute_page,
    convolve,
    hs_e2_check,
    hs_filtration,
    random_k_submodule,
    reducibility_check,
    spectral_sequence,
)


def test_convolve():
    assert convolve([1, 1], [1, 1]) == [1, 2, 1]
    assert convolve([1, 2], [3], 4) == [3, 6, 0, 0]


def test_a1_borel_stable_at_two(a1, a1_borel):
    rep = spectral_sequence(hs_filtration(a1, a1_borel, trivial_module(a1)))
    assert rep.stable_at == 2
    assert rep.converges and rep.monotone and rep.square_zero
    assert rep.pages[0].dims[(1, 0)] == 1
    assert {n: e for n, (e, h) in rep.einf_vs_H().items()} == {0: 1, 1: 0, 2: 0, 3: 1}


def test_abelian_stable_at_zero():
    g = abelian(3)
    v = Subalgebra(g, Subspace._from_sparse(3, [g.unit(0)]))
    rep = spectral_sequence(hs_filtration(g, v, trivial_module(g)))
    assert rep.stable_at == 0 and rep.converges


def test_adjoint_coefficients_converge(a1, a1_borel):
    rep = spectral_sequence(hs_filtration(a1, a1_borel, adjoint_module(a1)))
    assert rep.converges and all(e == h == 0 for e, h in rep.einf_vs_H().values())


@pytest.mark.parametrize("which", ["a2_borel", "a2_parabolic"])
def test_a2_converges(which, request):
    v = request.getfixturevalue(which)
    rep = spectral_sequence(hs_filtration(v.parent, v, trivial_module(v.parent)))
    assert rep.converges and rep.monotone and rep.square_zero and rep.next_page_consistent


def test_e1_is_induced_cohomology(a1, a1_borel):
    f = hs_filtration(a1, a1_borel, trivial_module(a1))
    e1 = compute_page(f, 1).dims
    assert (e1[(0, 0)], e1[(0, 1)], e1[(1, 0)], e1[(1, 1)]) == (1, 1, 0, 1)


def test_filtered_complex_rejects_bad_flags():
    c = CochainComplex([1, 1], [Matrix.identity(1)])
    full, zero = Subspace.full(1), Subspace.zero(1)
    with pytest.raises(ValidationError):
        FilteredComplex(c, [[full, zero], [zero, full, zero]])
    # D sends F^1 C^0 = C^0 onto C^1 but F^1 C^1 = 0
    with pytest.raises(ValidationError):
        FilteredComplex(c, [[full, full, zero], [full, zero, zero]])
    FilteredComplex(c, [[full, zero], [full, zero, zero]])


@pytest.mark.parametrize("which, p", [("a1_borel", 0), ("a1_borel", 1), ("a2_borel", 0), ("a2_borel", 1)])
def test_e2_tensor_reading(which, p, request):
    v = request.getfixturevalue(which)
    rep = hs_e2_check(v.parent, v, p)
    assert rep.passed
    assert not rep.direct_sum_matches


def test_e2_refuses_non_elliptic(a1):
    e_only = Subalgebra(a1, Subspace._from_sparse(3, [a1.unit("e")]))
    with pytest.raises(PreconditionError):
        hs_e2_check(a1, e_only, 0)


@pytest.mark.parametrize("which", ["a1_borel", "a2_borel", "a2_parabolic"])
def test_invariant_complements(which, request):
    v = request.getfixturevalue(which)
    g = v.parent
    hp = hermitian_extension(g)
    rng = Random(7)
    for _ in range(5):
        sub = random_k_submodule(g, v, rng)
        rep = reducibility_check(g, v, sub, product=hp, check_identity=False)
        assert rep.complement_invariant and rep.direct_sum


def test_reducibility_rejects_non_invariant(a1, a1_borel):
    sub = Subspace._from_sparse(3, [{0: 1, 1: 1}])
    with pytest.raises(PreconditionError):
        reducibility_check(a1, a1_borel, sub)
