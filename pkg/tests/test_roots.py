import pytest

from liecoh.algebra import check_jacobi, check_real_structure
from liecoh.errors import CapExceeded, ValidationError
from liecoh.roots import (
    CartanDatum,
    borel,
    build_semisimple,
    check_root_grading,
    hermitian_extension,
    killing_form,
    parabolic,
    preset,
    root_of_basis,
)
from liecoh.scalar import Scalar


@pytest.mark.parametrize(
    "name, label, n_pos, dim",
    [("A1", "A1", 1, 3), ("A2", "A2", 3, 8), ("B2", "B2", 4, 10), ("G2", "G2", 6, 14)],
)
def test_presets(name, label, n_pos, dim):
    d = preset(name)
    assert d.type_label == label and len(d.positive_roots) == n_pos and d.dim == dim


def test_a3_and_products():
    assert CartanDatum([[2, -1, 0], [-1, 2, -1], [0, -1, 2]]).dim == 15
    d = CartanDatum([[2, 0], [0, 2]])
    assert d.type_label == "A1+A1" and d.dim == 6


@pytest.mark.parametrize(
    "matrix",
    [[[2, 1], [1, 2]], [[2, -1], [0, 2]], [[2, -1], [-4, 2]], [[3, 0], [0, 2]], [[2, -2], [-2, 2]]],
)
def test_invalid_cartan_matrices(matrix):
    with pytest.raises(ValidationError):
        CartanDatum(matrix)


@pytest.mark.parametrize("name", ["A1", "A2", "B2"])
def test_chevalley_algebra_is_valid(name):
    g = build_semisimple(name)
    assert check_jacobi(g) and check_real_structure(g) and check_root_grading(g)


def test_g2_over_default_cap_but_buildable_with_larger_cap():
    with pytest.raises(CapExceeded):
        build_semisimple("G2")
    g = build_semisimple("G2", max_dim=14)
    assert check_jacobi(g) and check_root_grading(g)


def test_sl2_structure(a1):
    assert a1.basis_names == ("h", "e", "f")
    h, e, f = range(3)
    assert a1.bracket_basis(h, e) == {e: 2}
    assert a1.bracket_basis(h, f) == {f: -2}
    assert a1.bracket_basis(e, f) == {h: 1}
    # sigma(h) = -h, sigma(e) = -f
    assert a1.sigma({h: 1}) == {h: -1}
    assert a1.sigma({e: 1}) == {f: -1}


def test_cartan_convention(a2):
    # [h_i, e_j] = a_ij e_j with a_ij = alpha_j(h_i)
    a = preset("B2").cartan_matrix
    g = build_semisimple("B2")
    names = g.basis_names
    for i in range(2):
        for j in range(2):
            ej = names.index(("e10", "e01")[j])
            assert g.bracket_basis(i, ej) == ({ej: a[i][j]} if a[i][j] else {})


def test_killing_form_sl2(a1):
    B = killing_form(a1)
    assert B[0][0] == 8 and B[1][2] == 4 and B[1][1] == 0


def test_borel_and_parabolic(a2):
    assert borel(a2).dim == 5
    p = parabolic(a2, [1])
    assert p.dim == 6
    roots = root_of_basis(a2)
    names = [a2.basis_names[next(iter(r))] for r in p.space.rows]
    assert "f10" in names and "f01" not in names
    assert roots[a2.basis_names.index("e11")] == (1, 1)


@pytest.mark.parametrize("name", ["A1", "A2", "B2"])
def test_hermitian_product(name):
    g = build_semisimple(name)
    hp = hermitian_extension(g)
    assert hp.is_conjugate_symmetric() and hp.is_positive_definite()
    assert hp.identity_failures() == []


def test_hermitian_product_g2():
    g = build_semisimple("G2", max_dim=14)
    hp = hermitian_extension(g)
    assert hp.is_positive_definite() and hp.identity_failures() == []


def test_not_ad_invariant_witness(a1):
    (i, j, k), lhs, rhs = hermitian_extension(a1).ad_invariance_witness()
    assert (a1.basis_names[i], a1.basis_names[j], a1.basis_names[k]) == ("h", "e", "e")
    assert (lhs, rhs) == (Scalar(8), Scalar(-8))


def test_parabolic_edge_cases(a2, a2_borel):
    from liecoh.algebra import Subalgebra, classify_structure, real_form_dimension, real_part

    assert parabolic(a2, []).space == a2_borel.space
    assert parabolic(a2, [1, 2]).space == Subalgebra.full(a2).space
    p1 = parabolic(a2, [1])
    assert classify_structure(a2, p1).elliptic
    names = {a2.basis_names[next(iter(r))] for r in real_part(a2, p1).space.rows}
    assert names == {"h1", "h2", "e10", "f10"}
    assert real_part(a2, a2_borel).dim == 2
    assert real_form_dimension(a2) == 8
