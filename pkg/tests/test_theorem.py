import pytest

from liecoh.algebra import LieAlgebra, Subalgebra
from liecoh.errors import PreconditionError
from liecoh.linalg import Subspace
from liecoh.theorem import coefficient_module, full_report, theorem1_crosscheck


@pytest.mark.parametrize("which", ["a1_borel", "a2_borel", "a2_parabolic"])
def test_crosscheck_passes(which, request):
    v = request.getfixturevalue(which)
    rep = theorem1_crosscheck(v.parent, v, p_max=2)
    assert rep.passed
    assert len(rep.slots) == 3 * (v.dim + 1)


def test_crosscheck_full(a2):
    rep = theorem1_crosscheck(a2, Subalgebra.full(a2), p_max=2)
    assert rep.passed
    # v = g: k = g, so the relative part is trivial and the identity is H(g) = H(k)
    assert rep.h_k == [1, 0, 0, 1, 0, 1, 0, 0, 1]


def test_a1_borel_numbers(a1, a1_borel):
    rep = theorem1_crosscheck(a1, a1_borel, p_max=1)
    assert rep.h_k == [1, 1]
    assert rep.h_rel == {0: [1, 0, 0], 1: [0, 1, 0]}


def test_dual_reading_differs_in_positive_degree(a1, a1_borel):
    rep = theorem1_crosscheck(a1, a1_borel, p_max=1)
    slot = next(s for s in rep.slots if (s.p, s.q) == (1, 1))
    assert slot.lhs == slot.rhs == 1 and slot.rhs_dual == 0


def test_coefficient_module_readings(a1, a1_borel):
    forms = coefficient_module(a1, a1_borel, 1, "forms")
    dual = coefficient_module(a1, a1_borel, 1, "dual")
    # h acts on (g/b)* = span{f*} by +2 and on g/b = span{f} by -2
    h = a1_borel.coordinates(a1.unit("h"))
    assert forms.act(h)[0, 0] == 2 and dual.act(h)[0, 0] == -2
    with pytest.raises(PreconditionError):
        coefficient_module(a1, a1_borel, 1, "other")


def test_refusals(a1):
    e_only = Subalgebra(a1, Subspace._from_sparse(3, [a1.unit("e")]))
    with pytest.raises(PreconditionError, match="not elliptic"):
        theorem1_crosscheck(a1, e_only)
    plain = LieAlgebra(["x"], {})
    with pytest.raises(PreconditionError):
        theorem1_crosscheck(plain, Subalgebra.full(plain))


def test_full_report(a1, a1_borel):
    doc = full_report(a1, a1_borel)
    assert doc["pass"] and doc["errors"] == {}
    assert doc["spectral"]["stable_at"] == 2
    assert all(r["pass"] for r in doc["e2_check"])


def test_full_report_skips_non_elliptic(a1):
    e_only = Subalgebra(a1, Subspace._from_sparse(3, [a1.unit("e")]))
    doc = full_report(a1, e_only)
    assert doc["theorem"] == {"skipped": "subalgebra is not elliptic"}
    assert doc["spectral"]["pass"]
