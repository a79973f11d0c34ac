"""Finite-dimensional modules over a Lie algebra."""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Sequence

from .algebra import Check, LieAlgebra, Subalgebra
from .errors import DimensionMismatch, PreconditionError, ValidationError
from .linalg import Matrix, Subspace, _axpy, echelon_complement, restricted_kernel
from .scalar import demote, to_raw

__all__ = [
    "Representation",
    "trivial_module",
    "adjoint_module",
    "quotient_module",
    "dual_module",
    "forms_module",
    "restrict",
    "invariants",
    "check_homomorphism",
    "subsets",
    "subset_index",
]


@lru_cache(maxsize=None)
def subsets(n: int, p: int) -> tuple[tuple[int, ...], ...]:
    """Sorted p-subsets of range(n) in lexicographic order."""
    if p < 0 or p > n:
        return ()
    return tuple(combinations(range(n), p))


@lru_cache(maxsize=None)
def subset_index(n: int, p: int) -> dict[tuple[int, ...], int]:
    return {s: i for i, s in enumerate(subsets(n, p))}


class Representation:
    """A module M over ``algebra``: one action matrix per basis element."""

    def __init__(self, algebra: LieAlgebra, action: Sequence[Matrix], name: str = "", check: bool = True):
        action = tuple(action)
        if len(action) != algebra.dim:
            raise DimensionMismatch(f"need {algebra.dim} action matrices, got {len(action)}")
        dims = {m.shape for m in action}
        if len(dims) > 1 or any(r != c for r, c in dims):
            raise DimensionMismatch("action matrices must be square and of equal size")
        self.algebra = algebra
        self.action = action
        self.dim_M = action[0].nrows if action else 0
        self.name = name
        if check:
            chk = check_homomorphism(self)
            if not chk:
                raise ValidationError(f"not a representation: {chk.detail}", witness=chk.witness)

    @classmethod
    def _trusted(cls, algebra, action, dim_M, name=""):
        r = cls.__new__(cls)
        r.algebra = algebra
        r.action = tuple(action)
        r.dim_M = dim_M
        r.name = name
        return r

    def act(self, x: dict) -> Matrix:
        """Action matrix of an arbitrary algebra element (sparse coordinates)."""
        cols: list[dict] = [{} for _ in range(self.dim_M)]
        for i, a in x.items():
            for c, col in enumerate(self.action[i].columns):
                if col:
                    _axpy(cols[c], a, col)
        return Matrix._from_raw_columns(self.dim_M, cols)

    def is_trivial(self) -> bool:
        return all(m.is_zero() for m in self.action)

    def __repr__(self):
        return f"<Representation {self.name or ''} dim={self.dim_M} of {self.algebra!r}>"


def check_homomorphism(r: Representation) -> Check:
    g = r.algebra
    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            lhs = r.act(g.bracket_basis(i, j))
            a, b = r.action[i], r.action[j]
            if lhs != (a @ b) - (b @ a):
                names = g.basis_names
                return Check(False, (i, j), f"rho([{names[i]}, {names[j]}]) != [rho({names[i]}), rho({names[j]})]")
    return Check(True)


def trivial_module(g: LieAlgebra, dim_M: int = 1) -> Representation:
    z = Matrix.zero(dim_M, dim_M)
    return Representation._trusted(g, [z] * g.dim, dim_M, name="trivial")


def adjoint_module(g: LieAlgebra) -> Representation:
    return Representation._trusted(g, [g.ad(i) for i in range(g.dim)], g.dim, name="adjoint")


def dual_module(r: Representation) -> Representation:
    return Representation._trusted(
        r.algebra, [(-m).transpose() for m in r.action], r.dim_M, name=f"dual:{r.name}"
    )


def restrict(r: Representation, v: Subalgebra) -> Representation:
    """r restricted to ``v``, as a module over ``v.as_algebra()``."""
    if v.parent is not r.algebra:
        raise PreconditionError("subalgebra of a different algebra")
    return Representation._trusted(
        v.as_algebra(), [r.act(b) for b in v.space.rows], r.dim_M, name=r.name
    )


def quotient_module(g: LieAlgebra, v: Subalgebra) -> Representation:
    """g/v as a module over v: Y . (X mod v) = [Y, X] mod v.

    The quotient basis is the unit vectors at the non-pivot coordinates of
    the echelon basis of v, in increasing order.
    """
    if v.parent is not g:
        raise PreconditionError("subalgebra of a different algebra")
    comp = echelon_complement(v.space)
    pos = {c: a for a, c in enumerate(comp)}
    one = to_raw(1)
    action = []
    for y in v.space.rows:
        cols = []
        for c in comp:
            red = v.space.reduce(g.bracket_sparse(y, {c: one}))
            cols.append({pos[k]: x for k, x in red.items()})
        action.append(Matrix._from_raw_columns(len(comp), cols))
    host = v.as_algebra()
    return Representation._trusted(host, action, len(comp), name="quotient")


def forms_action(a: Matrix, p: int, b: Matrix) -> Matrix:
    """Action on alternating p-forms on V with values in M.

    ``a`` acts on V, ``b`` on M; the result acts on Lambda^p V* (x) M by
    (L u)(Y_1..Y_p) = b u(Y..) - sum_i u(Y_1, .., a Y_i, .., Y_p).
    Basis: lexicographic p-subsets of V's basis, tensor M's basis.
    """
    n = a.nrows
    m = b.nrows
    subs = subsets(n, p)
    index = subset_index(n, p)
    rows_a = a.row_dicts  # rows_a[s][t] = a_{s,t}; e^s o a = sum_t a_{s,t} e^t
    cols = []
    for S in subs:
        sset = set(S)
        # form part: -sum over slots of e^S with e^{s_k} replaced by e^{s_k} o a
        form_part: dict = {}
        for k, s in enumerate(S):
            for t, x in rows_a[s].items():
                if t != s and t in sset:
                    continue
                rest = S[:k] + S[k + 1:]
                below = sum(1 for u in rest if u < t)
                new = tuple(sorted(rest + (t,)))
                coeff = -x if (below - k) % 2 == 0 else x
                idx = index[new]
                v = demote(form_part.get(idx, 0) + coeff)
                if v:
                    form_part[idx] = v
                else:
                    form_part.pop(idx, None)
        base = index[S] * m
        for mi in range(m):
            col: dict = {}
            for idx, c in form_part.items():
                col[idx * m + mi] = c
            for r, x in b.column(mi).items():
                key = base + r
                v = demote(col.get(key, 0) + x)
                if v:
                    col[key] = v
                else:
                    col.pop(key, None)
            cols.append(col)
    return Matrix._from_raw_columns(comb(n, p) * m, cols)


def forms_module(v_rep: Representation, p: int, coeffs: Representation) -> Representation:
    """C^p(V; M) for a module V (typically g/v) with coefficients M."""
    if v_rep.algebra is not coeffs.algebra:
        raise PreconditionError("both modules must be over the same algebra")
    if p < 0 or p > v_rep.dim_M:
        raise PreconditionError(f"form degree {p} outside 0..{v_rep.dim_M}")
    if p == 0:
        return coeffs
    action = [forms_action(a, p, b) for a, b in zip(v_rep.action, coeffs.action)]
    return Representation._trusted(
        v_rep.algebra, action, comb(v_rep.dim_M, p) * coeffs.dim_M, name=f"forms:{p}:{coeffs.name}"
    )


def invariants(r: Representation) -> Subspace:
    """Joint kernel of the action matrices."""
    return restricted_kernel(r.action, Subspace.full(r.dim_M))
