"""Chevalley-Eilenberg cochains, the bigraded spaces N^{p,q} and relative cochains.

Basis convention for C^n(g; M): lexicographically sorted n-subsets S of the
algebra basis, tensor the module basis; the cochain e^S (x) m sits at index
``subset_index[S] * dim_M + m``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Mapping

from .algebra import LieAlgebra, Subalgebra
from .config import enforce_dim_cap
from .errors import DimensionMismatch, PreconditionError, ValidationError
from .linalg import (
    Matrix,
    Quotient,
    Subspace,
    echelon_complement,
    kernel_of_rows,
    rank,
    restricted_kernel,
)
from .modules import Representation, forms_action, forms_module, quotient_module, restrict, subset_index, subsets
from .scalar import Scalar, demote, to_raw, to_scalar

__all__ = [
    "Cochain",
    "CochainComplex",
    "BigradedSlot",
    "Bigrading",
    "ce_differential",
    "lie_derivative_matrix",
    "lie_derivative",
    "ce_complex",
    "cohomology_dims",
    "n_space",
    "induced_complex",
    "relative_complex",
    "hs_isomorphism_check",
    "wedge",
]


# ---------------------------------------------------------------------------
# data types


@dataclass(frozen=True)
class Cochain:
    """An element of C^degree(g; M) keyed by (sorted subset, module index)."""

    degree: int
    algebra_dim: int
    module_dim: int
    coefficients: Mapping[tuple[tuple[int, ...], int], Scalar] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (S, m), x in dict(self.coefficients).items():
            S = tuple(S)
            if len(S) != self.degree or list(S) != sorted(set(S)):
                raise ValueError(f"index subset {S} is not a sorted {self.degree}-subset")
            if not (0 <= m < self.module_dim) or (S and not 0 <= S[-1] < self.algebra_dim):
                raise DimensionMismatch(f"index ({S}, {m}) out of range")
            x = to_scalar(x) if not isinstance(x, Scalar) else x
            if x:
                clean[(S, m)] = x
        object.__setattr__(self, "coefficients", clean)

    @property
    def space_dim(self) -> int:
        return comb(self.algebra_dim, self.degree) * self.module_dim

    def to_vector(self) -> dict:
        index = subset_index(self.algebra_dim, self.degree)
        return {
            index[S] * self.module_dim + m: to_raw(x) for (S, m), x in self.coefficients.items()
        }

    @classmethod
    def from_vector(cls, degree, algebra_dim, module_dim, vec: Mapping) -> "Cochain":
        subs = subsets(algebra_dim, degree)
        coeffs = {}
        for k, x in vec.items():
            s, m = divmod(k, module_dim)
            coeffs[(subs[s], m)] = to_scalar(x)
        return cls(degree, algebra_dim, module_dim, coeffs)


@dataclass
class CochainComplex:
    """Finite cochain complex: ``differentials[q]`` maps degree q to q+1."""

    dims: list[int]
    differentials: list[Matrix]
    labels: dict = field(default_factory=dict)
    _ranks: list[int] | None = field(default=None, repr=False)

    def __post_init__(self):
        if len(self.differentials) != max(len(self.dims) - 1, 0):
            raise DimensionMismatch("need one differential between consecutive degrees")
        for q, d in enumerate(self.differentials):
            if d.shape != (self.dims[q + 1], self.dims[q]):
                raise DimensionMismatch(
                    f"differential {q} has shape {d.shape}, expected {(self.dims[q + 1], self.dims[q])}"
                )

    def ranks(self) -> list[int]:
        if self._ranks is None:
            self._ranks = [rank(d) for d in self.differentials]
        return self._ranks

    def check_square_zero(self) -> int | None:
        """First degree q with D_{q+1} D_q != 0, or None."""
        for q in range(len(self.differentials) - 1):
            if not (self.differentials[q + 1] @ self.differentials[q]).is_zero():
                return q
        return None

    def euler_characteristic(self) -> int:
        return sum((-1) ** q * d for q, d in enumerate(self.dims))


@dataclass(frozen=True)
class BigradedSlot:
    p: int
    q: int
    N_space: Subspace
    quotient_dim: int


# ---------------------------------------------------------------------------
# the differential


def ce_differential(g: LieAlgebra, m: Representation, p: int) -> Matrix:
    """Matrix of d: C^p(g; M) -> C^{p+1}(g; M).

    du(X_1..X_{p+1}) = sum_j (-1)^{j+1} X_j . u(.. X_j omitted ..)
                     + sum_{j<k} (-1)^{j+k} u([X_j, X_k], .. X_j, X_k omitted ..)
    """
    n = g.dim
    if m.algebra is not g:
        raise PreconditionError("module is over a different algebra")
    if p < 0 or p > n:
        raise PreconditionError(f"degree {p} outside 0..{n}")
    dM = m.dim_M
    src_index = subset_index(n, p)
    ncols = comb(n, p) * dM
    nrows = comb(n, p + 1) * dM
    cols: list[dict] = [{} for _ in range(ncols)]
    table = g._table
    action_cols = [a.columns for a in m.action]

    def add(col: int, row: int, x) -> None:
        c = cols[col]
        v = demote(c.get(row, 0) + x)
        if v:
            c[row] = v
        else:
            c.pop(row, None)

    for ti, T in enumerate(subsets(n, p + 1)):
        row_base = ti * dM
        # module-action term
        for a, t in enumerate(T):
            S = T[:a] + T[a + 1:]
            sbase = src_index[S] * dM
            acols = action_cols[t]
            for mi in range(dM):
                for r, x in acols[mi].items():
                    add(sbase + mi, row_base + r, x if a % 2 == 0 else -x)
        # bracket term
        for a in range(len(T)):
            for b in range(a + 1, len(T)):
                br = table[T[a]][T[b]]
                if not br:
                    continue
                rest = T[:a] + T[a + 1:b] + T[b + 1:]
                sign_ab = 1 if (a + b) % 2 == 0 else -1
                for l, c in br.items():
                    if l in rest:
                        continue
                    below = sum(1 for u in rest if u < l)
                    S = tuple(sorted(rest + (l,)))
                    coeff = c if (sign_ab * (1 if below % 2 == 0 else -1)) > 0 else -c
                    sbase = src_index[S] * dM
                    for mi in range(dM):
                        add(sbase + mi, row_base + mi, coeff)
    return Matrix._from_raw_columns(nrows, cols)


def lie_derivative_matrix(g: LieAlgebra, m: Representation, x: Mapping, degree: int) -> Matrix:
    """Matrix of L_x on C^degree(g; M)."""
    return forms_action(g.ad_of(x), degree, m.act(x))


def lie_derivative(g: LieAlgebra, m: Representation, x, u: Cochain) -> Cochain:
    if u.algebra_dim != g.dim or u.module_dim != m.dim_M:
        raise DimensionMismatch("cochain does not match algebra/module")
    if not isinstance(x, Mapping):
        if len(x) != g.dim:
            raise DimensionMismatch(f"element must have {g.dim} coordinates")
        x = {i: to_raw(a) for i, a in enumerate(x) if to_raw(a)}
    mat = lie_derivative_matrix(g, m, x, u.degree)
    return Cochain.from_vector(u.degree, g.dim, m.dim_M, mat.apply(u.to_vector()))


def ce_complex(g: LieAlgebra, m: Representation, max_dim: int | None = None) -> CochainComplex:
    enforce_dim_cap(g.dim, max_dim)
    n = g.dim
    dims = [comb(n, q) * m.dim_M for q in range(n + 1)]
    diffs = [ce_differential(g, m, q) for q in range(n)]
    c = CochainComplex(dims, diffs, {"kind": "ce", "algebra": g.name, "module": m.name})
    bad = c.check_square_zero()
    if bad is not None:
        raise ValidationError(
            f"d o d != 0 at degree {bad}; the module fails the homomorphism property", witness=(bad,)
        )
    return c


def cohomology_dims(c: CochainComplex) -> list[int]:
    r = c.ranks()
    out = []
    for q, d in enumerate(c.dims):
        out_rank = r[q] if q < len(r) else 0
        in_rank = r[q - 1] if q > 0 else 0
        out.append(d - out_rank - in_rank)
    return out


# ---------------------------------------------------------------------------
# the spaces N^{p,q}


def wedge(vectors) -> dict[tuple[int, ...], object]:
    """Expansion of Y_1 ^ ... ^ Y_k in the basis e_S (sorted subsets)."""
    state: dict[tuple[int, ...], object] = {(): to_raw(1)}
    for vec in vectors:
        new: dict[tuple[int, ...], object] = {}
        for S, c in state.items():
            for k, a in vec.items():
                if k in S:
                    continue
                above = sum(1 for u in S if u > k)
                T = tuple(sorted(S + (k,)))
                val = c * a if above % 2 == 0 else -(c * a)
                v = demote(new.get(T, 0) + val)
                if v:
                    new[T] = v
                else:
                    new.pop(T, None)
        state = new
    return state


class Bigrading:
    """Memoised N^{p,q}_v(g; M) spaces and CE differentials for one (g, v, M)."""

    def __init__(self, g: LieAlgebra, v: Subalgebra, m: Representation, max_dim: int | None = None):
        if v.parent is not g or m.algebra is not g:
            raise PreconditionError("subalgebra and module must belong to the algebra")
        enforce_dim_cap(g.dim, max_dim)
        self.g, self.v, self.m = g, v, m
        self._n: dict[tuple[int, int], Subspace] = {}
        self._scalar_n: dict[tuple[int, int], Subspace] = {}
        self._d: dict[int, Matrix] = {}
        one = to_raw(1)
        self._v_vecs = list(v.space.rows)
        self._c_vecs = [{c: one} for c in echelon_complement(v.space)]

    def cochain_dim(self, n: int) -> int:
        if n < 0 or n > self.g.dim:
            return 0
        return comb(self.g.dim, n) * self.m.dim_M

    def differential(self, n: int) -> Matrix:
        if n not in self._d:
            if 0 <= n < self.g.dim:
                self._d[n] = ce_differential(self.g, self.m, n)
            else:
                self._d[n] = Matrix.zero(self.cochain_dim(n + 1), self.cochain_dim(n))
        return self._d[n]

    def _scalar_space(self, p: int, q: int) -> Subspace:
        """N^{p,q} with trivial one-dimensional coefficients."""
        key = (p, q)
        if key in self._scalar_n:
            return self._scalar_n[key]
        n = p + q
        N = self.g.dim
        amb = comb(N, n) if 0 <= n <= N else 0
        if q < 0 or amb == 0:
            s = Subspace.zero(amb)
        elif p == 0:
            s = Subspace.full(amb)
        else:
            # u vanishes on q+1 elements of v iff it kills every adapted-basis
            # wedge with at least q+1 factors from v
            index = subset_index(N, n)
            a = len(self._v_vecs)
            rows = []
            for j in range(q + 1, min(a, n) + 1):
                for vs in combinations(self._v_vecs, j):
                    vw = wedge(vs)
                    for cs in combinations(self._c_vecs, n - j):
                        w = wedge_extend(vw, cs)
                        if w:
                            rows.append({index[S]: x for S, x in w.items()})
            s = kernel_of_rows(rows, amb)
        self._scalar_n[key] = s
        return s

    def n_space(self, p: int, q: int) -> Subspace:
        key = (p, q)
        if key in self._n:
            return self._n[key]
        base = self._scalar_space(p, q)
        dM = self.m.dim_M
        if dM == 1:
            s = Subspace._from_sparse(base.ambient_dim, base.rows)
        else:
            s = Subspace._from_sparse(
                base.ambient_dim * dM,
                ({k * dM + mi: x for k, x in r.items()} for mi in range(dM) for r in base.rows),
            )
        self._n[key] = s
        return s


def wedge_extend(state: dict, vectors) -> dict:
    """Continue a wedge expansion by further factors."""
    for vec in vectors:
        new: dict = {}
        for S, c in state.items():
            for k, a in vec.items():
                if k in S:
                    continue
                above = sum(1 for u in S if u > k)
                T = tuple(sorted(S + (k,)))
                val = c * a if above % 2 == 0 else -(c * a)
                v = demote(new.get(T, 0) + val)
                if v:
                    new[T] = v
                else:
                    new.pop(T, None)
        state = new
    return state


def n_space(g: LieAlgebra, v: Subalgebra, m: Representation, p: int, q: int, bigrading: Bigrading | None = None) -> BigradedSlot:
    """N^{p,q}: cochains of degree p+q vanishing on any q+1 arguments from v."""
    if p < 0:
        raise PreconditionError("p must be nonnegative")
    bg = bigrading or Bigrading(g, v, m)
    big = bg.n_space(p, q)
    small = bg.n_space(p + 1, q - 1)
    return BigradedSlot(p, q, big, big.dim - small.dim)


def induced_complex(
    g: LieAlgebra, v: Subalgebra, m: Representation, p: int, bigrading: Bigrading | None = None
) -> CochainComplex:
    """(C^{p,*}_v(g; M), d') for fixed p, degrees q = 0..dim v."""
    bg = bigrading or Bigrading(g, v, m)
    quotients = []
    for q in range(v.dim + 2):
        big, small = bg.n_space(p, q), bg.n_space(p + 1, q - 1)
        if not small.is_subspace_of(big):
            raise ValidationError(f"N^({p + 1},{q - 1}) is not contained in N^({p},{q})", witness=(p, q))
        quotients.append(Quotient(big, small, check=False))
    diffs = []
    for q in range(v.dim):
        d = bg.differential(p + q)
        target = bg.n_space(p, q + 1)
        for r in bg.n_space(p, q).rows:
            if not target.contains(d.apply(r)):
                raise ValidationError(f"d does not map N^({p},{q}) into N^({p},{q + 1})", witness=(p, q))
        diffs.append(quotients[q].induced_map(d, quotients[q + 1]))
    dims = [quotients[q].dim for q in range(v.dim + 1)]
    return CochainComplex(dims, diffs, {"kind": "induced", "p": p, "algebra": g.name, "subalgebra": v.name, "module": m.name})


def relative_complex(g: LieAlgebra, v: Subalgebra, m: Representation, max_dim: int | None = None) -> CochainComplex:
    """Basic cochains: killed by insertion of, and Lie derivative along, every Y in v."""
    bg = Bigrading(g, v, m, max_dim=max_dim)
    spaces = []
    for n in range(g.dim + 1):
        horizontal = bg.n_space(n, 0)
        lie = [lie_derivative_matrix(g, m, y, n) for y in v.space.rows]
        spaces.append(restricted_kernel(lie, horizontal) if lie else horizontal)
    diffs = []
    for n in range(g.dim):
        d = bg.differential(n)
        target = spaces[n + 1]
        cols = []
        for r in spaces[n].rows:
            img = d.apply(r)
            if not target.contains(img):
                raise ValidationError(f"d leaves the basic subcomplex in degree {n}", witness=(n,))
            cols.append(target.coordinates(img))
        diffs.append(Matrix._from_raw_columns(target.dim, cols))
    dims = [s.dim for s in spaces]
    return CochainComplex(dims, diffs, {"kind": "relative", "algebra": g.name, "subalgebra": v.name, "module": m.name})


@dataclass(frozen=True)
class IsomorphismReport:
    p: int
    induced_dims: list[int]
    subalgebra_dims: list[int]

    @property
    def passed(self) -> bool:
        return self.induced_dims == self.subalgebra_dims

    def as_dict(self) -> dict:
        return {
            "p": self.p,
            "induced": self.induced_dims,
            "subalgebra_side": self.subalgebra_dims,
            "pass": self.passed,
        }


def hs_isomorphism_check(
    g: LieAlgebra, v: Subalgebra, m: Representation, p: int, bigrading: Bigrading | None = None
) -> IsomorphismReport:
    """Compare H^{p,*}_v(g; M) with H^*(v; C^p(g/v; M))."""
    left = cohomology_dims(induced_complex(g, v, m, p, bigrading=bigrading))
    va = v.as_algebra()
    gv = quotient_module(g, v)
    if p > gv.dim_M:
        right = [0] * (v.dim + 1)
    else:
        coeffs = forms_module(gv, p, restrict(m, v))
        right = cohomology_dims(ce_complex(va, coeffs))
    return IsomorphismReport(p, left, right)
