"""Lie algebras given by structure constants, subalgebras and real structures."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Mapping, Sequence

from .errors import DimensionMismatch, PreconditionError, ValidationError
from .linalg import (
    Matrix,
    Subspace,
    _axpy,
    _sparse,
    as_dense,
    kernel,
    subspace_intersect,
    subspace_sum,
)
from .scalar import Scalar, conj_raw, to_raw

__all__ = [
    "Check",
    "LieAlgebra",
    "Subalgebra",
    "StructureClass",
    "bracket",
    "check_antisymmetry",
    "check_jacobi",
    "check_real_structure",
    "check_subalgebra",
    "conjugate_subspace",
    "classify_structure",
    "real_part",
    "real_form_dimension",
    "abelian",
]


@dataclass(frozen=True)
class Check:
    """Outcome of an axiom check; ``witness`` names the offending basis indices."""

    passed: bool
    witness: tuple | None = None
    detail: str = ""

    def __bool__(self):
        return self.passed


class LieAlgebra:
    """A finite-dimensional Lie algebra over Q(i).

    ``brackets`` maps index pairs ``(i, j)`` to the coordinate vector of
    ``[X_i, X_j]`` (dense sequence or sparse mapping).  Missing pairs are
    zero and a pair given in one order only is completed by antisymmetry.

    ``real_structure`` is the matrix ``S`` of an antilinear involution,
    column ``j`` holding ``sigma(X_j)``, so ``sigma(x) = S @ conj(x)``.
    """

    def __init__(
        self,
        basis_names: Sequence[str],
        brackets: Mapping | None = None,
        real_structure: Matrix | Sequence | None = None,
        name: str = "",
        check: bool = True,
    ):
        names = [str(b) for b in basis_names]
        if len(set(names)) != len(names):
            raise ValidationError("duplicate basis names", witness=tuple(names))
        self.basis_names = tuple(names)
        self.dim = n = len(names)
        self.name = name
        table: list[list[dict]] = [[{} for _ in range(n)] for _ in range(n)]
        given: dict[tuple[int, int], dict] = {}
        for (i, j), val in (brackets or {}).items():
            if not (0 <= i < n and 0 <= j < n):
                raise DimensionMismatch(f"bracket index ({i}, {j}) out of range for dim {n}")
            given[(i, j)] = _sparse(val, n)
        self._antisym_witness = None
        for (i, j), v in given.items():
            table[i][j] = v
            if (j, i) in given:
                neg = {k: -x for k, x in given[(j, i)].items()}
                if v != neg and self._antisym_witness is None:
                    self._antisym_witness = (min(i, j), max(i, j))
            elif i != j:
                table[j][i] = {k: -x for k, x in v.items()}
            elif v and self._antisym_witness is None:
                self._antisym_witness = (i, i)
        self._table = table
        if real_structure is not None and not isinstance(real_structure, Matrix):
            real_structure = Matrix.from_rows(real_structure, n)
        if real_structure is not None and real_structure.shape != (n, n):
            raise DimensionMismatch("real structure must be a dim x dim matrix")
        self.real_structure = real_structure
        self._ad = None
        if check:
            self.validate()

    # construction helpers -------------------------------------------------
    @classmethod
    def from_table(cls, basis_names, table, real_structure=None, name="", check=True):
        """Build from a full ``table[i][j]`` of sparse raw dicts (no copying)."""
        g = cls.__new__(cls)
        g.basis_names = tuple(basis_names)
        g.dim = len(g.basis_names)
        g.name = name
        g._table = table
        g._antisym_witness = None
        g.real_structure = real_structure
        g._ad = None
        if check:
            g.validate()
        return g

    def validate(self) -> None:
        for chk, what in (
            (check_antisymmetry(self), "antisymmetry"),
            (check_jacobi(self), "Jacobi identity"),
        ):
            if not chk:
                raise ValidationError(f"{what} fails: {chk.detail}", witness=chk.witness)
        if self.real_structure is not None:
            chk = check_real_structure(self)
            if not chk:
                raise ValidationError(f"real structure invalid: {chk.detail}", witness=chk.witness)

    # brackets ---------------------------------------------------------------
    def bracket_basis(self, i: int, j: int) -> dict:
        return self._table[i][j]

    def bracket_sparse(self, x: Mapping, y: Mapping) -> dict:
        out: dict = {}
        for i, a in x.items():
            row = self._table[i]
            for j, b in y.items():
                v = row[j]
                if v:
                    _axpy(out, a * b, v)
        return out

    def ad(self, i: int) -> Matrix:
        """Matrix of ad(X_i)."""
        if self._ad is None:
            self._ad = [
                Matrix._from_raw_columns(self.dim, [self._table[i][j] for j in range(self.dim)])
                for i in range(self.dim)
            ]
        return self._ad[i]

    def ad_of(self, x: Mapping) -> Matrix:
        cols = []
        for j in range(self.dim):
            col: dict = {}
            for i, a in x.items():
                v = self._table[i][j]
                if v:
                    _axpy(col, a, v)
            cols.append(col)
        return Matrix._from_raw_columns(self.dim, cols)

    def structure_constants(self) -> dict[tuple[int, int], dict]:
        """Nonzero brackets with ``i < j`` as sparse raw dicts."""
        return {
            (i, j): self._table[i][j]
            for i in range(self.dim)
            for j in range(i + 1, self.dim)
            if self._table[i][j]
        }

    def index(self, name: str) -> int:
        try:
            return self.basis_names.index(name)
        except ValueError:
            raise KeyError(f"no basis element named {name!r}") from None

    def unit(self, name_or_index) -> dict:
        i = self.index(name_or_index) if isinstance(name_or_index, str) else name_or_index
        return {i: to_raw(1)}

    def sigma(self, x: Mapping) -> dict:
        if self.real_structure is None:
            raise PreconditionError("algebra has no real structure")
        return self.real_structure.apply({k: conj_raw(v) for k, v in x.items()})

    def is_abelian(self) -> bool:
        return not any(self._table[i][j] for i in range(self.dim) for j in range(self.dim))

    def __repr__(self):
        label = self.name or "LieAlgebra"
        return f"<{label} dim={self.dim}>"


def bracket(g: LieAlgebra, x: Sequence, y: Sequence) -> tuple[Scalar, ...]:
    if len(x) != g.dim or len(y) != g.dim:
        raise DimensionMismatch(f"vectors must have length {g.dim}")
    return as_dense(g.bracket_sparse(_sparse(x, g.dim), _sparse(y, g.dim)), g.dim)


def abelian(n: int, name: str = "") -> LieAlgebra:
    return LieAlgebra([f"x{i}" for i in range(n)], {}, name=name or f"abelian{n}")


# ---------------------------------------------------------------------------
# axiom checks


def check_antisymmetry(g: LieAlgebra) -> Check:
    if g._antisym_witness is not None:
        i, j = g._antisym_witness
        return Check(False, (i, j), f"[{g.basis_names[i]}, {g.basis_names[j]}] not antisymmetric")
    for i in range(g.dim):
        if g._table[i][i]:
            return Check(False, (i, i), f"[{g.basis_names[i]}, {g.basis_names[i]}] != 0")
        for j in range(i + 1, g.dim):
            a, b = g._table[i][j], g._table[j][i]
            if a != {k: -x for k, x in b.items()}:
                return Check(False, (i, j), f"[{g.basis_names[i]}, {g.basis_names[j]}] not antisymmetric")
    return Check(True)


def check_jacobi(g: LieAlgebra) -> Check:
    """Jacobi identity on every basis triple i < j < k."""
    t = g._table
    for i, j, k in combinations(range(g.dim), 3):
        acc: dict = {}
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            inner = t[b][c]
            for m, x in inner.items():
                v = t[a][m]
                if v:
                    _axpy(acc, x, v)
        if acc:
            names = g.basis_names
            return Check(False, (i, j, k), f"Jacobi fails on ({names[i]}, {names[j]}, {names[k]})")
    return Check(True)


def check_real_structure(g: LieAlgebra) -> Check:
    """sigma o sigma = id and sigma[X_i, X_j] = [sigma X_i, sigma X_j]."""
    if g.real_structure is None:
        return Check(True, detail="no real structure")
    one = to_raw(1)
    images = [g.sigma({i: one}) for i in range(g.dim)]
    for i in range(g.dim):
        if g.sigma(images[i]) != {i: one}:
            return Check(False, (i,), f"sigma is not an involution on {g.basis_names[i]}")
    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            lhs = g.sigma(g.bracket_basis(i, j))
            rhs = g.bracket_sparse(images[i], images[j])
            if lhs != rhs:
                return Check(
                    False,
                    (i, j),
                    f"sigma does not preserve [{g.basis_names[i]}, {g.basis_names[j]}]",
                )
    return Check(True)


def check_subalgebra(g: LieAlgebra, s: Subspace) -> Check:
    if s.ambient_dim != g.dim:
        raise DimensionMismatch("subspace does not live in the algebra")
    rows = s.rows
    for a in range(len(rows)):
        for b in range(a + 1, len(rows)):
            if not s.contains(g.bracket_sparse(rows[a], rows[b])):
                return Check(False, (a, b), f"bracket of basis vectors {a} and {b} leaves the subspace")
    return Check(True)


# ---------------------------------------------------------------------------
# subalgebras


class Subalgebra:
    """A subspace of ``parent`` closed under the bracket."""

    def __init__(self, parent: LieAlgebra, space: Subspace, name: str = "", check: bool = True):
        if space.ambient_dim != parent.dim:
            raise DimensionMismatch("subspace does not live in the parent algebra")
        if check:
            chk = check_subalgebra(parent, space)
            if not chk:
                raise ValidationError(f"not a subalgebra: {chk.detail}", witness=chk.witness)
        self.parent = parent
        self.space = space
        self.name = name
        self._algebra = None

    @classmethod
    def spanned_by(cls, parent: LieAlgebra, vectors, name: str = "", check: bool = True):
        vecs = []
        for v in vectors:
            if isinstance(v, str):
                v = parent.unit(v)
            vecs.append(v)
        return cls(parent, Subspace(parent.dim, vecs), name=name, check=check)

    @classmethod
    def full(cls, g: LieAlgebra) -> "Subalgebra":
        return cls(g, Subspace.full(g.dim), name="g", check=False)

    @classmethod
    def zero(cls, g: LieAlgebra) -> "Subalgebra":
        return cls(g, Subspace.zero(g.dim), name="0", check=False)

    @property
    def dim(self) -> int:
        return self.space.dim

    def basis_labels(self) -> list[str]:
        """Parent names for unit-vector basis elements, ``v0, v1, ...`` otherwise."""
        labels = []
        for idx, r in enumerate(self.space.rows):
            if len(r) == 1:
                (k,) = r
                labels.append(self.parent.basis_names[k])
            else:
                labels.append(f"v{idx}")
        return labels

    def as_algebra(self) -> LieAlgebra:
        """The subalgebra as a Lie algebra in its own echelon basis."""
        if self._algebra is None:
            rows = self.space.rows
            n = len(rows)
            table = [[{} for _ in range(n)] for _ in range(n)]
            for a in range(n):
                for b in range(a + 1, n):
                    c = self.space.coordinates(self.parent.bracket_sparse(rows[a], rows[b]))
                    table[a][b] = c
                    table[b][a] = {k: -x for k, x in c.items()}
            label = f"{self.name or 'sub'}"
            self._algebra = LieAlgebra.from_table(self.basis_labels(), table, name=label, check=False)
        return self._algebra

    def coordinates(self, vec) -> dict:
        """Coordinates of a parent vector in this subalgebra's basis."""
        return self.space.coordinates(vec)

    def relative_to(self, other: "Subalgebra") -> "Subalgebra":
        """This subalgebra as a subalgebra of ``other.as_algebra()``."""
        if not self.space.is_subspace_of(other.space):
            raise PreconditionError("not contained in the given subalgebra")
        host = other.as_algebra()
        vecs = [other.coordinates(r) for r in self.space.rows]
        return Subalgebra(host, Subspace._from_sparse(host.dim, vecs), name=self.name, check=False)

    def __repr__(self):
        return f"<Subalgebra {self.name or ''} dim={self.dim} of {self.parent!r}>"


# ---------------------------------------------------------------------------
# real structures


def conjugate_subspace(g: LieAlgebra, v: Subspace) -> Subspace:
    if g.real_structure is None:
        raise PreconditionError("algebra has no real structure")
    if v.ambient_dim != g.dim:
        raise DimensionMismatch("subspace does not live in the algebra")
    return Subspace._from_sparse(g.dim, (g.sigma(r) for r in v.rows))


def real_part(g: LieAlgebra, v: Subalgebra) -> Subalgebra:
    """k = v intersected with its conjugate, itself a sigma-stable subalgebra."""
    k = subspace_intersect(v.space, conjugate_subspace(g, v.space))
    return Subalgebra(g, k, name="k", check=False)


def real_form_dimension(g: LieAlgebra) -> int:
    """Real dimension of the fixed points of sigma on Q(i)^n viewed as Q^2n."""
    if g.real_structure is None:
        raise PreconditionError("algebra has no real structure")
    n = g.dim
    s = g.real_structure
    # x = a + ib; sigma(x) = S(a - ib); fixed iff (sigma - 1) x = 0 in real coordinates
    cols = []
    for part in (0, 1):
        for j in range(n):
            col: dict = {}
            for i, x in s.column(j).items():
                xs = Scalar(x) if not isinstance(x, Scalar) else x
                img = xs if part == 0 else xs * Scalar(0, -1)
                if img.re:
                    col[i] = img.re
                if img.im:
                    col[n + i] = img.im
            key = j if part == 0 else n + j
            col[key] = col.get(key, 0) - 1
            if not col[key]:
                del col[key]
            cols.append(col)
    return kernel(Matrix._from_raw_columns(2 * n, cols)).dim


@dataclass(frozen=True)
class StructureClass:
    elliptic: bool
    complex: bool
    essentially_real: bool
    corank_real_part: int
    dim_v: int = 0
    dim_sum: int = 0
    dim_intersection: int = 0

    def as_dict(self) -> dict:
        return {
            "elliptic": self.elliptic,
            "complex": self.complex,
            "essentially_real": self.essentially_real,
            "corank_real_part": self.corank_real_part,
            "dim_v": self.dim_v,
            "dim_v_plus_vbar": self.dim_sum,
            "dim_v_cap_vbar": self.dim_intersection,
        }


def classify_structure(g: LieAlgebra, v: Subalgebra) -> StructureClass:
    if g.real_structure is None:
        raise PreconditionError("classification needs a real structure")
    if v.parent is not g:
        raise PreconditionError("subalgebra belongs to a different algebra")
    vbar = conjugate_subspace(g, v.space)
    s = subspace_sum(v.space, vbar)
    k = subspace_intersect(v.space, vbar)
    elliptic = s.dim == g.dim
    return StructureClass(
        elliptic=elliptic,
        complex=elliptic and k.dim == 0,
        essentially_real=v.space == vbar,
        corank_real_part=g.dim - k.dim,
        dim_v=v.dim,
        dim_sum=s.dim,
        dim_intersection=k.dim,
    )
