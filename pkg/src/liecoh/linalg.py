"""Exact linear algebra over Q(i).

Vectors are kept sparse internally (``dict`` column -> raw value, zeros never
stored).  Subspaces are normalised to reduced row echelon form so that two
spanning sets of the same space give identical objects.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from .errors import DimensionMismatch, PreconditionError
from .scalar import Scalar, to_raw, to_scalar

__all__ = [
    "Matrix",
    "Subspace",
    "Quotient",
    "rank",
    "kernel",
    "image",
    "subspace_sum",
    "subspace_intersect",
    "quotient_dim",
    "preimage",
    "map_subspace",
]


def _sparse(vec, n: int | None = None) -> dict:
    """Sparse raw dict from a dense sequence or a mapping."""
    if isinstance(vec, Mapping):
        out = {}
        for k, x in vec.items():
            x = to_raw(x)
            if x:
                if n is not None and not 0 <= k < n:
                    raise DimensionMismatch(f"index {k} outside ambient dimension {n}")
                out[k] = x
        return out
    if n is not None and len(vec) != n:
        raise DimensionMismatch(f"vector of length {len(vec)} in ambient dimension {n}")
    out = {}
    for k, x in enumerate(vec):
        x = to_raw(x)
        if x:
            out[k] = x
    return out


def _axpy(y: dict, a, x: dict) -> None:
    """y += a*x in place, dropping zeros."""
    for k, xv in x.items():
        v = y.get(k)
        nv = a * xv if v is None else v + a * xv
        if type(nv) is Scalar and not nv.im:
            nv = nv.re
        if nv:
            y[k] = nv
        elif v is not None:
            del y[k]


def _scale(x: dict, a) -> dict:
    out = {}
    for k, v in x.items():
        nv = a * v
        if type(nv) is Scalar and not nv.im:
            nv = nv.re
        out[k] = nv
    return out


def _combine(coeffs: Mapping[int, object], vectors: Sequence[dict]) -> dict:
    out: dict = {}
    for j, c in coeffs.items():
        _axpy(out, c, vectors[j])
    return out


class _Echelon:
    """Incrementally maintained reduced row echelon form."""

    __slots__ = ("rows",)

    def __init__(self, rows: Iterable[dict] = ()):
        self.rows: dict[int, dict] = {}
        for r in rows:
            self.add(r)

    def reduce(self, vec: dict) -> dict:
        v = dict(vec)
        rows = self.rows
        # rows are fully reduced, so one pass over the pivots present suffices
        for c in [c for c in v if c in rows]:
            f = v.get(c)
            if f:
                _axpy(v, -f, rows[c])
        return v

    def add(self, vec: dict) -> bool:
        r = self.reduce(vec)
        if not r:
            return False
        p = min(r)
        lead = r[p]
        if lead != 1:
            r = _scale(r, 1 / lead)
        for row in self.rows.values():
            f = row.get(p)
            if f:
                _axpy(row, -f, r)
        self.rows[p] = r
        return True

    def sorted_rows(self) -> tuple[tuple[int, ...], tuple[dict, ...]]:
        piv = tuple(sorted(self.rows))
        return piv, tuple(self.rows[p] for p in piv)


# ---------------------------------------------------------------------------
# Matrix


class Matrix:
    """An immutable sparse matrix with Gaussian-rational entries.

    Stored column-wise: column ``j`` is the image of the ``j``-th basis
    vector, which is how every differential in the package is assembled.
    """

    __slots__ = ("nrows", "ncols", "_cols", "_rows")

    def __init__(self, nrows: int, ncols: int, entries: Mapping | None = None):
        if nrows < 0 or ncols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        self.nrows = nrows
        self.ncols = ncols
        cols: list[dict] = [{} for _ in range(ncols)]
        for (r, c), x in (entries or {}).items():
            if not (0 <= r < nrows and 0 <= c < ncols):
                raise DimensionMismatch(f"entry ({r}, {c}) outside {nrows}x{ncols}")
            x = to_raw(x)
            if x:
                cols[c][r] = x
        self._cols = tuple(cols)
        self._rows = None

    @classmethod
    def from_columns(cls, nrows: int, columns: Sequence) -> "Matrix":
        m = cls.__new__(cls)
        m.nrows = nrows
        m.ncols = len(columns)
        m._cols = tuple(_sparse(c, nrows) for c in columns)
        m._rows = None
        return m

    @classmethod
    def _from_raw_columns(cls, nrows: int, columns: Sequence[dict]) -> "Matrix":
        m = cls.__new__(cls)
        m.nrows = nrows
        m.ncols = len(columns)
        m._cols = tuple(columns)
        m._rows = None
        return m

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], ncols: int | None = None) -> "Matrix":
        nrows = len(rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        cols: list[dict] = [{} for _ in range(ncols)]
        for r, row in enumerate(rows):
            if len(row) != ncols:
                raise DimensionMismatch("ragged rows")
            for c, x in enumerate(row):
                x = to_raw(x)
                if x:
                    cols[c][r] = x
        return cls._from_raw_columns(nrows, cols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls._from_raw_columns(n, [{i: to_raw(1)} for i in range(n)])

    @classmethod
    def zero(cls, nrows: int, ncols: int) -> "Matrix":
        return cls._from_raw_columns(nrows, [{} for _ in range(ncols)])

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def column(self, j: int) -> dict:
        return self._cols[j]

    @property
    def columns(self) -> tuple[dict, ...]:
        return self._cols

    @property
    def row_dicts(self) -> tuple[dict, ...]:
        if self._rows is None:
            rows: list[dict] = [{} for _ in range(self.nrows)]
            for c, col in enumerate(self._cols):
                for r, x in col.items():
                    rows[r][c] = x
            self._rows = tuple(rows)
        return self._rows

    def __getitem__(self, rc) -> Scalar:
        r, c = rc
        return to_scalar(self._cols[c].get(r, 0))

    def entries(self) -> dict:
        return {(r, c): to_scalar(x) for c, col in enumerate(self._cols) for r, x in col.items()}

    def to_rows(self) -> list[list[Scalar]]:
        out = [[to_scalar(0)] * self.ncols for _ in range(self.nrows)]
        for c, col in enumerate(self._cols):
            for r, x in col.items():
                out[r][c] = to_scalar(x)
        return out

    def nnz(self) -> int:
        return sum(len(c) for c in self._cols)

    def is_zero(self) -> bool:
        return not any(self._cols)

    def is_real(self) -> bool:
        return all(type(x) is not Scalar for col in self._cols for x in col.values())

    def apply(self, vec) -> dict:
        """Sparse image of a vector (dense sequence or sparse mapping)."""
        v = vec if isinstance(vec, dict) else _sparse(vec, self.ncols)
        return _combine(v, self._cols)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        return Matrix._from_raw_columns(self.nrows, [self.apply(c) for c in other._cols])

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot add {self.shape} and {other.shape}")
        cols = []
        for a, b in zip(self._cols, other._cols):
            c = dict(a)
            _axpy(c, to_raw(1), b)
            cols.append(c)
        return Matrix._from_raw_columns(self.nrows, cols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def __neg__(self) -> "Matrix":
        return self.scaled(-1)

    def scaled(self, a) -> "Matrix":
        a = to_raw(a)
        if not a:
            return Matrix.zero(self.nrows, self.ncols)
        return Matrix._from_raw_columns(self.nrows, [_scale(c, a) for c in self._cols])

    def transpose(self) -> "Matrix":
        return Matrix._from_raw_columns(self.ncols, [dict(r) for r in self.row_dicts])

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._cols == other._cols

    def __hash__(self):
        return hash((self.shape, tuple(tuple(sorted(c.items())) for c in self._cols)))

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols}, nnz={self.nnz()})"


# ---------------------------------------------------------------------------
# Subspace


class Subspace:
    """A subspace of Q(i)^n held by its reduced row echelon basis."""

    __slots__ = ("ambient_dim", "_pivots", "_rows", "_hash")

    def __init__(self, ambient_dim: int, vectors: Iterable = ()):
        ech = _Echelon(_sparse(v, ambient_dim) for v in vectors)
        self._set(ambient_dim, ech)

    def _set(self, ambient_dim: int, ech: _Echelon) -> None:
        self.ambient_dim = ambient_dim
        self._pivots, self._rows = ech.sorted_rows()
        self._hash = None

    @classmethod
    def _from_echelon(cls, ambient_dim: int, ech: _Echelon) -> "Subspace":
        s = cls.__new__(cls)
        s._set(ambient_dim, ech)
        return s

    @classmethod
    def _from_sparse(cls, ambient_dim: int, vectors: Iterable[dict]) -> "Subspace":
        return cls._from_echelon(ambient_dim, _Echelon(vectors))

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls._from_echelon(n, _Echelon())

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls._from_sparse(n, ({i: to_raw(1)} for i in range(n)))

    @property
    def dim(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> tuple[int, ...]:
        return self._pivots

    @property
    def rows(self) -> tuple[dict, ...]:
        """Sparse echelon basis (internal raw values)."""
        return self._rows

    @property
    def basis(self) -> list[tuple[Scalar, ...]]:
        zero = to_scalar(0)
        out = []
        for r in self._rows:
            v = [zero] * self.ambient_dim
            for k, x in r.items():
                v[k] = to_scalar(x)
            out.append(tuple(v))
        return out

    def _echelon(self) -> _Echelon:
        e = _Echelon()
        e.rows = {p: r for p, r in zip(self._pivots, self._rows)}
        return e

    def reduce(self, vec) -> dict:
        """Remainder of ``vec`` modulo this subspace (zero at every pivot)."""
        v = vec if isinstance(vec, dict) else _sparse(vec, self.ambient_dim)
        return self._echelon().reduce(v)

    def contains(self, vec) -> bool:
        return not self.reduce(vec)

    def __contains__(self, vec) -> bool:
        return self.contains(vec)

    def coordinates(self, vec) -> dict:
        """Coordinates of a member in the echelon basis (sparse)."""
        v = vec if isinstance(vec, dict) else _sparse(vec, self.ambient_dim)
        if self.reduce(v):
            raise PreconditionError("vector is not in the subspace")
        return {i: v[p] for i, p in enumerate(self._pivots) if p in v}

    def is_subspace_of(self, other: "Subspace") -> bool:
        _same_ambient(self, other)
        if self.dim > other.dim:
            return False
        e = other._echelon()
        return all(not e.reduce(r) for r in self._rows)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.ambient_dim == other.ambient_dim
            and self._pivots == other._pivots
            and self._rows == other._rows
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(
                (self.ambient_dim, tuple(tuple(sorted(r.items())) for r in self._rows))
            )
        return self._hash

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


def _same_ambient(a: Subspace, b: Subspace) -> None:
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch(
            f"ambient dimensions differ: {a.ambient_dim} vs {b.ambient_dim}"
        )


# ---------------------------------------------------------------------------
# operations


def _kernel_of_columns(columns: Sequence[dict], ncols: int) -> list[dict]:
    """Basis of {c : sum_j c_j columns[j] = 0} (not yet in echelon form)."""
    rows: dict[int, dict] = {}
    for j, col in enumerate(columns):
        for i, x in col.items():
            rows.setdefault(i, {})[j] = x
    ech = _Echelon(rows.values())
    free = [j for j in range(ncols) if j not in ech.rows]
    one = to_raw(1)
    out = []
    for f in free:
        v = {f: one}
        for p, row in ech.rows.items():
            x = row.get(f)
            if x:
                v[p] = -x
        out.append(v)
    return out


def kernel_of_rows(rows: Iterable[dict], ncols: int) -> Subspace:
    """Solutions of the homogeneous system whose equations are ``rows``."""
    ech = _Echelon(rows)
    one = to_raw(1)
    out = []
    for f in range(ncols):
        if f in ech.rows:
            continue
        v = {f: one}
        for p, row in ech.rows.items():
            x = row.get(f)
            if x:
                v[p] = -x
        out.append(v)
    return Subspace._from_sparse(ncols, out)


def rank(m: Matrix) -> int:
    vecs = m.columns if m.ncols <= m.nrows else m.row_dicts
    ech = _Echelon()
    r = 0
    for v in vecs:
        if v and ech.add(v):
            r += 1
    return r


def kernel(m: Matrix) -> Subspace:
    return Subspace._from_sparse(m.ncols, _kernel_of_columns(m.columns, m.ncols))


def image(m: Matrix) -> Subspace:
    return Subspace._from_sparse(m.nrows, (c for c in m.columns if c))


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    _same_ambient(a, b)
    e = a._echelon()
    e.rows = {p: dict(r) for p, r in e.rows.items()}
    for r in b.rows:
        e.add(r)
    return Subspace._from_echelon(a.ambient_dim, e)


def subspace_intersect(a: Subspace, b: Subspace) -> Subspace:
    _same_ambient(a, b)
    if a.dim > b.dim:
        a, b = b, a
    eb = b._echelon()
    residues = [eb.reduce(r) for r in a.rows]
    combos = _kernel_of_columns(residues, a.dim)
    return Subspace._from_sparse(a.ambient_dim, (_combine(c, a.rows) for c in combos))


def quotient_dim(big: Subspace, small: Subspace) -> int:
    if not small.is_subspace_of(big):
        raise PreconditionError("quotient requires small to be contained in big")
    return big.dim - small.dim


def map_subspace(m: Matrix, s: Subspace) -> Subspace:
    if s.ambient_dim != m.ncols:
        raise DimensionMismatch("subspace does not live in the matrix domain")
    return Subspace._from_sparse(m.nrows, (m.apply(r) for r in s.rows))


def preimage(m: Matrix, target: Subspace, domain: Subspace | None = None) -> Subspace:
    """{x in domain : m x in target}; ``domain`` defaults to everything."""
    if target.ambient_dim != m.nrows:
        raise DimensionMismatch("target does not live in the matrix codomain")
    if domain is None:
        domain = Subspace.full(m.ncols)
    elif domain.ambient_dim != m.ncols:
        raise DimensionMismatch("domain does not live in the matrix domain")
    et = target._echelon()
    residues = [et.reduce(m.apply(r)) for r in domain.rows]
    combos = _kernel_of_columns(residues, domain.dim)
    return Subspace._from_sparse(m.ncols, (_combine(c, domain.rows) for c in combos))


def restricted_kernel(maps: Sequence[Matrix], domain: Subspace) -> Subspace:
    """Joint kernel of several maps intersected with ``domain``."""
    stacked = []
    for r in domain.rows:
        col: dict = {}
        off = 0
        for m in maps:
            for i, x in m.apply(r).items():
                col[off + i] = x
            off += m.nrows
        stacked.append(col)
    combos = _kernel_of_columns(stacked, domain.dim)
    return Subspace._from_sparse(domain.ambient_dim, (_combine(c, domain.rows) for c in combos))


class Quotient:
    """The subquotient ``num / den`` with canonical coordinates.

    Representatives are the rows of the echelon form of ``num`` reduced
    modulo ``den``; the coordinate of a vector is read at their pivots after
    reducing modulo ``den``.
    """

    __slots__ = ("num", "den", "_den_ech", "pivots", "representatives")

    def __init__(self, num: Subspace, den: Subspace, check: bool = True):
        _same_ambient(num, den)
        if check and not den.is_subspace_of(num):
            raise PreconditionError("denominator is not contained in numerator")
        self.num = num
        self.den = den
        self._den_ech = den._echelon()
        reduced = _Echelon(self._den_ech.reduce(r) for r in num.rows)
        self.pivots, self.representatives = reduced.sorted_rows()

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def coords(self, vec) -> dict:
        v = vec if isinstance(vec, dict) else _sparse(vec, self.num.ambient_dim)
        r = self._den_ech.reduce(v)
        return {i: r[p] for i, p in enumerate(self.pivots) if p in r}

    def induced_map(self, m: Matrix, target: "Quotient") -> Matrix:
        """Matrix of the map self -> target induced by ``m`` on representatives."""
        return Matrix._from_raw_columns(
            target.dim, [target.coords(m.apply(r)) for r in self.representatives]
        )


def echelon_complement(space: Subspace) -> list[int]:
    """Non-pivot coordinates: unit vectors there extend ``space`` to a basis."""
    piv = set(space.pivots)
    return [i for i in range(space.ambient_dim) if i not in piv]


def as_dense(vec: Mapping, n: int) -> tuple[Scalar, ...]:
    zero = to_scalar(0)
    out = [zero] * n
    for k, x in vec.items():
        out[k] = to_scalar(x)
    return tuple(out)


def span_coordinates(matrices: Sequence[Matrix]):
    """Coordinate function for the span of linearly independent matrices.

    Returns ``coords(m) -> dict`` giving the expansion of ``m`` in
    ``matrices``; raises :class:`PreconditionError` when ``m`` lies outside
    the span or the inputs are dependent.
    """
    if not matrices:
        return lambda m: {}
    nrows = matrices[0].nrows
    size = nrows * matrices[0].ncols

    def flat(m: Matrix) -> dict:
        return {j * nrows + i: x for j, col in enumerate(m.columns) for i, x in col.items()}

    one = to_raw(1)
    ech, plain = _Echelon(), _Echelon()
    for k, m in enumerate(matrices):
        vec = flat(m)
        # the tagged rows are always independent, so test the bare ones
        if not plain.add(dict(vec)):
            raise PreconditionError("matrices are linearly dependent")
        vec[size + k] = one
        ech.add(vec)

    def coords(m: Matrix) -> dict:
        res = ech.reduce(flat(m))
        if any(k < size for k in res):
            raise PreconditionError("matrix lies outside the span")
        return {k - size: -x for k, x in res.items()}

    return coords
