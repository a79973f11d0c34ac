"""Random valid Lie algebras and modules for property testing.

Each catalogue entry is a Lie algebra of matrices, so it comes with a
faithful representation.  A random invertible rational change of basis on
the algebra (and, separately, on the module) keeps everything valid while
making the structure constants look generic.
"""

from __future__ import annotations

from dataclasses import dataclass
from random import Random
from typing import Callable

from .algebra import LieAlgebra, Subalgebra
from .linalg import Matrix, Subspace, rank, span_coordinates
from .modules import Representation, adjoint_module, dual_module, trivial_module
from .scalar import demote, to_raw

__all__ = [
    "MatrixAlgebra",
    "CATALOGUE",
    "random_matrix_algebra",
    "random_algebra",
    "random_module",
    "random_invertible",
    "random_matrix",
    "random_subspace",
    "random_subalgebra",
    "flip_structure_constant",
]


def _unit(n: int, i: int, j: int, x=1) -> Matrix:
    return Matrix(n, n, {(i, j): x})


def _diag(n: int, vals) -> Matrix:
    return Matrix(n, n, {(i, i): v for i, v in enumerate(vals) if v})


@dataclass(frozen=True)
class MatrixAlgebra:
    name: str
    matrices: tuple[Matrix, ...]

    @property
    def dim(self) -> int:
        return len(self.matrices)


def _abelian(d: int) -> MatrixAlgebra:
    return MatrixAlgebra(f"abelian{d}", tuple(_unit(d, i, i) for i in range(d)))


def _heisenberg() -> MatrixAlgebra:
    return MatrixAlgebra("heisenberg", (_unit(3, 0, 1), _unit(3, 1, 2), _unit(3, 0, 2)))


def _sl2() -> MatrixAlgebra:
    return MatrixAlgebra("sl2", (_diag(2, [1, -1]), _unit(2, 0, 1), _unit(2, 1, 0)))


def _aff1() -> MatrixAlgebra:
    return MatrixAlgebra("aff1", (_unit(2, 0, 0), _unit(2, 0, 1)))


def _b2() -> MatrixAlgebra:
    return MatrixAlgebra("b2", (_unit(2, 0, 0), _unit(2, 1, 1), _unit(2, 0, 1)))


def _gl2() -> MatrixAlgebra:
    return MatrixAlgebra("gl2", (_unit(2, 0, 0), _unit(2, 1, 1), _unit(2, 0, 1), _unit(2, 1, 0)))


def _so3() -> MatrixAlgebra:
    # real rotations; over Q(i) isomorphic to sl2 but with a different basis
    return MatrixAlgebra(
        "so3",
        (
            Matrix(3, 3, {(1, 2): -1, (2, 1): 1}),
            Matrix(3, 3, {(0, 2): 1, (2, 0): -1}),
            Matrix(3, 3, {(0, 1): -1, (1, 0): 1}),
        ),
    )


def _filiform4() -> MatrixAlgebra:
    # nilpotent, [x, y_k] = y_{k+1}
    n = 4
    x = Matrix(n, n, {(1, 0): 1, (2, 1): 1, (3, 2): 1})
    return MatrixAlgebra("filiform4", (x, _unit(n, 1, 0), _unit(n, 2, 0), _unit(n, 3, 0)))


def _direct_sum(a: MatrixAlgebra, b: MatrixAlgebra) -> MatrixAlgebra:
    na, nb = a.matrices[0].nrows, b.matrices[0].nrows
    mats = []
    for m in a.matrices:
        mats.append(Matrix._from_raw_columns(na + nb, list(m.columns) + [{} for _ in range(nb)]))
    for m in b.matrices:
        cols = [{} for _ in range(na)] + [{r + na: x for r, x in c.items()} for c in m.columns]
        mats.append(Matrix._from_raw_columns(na + nb, cols))
    return MatrixAlgebra(f"{a.name}+{b.name}", tuple(mats))


CATALOGUE: tuple[Callable[[], MatrixAlgebra], ...] = (
    lambda: _abelian(1),
    lambda: _abelian(2),
    lambda: _abelian(3),
    _heisenberg,
    _sl2,
    _so3,
    _aff1,
    _b2,
    _gl2,
    _filiform4,
    lambda: _direct_sum(_sl2(), _aff1()),
    lambda: _direct_sum(_aff1(), _aff1()),
    lambda: _direct_sum(_heisenberg(), _abelian(1)),
    lambda: _direct_sum(_sl2(), _abelian(2)),
)


def random_matrix(rng: Random, nrows: int, ncols: int, lo: int = -3, hi: int = 3, density: float = 0.6, gaussian: bool = False) -> Matrix:
    entries = {}
    for r in range(nrows):
        for c in range(ncols):
            if rng.random() < density:
                x = rng.randint(lo, hi)
                if gaussian and rng.random() < 0.3:
                    x = f"{x}+{rng.randint(1, 3)}*i"
                entries[(r, c)] = x
    return Matrix(nrows, ncols, entries)


def random_invertible(rng: Random, n: int, gaussian: bool = False) -> Matrix:
    while True:
        m = random_matrix(rng, n, n, density=0.7, gaussian=gaussian)
        if rank(m) == n:
            return m


def _inverse(m: Matrix) -> Matrix:
    from .linalg import kernel

    n = m.nrows
    # columns of the inverse solve m x = e_j; read them off the kernel of [m | -e_j]
    cols = []
    one = to_raw(1)
    for j in range(n):
        aug = Matrix._from_raw_columns(n, list(m.columns) + [{j: -one}])
        (sol,) = kernel(aug).rows
        scale = sol[n]
        cols.append({k: demote(x / scale) for k, x in sol.items() if k < n})
    return Matrix._from_raw_columns(n, cols)


def _combine_mats(coeffs: dict, mats) -> Matrix:
    out = None
    for k, c in coeffs.items():
        term = mats[k].scaled(c)
        out = term if out is None else out + term
    return out if out is not None else Matrix.zero(mats[0].nrows, mats[0].ncols)


def random_matrix_algebra(rng: Random, max_dim: int = 5) -> MatrixAlgebra:
    options = [f() for f in CATALOGUE]
    options = [a for a in options if a.dim <= max_dim]
    base = rng.choice(options)
    p = random_invertible(rng, base.dim)
    mats = tuple(_combine_mats(p.column(j), base.matrices) for j in range(base.dim))
    return MatrixAlgebra(base.name, mats)


def _algebra_from_matrices(ma: MatrixAlgebra, check: bool = True) -> LieAlgebra:
    coords = span_coordinates(ma.matrices)
    n = ma.dim
    table = [[{} for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            a, b = ma.matrices[i], ma.matrices[j]
            c = coords((a @ b) - (b @ a))
            table[i][j] = c
            table[j][i] = {k: -x for k, x in c.items()}
    return LieAlgebra.from_table([f"x{i}" for i in range(n)], table, name=ma.name, check=check)


def random_algebra(rng: Random, max_dim: int = 5) -> tuple[LieAlgebra, Representation]:
    """A random valid Lie algebra with its defining matrix representation."""
    ma = random_matrix_algebra(rng, max_dim)
    g = _algebra_from_matrices(ma)
    rep = Representation(g, ma.matrices, name="defining", check=False)
    return g, rep


def random_module(rng: Random, g: LieAlgebra, defining: Representation) -> Representation:
    """One of trivial, adjoint, defining or its dual, in a random module basis."""
    kind = rng.choice(["trivial", "adjoint", "defining", "dual"])
    if kind == "trivial":
        return trivial_module(g, rng.randint(1, 2))
    base = {"adjoint": adjoint_module(g), "defining": defining, "dual": dual_module(defining)}[kind]
    q = random_invertible(rng, base.dim_M)
    qi = _inverse(q)
    return Representation._trusted(g, [qi @ a @ q for a in base.action], base.dim_M, name=kind)


def random_subspace(rng: Random, n: int, k: int | None = None, gaussian: bool = True) -> Subspace:
    k = rng.randint(0, n) if k is None else k
    m = random_matrix(rng, n, k, density=0.5, gaussian=gaussian)
    return Subspace._from_sparse(n, m.columns)


def random_subalgebra(rng: Random, g: LieAlgebra) -> Subalgebra:
    """Subalgebra generated by a couple of random elements."""
    space = random_subspace(rng, g.dim, rng.randint(0, min(2, g.dim)), gaussian=False)
    while True:
        rows = space.rows
        new = [g.bracket_sparse(a, b) for i, a in enumerate(rows) for b in rows[i + 1:]]
        grown = Subspace._from_sparse(g.dim, list(rows) + [x for x in new if x])
        if grown.dim == space.dim:
            return Subalgebra(g, space, name="random", check=False)
        space = grown


def flip_structure_constant(g: LieAlgebra, rng: Random, keep_antisymmetry: bool = True) -> tuple[LieAlgebra, tuple[int, int, int]] | None:
    """Negate one nonzero structure constant c^k_ij (and c^k_ji when asked)."""
    nonzero = [(i, j, k) for (i, j), vec in sorted(g.structure_constants().items()) for k in sorted(vec)]
    if not nonzero:
        return None
    i, j, k = rng.choice(nonzero)
    table = [[dict(c) for c in row] for row in g._table]
    table[i][j][k] = -table[i][j][k]
    if keep_antisymmetry:
        table[j][i][k] = -table[j][i][k]
    h = LieAlgebra.from_table(g.basis_names, table, name=g.name + "~", check=False)
    return h, (i, j, k)
