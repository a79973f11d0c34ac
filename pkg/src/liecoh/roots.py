"""Semisimple Lie algebras from Cartan matrices, with their compact real form.

Convention: ``cartan_matrix[i][j] = alpha_j(h_i)``, so ``[h_i, e_j] = a_ij e_j``.

The Chevalley basis is read off from an explicit faithful model of the
adjoint representation on a space with basis u_i (i simple) and v_a (a a
root).  The generators act by

    e_i u_j = |a_ji| v_{a_i},   e_i v_{-a_i} = u_i,   e_i v_a = (p + 1) v_{a + a_i}
    f_i u_j = |a_ji| v_{-a_i},  f_i v_{a_i} = u_i,    f_i v_a = (q + 1) v_{a - a_i}

with p = max{p : a - p a_i is a root} and q = max{q : a + q a_i is a root}.
Non-simple root vectors are e_z = [e_i, e_b] / (p + 1) for the smallest i
with b = z - a_i a positive root (p taken for the a_i-string through b),
and f_z = -[f_i, f_b] / (p + 1), so that the Chevalley involution sends
e_a to -f_a for every positive root.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Sequence

from .algebra import Check, LieAlgebra, Subalgebra
from .config import enforce_dim_cap
from .errors import PreconditionError, ValidationError
from .linalg import Matrix, Subspace, span_coordinates
from .scalar import Scalar, conj_raw, demote, to_raw, to_scalar

__all__ = [
    "CartanDatum",
    "PRESETS",
    "preset",
    "build_semisimple",
    "borel",
    "parabolic",
    "HermitianProduct",
    "hermitian_extension",
    "killing_form",
    "check_root_grading",
]


PRESETS: dict[str, list[list[int]]] = {
    "A1": [[2]],
    "A2": [[2, -1], [-1, 2]],
    "B2": [[2, -2], [-1, 2]],
    "G2": [[2, -1], [-3, 2]],
}


def _det(rows: list[list[int]]) -> Scalar:
    """Determinant by exact elimination (small matrices only)."""
    m = [[to_scalar(x) for x in r] for r in rows]
    n = len(m)
    det = to_scalar(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c]), None)
        if piv is None:
            return to_scalar(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det = det * m[c][c]
        inv = m[c][c].inverse()
        for r in range(c + 1, n):
            if m[r][c]:
                f = m[r][c] * inv
                m[r] = [a - f * b for a, b in zip(m[r], m[c])]
    return det


def _components(a: list[list[int]]) -> list[list[int]]:
    n = len(a)
    seen, comps = set(), []
    for s in range(n):
        if s in seen:
            continue
        comp, stack = [], [s]
        seen.add(s)
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in range(n):
                if j not in seen and (a[i][j] or a[j][i]):
                    seen.add(j)
                    stack.append(j)
        comps.append(sorted(comp))
    return comps


def _type_of_component(a: list[list[int]], comp: list[int], n_pos: int) -> str:
    n = len(comp)
    det = _det([[a[i][j] for j in comp] for i in comp])
    laced = {a[i][j] * a[j][i] for i in comp for j in comp if i != j and a[i][j]}
    if not laced - {1}:
        if n_pos == n * (n + 1) // 2 and det == n + 1:
            return f"A{n}"
        if n >= 4 and n_pos == n * (n - 1) and det == 4:
            return f"D{n}"
        if (n, n_pos) in ((6, 36), (7, 63), (8, 120)):
            return f"E{n}"
    elif laced - {1} == {3} and n == 2:
        return "G2"
    elif laced - {1} == {2}:
        if n == 4 and n_pos == 24:
            return "F4"
        if n_pos == n * n:
            if n == 2:
                return "B2"
            # the short simple root's coroot row holds the -2
            (i, j) = next((i, j) for i in comp for j in comp if a[i][j] == -2)
            degree = sum(1 for k in comp if k != i and a[i][k])
            return f"B{n}" if degree == 1 else f"C{n}"
    raise ValidationError("Cartan matrix is not of finite type")


@dataclass(frozen=True)
class CartanDatum:
    cartan_matrix: tuple[tuple[int, ...], ...]
    positive_roots: tuple[tuple[int, ...], ...] = field(init=False)
    type_label: str = field(init=False)

    def __init__(self, cartan_matrix: Sequence[Sequence[int]]):
        a = [[int(x) for x in r] for r in cartan_matrix]
        n = len(a)
        if n == 0 or any(len(r) != n for r in a):
            raise ValidationError("Cartan matrix must be square and nonempty")
        for i in range(n):
            if a[i][i] != 2:
                raise ValidationError(f"diagonal entry {i} is {a[i][i]}, expected 2", witness=(i, i))
            for j in range(n):
                if i != j and (a[i][j] > 0 or (a[i][j] == 0) != (a[j][i] == 0)):
                    raise ValidationError(f"invalid off-diagonal pair at ({i}, {j})", witness=(i, j))
        for k in range(1, n + 1):
            if not _det([r[:k] for r in a[:k]]).re > 0:
                raise ValidationError("Cartan matrix is not of finite type (a principal minor is not positive)")
        object.__setattr__(self, "cartan_matrix", tuple(tuple(r) for r in a))
        roots = _positive_roots(a)
        object.__setattr__(self, "positive_roots", roots)
        labels = [_type_of_component(a, c, sum(1 for r in roots if any(r[i] for i in c))) for c in _components(a)]
        object.__setattr__(self, "type_label", "+".join(labels))

    @property
    def rank(self) -> int:
        return len(self.cartan_matrix)

    @property
    def dim(self) -> int:
        return self.rank + 2 * len(self.positive_roots)

    def pairing(self, root: Sequence[int], i: int) -> int:
        """alpha(h_i) for alpha given in simple-root coordinates."""
        return sum(c * self.cartan_matrix[i][j] for j, c in enumerate(root))

    @cached_property
    def chevalley_basis_labels(self) -> tuple[str, ...]:
        if self.rank == 1:
            return ("h", "e", "f")
        hs = [f"h{i + 1}" for i in range(self.rank)]
        es = ["e" + "".join(map(str, r)) for r in self.positive_roots]
        fs = ["f" + "".join(map(str, r)) for r in self.positive_roots]
        return tuple(hs + es + fs)


def _positive_roots(a: list[list[int]]) -> tuple[tuple[int, ...], ...]:
    n = len(a)
    simple = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
    roots = list(simple)
    known = set(roots)
    layer = list(simple)
    while layer:
        nxt = []
        for b in layer:
            for i in range(n):
                # a_i-string through b: b - r a_i, ..., b + q a_i with r - q = b(h_i)
                r = 0
                while True:
                    c = tuple(x - (r + 1) * (k == i) for k, x in enumerate(b))
                    if c in known:
                        r += 1
                    else:
                        break
                q = r - sum(x * a[i][j] for j, x in enumerate(b))
                if q > 0:
                    c = tuple(x + (k == i) for k, x in enumerate(b))
                    if c not in known:
                        known.add(c)
                        nxt.append(c)
        if len(known) > 200:
            raise ValidationError("root enumeration does not terminate: not of finite type")
        layer = sorted(nxt)
        roots.extend(layer)
    return tuple(sorted(roots, key=lambda r: (sum(r), tuple(-x for x in r))))


# ---------------------------------------------------------------------------
# construction


def _string_length(roots: set, alpha: tuple, step: tuple, sign: int) -> int:
    k = 0
    while tuple(x + sign * (k + 1) * s for x, s in zip(alpha, step)) in roots:
        k += 1
    return k


def _generators(d: CartanDatum):
    n = d.rank
    a = d.cartan_matrix
    pos = list(d.positive_roots)
    allroots = pos + [tuple(-x for x in r) for r in pos]
    rootset = set(allroots)
    V = n + len(allroots)
    vidx = {r: n + k for k, r in enumerate(allroots)}
    E, F = [], []
    for i in range(n):
        ai = tuple(1 if k == i else 0 for k in range(n))
        mai = tuple(-x for x in ai)
        ecols: list[dict] = [{} for _ in range(V)]
        fcols: list[dict] = [{} for _ in range(V)]
        for j in range(n):
            if a[j][i]:
                ecols[j][vidx[ai]] = to_raw(abs(a[j][i]))
                fcols[j][vidx[mai]] = to_raw(abs(a[j][i]))
        ecols[vidx[mai]][i] = to_raw(1)
        fcols[vidx[ai]][i] = to_raw(1)
        for r in allroots:
            up = tuple(x + y for x, y in zip(r, ai))
            if up in rootset:
                p = _string_length(rootset, r, ai, -1)
                ecols[vidx[r]][vidx[up]] = to_raw(p + 1)
            down = tuple(x - y for x, y in zip(r, ai))
            if down in rootset:
                q = _string_length(rootset, r, ai, +1)
                fcols[vidx[r]][vidx[down]] = to_raw(q + 1)
        E.append(Matrix._from_raw_columns(V, ecols))
        F.append(Matrix._from_raw_columns(V, fcols))
    return E, F


def _bracket(x: Matrix, y: Matrix) -> Matrix:
    return (x @ y) - (y @ x)


def build_semisimple(datum: CartanDatum | Sequence[Sequence[int]] | str, max_dim: int | None = None) -> LieAlgebra:
    """Chevalley basis h_i, e_a (by height), f_a (by height) with compact real structure."""
    name = None
    if isinstance(datum, str):
        name = datum
        datum = preset(datum)
    elif not isinstance(datum, CartanDatum):
        datum = CartanDatum(datum)
    enforce_dim_cap(datum.dim, max_dim)
    n = datum.rank
    E, F = _generators(datum)
    H = [_bracket(E[i], F[i]) for i in range(n)]
    for i in range(n):
        for j in range(n):
            if i != j and not _bracket(E[i], F[j]).is_zero():
                raise ValidationError(f"[e_{i + 1}, f_{j + 1}] != 0 in the adjoint model", witness=(i, j))
            if _bracket(H[i], E[j]) != E[j].scaled(datum.cartan_matrix[i][j]):
                raise ValidationError("adjoint model violates [h_i, e_j] = a_ij e_j", witness=(i, j))
    pos = datum.positive_roots
    rootset = set(pos)
    e_of: dict[tuple, Matrix] = {}
    f_of: dict[tuple, Matrix] = {}
    for r in pos:
        if sum(r) == 1:
            i = r.index(1)
            e_of[r], f_of[r] = E[i], F[i]
            continue
        for i in range(n):
            b = tuple(x - (k == i) for k, x in enumerate(r))
            if b in rootset:
                break
        ai = tuple(1 if k == i else 0 for k in range(n))
        p = _string_length(rootset | {tuple(-x for x in s) for s in pos}, b, ai, -1)
        c = Scalar(1) / (p + 1)
        e_of[r] = _bracket(E[i], e_of[b]).scaled(c)
        f_of[r] = _bracket(F[i], f_of[b]).scaled(-c)
    basis = H + [e_of[r] for r in pos] + [f_of[r] for r in pos]
    dim = len(basis)

    try:
        coords = span_coordinates(basis)
    except PreconditionError:
        raise ValidationError("Chevalley basis elements are linearly dependent") from None

    table = [[{} for _ in range(dim)] for _ in range(dim)]
    for i in range(dim):
        for j in range(i + 1, dim):
            c = coords(_bracket(basis[i], basis[j]))
            table[i][j] = c
            table[j][i] = {k: -x for k, x in c.items()}

    npos = len(pos)
    sigma_cols: list[dict] = []
    for k in range(dim):
        if k < n:
            sigma_cols.append({k: to_raw(-1)})
        elif k < n + npos:
            sigma_cols.append({k + npos: to_raw(-1)})
        else:
            sigma_cols.append({k - npos: to_raw(-1)})
    S = Matrix._from_raw_columns(dim, sigma_cols)
    g = LieAlgebra.from_table(
        datum.chevalley_basis_labels, table, real_structure=S, name=name or datum.type_label, check=True
    )
    g.cartan_datum = datum
    g.closed_exp_v = "asserted"
    return g


def preset(name: str) -> CartanDatum:
    key = name.strip().upper()
    if key not in PRESETS:
        raise PreconditionError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}")
    return CartanDatum(PRESETS[key])


def _datum(g: LieAlgebra) -> CartanDatum:
    d = getattr(g, "cartan_datum", None)
    if d is None:
        raise PreconditionError("algebra was not built from a Cartan matrix (no root grading known)")
    return d


def root_of_basis(g: LieAlgebra) -> list[tuple[int, ...]]:
    """Weight of every basis element in simple-root coordinates (zero for h_i)."""
    d = _datum(g)
    zero = (0,) * d.rank
    pos = list(d.positive_roots)
    return [zero] * d.rank + pos + [tuple(-x for x in r) for r in pos]


def check_root_grading(g: LieAlgebra):
    w = root_of_basis(g)
    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            target = tuple(x + y for x, y in zip(w[i], w[j]))
            for k in g.bracket_basis(i, j):
                if w[k] != target:
                    return Check(False, (i, j), f"[{g.basis_names[i]}, {g.basis_names[j]}] has a component outside g_{target}")
    return Check(True)


def borel(g: LieAlgebra) -> Subalgebra:
    """t_C plus the positive root spaces."""
    d = _datum(g)
    n, npos = d.rank, len(d.positive_roots)
    one = to_raw(1)
    vecs = [{k: one} for k in range(n + npos)]
    return Subalgebra(g, Subspace._from_sparse(g.dim, vecs), name="borel")


def parabolic(g: LieAlgebra, simple_subset: Sequence[int]) -> Subalgebra:
    """Borel plus f_a for the roots a supported on the chosen simple roots (1-based)."""
    d = _datum(g)
    n, pos = d.rank, d.positive_roots
    chosen = set()
    for s in simple_subset:
        s = int(s)
        if not 1 <= s <= n:
            raise PreconditionError(f"simple root index {s} outside 1..{n}")
        chosen.add(s - 1)
    one = to_raw(1)
    vecs = [{k: one} for k in range(n + len(pos))]
    for k, r in enumerate(pos):
        if all(c == 0 or i in chosen for i, c in enumerate(r)):
            vecs.append({n + len(pos) + k: one})
    label = "parabolic{" + ",".join(str(s + 1) for s in sorted(chosen)) + "}"
    return Subalgebra(g, Subspace._from_sparse(g.dim, vecs), name=label)


# ---------------------------------------------------------------------------
# inner products


def killing_form(g: LieAlgebra) -> list[list]:
    ads = [g.ad(i) for i in range(g.dim)]
    out = []
    for i in range(g.dim):
        row = []
        for j in range(g.dim):
            prod = ads[i] @ ads[j]
            tr = 0
            for c, col in enumerate(prod.columns):
                tr = tr + col.get(c, 0)
            row.append(demote(tr))
        out.append(row)
    return out


@dataclass(frozen=True)
class HermitianProduct:
    """<x, y> = x^T G conj(y); antilinear in the second slot."""

    algebra: LieAlgebra
    gram: tuple[tuple, ...]

    def __call__(self, x: dict, y: dict):
        acc = 0
        for i, a in x.items():
            row = self.gram[i]
            for j, b in y.items():
                if row[j]:
                    acc = acc + a * row[j] * conj_raw(b)
        return demote(acc)

    def is_conjugate_symmetric(self) -> bool:
        n = len(self.gram)
        return all(self.gram[i][j] == conj_raw(self.gram[j][i]) for i in range(n) for j in range(n))

    def leading_minors(self) -> list[Scalar]:
        n = len(self.gram)
        return [_det([list(r[:k]) for r in self.gram[:k]]) for k in range(1, n + 1)]

    def is_positive_definite(self) -> bool:
        minors = self.leading_minors()
        return all(m.is_real() and m.re > 0 for m in minors)

    def orthogonal_complement(self, sub: Subspace, inside: Subspace) -> Subspace:
        """{y in inside : <x, y> = 0 for every x in sub}."""
        from .linalg import _combine, _kernel_of_columns

        cols = []
        for y in inside.rows:
            cols.append({k: val for k, x in enumerate(sub.rows) if (val := self(x, y))})
        combos = _kernel_of_columns(cols, inside.dim)
        return Subspace._from_sparse(inside.ambient_dim, (_combine(c, inside.rows) for c in combos))

    def identity_failures(self) -> list[tuple[int, int, int]]:
        """Basis triples where <[X,Y],Z> = -<Y,[conj X, Z]> fails."""
        g = self.algebra
        one = to_raw(1)
        bad = []
        for i, j, k in product(range(g.dim), repeat=3):
            lhs = self(g.bracket_basis(i, j), {k: one})
            rhs = self({j: one}, g.bracket_sparse(g.sigma({i: one}), {k: one}))
            if lhs != -rhs:
                bad.append((i, j, k))
        return bad

    def ad_invariance_witness(self):
        """First basis triple with <[X,Y],Z> != -<Y,[X,Z]>, with both sides."""
        g = self.algebra
        one = to_raw(1)
        for i, j, k in product(range(g.dim), repeat=3):
            lhs = self(g.bracket_basis(i, j), {k: one})
            rhs = -self({j: one}, g.bracket_sparse({i: one}, {k: one}))
            if lhs != rhs:
                return (i, j, k), to_scalar(lhs), to_scalar(rhs)
        return None


def hermitian_extension(g: LieAlgebra) -> HermitianProduct:
    """Sesquilinear extension of minus the Killing form on the compact real form.

    G_ij = -B(X_i, sigma X_j); on sigma-fixed vectors this is -B, which is an
    ad-invariant inner product there.
    """
    if g.real_structure is None:
        raise PreconditionError("hermitian extension needs a real structure")
    B = killing_form(g)
    if g.dim and _det(B) == 0:
        raise PreconditionError("Killing form is degenerate: algebra is not semisimple")
    S = g.real_structure
    gram = []
    for i in range(g.dim):
        row = []
        for j in range(g.dim):
            acc = 0
            for k, x in S.column(j).items():
                acc = acc - B[i][k] * x
            row.append(demote(acc))
        gram.append(tuple(row))
    return HermitianProduct(g, tuple(gram))
