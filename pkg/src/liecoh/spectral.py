"""Spectral sequences of filtered cochain complexes, and the Hochschild-Serre case."""

from __future__ import annotations

from dataclasses import dataclass, field
from random import Random
from typing import Sequence

from .algebra import LieAlgebra, Subalgebra, classify_structure, real_part
from .cochains import Bigrading, CochainComplex, ce_complex, cohomology_dims, relative_complex
from .config import enforce_dim_cap
from .errors import CapExceeded, PreconditionError, ValidationError
from .linalg import (
    Matrix,
    Quotient,
    Subspace,
    image,
    kernel,
    preimage,
    subspace_intersect,
    subspace_sum,
)
from .modules import Representation, forms_module, quotient_module, trivial_module
from .roots import HermitianProduct, hermitian_extension
from .scalar import to_raw

__all__ = [
    "FilteredComplex",
    "SpectralSequencePage",
    "hs_filtration",
    "compute_page",
    "limit_page",
    "spectral_sequence",
    "SpectralReport",
    "E2Report",
    "hs_e2_check",
    "ReducibilityReport",
    "reducibility_check",
    "k_invariant_closure",
    "random_k_submodule",
    "convolve",
]


def convolve(a: Sequence[int], b: Sequence[int], length: int | None = None) -> list[int]:
    """Dimension shadow of a graded tensor product: c_q = sum_{r+s=q} a_r b_s."""
    n = len(a) + len(b) - 1 if length is None else length
    out = [0] * max(n, 0)
    for r, x in enumerate(a):
        for s, y in enumerate(b):
            if r + s < n:
                out[r + s] += x * y
    return out


@dataclass
class FilteredComplex:
    """A cochain complex with a finite descending filtration in each degree.

    ``filtration[n][p]`` is F^p C^n for p = 0..n+1 (the last one zero).
    Levels outside the list are C^n (p < 0) or zero (p > n + 1).
    """

    complex: CochainComplex
    filtration: list[list[Subspace]]
    labels: dict = field(default_factory=dict)

    def __post_init__(self):
        c = self.complex
        if len(self.filtration) != len(c.dims):
            raise PreconditionError("need one flag per degree")
        for n, flag in enumerate(self.filtration):
            if any(s.ambient_dim != c.dims[n] for s in flag):
                raise PreconditionError(f"filtration in degree {n} lives in the wrong space")
            if flag[0].dim != c.dims[n] or flag[-1].dim != 0:
                raise ValidationError(f"filtration in degree {n} must start at C^{n} and end at 0", witness=(n,))
            for p in range(len(flag) - 1):
                if not flag[p + 1].is_subspace_of(flag[p]):
                    raise ValidationError(f"F^{p + 1} C^{n} is not inside F^{p} C^{n}", witness=(n, p))
        for n, d in enumerate(c.differentials):
            for p, s in enumerate(self.filtration[n]):
                target = self.F(p, n + 1)
                if any(not target.contains(d.apply(r)) for r in s.rows):
                    raise ValidationError(f"D does not preserve F^{p} in degree {n}", witness=(n, p))

    @property
    def top_degree(self) -> int:
        return len(self.complex.dims) - 1

    def F(self, p: int, n: int) -> Subspace:
        if n < 0 or n > self.top_degree:
            return Subspace.zero(0)
        flag = self.filtration[n]
        if p <= 0:
            return flag[0]
        if p >= len(flag):
            return Subspace.zero(self.complex.dims[n])
        return flag[p]

    def D(self, n: int) -> Matrix | None:
        if 0 <= n < len(self.complex.differentials):
            return self.complex.differentials[n]
        return None

    def slots(self):
        """(p, q) with F^p C^{p+q} / F^{p+1} possibly nonzero."""
        for n in range(self.top_degree + 1):
            for p in range(len(self.filtration[n]) - 1):
                yield p, n - p

    def max_filtration(self) -> int:
        return max((len(f) - 1 for f in self.filtration), default=0)


@dataclass
class SpectralSequencePage:
    r: int
    entries: dict[tuple[int, int], Quotient]
    d: dict[tuple[int, int], Matrix]

    @property
    def dims(self) -> dict[tuple[int, int], int]:
        return {k: q.dim for k, q in self.entries.items()}

    def nonzero_dims(self) -> dict[tuple[int, int], int]:
        return {k: v for k, v in sorted(self.dims.items()) if v}

    def total_dims(self, top: int) -> list[int]:
        out = [0] * (top + 1)
        for (p, q), d in self.dims.items():
            out[p + q] += d
        return out

    def target(self, p: int, q: int) -> tuple[int, int]:
        return p + self.r, q - self.r + 1

    def check_square_zero(self) -> tuple[int, int] | None:
        for (p, q), m in self.d.items():
            t = self.target(p, q)
            nxt = self.d.get(t)
            if nxt is not None and not (nxt @ m).is_zero():
                return (p, q)
        return None


class _Cache:
    def __init__(self, f: FilteredComplex):
        self.f = f
        self._z: dict = {}

    def Z(self, r: int, p: int, q: int) -> Subspace:
        """Z_r^{p,q}; Z_{-1} is F^p."""
        key = (r, p, q)
        if key not in self._z:
            n = p + q
            Fp = self.f.F(p, n)
            D = self.f.D(n)
            if r < 0 or D is None:
                z = Fp
            else:
                z = preimage(D, self.f.F(p + r, n + 1), Fp)
            self._z[key] = z
        return self._z[key]

    def boundary(self, r: int, p: int, q: int) -> Subspace:
        """D Z_{r-1}^{p-r+1, q+r-2} inside C^{p+q}."""
        n = p + q
        amb = self.f.complex.dims[n]
        D = self.f.D(n - 1)
        if D is None:
            return Subspace.zero(amb)
        src = self.Z(r - 1, p - r + 1, q + r - 2)
        return Subspace._from_sparse(amb, (D.apply(x) for x in src.rows))


def compute_page(f: FilteredComplex, r: int, max_page: int | None = None, _cache: _Cache | None = None) -> SpectralSequencePage:
    """E_r = Z_r / (Z_{r-1}^{p+1,q-1} + D Z_{r-1}^{p-r+1,q+r-2}) with its d_r."""
    if r < 0:
        raise PreconditionError("page index must be nonnegative")
    cap = f.max_filtration() + 2 if max_page is None else max_page
    if r > cap:
        raise CapExceeded(f"page {r} beyond max_page {cap}", cap=cap, value=r)
    cache = _cache or _Cache(f)
    entries: dict[tuple[int, int], Quotient] = {}
    for p, q in f.slots():
        num = cache.Z(r, p, q)
        den = subspace_sum(cache.Z(r - 1, p + 1, q - 1), cache.boundary(r, p, q))
        if not den.is_subspace_of(num):
            raise ValidationError(f"E_{r} denominator leaves the numerator at ({p},{q})", witness=(r, p, q))
        entries[(p, q)] = Quotient(num, den, check=False)
    d: dict[tuple[int, int], Matrix] = {}
    for (p, q), src in entries.items():
        D = f.D(p + q)
        tgt = entries.get((p + r, q - r + 1))
        if D is None:
            continue
        if tgt is None:
            d[(p, q)] = Matrix.zero(0, src.dim)
            continue
        d[(p, q)] = src.induced_map(D, tgt)
    return SpectralSequencePage(r, entries, d)


def _infinity_page(f: FilteredComplex) -> SpectralSequencePage:
    entries = {}
    kers, ims = {}, {}
    for n in range(f.top_degree + 1):
        D = f.D(n)
        kers[n] = kernel(D) if D is not None else Subspace.full(f.complex.dims[n])
        Din = f.D(n - 1)
        ims[n] = image(Din) if Din is not None else Subspace.zero(f.complex.dims[n])
    for p, q in f.slots():
        n = p + q
        num = subspace_intersect(f.F(p, n), kers[n])
        den = subspace_sum(subspace_intersect(f.F(p + 1, n), kers[n]), subspace_intersect(f.F(p, n), ims[n]))
        entries[(p, q)] = Quotient(num, den, check=False)
    return SpectralSequencePage(-1, entries, {})


def limit_page(f: FilteredComplex, max_page: int | None = None) -> tuple[SpectralSequencePage, list[SpectralSequencePage]]:
    """Pages E_0, E_1, ... up to the first one with the E_infinity dimensions.

    E_infinity = (F^p n ker D) / (F^{p+1} n ker D + F^p n im D) is computed
    directly; once E_r has the same dimensions the remaining differentials
    vanish, since dimensions never grow from one page to the next.
    """
    cache = _Cache(f)
    inf = _infinity_page(f)
    target = inf.dims
    cap = f.max_filtration() + 2 if max_page is None else max_page
    pages = []
    for r in range(cap + 1):
        page = compute_page(f, r, max_page=cap, _cache=cache)
        pages.append(page)
        if page.dims == target:
            return page, pages
    raise CapExceeded(f"spectral sequence not stable by page {cap}", cap=cap, value=cap + 1)


def hs_filtration(g: LieAlgebra, v: Subalgebra, m: Representation, max_dim: int | None = None, bigrading: Bigrading | None = None) -> FilteredComplex:
    """CE complex of (g, M) filtered by F^p C^n = N^{p, n-p}."""
    enforce_dim_cap(g.dim, max_dim)
    bg = bigrading or Bigrading(g, v, m, max_dim=max_dim)
    c = ce_complex(g, m, max_dim=max_dim)
    filt = [[bg.n_space(p, n - p) for p in range(n + 2)] for n in range(g.dim + 1)]
    return FilteredComplex(c, filt, {"algebra": g.name, "subalgebra": v.name, "module": m.name})


@dataclass
class SpectralReport:
    pages: list[SpectralSequencePage]
    infinity: SpectralSequencePage
    stable_at: int
    cohomology: list[int]

    def einf_vs_H(self) -> dict[int, tuple[int, int]]:
        tot = self.infinity.total_dims(len(self.cohomology) - 1)
        return {n: (tot[n], h) for n, h in enumerate(self.cohomology)}

    @property
    def converges(self) -> bool:
        return all(a == b for a, b in self.einf_vs_H().values())

    @property
    def monotone(self) -> bool:
        for a, b in zip(self.pages, self.pages[1:]):
            if any(b.dims[k] > a.dims[k] for k in a.dims):
                return False
        return True

    def square_zero(self) -> bool:
        return all(p.check_square_zero() is None for p in self.pages)

    def next_page_consistent(self) -> bool:
        """dim E_{r+1} = dim ker d_r - rank of incoming d_r, slot by slot."""
        from .linalg import rank

        for a, b in zip(self.pages, self.pages[1:]):
            ranks = {k: rank(m) for k, m in a.d.items()}
            for (p, q), dim in a.dims.items():
                out = ranks.get((p, q), 0)
                inc = ranks.get((p - a.r, q + a.r - 1), 0)
                if b.dims[(p, q)] != dim - out - inc:
                    return False
        return True


def spectral_sequence(f: FilteredComplex, max_page: int | None = None) -> SpectralReport:
    last, pages = limit_page(f, max_page=max_page)
    return SpectralReport(pages, _infinity_page(f), last.r, cohomology_dims(f.complex))


# ---------------------------------------------------------------------------
# E_2 identification


@dataclass
class E2Report:
    p: int
    e2: dict[tuple[int, int], int]
    h_k: list[int]
    h_rel: list[int]
    tensor: dict[tuple[int, int], int]
    direct_sum: dict[tuple[int, int], int]

    @property
    def passed(self) -> bool:
        return self.e2 == self.tensor

    @property
    def direct_sum_matches(self) -> bool:
        return self.e2 == self.direct_sum

    def as_dict(self) -> dict:
        def keyed(d):
            return {f"({a},{b})": v for (a, b), v in sorted(d.items())}

        return {
            "p": self.p,
            "E2": keyed(self.e2),
            "H_k": self.h_k,
            "H_v_k": self.h_rel,
            "tensor_reading": keyed(self.tensor),
            "direct_sum_reading": keyed(self.direct_sum),
            "pass": self.passed,
            "direct_sum_matches": self.direct_sum_matches,
        }


def _require_elliptic(g: LieAlgebra, v: Subalgebra):
    cls = classify_structure(g, v)
    if not cls.elliptic:
        raise PreconditionError(f"subalgebra is not elliptic: {cls.as_dict()}")
    return cls


def hs_e2_check(g: LieAlgebra, v: Subalgebra, p: int, max_dim: int | None = None) -> E2Report:
    """E_2 of C^*(v; C^p(g/v)) filtered by k = v n conj(v), against H(k) and H(v, k).

    Slot (a, b): a is the filtration degree (number of arguments outside k),
    b the complementary degree.  The tensor reading predicts
    dim H^a(v, k; M) * dim H^b(k); the literal direct-sum reading predicts
    dim H^a(k) + dim H^b(v, k; M).
    """
    _require_elliptic(g, v)
    enforce_dim_cap(g.dim, max_dim)
    va = v.as_algebra()
    k = real_part(g, v).relative_to(v)
    gv = quotient_module(g, v)
    if not 0 <= p <= gv.dim_M:
        raise PreconditionError(f"p must lie in 0..{gv.dim_M}")
    M = forms_module(gv, p, trivial_module(va))
    f = hs_filtration(va, k, M, max_dim=max_dim)
    page = compute_page(f, 2)
    e2 = page.dims
    ka = k.as_algebra()
    h_k = cohomology_dims(ce_complex(ka, trivial_module(ka)))
    h_rel = cohomology_dims(relative_complex(va, k, M))
    tensor, direct = {}, {}
    for a, b in e2:
        tensor[(a, b)] = (h_rel[a] if a < len(h_rel) else 0) * (h_k[b] if 0 <= b < len(h_k) else 0)
        direct[(a, b)] = (h_k[a] if a < len(h_k) else 0) + (h_rel[b] if 0 <= b < len(h_rel) else 0)
    return E2Report(p, e2, h_k, h_rel, tensor, direct)


# ---------------------------------------------------------------------------
# complete reducibility


def k_invariant_closure(g: LieAlgebra, k: Subalgebra, vectors) -> Subspace:
    """Smallest ad(k)-invariant subspace containing ``vectors``."""
    space = Subspace._from_sparse(g.dim, vectors)
    ads = [g.ad_of(y) for y in k.space.rows]
    frontier = list(space.rows)
    while frontier:
        new = []
        for x in frontier:
            for a in ads:
                y = a.apply(x)
                if y and not space.contains(y):
                    space = subspace_sum(space, Subspace._from_sparse(g.dim, [y]))
                    new.append(y)
        frontier = new
    return space


def random_k_submodule(g: LieAlgebra, v: Subalgebra, rng: Random, n_vectors: int | None = None) -> Subspace:
    """ad(k)-closure of a few random small-integer vectors of v."""
    k = real_part(g, v)
    count = rng.randint(0, max(v.dim - 1, 0)) if n_vectors is None else n_vectors
    vecs = []
    for _ in range(count):
        combo = {}
        for row in v.space.rows:
            c = rng.randint(-3, 3)
            if c:
                for i, x in row.items():
                    combo[i] = combo.get(i, 0) + c * x
        combo = {i: to_raw(x) for i, x in combo.items() if x}
        vecs.append(combo)
    return k_invariant_closure(g, k, vecs)


def _is_invariant(g: LieAlgebra, k: Subalgebra, s: Subspace) -> bool:
    ads = [g.ad_of(y) for y in k.space.rows]
    return all(s.contains(a.apply(x)) for a in ads for x in s.rows)


@dataclass
class ReducibilityReport:
    submodule_dim: int
    complement: Subspace
    complement_invariant: bool
    direct_sum: bool
    identity_failures: list

    @property
    def passed(self) -> bool:
        return self.complement_invariant and self.direct_sum and not self.identity_failures

    def as_dict(self) -> dict:
        return {
            "submodule_dim": self.submodule_dim,
            "complement_dim": self.complement.dim,
            "complement_invariant": self.complement_invariant,
            "direct_sum": self.direct_sum,
            "identity_failures": [list(t) for t in self.identity_failures],
            "pass": self.passed,
        }


def reducibility_check(
    g: LieAlgebra,
    v: Subalgebra,
    submodule: Subspace,
    product: HermitianProduct | None = None,
    check_identity: bool = True,
) -> ReducibilityReport:
    """Orthogonal complement of a k-invariant submodule of v is k-invariant."""
    _require_elliptic(g, v)
    if not submodule.is_subspace_of(v.space):
        raise PreconditionError("submodule is not contained in v")
    k = real_part(g, v)
    if not _is_invariant(g, k, submodule):
        raise PreconditionError("submodule is not k-invariant")
    hp = product or hermitian_extension(g)
    comp = hp.orthogonal_complement(submodule, v.space)
    direct = comp.dim + submodule.dim == v.dim and subspace_intersect(comp, submodule).dim == 0
    failures = hp.identity_failures() if check_identity else []
    return ReducibilityReport(submodule.dim, comp, _is_invariant(g, k, comp), direct, failures)
