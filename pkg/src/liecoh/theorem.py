"""The dimension identity behind the main theorem, and the end-to-end report.

For an elliptic v in g_C with k = v n conj(v), the identity compared is

    dim H^{p,q}_v(g_C; C) = sum_{r+s=q} dim H^r(v, k; M_p) * dim H^s(k)

with M_p the v-module of p-cochains on g_C/v (see ``coefficient_module``).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import LieAlgebra, Subalgebra, classify_structure, real_part
from .cochains import Bigrading, ce_complex, cohomology_dims, induced_complex, relative_complex
from .config import enforce_dim_cap
from .errors import LieCohError, PreconditionError
from .modules import dual_module, forms_module, quotient_module, trivial_module
from .spectral import convolve, hs_e2_check, hs_filtration, spectral_sequence

__all__ = [
    "SlotResult",
    "TheoremReport",
    "coefficient_module",
    "bigraded_table",
    "theorem1_crosscheck",
    "full_report",
]

HYPOTHESES = {
    "semisimple": True,
    "closed_exp_v": "asserted",
    "omega_simply_connected": "asserted",
}


@dataclass(frozen=True)
class SlotResult:
    p: int
    q: int
    lhs: int
    rhs: int
    rhs_dual: int

    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs

    def as_dict(self) -> dict:
        return {"p": self.p, "q": self.q, "lhs": self.lhs, "rhs": self.rhs, "rhs_dual_reading": self.rhs_dual, "pass": self.passed}


@dataclass
class TheoremReport:
    algebra: str
    subalgebra: str
    slots: list[SlotResult]
    h_k: list[int]
    h_rel: dict[int, list[int]]
    hypotheses: dict = field(default_factory=lambda: dict(HYPOTHESES))

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.slots)

    def as_dict(self) -> dict:
        return {
            "kind": "theorem1",
            "algebra": self.algebra,
            "subalgebra": self.subalgebra,
            "slots": [s.as_dict() for s in self.slots],
            "H_k": self.h_k,
            "H_v_k": {str(p): dims for p, dims in sorted(self.h_rel.items())},
            "hypotheses": dict(self.hypotheses),
            "pass": self.passed,
        }


def coefficient_module(g: LieAlgebra, v: Subalgebra, p: int, reading: str = "forms"):
    """The v-module M_p on p-cochains of g/v with trivial values.

    ``forms``: alternating p-forms on g/v (Lambda^p (g/v)^*) with the
    Leibniz action; ``dual``: its dual, Lambda^p (g/v).
    """
    va = v.as_algebra()
    gv = quotient_module(g, v)
    m = forms_module(gv, p, trivial_module(va))
    if reading == "forms":
        return m
    if reading == "dual":
        return dual_module(m)
    raise PreconditionError(f"unknown reading {reading!r}")


def bigraded_table(g: LieAlgebra, v: Subalgebra, p_max: int, q_max: int, module=None, max_dim: int | None = None) -> dict[tuple[int, int], int]:
    """dim H^{p,q}_v(g; M) for 0 <= p <= p_max, 0 <= q <= q_max."""
    enforce_dim_cap(g.dim, max_dim)
    m = module or trivial_module(g)
    bg = Bigrading(g, v, m, max_dim=max_dim)
    out = {}
    for p in range(p_max + 1):
        dims = cohomology_dims(induced_complex(g, v, m, p, bigrading=bg))
        for q in range(q_max + 1):
            out[(p, q)] = dims[q] if q < len(dims) else 0
    return out


def theorem1_crosscheck(g: LieAlgebra, v: Subalgebra, p_max: int = 2, q_max: int | None = None, max_dim: int | None = None) -> TheoremReport:
    if g.real_structure is None:
        raise PreconditionError("the crosscheck needs an algebra with a real structure")
    cls = classify_structure(g, v)
    if not cls.elliptic:
        raise PreconditionError(f"subalgebra is not elliptic: {cls.as_dict()}")
    enforce_dim_cap(g.dim, max_dim)
    q_max = v.dim if q_max is None else q_max
    lhs = bigraded_table(g, v, p_max, q_max, max_dim=max_dim)

    k_in_v = real_part(g, v).relative_to(v)
    ka = k_in_v.as_algebra()
    h_k = cohomology_dims(ce_complex(ka, trivial_module(ka)))
    va = v.as_algebra()
    codim = g.dim - v.dim
    h_rel: dict[int, list[int]] = {}
    h_rel_dual: dict[int, list[int]] = {}
    for p in range(p_max + 1):
        if p > codim:
            h_rel[p] = h_rel_dual[p] = [0] * (va.dim + 1)
            continue
        for reading, store in (("forms", h_rel), ("dual", h_rel_dual)):
            m = coefficient_module(g, v, p, reading)
            store[p] = cohomology_dims(relative_complex(va, k_in_v, m))
    slots = []
    for p in range(p_max + 1):
        rhs = convolve(h_rel[p], h_k, q_max + 1)
        rhs_dual = convolve(h_rel_dual[p], h_k, q_max + 1)
        for q in range(q_max + 1):
            slots.append(SlotResult(p, q, lhs[(p, q)], rhs[q], rhs_dual[q]))
    return TheoremReport(g.name, v.name, slots, h_k, h_rel)


def _table_json(t: dict[tuple[int, int], int]) -> dict:
    return {f"({p},{q})": d for (p, q), d in sorted(t.items())}


def full_report(g: LieAlgebra, v: Subalgebra, p_max: int = 1, q_max: int | None = None, max_dim: int | None = None, max_page: int | None = None) -> dict:
    """Classification, bigraded table, spectral pages, E_2 check and crosscheck.

    Stage failures are collected under ``errors`` with the stage name.
    """
    q_max = v.dim if q_max is None else q_max
    doc: dict = {"kind": "report", "algebra": g.name, "subalgebra": v.name, "errors": {}}
    verdicts = []

    def stage(name, fn):
        try:
            doc[name] = fn()
        except LieCohError as exc:
            doc["errors"][name] = f"{type(exc).__name__}: {exc}"
            verdicts.append(False)

    cls = None
    if g.real_structure is not None:
        cls = classify_structure(g, v)
        doc["classification"] = cls.as_dict()

    stage(
        "cohomology",
        lambda: {"kind": "cohomology", "grading": "bigraded", "dims": _table_json(bigraded_table(g, v, p_max, q_max, max_dim=max_dim))},
    )

    def spectral():
        rep = spectral_sequence(hs_filtration(g, v, trivial_module(g), max_dim=max_dim), max_page=max_page)
        verdicts.append(rep.converges)
        return spectral_json(rep)

    stage("spectral", spectral)

    if cls is None or not cls.elliptic:
        reason = "no real structure" if cls is None else "subalgebra is not elliptic"
        doc["e2_check"] = {"skipped": reason}
        doc["theorem"] = {"skipped": reason}
    else:
        def e2():
            codim = g.dim - v.dim
            reps = [hs_e2_check(g, v, p, max_dim=max_dim) for p in range(min(p_max, codim) + 1)]
            verdicts.extend(r.passed for r in reps)
            return [r.as_dict() for r in reps]

        stage("e2_check", e2)

        def thm():
            rep = theorem1_crosscheck(g, v, p_max, q_max, max_dim=max_dim)
            verdicts.append(rep.passed)
            return rep.as_dict()

        stage("theorem", thm)
    doc["pass"] = all(verdicts) and not doc["errors"]
    return doc


def spectral_json(rep) -> dict:
    return {
        "kind": "spectral",
        "pages": [
            {"r": p.r, "dims": {f"({a},{b})": d for (a, b), d in sorted(p.dims.items())}} for p in rep.pages
        ],
        "infinity": {f"({a},{b})": d for (a, b), d in sorted(rep.infinity.dims.items())},
        "stable_at": rep.stable_at,
        "einf_vs_H": {str(n): list(v) for n, v in rep.einf_vs_H().items()},
        "monotone": rep.monotone,
        "pass": rep.converges,
    }
