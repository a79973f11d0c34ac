"""``lie-coh``: command-line front end.

Exit codes: 0 every requested verdict passed, 1 a computed mismatch or
failed validation, 2 an input error (bad file, bad option, refused input).
"""

from __future__ import annotations

import argparse
import sys
from random import Random

from . import __version__
from .algebra import (
    Subalgebra,
    check_antisymmetry,
    check_jacobi,
    check_real_structure,
    check_subalgebra,
    classify_structure,
)
from .cochains import Bigrading, ce_complex, cohomology_dims, hs_isomorphism_check, induced_complex, relative_complex
from .config import Config, enforce_dim_cap
from .errors import CapExceeded, LieCohError, ParseError, PreconditionError, ValidationError
from .io import (
    algebra_from_json,
    dumps,
    load_json,
    matrix_to_json,
    parse_span,
    provenance,
    resolve_module,
    subalgebra_from_json,
    subspace_from_json,
)
from .linalg import kernel, rank, subspace_intersect, subspace_sum
from .modules import check_homomorphism
from .roots import borel, build_semisimple, check_root_grading, parabolic, preset
from .spectral import hs_e2_check, hs_filtration, spectral_sequence
from .theorem import full_report, spectral_json, theorem1_crosscheck

EXIT_PASS, EXIT_MISMATCH, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    """Refused input; exits with code 2."""


# ---------------------------------------------------------------------------
# argument parsing


def _common(p: argparse.ArgumentParser, sub: bool = True, module: bool = False) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--preset", help="A1, A2, B2 or G2")
    src.add_argument("--algebra", metavar="FILE", help="algebra JSON file")
    if sub:
        v = p.add_mutually_exclusive_group()
        v.add_argument("--borel", action="store_true", help="Borel subalgebra of the preset")
        v.add_argument("--parabolic", metavar="I,J", help="parabolic subalgebra, simple roots 1-based")
        v.add_argument("--sub", metavar="SPAN|FILE", help="span{e,h} or a subalgebra JSON file")
        v.add_argument("--full", action="store_true", help="v = g")
    if module:
        p.add_argument("--module", default="trivial", help="trivial, adjoint, quotient:g/v, dual:<m>, forms:p:<m> or FILE")
    p.add_argument("--format", choices=["json", "text", "both"], default="json")
    p.add_argument("--output", metavar="FILE", help="write JSON here instead of stdout")
    p.add_argument("--max-dim", type=int, default=None, help="dimension cap (default 12 or $LIE_COH_MAX_DIM)")
    p.add_argument("--dump-matrices", action="store_true", help="include differentials in the JSON output")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lie-coh", description="Exact Lie algebra cohomology relative to subalgebras.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sp = ap.add_subparsers(dest="command", required=True)

    p = sp.add_parser("check", help="validate an algebra (and subalgebra / module)")
    _common(p, module=True)

    p = sp.add_parser("classify", help="elliptic / complex / essentially real")
    _common(p)

    p = sp.add_parser("cohomology", help="H^*(g; M), or the bigraded H^{p,q}_v(g; M) with a subalgebra")
    _common(p, module=True)
    p.add_argument("--p-max", type=int, default=None)
    p.add_argument("--q-max", type=int, default=None)

    p = sp.add_parser("relative", help="cohomology of g relative to v (basic cochains)")
    _common(p, module=True)

    p = sp.add_parser("spectral", help="Hochschild-Serre spectral sequence of g filtered by v")
    _common(p, module=True)
    p.add_argument("--p", type=int, default=0, help="form degree for the E_2 comparison")
    p.add_argument("--max-page", type=int, default=None)

    p = sp.add_parser("theorem", help="dimension crosscheck for an elliptic subalgebra")
    _common(p)
    p.add_argument("--p-max", type=int, default=2)
    p.add_argument("--q-max", type=int, default=None)
    p.add_argument("--report", action="store_true", help="run every stage and emit the combined report")

    p = sp.add_parser("proptest", help="randomized property checks")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cases", type=int, default=100)
    p.add_argument("--format", choices=["json", "text", "both"], default="json")
    p.add_argument("--output", metavar="FILE")
    return ap


# ---------------------------------------------------------------------------
# input resolution


def _load_algebra(args, check: bool = True):
    cap = args.max_dim
    if args.preset:
        d = preset(args.preset)
        enforce_dim_cap(d.dim, cap)
        return build_semisimple(args.preset.strip().upper(), max_dim=cap)
    g = algebra_from_json(load_json(args.algebra), check=check)
    enforce_dim_cap(g.dim, cap)
    return g


def _load_sub(args, g, required: bool = False):
    if getattr(args, "borel", False):
        return borel(g)
    if getattr(args, "parabolic", None):
        try:
            idx = [int(s) for s in args.parabolic.split(",") if s.strip()]
        except ValueError:
            raise ParseError(f"bad --parabolic list {args.parabolic!r}", token=args.parabolic) from None
        return parabolic(g, idx)
    if getattr(args, "full", False):
        return Subalgebra.full(g)
    spec = getattr(args, "sub", None)
    if spec:
        if spec.strip().startswith("span"):
            return Subalgebra(g, parse_span(spec, g), name=spec.strip())
        return subalgebra_from_json(load_json(spec), g)
    if required:
        raise InputError("this command needs a subalgebra: --borel, --parabolic, --sub or --full")
    return None


def _prov(args, g, v=None, module=None) -> dict:
    return provenance(
        algebra=g.name,
        preset=getattr(args, "preset", None),
        algebra_file=getattr(args, "algebra", None),
        subalgebra=v.name if v is not None else None,
        module=module,
    )


# ---------------------------------------------------------------------------
# text rendering


def _table(rows: list[list], header: list[str]) -> str:
    cells = [header] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _grid(dims: dict, title: str) -> str:
    """A (p, q) table with p as rows."""
    keys = [tuple(int(x) for x in k.strip("()").split(",")) for k in dims]
    if not keys:
        return f"{title}\n(empty)"
    ps = sorted({p for p, _ in keys})
    qs = sorted({q for _, q in keys})
    rows = [[f"p={p}"] + [dims.get(f"({p},{q})", "") for q in qs] for p in ps]
    return f"{title}\n" + _table(rows, [""] + [f"q={q}" for q in qs])


def render_text(doc: dict) -> str:
    kind = doc.get("kind")
    out = []
    if kind == "check":
        rows = [[name, "pass" if c["pass"] else "FAIL", c.get("witness") or "", c.get("detail", "")] for name, c in sorted(doc["checks"].items())]
        out.append(_table(rows, ["check", "verdict", "witness", "detail"]))
    elif kind == "classify":
        out.append(_table([[k, v] for k, v in sorted(doc["classification"].items())], ["property", "value"]))
    elif kind == "cohomology":
        if doc["grading"] == "simple":
            out.append(_table([[q, d, c] for q, (d, c) in enumerate(zip(doc["dims"], doc["complex_dims"]))], ["q", "dim H^q", "dim C^q"]))
        else:
            out.append(_grid(doc["dims"], "dim H^{p,q}_v"))
            iso = doc.get("isomorphism", [])
            if iso:
                out.append(_table([[r["p"], r["induced"], r["subalgebra_side"], "pass" if r["pass"] else "FAIL"] for r in iso], ["p", "H^{p,*}_v(g;M)", "H^*(v;C^p(g/v;M))", "verdict"]))
    elif kind == "relative":
        out.append(_table([[q, d, c] for q, (d, c) in enumerate(zip(doc["dims"], doc["complex_dims"]))], ["q", "dim H^q(g,v;M)", "dim C^q(g,v;M)"]))
    elif kind == "spectral":
        for page in doc["pages"]:
            out.append(_grid(page["dims"], f"E_{page['r']}"))
        out.append(_grid(doc["infinity"], "E_inf"))
        out.append(f"stable at r = {doc['stable_at']}")
        out.append(_table([[n, a, b] for n, (a, b) in sorted(doc["einf_vs_H"].items(), key=lambda kv: int(kv[0]))], ["n", "sum E_inf", "dim H^n"]))
        if doc.get("e2_check"):
            e = doc["e2_check"]
            if "skipped" in e:
                out.append(f"E_2 comparison skipped: {e['skipped']}")
            else:
                out.append(_grid(e["E2"], f"E_2 of C^*(v; C^{e['p']}(g/v)) filtered by k"))
                out.append(_grid(e["tensor_reading"], "tensor reading H^a(v,k;M) x H^b(k)"))
                out.append(_grid(e["direct_sum_reading"], "direct-sum reading H^a(k) + H^b(v,k;M)"))
                out.append(f"E_2 tensor reading: {'pass' if e['pass'] else 'FAIL'}")
    elif kind == "theorem1":
        rows = [[s["p"], s["q"], s["lhs"], s["rhs"], s["rhs_dual_reading"], "pass" if s["pass"] else "FAIL"] for s in doc["slots"]]
        out.append(_table(rows, ["p", "q", "lhs", "rhs", "rhs (dual)", "verdict"]))
        out.append("hypotheses: " + ", ".join(f"{k}={v}" for k, v in sorted(doc["hypotheses"].items())))
    elif kind == "proptest":
        rows = [[name, r["cases"], r["failures"]] for name, r in sorted(doc["properties"].items())]
        out.append(_table(rows, ["property", "cases", "failures"]))
    elif kind == "report":
        for key in ("classification",):
            if key in doc:
                out.append(_table([[k, v] for k, v in sorted(doc[key].items())], ["property", "value"]))
        for key in ("cohomology", "spectral", "theorem"):
            if isinstance(doc.get(key), dict) and "kind" in doc[key]:
                out.append(render_text(doc[key]))
        for stage, err in sorted(doc["errors"].items()):
            out.append(f"{stage}: {err}")
    if "pass" in doc:
        out.append(f"overall: {'pass' if doc['pass'] else 'FAIL'}")
    return "\n\n".join(out) + "\n"


def _emit(doc: dict, args) -> None:
    fmt = getattr(args, "format", "json")
    text = dumps(doc)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
        if fmt in ("text", "both"):
            sys.stdout.write(render_text(doc))
        return
    if fmt in ("json", "both"):
        sys.stdout.write(text)
    if fmt in ("text", "both"):
        sys.stdout.write(render_text(doc))


# ---------------------------------------------------------------------------
# commands


def _chk(c) -> dict:
    return {"pass": bool(c), "witness": list(c.witness) if c.witness else None, "detail": c.detail}


def cmd_check(args) -> dict:
    g = _load_algebra(args, check=False)
    checks = {"antisymmetry": _chk(check_antisymmetry(g)), "jacobi": _chk(check_jacobi(g))}
    ok = checks["antisymmetry"]["pass"] and checks["jacobi"]["pass"]
    if g.real_structure is not None:
        checks["real_structure"] = _chk(check_real_structure(g))
    if getattr(g, "cartan_datum", None) is not None:
        checks["root_grading"] = _chk(check_root_grading(g))
    if ok:
        spec = args.sub
        if spec:
            if spec.strip().startswith("span"):
                s = parse_span(spec, g)
            else:
                s = subspace_from_json(load_json(spec), g)
            checks["subalgebra"] = _chk(check_subalgebra(g, s))
        elif args.borel or args.parabolic or args.full:
            v = _load_sub(args, g)
            checks["subalgebra"] = _chk(check_subalgebra(g, v.space))
        if args.module != "trivial":
            v = _load_sub(args, g) if checks.get("subalgebra", {"pass": True})["pass"] else None
            m = resolve_module(args.module, g, v)
            checks["module"] = _chk(check_homomorphism(m))
    doc = {
        "kind": "check",
        "checks": checks,
        "provenance": _prov(args, g),
        "pass": all(c["pass"] for c in checks.values()),
    }
    return doc


def cmd_classify(args) -> dict:
    g = _load_algebra(args)
    v = _load_sub(args, g, required=True)
    if g.real_structure is None:
        raise InputError("classification needs an algebra with a real structure")
    cls = classify_structure(g, v)
    return {
        "kind": "classify",
        "classification": cls.as_dict(),
        "provenance": _prov(args, g, v),
    }


def cmd_cohomology(args) -> dict:
    g = _load_algebra(args)
    v = _load_sub(args, g)
    m = resolve_module(args.module, g, v)
    prov = _prov(args, g, v, args.module)
    if v is None or m.algebra is not g:
        host = m.algebra
        c = ce_complex(host, m, max_dim=args.max_dim)
        doc = {
            "kind": "cohomology",
            "grading": "simple",
            "dims": cohomology_dims(c),
            "complex_dims": c.dims,
            "provenance": prov,
        }
        if args.dump_matrices:
            doc["differentials"] = [matrix_to_json(d) for d in c.differentials]
        return doc
    codim = g.dim - v.dim
    p_max = codim if args.p_max is None else args.p_max
    q_max = v.dim if args.q_max is None else args.q_max
    if p_max < 0 or q_max < 0:
        raise InputError("--p-max and --q-max must be nonnegative")
    bg = Bigrading(g, v, m, max_dim=args.max_dim)
    dims, cdims, iso, diffs = {}, {}, [], {}
    for p in range(p_max + 1):
        c = induced_complex(g, v, m, p, bigrading=bg)
        h = cohomology_dims(c)
        for q in range(q_max + 1):
            dims[f"({p},{q})"] = h[q] if q < len(h) else 0
            cdims[f"({p},{q})"] = c.dims[q] if q < len(c.dims) else 0
        iso.append(hs_isomorphism_check(g, v, m, p, bigrading=bg).as_dict())
        if args.dump_matrices:
            diffs[str(p)] = [matrix_to_json(d) for d in c.differentials]
    doc = {
        "kind": "cohomology",
        "grading": "bigraded",
        "dims": dims,
        "complex_dims": cdims,
        "isomorphism": iso,
        "provenance": prov,
        "pass": all(r["pass"] for r in iso),
    }
    if args.dump_matrices:
        doc["differentials"] = diffs
    return doc


def cmd_relative(args) -> dict:
    g = _load_algebra(args)
    v = _load_sub(args, g, required=True)
    m = resolve_module(args.module, g, v)
    if m.algebra is not g:
        raise InputError("relative cohomology needs a module over the whole algebra")
    c = relative_complex(g, v, m, max_dim=args.max_dim)
    doc = {
        "kind": "relative",
        "dims": cohomology_dims(c),
        "complex_dims": c.dims,
        "definition": "basic cochains: killed by insertion of and Lie derivative along every element of v",
        "provenance": _prov(args, g, v, args.module),
    }
    if args.dump_matrices:
        doc["differentials"] = [matrix_to_json(d) for d in c.differentials]
    return doc


def cmd_spectral(args) -> dict:
    g = _load_algebra(args)
    v = _load_sub(args, g, required=True)
    m = resolve_module(args.module, g, v)
    if m.algebra is not g:
        raise InputError("the spectral sequence needs a module over the whole algebra")
    f = hs_filtration(g, v, m, max_dim=args.max_dim)
    rep = spectral_sequence(f, max_page=args.max_page)
    doc = spectral_json(rep)
    doc["provenance"] = _prov(args, g, v, args.module)
    verdicts = [rep.converges]
    if g.real_structure is not None and classify_structure(g, v).elliptic:
        e2 = hs_e2_check(g, v, args.p, max_dim=args.max_dim)
        doc["e2_check"] = e2.as_dict()
        verdicts.append(e2.passed)
    else:
        doc["e2_check"] = {"skipped": "subalgebra is not elliptic" if g.real_structure is not None else "no real structure"}
    if args.dump_matrices:
        doc["differentials"] = [matrix_to_json(d) for d in f.complex.differentials]
        doc["page_differentials"] = {
            str(page.r): {f"({a},{b})": matrix_to_json(d) for (a, b), d in sorted(page.d.items()) if d.nrows and d.ncols}
            for page in rep.pages
        }
    doc["pass"] = all(verdicts)
    return doc


def cmd_theorem(args) -> dict:
    g = _load_algebra(args)
    v = _load_sub(args, g, required=True)
    if g.real_structure is None:
        raise InputError("the crosscheck needs an algebra with a real structure")
    cls = classify_structure(g, v)
    if not cls.elliptic:
        raise InputError("refused: subalgebra is not elliptic; classification " + dumps(cls.as_dict()).strip())
    if args.report:
        doc = full_report(g, v, p_max=args.p_max, q_max=args.q_max, max_dim=args.max_dim)
    else:
        doc = theorem1_crosscheck(g, v, args.p_max, args.q_max, max_dim=args.max_dim).as_dict()
        doc["classification"] = cls.as_dict()
    doc["provenance"] = _prov(args, g, v)
    return doc


def run_proptest(seed: int, cases: int) -> dict:
    """Randomized checks shared by the CLI and the test-suite."""
    from .algebra import check_antisymmetry as _anti
    from .randomized import flip_structure_constant, random_algebra, random_matrix, random_module, random_subspace

    rng = Random(seed)
    props = {
        name: {"cases": 0, "failures": 0}
        for name in ("d_squared_zero", "rank_nullity", "modular_law", "flip_detected", "euler_characteristic")
    }

    def record(name, ok):
        props[name]["cases"] += 1
        if not ok:
            props[name]["failures"] += 1

    for _ in range(cases):
        g, rep = random_algebra(rng)
        m = random_module(rng, g, rep)
        try:
            c = ce_complex(g, m)
            record("d_squared_zero", c.check_square_zero() is None)
            h = cohomology_dims(c)
            record("euler_characteristic", sum((-1) ** q * x for q, x in enumerate(h)) == c.euler_characteristic())
        except ValidationError:
            record("d_squared_zero", False)
        a = random_matrix(rng, rng.randint(1, 6), rng.randint(1, 6), gaussian=True)
        record("rank_nullity", rank(a) + kernel(a).dim == a.ncols)
        n = rng.randint(1, 6)
        s, t = random_subspace(rng, n), random_subspace(rng, n)
        record("modular_law", subspace_sum(s, t).dim + subspace_intersect(s, t).dim == s.dim + t.dim)
        flipped = flip_structure_constant(g, rng, keep_antisymmetry=False)
        if flipped is not None:
            h_alg, _ = flipped
            record("flip_detected", not _anti(h_alg))
    return {
        "kind": "proptest",
        "seed": seed,
        "properties": props,
        "pass": all(p["failures"] == 0 for p in props.values()),
    }


def cmd_proptest(args) -> dict:
    if args.cases <= 0:
        raise InputError("--cases must be positive")
    return run_proptest(args.seed, args.cases)


COMMANDS = {
    "check": cmd_check,
    "classify": cmd_classify,
    "cohomology": cmd_cohomology,
    "relative": cmd_relative,
    "spectral": cmd_spectral,
    "theorem": cmd_theorem,
    "proptest": cmd_proptest,
}


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_PASS
    if getattr(args, "max_dim", None) is not None and args.max_dim <= 0:
        print("error: --max-dim must be positive", file=sys.stderr)
        return EXIT_INPUT
    try:
        Config.from_env(max_dim=getattr(args, "max_dim", None), format=args.format, output=args.output)
        doc = COMMANDS[args.command](args)
    except (InputError, ParseError, PreconditionError, CapExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValidationError as exc:
        witness = f" (witness {exc.witness})" if exc.witness is not None else ""
        print(f"error: {exc}{witness}", file=sys.stderr)
        return EXIT_INPUT
    except LieCohError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    _emit(doc, args)
    return EXIT_PASS if doc.get("pass", True) else EXIT_MISMATCH


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
