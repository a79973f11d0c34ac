"""JSON file formats, built-in module names and deterministic report output.

Algebra file::

    {"dim": 3, "basis": ["h", "e", "f"],
     "brackets": [{"x": "h", "y": "e", "value": {"e": "2"}}, ...],
     "real_structure": [["-1", "0", "0"], ...]}

Subalgebra file: ``{"span": [["1", "0", "0"], ...]}``.
Representation file: ``{"dim_M": 2, "action": {"h": [["1", "0"], ...], ...}}``.
Every number is a scalar string; floats are rejected.
"""

from __future__ import annotations

import json
import re
from pathlib import Path
from typing import Any

from . import __version__
from .algebra import LieAlgebra, Subalgebra
from .errors import DimensionMismatch, ParseError
from .linalg import Matrix, Subspace
from .modules import (
    Representation,
    adjoint_module,
    dual_module,
    forms_module,
    quotient_module,
    restrict,
    trivial_module,
)
from .scalar import format_scalar, parse_scalar, to_raw

__all__ = [
    "load_json",
    "algebra_from_json",
    "algebra_to_json",
    "subalgebra_from_json",
    "subspace_from_json",
    "parse_span",
    "representation_from_json",
    "resolve_module",
    "matrix_to_json",
    "dumps",
    "provenance",
]


def load_json(path: str | Path) -> Any:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {p}: {exc.strerror}", token=str(p)) from None
    try:
        return json.loads(text, parse_float=_reject_float)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{p}: {exc.msg} at line {exc.lineno} column {exc.colno}", position=(exc.lineno, exc.colno)) from None


def _reject_float(text: str):
    raise ParseError(f"floating-point literal {text} is not allowed; use a scalar string", token=text)


def _scalar(x, where: str):
    if isinstance(x, bool):
        raise ParseError(f"{where}: expected a scalar string, got {x!r}", token=repr(x))
    if isinstance(x, int):
        return to_raw(x)
    if not isinstance(x, str):
        raise ParseError(f"{where}: expected a scalar string, got {x!r}", token=repr(x))
    try:
        return to_raw(parse_scalar(x))
    except ParseError as exc:
        raise ParseError(f"{where}: {exc}", token=exc.token) from None


def _field(doc: dict, key: str, kind, where: str):
    if not isinstance(doc, dict) or key not in doc:
        raise ParseError(f"{where}: missing field {key!r}", token=key)
    val = doc[key]
    if not isinstance(val, kind):
        raise ParseError(f"{where}: field {key!r} has the wrong type", token=key)
    return val


def _matrix_rows(rows, n_rows: int, n_cols: int, where: str) -> Matrix:
    if not isinstance(rows, list) or len(rows) != n_rows:
        raise ParseError(f"{where}: expected {n_rows} rows", token=where)
    cols: list[dict] = [{} for _ in range(n_cols)]
    for r, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n_cols:
            raise ParseError(f"{where}: row {r} must have {n_cols} entries", token=f"{where}[{r}]")
        for c, x in enumerate(row):
            v = _scalar(x, f"{where}[{r}][{c}]")
            if v:
                cols[c][r] = v
    return Matrix._from_raw_columns(n_rows, cols)


def algebra_from_json(doc: dict, name: str = "", check: bool = True) -> LieAlgebra:
    basis = _field(doc, "basis", list, "algebra")
    if not all(isinstance(b, str) for b in basis):
        raise ParseError("algebra: basis names must be strings", token="basis")
    n = len(basis)
    if "dim" in doc and doc["dim"] != n:
        raise DimensionMismatch(f"algebra: dim {doc['dim']} does not match {n} basis names")
    index = {b: i for i, b in enumerate(basis)}
    brackets = {}
    for k, entry in enumerate(doc.get("brackets", [])):
        where = f"brackets[{k}]"
        x, y = _field(entry, "x", str, where), _field(entry, "y", str, where)
        value = _field(entry, "value", dict, where)
        for label in (x, y, *value):
            if label not in index:
                raise ParseError(f"{where}: unknown basis element {label!r}", token=label)
        vec = {}
        for label, coeff in value.items():
            c = _scalar(coeff, f"{where}.value.{label}")
            if c:
                vec[index[label]] = c
        key = (index[x], index[y])
        if key in brackets:
            raise ParseError(f"{where}: bracket [{x}, {y}] given twice", token=f"{x},{y}")
        brackets[key] = vec
    sigma = None
    if doc.get("real_structure") is not None:
        sigma = _matrix_rows(doc["real_structure"], n, n, "real_structure")
    return LieAlgebra(basis, brackets, real_structure=sigma, name=name or doc.get("name", "custom"), check=check)


def algebra_to_json(g: LieAlgebra) -> dict:
    names = g.basis_names
    brackets = []
    for (i, j), vec in sorted(g.structure_constants().items()):
        brackets.append({"x": names[i], "y": names[j], "value": {names[k]: format_scalar(c) for k, c in sorted(vec.items())}})
    doc = {"dim": g.dim, "basis": list(names), "brackets": brackets}
    if g.real_structure is not None:
        doc["real_structure"] = [[format_scalar(x) for x in row] for row in g.real_structure.to_rows()]
    return doc


_SPAN_RE = re.compile(r"^span\{(.*)\}$")


def parse_span(text: str, g: LieAlgebra) -> Subspace:
    """``span{h,e}`` with basis names, or vectors like ``span{(1,0,i),e}``."""
    m = _SPAN_RE.match("".join(text.split()))
    if m is None:
        raise ParseError(f"expected span{{...}}, got {text!r}", token=text)
    body = m.group(1)
    vecs = []
    for tok in re.findall(r"\([^()]*\)|[^,]+", body):
        if tok.startswith("("):
            parts = tok[1:-1].split(",")
            if len(parts) != g.dim:
                raise ParseError(f"vector {tok} needs {g.dim} coordinates", token=tok)
            vecs.append({i: v for i, p in enumerate(parts) if (v := _scalar(p, tok))})
        else:
            if tok not in g.basis_names:
                raise ParseError(f"unknown basis element {tok!r}", token=tok)
            vecs.append(g.unit(tok))
    return Subspace._from_sparse(g.dim, vecs)


def subspace_from_json(doc: dict, g: LieAlgebra) -> Subspace:
    span = _field(doc, "span", list, "subalgebra")
    vecs = []
    for k, row in enumerate(span):
        if not isinstance(row, list) or len(row) != g.dim:
            raise ParseError(f"span[{k}] must have {g.dim} entries", token=f"span[{k}]")
        vecs.append({i: v for i, x in enumerate(row) if (v := _scalar(x, f"span[{k}][{i}]"))})
    return Subspace._from_sparse(g.dim, vecs)


def subalgebra_from_json(doc: dict, g: LieAlgebra, name: str = "sub") -> Subalgebra:
    return Subalgebra(g, subspace_from_json(doc, g), name=doc.get("name", name))


def representation_from_json(doc: dict, g: LieAlgebra, name: str = "file") -> Representation:
    m = _field(doc, "dim_M", int, "representation")
    action = _field(doc, "action", dict, "representation")
    mats = []
    for label in g.basis_names:
        if label in action:
            mats.append(_matrix_rows(action[label], m, m, f"action.{label}"))
        else:
            mats.append(Matrix.zero(m, m))
    extra = set(action) - set(g.basis_names)
    if extra:
        raise ParseError(f"action given for unknown basis element {sorted(extra)[0]!r}", token=sorted(extra)[0])
    return Representation(g, mats, name=doc.get("name", name))


def resolve_module(spec: str, g: LieAlgebra, v: Subalgebra | None = None) -> Representation:
    """Built-in modules by name, or a representation file.

    ``trivial``, ``adjoint``, ``quotient:g/v`` (a v-module),
    ``dual:<spec>`` and ``forms:p:<spec>`` (C^p(g/v; <spec>) as a v-module).
    """
    s = spec.strip()
    if s == "trivial":
        return trivial_module(g)
    if s == "adjoint":
        return adjoint_module(g)
    if s == "quotient:g/v":
        if v is None:
            raise ParseError("quotient:g/v needs a subalgebra (--sub, --borel or --parabolic)", token=s)
        return quotient_module(g, v)
    if s.startswith("dual:"):
        return dual_module(resolve_module(s[5:], g, v))
    if s.startswith("forms:"):
        parts = s.split(":", 2)
        if len(parts) != 3 or not parts[1].isdigit():
            raise ParseError(f"expected forms:<p>:<module>, got {s!r}", token=s)
        if v is None:
            raise ParseError("forms:p:<module> needs a subalgebra", token=s)
        inner = resolve_module(parts[2], g, v)
        if inner.algebra is g:
            inner = restrict(inner, v)
        return forms_module(quotient_module(g, v), int(parts[1]), inner)
    path = Path(s)
    if path.suffix == ".json" or path.exists():
        return representation_from_json(load_json(path), g, name=path.stem)
    raise ParseError(f"unknown module {spec!r}", token=spec)


def matrix_to_json(m: Matrix) -> list[list[str]]:
    return [[format_scalar(x) for x in row] for row in m.to_rows()]


def provenance(**fields) -> dict:
    out = {"package": "liecoh", "version": __version__}
    out.update({k: v for k, v in fields.items() if v is not None})
    return out


def dumps(doc: Any) -> str:
    """Canonical JSON: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
