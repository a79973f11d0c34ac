import json

import pytest

from liecoh.config import Config, default_max_dim, enforce_dim_cap
from liecoh.errors import CapExceeded, DimensionMismatch, ParseError, PreconditionError
from liecoh.scalar import Scalar
from liecoh.io import algebra_from_json, algebra_to_json, dumps, load_json, parse_span, resolve_module


def test_roundtrip(a2):
    doc = algebra_to_json(a2)
    back = algebra_from_json(json.loads(json.dumps(doc)))
    assert algebra_to_json(back) == doc


def test_parse_span(a1):
    assert parse_span("span{h, e}", a1).dim == 2
    (row,) = parse_span("span{(1,0,i)}", a1).rows
    assert row[0] == 1 and row[2] == Scalar(0, 1)
    with pytest.raises(ParseError):
        parse_span("span{q}", a1)
    with pytest.raises(ParseError):
        parse_span("h,e", a1)
    with pytest.raises(ParseError):
        parse_span("span{(1,0)}", a1)


def test_algebra_errors():
    with pytest.raises(ParseError, match="unknown basis"):
        algebra_from_json({"basis": ["x"], "brackets": [{"x": "x", "y": "z", "value": {}}]})
    with pytest.raises(DimensionMismatch):
        algebra_from_json({"basis": ["x"], "dim": 2})
    with pytest.raises(ParseError, match="twice"):
        algebra_from_json({"basis": ["x", "y"], "brackets": [{"x": "x", "y": "y", "value": {}}] * 2})


def test_load_json_missing(tmp_path):
    with pytest.raises(ParseError):
        load_json(tmp_path / "none.json")


def test_resolve_module(a1, a1_borel):
    assert resolve_module("adjoint", a1).dim_M == 3
    assert resolve_module("quotient:g/v", a1, a1_borel).dim_M == 1
    assert resolve_module("forms:1:trivial", a1, a1_borel).dim_M == 1
    assert resolve_module("dual:adjoint", a1).dim_M == 3
    with pytest.raises(ParseError):
        resolve_module("quotient:g/v", a1)
    with pytest.raises(ParseError):
        resolve_module("nonsense", a1)


def test_dumps_is_canonical():
    assert dumps({"b": 1, "a": [2]}) == '{\n  "a": [\n    2\n  ],\n  "b": 1\n}\n'


def test_config(monkeypatch):
    monkeypatch.delenv("LIE_COH_MAX_DIM", raising=False)
    assert default_max_dim() == 12
    monkeypatch.setenv("LIE_COH_MAX_DIM", "20")
    assert Config.from_env().max_dim == 20
    enforce_dim_cap(14)
    monkeypatch.setenv("LIE_COH_MAX_DIM", "zero")
    with pytest.raises(PreconditionError):
        default_max_dim()
    with pytest.raises(CapExceeded) as info:
        enforce_dim_cap(14, 12)
    assert info.value.cap == 12 and "12" in str(info.value)
    with pytest.raises(PreconditionError):
        Config(format="xml")
    with pytest.raises(PreconditionError):
        Config(max_dim=0)
