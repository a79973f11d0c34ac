import json
import subprocess
import sys
from pathlib import Path

import pytest

from oracle import bigraded_oracle

HERE = Path(__file__).parent
DATA = HERE / "data"
GOLDEN = HERE / "golden"

GOLDEN_RUNS = {
    "check_A1.json": ["check", "--preset", "A1"],
    "cohomology_A1_borel.json": ["cohomology", "--preset", "A1", "--borel", "--p-max", "1", "--q-max", "1"],
    "cohomology_A2.json": ["cohomology", "--preset", "A2"],
    "relative_A1_borel.json": ["relative", "--preset", "A1", "--borel"],
    "spectral_A1_borel.json": ["spectral", "--preset", "A1", "--borel"],
    "theorem_A1_borel.json": ["theorem", "--preset", "A1", "--borel"],
    "theorem_A2_parabolic1.json": ["theorem", "--preset", "A2", "--parabolic", "1"],
}


@pytest.mark.parametrize("name", sorted(GOLDEN_RUNS))
def test_golden(name, run):
    code, out, _ = run(*GOLDEN_RUNS[name])
    assert code == 0
    assert out == (GOLDEN / name).read_text()


def test_golden_table_agrees_with_oracle(a1):
    doc = json.loads((GOLDEN / "cohomology_A1_borel.json").read_text())
    want = bigraded_oracle(a1, [0, 1], 1, 1)
    assert doc["dims"] == {f"({p},{q})": d for (p, q), d in want.items()}
    assert want == {(0, 0): 1, (0, 1): 1, (1, 0): 0, (1, 1): 1}


SCHEMA_RUNS = [
    (["check", "--preset", "A2"], "check.json"),
    (["classify", "--preset", "A2", "--borel"], "classify.json"),
    (["cohomology", "--preset", "A1"], "cohomology.json"),
    (["cohomology", "--preset", "A1", "--borel", "--module", "adjoint"], "cohomology.json"),
    (["relative", "--preset", "A1", "--sub", "span{h}"], "relative.json"),
    (["spectral", "--preset", "A1", "--borel", "--p", "1"], "spectral.json"),
    (["theorem", "--preset", "A1", "--full"], "theorem1.json"),
    (["theorem", "--preset", "A1", "--borel", "--report"], "report.json"),
    (["proptest", "--seed", "3", "--cases", "5"], "proptest.json"),
]


@pytest.mark.parametrize("argv, schema", SCHEMA_RUNS, ids=[" ".join(a[:2]) + f"-{i}" for i, (a, _) in enumerate(SCHEMA_RUNS)])
def test_output_validates(argv, schema, run, validate):
    code, out, _ = run(*argv)
    assert code == 0
    validate(json.loads(out), schema)


def test_check_file_ok(run):
    code, out, _ = run("check", "--algebra", str(DATA / "sl2.json"))
    assert code == 0 and json.loads(out)["pass"] is True


def test_sign_flip_fails_jacobi_with_witness(run):
    code, out, _ = run("check", "--algebra", str(DATA / "sl2_flipped.json"))
    assert code == 1
    jac = json.loads(out)["checks"]["jacobi"]
    assert jac["pass"] is False and jac["witness"] == [0, 1, 2]


def test_malformed_scalar_is_a_parse_error(run):
    code, out, err = run("check", "--algebra", str(DATA / "sl2_malformed.json"))
    assert code == 2 and out == ""
    assert "1//2" in err


def test_float_literal_refused(run, tmp_path):
    p = tmp_path / "f.json"
    p.write_text('{"basis": ["x"], "brackets": [], "dim": 1.0}')
    code, _, err = run("check", "--algebra", str(p))
    assert code == 2 and "1.0" in err


def test_invalid_json_reports_position(run, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"basis": ["x"],\n  "brackets": [}')
    code, _, err = run("check", "--algebra", str(p))
    assert code == 2 and "line 2" in err


def test_cap_refusal_names_cap(run):
    code, _, err = run("cohomology", "--preset", "G2")
    assert code == 2 and "12" in err


def test_env_cap(run, monkeypatch):
    monkeypatch.setenv("LIE_COH_MAX_DIM", "5")
    code, _, err = run("cohomology", "--preset", "A2")
    assert code == 2 and "5" in err


def test_non_elliptic_refused_with_classification(run):
    code, _, err = run("theorem", "--preset", "A1", "--sub", "span{e}")
    assert code == 2
    assert "not elliptic" in err and '"dim_v_plus_vbar": 2' in err


def test_q_beyond_dim_v_gives_zero_rows(run):
    code, out, _ = run("cohomology", "--preset", "A1", "--borel", "--q-max", "4", "--p-max", "1")
    dims = json.loads(out)["dims"]
    assert code == 0 and all(dims[f"({p},{q})"] == 0 for p in range(2) for q in (3, 4))


def test_full_subalgebra_is_de_rham_column(run):
    code, out, _ = run("cohomology", "--preset", "A1", "--full", "--p-max", "0")
    dims = json.loads(out)["dims"]
    assert [dims[f"(0,{q})"] for q in range(4)] == [1, 0, 0, 1]


def test_abelian_spectral_stable_at_zero(run):
    code, out, _ = run("spectral", "--algebra", str(DATA / "abelian3.json"), "--sub", "span{x}")
    assert code == 0 and json.loads(out)["stable_at"] == 0


def test_module_file(run):
    code, out, _ = run("cohomology", "--algebra", str(DATA / "sl2.json"), "--module", str(DATA / "sl2_defining.json"))
    assert code == 0 and json.loads(out)["dims"] == [0, 0, 0, 0]


def test_dump_matrices(run):
    code, out, _ = run("cohomology", "--preset", "A1", "--dump-matrices")
    doc = json.loads(out)
    assert code == 0
    assert len(doc["differentials"]) == 3
    assert doc["differentials"][0] == [["0"], ["0"], ["0"]]


def test_text_and_json_agree(run):
    _, out, _ = run("cohomology", "--preset", "A2", "--format", "both")
    split = out.index("\n}\n") + 3
    doc = json.loads(out[:split])
    rows = [line.split() for line in out[split:].splitlines()[2:] if line.strip()]
    assert [int(r[1]) for r in rows] == doc["dims"]
    assert [int(r[2]) for r in rows] == doc["complex_dims"]


def test_output_file(run, tmp_path):
    target = tmp_path / "out.json"
    code, out, _ = run("cohomology", "--preset", "A1", "--output", str(target))
    assert code == 0 and json.loads(target.read_text())["dims"] == [1, 0, 0, 1]


def test_proptest_exit_zero(run):
    code, out, _ = run("proptest", "--seed", "11", "--cases", "10")
    assert code == 0 and json.loads(out)["pass"] is True


def test_usage_error_is_exit_two():
    proc = subprocess.run([sys.executable, "-m", "liecoh.cli", "cohomology"], capture_output=True, text=True)
    assert proc.returncode == 2


def test_console_script_deterministic(tmp_path):
    argv = [sys.executable, "-m", "liecoh.cli", "theorem", "--preset", "A2", "--borel"]
    a = subprocess.run(argv, capture_output=True).stdout
    b = subprocess.run(argv, capture_output=True).stdout
    assert a == b and a.endswith(b"\n")
