import json
import subprocess
import sys

import pytest

from cone22.cli import main, run, to_json, to_text, validate_file
from cone22.scenario import ScenarioError, load, schema_diagnostics, to_number
from cone22.weyl import WeylTensor, reconstruct_full

from conftest import SCENARIO_DIR

SCENARIOS = sorted(SCENARIO_DIR.glob("*.json"))


def write(tmp_path, data, name="s.json"):
    p = tmp_path / name
    p.write_text(json.dumps(data), encoding="utf-8")
    return p


def scenario(**kw):
    data = {"schema": "cone22/1"}
    data.update(kw)
    return data


def analyze_json(path, *extra):
    out = path.parent / (path.stem + ".out.json")
    code = main(["analyze", str(path), "--format", "json", "-o", str(out), *extra])
    return code, json.loads(out.read_text(encoding="utf-8"))


def test_ten_bundled_scenarios():
    assert len(SCENARIOS) == 10


def test_flat_scenario(tmp_path):
    p = write(tmp_path, scenario(weyl={"a": [0] * 5, "b": [0] * 5}, tasks=["classify_structure"]))
    code, rep = analyze_json(p)
    assert code == 0
    assert rep["results"][0]["class"] == "flat"


def test_indefinite_scenario(tmp_path):
    p = write(tmp_path, scenario(hypersurface={"l22": 1, "l23": 0, "l33": -1},
                                 tasks=["hypersurface_classify"]))
    code, rep = analyze_json(p)
    res = rep["results"][0]
    assert code == 0
    assert res["classification"] == "indefinite_complex"
    assert res["singular_points"]["s1"] == {"re": 0.0, "im": 1.0}
    assert res["singular_points"]["s2"] == {"re": 0.0, "im": -1.0}


def test_canonical_scenario(tmp_path):
    p = write(tmp_path, scenario(weyl={"a": [1, 0, 0, 0, 0], "b": [1, 0, 0, 0, 0]},
                                 hypersurface={"l22": 1, "l23": 0, "l33": 1},
                                 tasks=["canonical_reduction"]))
    code, rep = analyze_json(p)
    assert code == 0
    assert rep["results"][0]["D"] == 64 and rep["results"][0]["feasible"] is True


def test_exact_mode_emits_rationals(tmp_path):
    p = write(tmp_path, scenario(weyl={"a": ["1/3", 0, 0, 0, 0], "b": [1, 0, 0, 0, 0]},
                                 hypersurface={"l22": "1/2", "l23": 0, "l33": 1, "h3": [1, 0, 0, 0]},
                                 tasks=["canonical_reduction"]))
    code, rep = analyze_json(p, "--exact")
    assert code == 0 and rep["arithmetic"] == "exact"
    # D = 4 (3/2 + 1/3)(1/2 + 1) = 11
    assert rep["results"][0]["D"] == "11"


def test_precondition_failure_exit_3(tmp_path, capsys):
    p = write(tmp_path, scenario(weyl={"a": [0] * 5, "b": [0] * 5},
                                 hypersurface={"l22": 1, "l23": 0, "l33": 1},
                                 tasks=["classify_structure", "umbilical_check", "cone_check"]))
    code, rep = analyze_json(p)
    assert code == 3
    assert [r["status"] for r in rep["results"]] == ["ok", "precondition_failed"]


def test_parse_error_exit_2(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json", encoding="utf-8")
    assert main(["analyze", str(p)]) == 2
    with pytest.raises(ScenarioError):
        load(p)


def test_validate_clean(tmp_path):
    p = write(tmp_path, scenario(weyl={"a": [1] * 5, "b": [0] * 5}, tasks=["principal_roots"]))
    assert validate_file(p) == ([], 0)
    assert main(["validate", str(p)]) == 0


def test_validate_full_weyl_violation(tmp_path):
    c = reconstruct_full(WeylTensor((0, 0, 1, 0, 0), (0,) * 5)).c.copy()
    c[0, 1, 1, 3] = c[1, 0, 3, 1] = 1
    c[1, 0, 1, 3] = c[0, 1, 3, 1] = -1
    c[1, 3, 0, 1] = c[3, 1, 1, 0] = 1
    c[3, 1, 0, 1] = c[1, 3, 1, 0] = -1
    p = write(tmp_path, scenario(weyl={"full": c.tolist()}, tasks=["validate_weyl"]))
    diags, code = validate_file(p)
    assert code == 3
    assert "weyl.full violates C1224 = 0" in diags


def test_validate_missing_input(tmp_path):
    p = write(tmp_path, scenario(tasks=["hypersurface_classify"]))
    diags, code = validate_file(p)
    assert code == 2
    assert any(d.startswith("missing input") for d in diags)


def test_schema_diagnostics():
    assert "unknown field: extra" in schema_diagnostics(scenario(tasks=["classify_structure"],
                                                                 weyl={"a": [0] * 5, "b": [0] * 5},
                                                                 extra=1))
    assert any("unknown task" in d for d in schema_diagnostics(scenario(tasks=["nope"])))
    assert schema_diagnostics([]) == ["top level must be a JSON object"]
    d = schema_diagnostics(scenario(tasks=["classify_structure"], weyl={"a": [0] * 4, "b": [0] * 5}))
    assert "weyl.a: expected a list of 5 numbers" in d


def test_to_number():
    from fractions import Fraction
    assert to_number("1/3", exact=True) == Fraction(1, 3)
    assert to_number(2, exact=False) == 2.0
    with pytest.raises(TypeError):
        to_number(True, exact=True)


@pytest.mark.parametrize("path", SCENARIOS, ids=lambda p: p.stem)
def test_bundled_scenario_runs(path):
    rep, code = run(load(path))
    assert code == 0
    assert all(r["status"] == "ok" for r in rep["results"])
    text = to_text(rep)
    for r in rep["results"]:
        assert f"[{r['task']}] ok" in text
    assert to_json(rep) == to_json(run(load(path))[0])


@pytest.mark.parametrize("path", SCENARIOS, ids=lambda p: p.stem)
def test_bundled_scenario_runs_exact(path):
    assert run(load(path), exact=True)[1] == 0


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cone22", "validate", str(SCENARIOS[0])],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "ok"
