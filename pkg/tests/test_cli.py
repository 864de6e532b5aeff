import json
from pathlib import Path

import pytest

from rrlab.cli import main
from rrlab.instances import (InstanceError, InstanceSpec, golden_instances, load_instance,
                             spec_to_document)
from rrlab.report import Report, batch_generate, mathematical_fields, run_instance
from rrlab.verdict import FAILED, Verdict

ROOT = Path(__file__).resolve().parent.parent


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text, encoding="utf-8")
    return str(p)


GOOD = """
name = "small"
seed = 3
[ring]
vars = ["x", "y"]
field = "Fp:32003"
[ideal]
gens = ["x^3", "x*y", "y^3"]
"""


def test_run_clean_instance(tmp_path, capsys):
    path = write(tmp_path, "small.toml", GOOD)
    out = tmp_path / "r.json"
    assert main(["run", path, "--json", str(out)]) == 0
    rep = Report.from_json(out.read_text())
    assert rep.status == "clean"
    assert rep.hilbert["e"] == [6, 1, 0]
    assert "instance small: clean" in capsys.readouterr().out


def test_shipped_instance_files_parse():
    for path in sorted((ROOT / "instances").glob("*.toml")):
        spec = load_instance(path)
        assert spec.name == path.stem
        assert spec == golden_instances()[spec.name]


def test_json_instance_and_document_round_trip(tmp_path):
    spec = golden_instances()["parameter"]
    path = write(tmp_path, "p.json", json.dumps(spec_to_document(spec)))
    assert load_instance(path) == spec


@pytest.mark.parametrize("text,needle", [
    (GOOD.replace('"y^3"', '"w^3"'), "ideal.gens[2]: unknown variable 'w' at position 0"),
    (GOOD.replace('vars = ["x", "y"]', 'vars = ["x", "y"'), "line"),
    (GOOD.replace('field = "Fp:32003"', 'field = "Fp:12"'), "ring.field"),
    (GOOD + '\n[limits]\nskip = ["nothing"]\n', "limits.skip"),
    (GOOD.replace("[ideal]", "[idea]"), "unknown top-level keys"),
])
def test_usage_errors_exit_2(tmp_path, capsys, text, needle):
    path = write(tmp_path, "bad.toml", text)
    assert main(["run", path]) == 2
    assert needle in capsys.readouterr().err


def test_missing_file_and_bad_arguments(capsys):
    assert main(["run", "/nonexistent/x.toml"]) == 2
    assert main(["frobnicate"]) == 2
    assert main(["batch", "colour=3"]) == 2
    assert main(["verify-paper", "--only", "zzz"]) == 2


def test_stage_failure_is_incomplete(tmp_path):
    text = GOOD + '\n[pin]\nreduction = ["x^3"]\n'
    path = write(tmp_path, "inc.toml", text)
    assert main(["run", path]) == 1


def test_exit_code_ladder():
    rep = Report({"name": "t"})
    assert rep.exit_code == 0
    rep.verdicts.append(Verdict("v", 2, "<=", 1).hypothesis("h", "assumed"))
    assert rep.exit_code == 5
    rep.meta["failures"] = {"depth": {"kind": "error", "type": "E", "message": ""}}
    assert rep.exit_code == 1
    rep.verdicts.append(Verdict("w", 2, "<=", 1))
    assert rep.exit_code == 3
    rep.meta["failures"]["hilbert"] = {"kind": "internal", "type": "E", "message": ""}
    assert rep.exit_code == 4
    rep2 = Report({"name": "t"}, verdicts=[Verdict("w", 2, "<=", 1).hypothesis("h", FAILED)])
    assert rep2.exit_code == 0


def test_subcommands_restrict_stages(tmp_path):
    path = write(tmp_path, "small.toml", GOOD)
    out = tmp_path / "h.json"
    assert main(["hilbert", path, "--json", str(out)]) == 0
    data = json.loads(out.read_text())
    assert set(data["meta"]["timings"]) == {"hilbert"}
    assert main(["reduce", path, "--json", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["reduction"]["r"] == 1 and data["reduction"]["depth"]["value"] == 2


def test_batch_is_reproducible(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    args = ["batch", "variables=2,max_degree=4,count=5", "--seed", "9"]
    assert main(args + ["--json", str(a)]) == 0
    assert main(args + ["--json", str(b)]) == 0
    da, db = json.loads(a.read_text()), json.loads(b.read_text())
    assert [mathematical_fields(r) for r in da["reports"]] == \
        [mathematical_fields(r) for r in db["reports"]]
    assert len(da["reports"]) == 5


def test_batch_generation_is_seeded():
    one = batch_generate({"variables": 3, "count": 4}, 1)
    two = batch_generate({"variables": 3, "count": 4}, 1)
    three = batch_generate({"variables": 3, "count": 4}, 2)
    assert [s.to_dict() for s in one] == [s.to_dict() for s in two]
    assert [s.gens for s in one] != [s.gens for s in three]
    with pytest.raises(ValueError):
        batch_generate({"variables": 7}, 0)


def test_report_json_round_trip():
    rep = run_instance(golden_instances()["parameter"])
    again = Report.from_json(rep.to_json())
    assert again.to_dict() == rep.to_dict()
    assert again.status == "clean"


def test_verify_paper_on_the_parameter_ideal(capsys):
    assert main(["verify-paper", "--only", "parameter"]) == 0
    out = capsys.readouterr().out
    assert "parameter" in out and " NO" not in out


def test_instance_spec_validation():
    with pytest.raises(InstanceError):
        InstanceSpec.from_dict({"name": "x", "vars": ["x"], "gens": []})
    with pytest.raises(InstanceError):
        InstanceSpec.from_dict({"name": "x", "vars": ["x"], "gens": ["x"], "colour": 1})
