import json
import subprocess
import sys

import jsonschema
import pytest

from voacheck.checks import REGISTRY, RunConfig, exit_code, resolve, run, UnknownCheck
from voacheck.cli import REPORT_SCHEMA, main, render_json
from voacheck.golden import GOLDEN_ENV, dump_golden, load_golden
from voacheck.report import CheckReport

FAST = "j-ladder,x0-gram,p-roots,theta-identity"


def test_registry_names():
    want = {"j-ladder", "app1", "x0-gram", "lemma-jj", "p-roots", "e-relations", "rearrangements", "app2",
            "char-m1plus", "theta-identity", "eta-s-law", "s-defect-demo", "fusion-eaa1", "fusion-ee7",
            "fusion-nm", "borcherds-props", "skew-props", "form-props"}
    assert want <= set(REGISTRY)
    assert resolve(["all"]) == list(REGISTRY)
    with pytest.raises(UnknownCheck):
        resolve(["nope"])


def test_unknown_check_exit_2(capsys):
    assert main(["verify", "--check", "nope"]) == 2
    assert "unknown check id" in capsys.readouterr().err


def test_json_schema_and_determinism(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["verify", "--check", FAST, "--cutoff", "8", "--format", "json", "--out", str(a), "--jobs", "1"]) == 0
    assert main(["verify", "--check", FAST, "--cutoff", "8", "--format", "json", "--out", str(b), "--jobs", "1"]) == 0
    da, db = json.loads(a.read_text()), json.loads(b.read_text())
    jsonschema.validate(da, REPORT_SCHEMA)
    for d in (da, db):
        for r in d["reports"]:
            r.pop("runtime_ms")
    assert da == db
    ids = [r["check_id"] for r in da["reports"]]
    assert ids == sorted(ids)
    assert da["config"]["cutoff"] == 8


def test_byte_identical_without_runtime():
    rc = RunConfig(cutoff=8, checks=("j-ladder", "p-roots"))
    one = render_json(rc, run(rc, workers=1), include_runtime=False)
    two = render_json(rc, run(rc, workers=1), include_runtime=False)
    assert one == two


def test_text_table(capsys):
    assert main(["verify", "--check", "p-roots", "--format", "text"]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0].split() == ["check_id", "status", "paper_ref"]
    assert "p-roots" in out and "pass" in out


def test_unwritable_out():
    assert main(["verify", "--check", "p-roots", "--out", "/nonexistent/dir/x.json"]) == 3


def test_exit_codes():
    ok, inc, bad = CheckReport("a", ""), CheckReport("b", ""), CheckReport("c", "")
    inc.mark_inconclusive("small")
    bad.require("x", False)
    assert exit_code([ok, inc]) == 0
    assert exit_code([ok, inc], strict=True) == 1
    assert exit_code([ok, bad]) == 1


def test_inconclusive_and_strict(capsys):
    assert main(["verify", "--check", "j-ladder", "--cutoff", "6"]) == 0
    assert main(["verify", "--check", "j-ladder", "--cutoff", "6", "--strict"]) == 1


def test_pin_refuses_overwrite(tmp_path, monkeypatch, capsys):
    path = tmp_path / "golden.json"
    monkeypatch.setenv(GOLDEN_ENV, str(path))
    assert main(["verify", "--check", "j-ladder", "--cutoff", "8", "--pin"]) == 0
    assert load_golden(path)["lambda"] == -60
    before = path.read_text()
    assert main(["verify", "--check", "j-ladder", "--cutoff", "8", "--pin"]) == 1
    assert path.read_text() == before
    assert main(["verify", "--check", "j-ladder", "--cutoff", "8", "--pin", "--force"]) == 0


def test_golden_mismatch_fails(tmp_path, monkeypatch):
    path = tmp_path / "golden.json"
    dump_golden({"lambda": -61}, path)
    monkeypatch.setenv(GOLDEN_ENV, str(path))
    assert main(["verify", "--check", "j-ladder", "--cutoff", "8"]) == 1


def test_missing_golden_is_inconclusive(tmp_path, monkeypatch):
    monkeypatch.setenv(GOLDEN_ENV, str(tmp_path / "absent.json"))
    (rep,) = run(RunConfig(cutoff=8, checks=("j-ladder",)), workers=1)
    assert rep.status == "inconclusive"


def test_shipped_golden():
    g = load_golden()
    assert g == {"lambda": -60, "gram_L2L2_vacuum": pytest.approx(4.5), "J5J_coefficient": 432}


def test_char_command(capsys):
    assert main(["char", "--module", "m1plus", "--order", "20"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 21
    assert lines[5].split()[:2] == ["4", "3"]


def test_char_json(capsys):
    assert main(["char", "--module", "m1", "--order", "6", "--format", "json"]) == 0
    d = json.loads(capsys.readouterr().out)
    assert d["coefficients"]["1/eta"] == ["1", "1", "2", "3", "5", "7"]


def test_probe_command(capsys):
    assert main(["probe", "--series", "eta", "--t", "2", "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out)["defect"] < 1e-9


def test_parallel_pool_matches_serial():
    rc = RunConfig(cutoff=8, checks=("p-roots", "theta-identity", "x0-gram"))
    a = [r.to_dict(False) for r in run(rc, workers=2)]
    b = [r.to_dict(False) for r in run(rc, workers=1)]
    assert a == b


def test_console_script():
    out = subprocess.run([sys.executable, "-m", "voacheck.cli", "verify", "--check", "p-roots"],
                         capture_output=True, text=True)
    assert out.returncode == 0
    assert "p-roots" in out.stdout
