import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from toricstack.catalog import CATALOG
from toricstack.cli import main, parse_face
from toricstack.errors import InputError
from toricstack.io import dumps, loads

CATALOG_DIR = Path(__file__).resolve().parent.parent / "catalog"


def run(capsys, *argv, environ=None):
    code = main(list(argv), environ=environ or {})
    out, err = capsys.readouterr()
    return code, out, err


def doc(name):
    return str(CATALOG_DIR / f"{name}.json")


# -- reports -------------------------------------------------------------------------------------

def test_mfr_of_a1(capsys):
    code, out, _ = run(capsys, "monoid", "mfr", doc("a1"), "--format", "json")
    report = json.loads(out)
    assert code == 0
    assert report["mfr"]["matrix"] == [[0, 1], [2, -1]]
    assert report["mfr"]["images"] == [[0, 2], [1, 1], [2, 0]]
    assert report["mfr"]["cokernel"]["group"] == "Z/2"


def test_mfr_of_square_cone(capsys):
    code, out, _ = run(capsys, "--format", "json", "monoid", "mfr", doc("square-cone"))
    report = json.loads(out)
    assert code == 0 and report["defining_embedding"] is True
    assert len(report["mfr"]["matrix"]) == 4


def test_qmfr_verdicts(capsys):
    _, out, _ = run(capsys, "monoid", "qmfr", doc("square-drop-first"), "--format", "json")
    assert json.loads(out)["verdict"] == "qmfr"
    _, out, _ = run(capsys, "monoid", "qmfr", doc("double"), "--format", "json")
    assert json.loads(out)["verdict"] == "not qmfr"


def test_quotient_uses_one_based_rays(capsys):
    code, out, _ = run(capsys, "monoid", "quotient", doc("a1"), "--face", "1", "--format", "json")
    report = json.loads(out)
    assert code == 0 and report["coherent"] is True
    code, out, _ = run(capsys, "monoid", "quotient", doc("a1"), "--face", "", "--format", "json")
    assert code == 0 and json.loads(out)["face_coordinates"] == []


def test_analyze_mu2_scalar(capsys):
    code, out, _ = run(capsys, "inv", "analyze", doc("mu2-scalar"))
    assert code == 0
    assert "verdict: NotPolynomial(NotPseudoReflectionGenerated)" in out.splitlines()


def test_oracle(capsys):
    code, out, _ = run(capsys, "inv", "oracle", doc("torus-pair"), "--format", "json")
    assert code == 0 and json.loads(out)["hilbert_basis"] == [[1, 1]]


def test_p2_presentation(capsys):
    code, out, _ = run(capsys, "fan", "presentation", doc("p2"), "--format", "json")
    report = json.loads(out)
    assert code == 0
    assert report["group"] == "Z" and report["excluded"] == [[1, 2, 3]]
    assert [w[0] for w in report["weights"]] == [1, 1, 1]


def test_chart_and_datum(capsys):
    code, out, _ = run(capsys, "fan", "chart", doc("a1-fan"), "--cone", "1", "--format", "json")
    assert code == 0 and json.loads(out)["invariant_check"] is True
    code, out, _ = run(capsys, "fan", "datum", doc("a1-stacky"), "--cone", "1", "--format", "json")
    report = json.loads(out)
    assert code == 0 and report["b"] == [2, 1] and report["matches_chart"] is True


def test_validate(capsys):
    code, out, _ = run(capsys, "fan", "validate", doc("p2-marked"))
    assert code == 0 and out


# -- exit codes ------------------------------------------------------------------------------------

def test_malformed_input_exits_1(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(dumps({"format_version": 1, "kind": "monoid", "payload": {"generators": [[1, "a"]]}}))
    code, out, err = run(capsys, "monoid", "mfr", str(bad))
    assert code == 1 and out == "" and "payload.generators[0]" in err


def test_wrong_kind_exits_1(capsys):
    code, _, err = run(capsys, "monoid", "mfr", doc("p2"))
    assert code == 1 and "kind" in err


def test_usage_errors_exit_1(capsys):
    assert run(capsys, "monoid")[0] == 1
    assert run(capsys, "fan", "chart", doc("p2"), "--cone", "0")[0] == 1
    assert run(capsys, "fan", "chart", doc("p2"), "--cone", "9")[0] == 1
    assert run(capsys, "monoid", "quotient", doc("a1"), "--face", "1,7")[0] == 1
    assert run(capsys, "monoid", "quotient", doc("a1"), "--face", "x")[0] == 1


def test_non_face_exits_1(capsys):
    code, _, err = run(capsys, "monoid", "quotient", doc("rhombus-cone"), "--face", "1,2,3")
    assert code == 1 and "face" in err


def test_resource_limit_exits_2(capsys):
    code, _, err = run(capsys, "monoid", "mfr", doc("a1"), "--max-hilbert", "2")
    assert code == 2 and "resource limit" in err


def test_environment_bound(capsys):
    assert run(capsys, "monoid", "mfr", doc("a1"), environ={"TSK_MAX_HILBERT": "2"})[0] == 2
    # the flag wins over the environment
    assert run(capsys, "monoid", "mfr", doc("a1"), "--max-hilbert", "50",
               environ={"TSK_MAX_HILBERT": "2"})[0] == 0
    code, _, err = run(capsys, "monoid", "mfr", doc("a1"), environ={"TSK_MAX_HILBERT": "zz"})
    assert code == 1 and "TSK_MAX_HILBERT" in err
    assert run(capsys, "fan", "presentation", doc("square-cone-fan"), environ={"TSK_MAX_FACES": "3"})[0] == 2


def test_global_flags_before_or_after(capsys):
    a = run(capsys, "--format", "json", "fan", "presentation", doc("f1"))
    b = run(capsys, "fan", "presentation", doc("f1"), "--format", "json")
    assert a == b and a[0] == 0


def test_parse_face():
    assert parse_face("") == [] and parse_face("1,3") == [0, 2]
    with pytest.raises(InputError):
        parse_face("0")


def test_module_entry_point_and_exit_code(tmp_path):
    env = dict(os.environ, PYTHONHASHSEED="random")
    ok = subprocess.run([sys.executable, "-m", "toricstack", "inv", "analyze", doc("torus-four")],
                        capture_output=True, text=True, env=env)
    assert ok.returncode == 0 and "NoMSOP" in ok.stdout
    bad = subprocess.run([sys.executable, "-m", "toricstack", "inv", "analyze", str(tmp_path / "x.json")],
                         capture_output=True, text=True, env=env)
    assert bad.returncode == 1 and bad.stderr.startswith("error:")


# -- determinism ----------------------------------------------------------------------------------

def test_reports_are_stable_across_jobs(capsys):
    for name in ("f1", "p2-marked", "square-cone-fan", "lafforgue-3"):
        one = run(capsys, "fan", "presentation", doc(name), "--jobs", "1")
        four = run(capsys, "fan", "presentation", doc(name), "--jobs", "4")
        assert one == four


def test_catalog_inputs_round_trip():
    for name, document in CATALOG.items():
        assert loads((CATALOG_DIR / f"{name}.json").read_text()) == document
