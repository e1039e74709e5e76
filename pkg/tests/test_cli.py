import json

import pytest

from voronoifan.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_tai_json(capsys):
    code, out, _ = run(capsys, "tai", "--m", "12", "--json")
    assert code == 0 and out == '{"m":12,"min":"1","minimizer":[1,7]}\n'


def test_tai_convention(capsys):
    code, out, _ = run(capsys, "tai", "--m", "8", "--convention", "zero-as-zero", "--json")
    assert json.loads(out)["min"] == "5/4"


def test_tai_scan(capsys):
    code, out, _ = run(capsys, "tai", "scan", "--max", "30", "--json")
    cases = {c["m"]: c for c in json.loads(out)["cases"]}
    assert code == 0 and cases[12]["relation"] == "=" and cases[14]["bound"] == "3/4"


def test_nef(capsys):
    code, out, _ = run(capsys, "nef", "--a", "12", "--b", "1", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["nef"] is True and doc["ample"] is False
    code, out, _ = run(capsys, "nef", "--a", "12", "--b", "1")
    assert "nef=true" in out and "ample=false" in out


def test_canonical(capsys):
    _, out, _ = run(capsys, "canonical", "--g", "12", "--json")
    assert json.loads(out)["ample"] is True


def test_enumerate_and_catalog(capsys, tmp_path):
    path = tmp_path / "g2.json"
    code, out, _ = run(capsys, "perfect", "enumerate", "--g", "2", "--out", str(path), "--json")
    doc = json.loads(out)
    assert code == 0 and doc["count"] == 1 and doc["classes"][0]["kissing"] == 6
    assert run(capsys, "catalog", "verify", str(path))[0] == 0
    code, out, _ = run(capsys, "perfect", "neighbors", "2.1", "--catalog", str(path), "--json")
    assert [l["target"] for l in json.loads(out)["neighbors"]] == ["2.1"] * 3


def test_catalog_verify_failure(capsys, tmp_path):
    path = tmp_path / "g2.json"
    run(capsys, "perfect", "enumerate", "--g", "2", "--out", str(path))
    doc = json.loads(path.read_text())
    doc["classes"][0]["kissing"] = 8
    path.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "catalog", "verify", str(path))
    assert code == 1 and "FAILED" in out


def test_json_is_stable(capsys):
    outs = {run(capsys, "perfect", "enumerate", "--g", "3", "--jobs", str(j), "--json")[1]
            for j in (1, 2)}
    assert len(outs) == 1


def test_minvec_and_check(capsys):
    _, out, _ = run(capsys, "minvec", "2,1;1,2", "--json")
    assert json.loads(out) == {"minimum": "2", "kissing": 6, "vectors": [[0, 1], [1, -1], [1, 0]]}
    _, out, _ = run(capsys, "perfect", "check", "1,0;0,1", "--json")
    assert json.loads(out)["perfect"] is False


def test_fan(capsys):
    code, out, _ = run(capsys, "fan", "locate", "2,1;1,2", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["verified"] and doc["form"] == [["2", "-1"], ["-1", "2"]]
    _, out, _ = run(capsys, "fan", "height", "1,0;0,1", "--json")
    assert json.loads(out) == {"height": "2"}
    _, out, _ = run(capsys, "fan", "extend", "2,1;1,2")
    assert out.strip() == "2,1,0;1,2,0;0,0,2"


def test_toric(capsys):
    _, out, _ = run(capsys, "toric", "classify", "4.1", "--json")
    assert json.loads(out) == {"cone": "4.1", "class": "terminal"}
    _, out, _ = run(capsys, "toric", "classify", "2,1;1,2")
    assert "smooth" in out


@pytest.mark.parametrize("argv", [
    ["bogus"],
    ["minvec", "2,x"],
    ["fan", "locate", "1,2;2,1"],
    ["fan", "locate", "1/2,0;0,1"],
    ["tai"],
    ["tai", "--m", "2"],
    ["toric", "classify", "9.9"],
    ["toric", "classify", "1,0;0,1"],
    ["nef", "--a", "x", "--b", "1"],
    ["catalog", "verify", "/nonexistent/file.json"],
    ["perfect", "enumerate", "--g", "9"],
])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_module_entry_point():
    import subprocess
    import sys
    res = subprocess.run([sys.executable, "-m", "voronoifan", "tai", "--m", "12", "--json"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["min"] == "1"
