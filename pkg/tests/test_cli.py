import json
import subprocess
import sys

import pytest

from coxaut import cli, corpus
from coxaut.automorphism import EdgeLabel


@pytest.fixture
def files(tmp_path):
    def write(name, text=None):
        p = tmp_path / name
        p.write_text(text if text is not None else corpus.TEXT[name.removesuffix(".cox")])
        return str(p)

    return write


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_validate_ok(capsys, files):
    code, out, _ = run(capsys, "validate", files("path46.cox"))
    assert code == 0
    rep = json.loads(out)
    assert all(rep[k] for k in ("even", "large_type", "connected", "nvb"))


def test_out_on_star_fails_validation(capsys, files):
    code, _, err = run(capsys, "out", files("star.cox"))
    assert code == 1 and "nvb" in err


def test_odd_label_is_a_parse_error(capsys, files):
    code, _, err = run(capsys, "validate", files("odd.cox", corpus.ODD_TEXT))
    assert code == 1 and "odd label" in err


def test_missing_file(capsys, tmp_path):
    code, _, _ = run(capsys, "validate", tmp_path / "absent.cox")
    assert code == 1


def test_verify_share(capsys, files):
    code, out, _ = run(capsys, "verify", files("share.cox"))
    assert code == 0
    rep = json.loads(out)
    assert rep["failed"] == 0 and rep["checks"]["composition"]["passed"] == 30


def test_verify_free_product(capsys, files):
    code, out, _ = run(capsys, "verify", files("z2d4.cox"))
    assert code == 0 and json.loads(out)["checks"]["associativity"]["failed"] == 0


def test_budget_exhaustion(capsys, files):
    code, _, err = run(capsys, "--budget", "1", "verify", files("path44.cox"))
    assert code == 2 and "exceeded" in err


def test_mismatch_exit_code(capsys, files, monkeypatch):
    real = cli.compose_labelings

    def broken(a2, a, canonical=True):
        out = real(a2, a, canonical)
        return out.with_label(0, EdgeLabel(1, central=not out.labels[0].central))

    monkeypatch.setattr(cli, "compose_labelings", broken)
    code, out, err = run(capsys, "verify", files("share.cox"))
    assert code == 3 and "mismatch" in err
    assert json.loads(out)["checks"]["composition"]["failed"] > 0


def test_out_reports(capsys, files):
    code, out, _ = run(capsys, "out", files("share.cox"), "--assert-closed-forms")
    rep = json.loads(out)
    assert code == 0 and rep["order"] == 8 and rep["units_formula"]["value"] == 16
    code, out, _ = run(capsys, "out", files("path444.cox"), "--assert-closed-forms")
    rep = json.loads(out)
    assert code == 0 and rep["order"] == rep["path_formula"]["order"] == 32
    code, out, _ = run(capsys, "out", files("triangle_pendant.cox"))
    rep = json.loads(out)
    assert rep["finite"] is False and rep["witness"] == "a"
    code, out, _ = run(capsys, "out", files("z2z2z2.cox"))
    assert json.loads(out)["free_product"]["finite"] is False


def test_analyze_and_count(capsys, files):
    code, out, _ = run(capsys, "analyze", files("share.cox"))
    rep = json.loads(out)
    assert code == 0
    assert rep["units"] == [["a", "b", "c"], ["b", "c", "d"]]
    assert rep["unit_graph"]["edges"][0]["case"] == 1
    assert rep["tree"]["basepoint"] == ["a", "b", "c"]
    code, out, _ = run(capsys, "aut-count", files("triangle_pendant.cox"), "--bound", "2")
    rep = json.loads(out)
    assert rep["labelings"] == "infinite" and rep["enumerated"] == 10


def test_apply_compose_invert(capsys, files, tmp_path):
    d = files("path44.cox")
    aut = tmp_path / "a.json"
    aut.write_text(json.dumps({"base": "1", "edges": [{"edge": [["b"], ["a"]], "type": 6, "x": {"l": 1, "k": 3}}]}))
    code, out, _ = run(capsys, "apply", d, aut, "a c")
    assert code == 0 and json.loads(out)["image"] == "b a b c"
    code, out, _ = run(capsys, "compose", d, aut, aut)
    rep = json.loads(out)
    assert code == 0 and rep["canonical"] is True
    assert rep["images"]["a"] == "a"
    code, out, _ = run(capsys, "invert", d, aut)
    assert code == 0 and json.loads(out)["edges"][0]["x"] == {"k": 3, "l": 1}
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"edges": [{"edge": [["a"], ["b"]]}]}))
    code, _, _ = run(capsys, "apply", d, bad, "a")
    assert code == 1


def test_apply_with_diagram_permutation(capsys, files, tmp_path):
    aut = tmp_path / "p.json"
    aut.write_text(json.dumps({"base": "a", "edges": [], "perm": {"a": "a", "b": "c", "c": "b", "d": "d"}}))
    code, out, _ = run(capsys, "apply", files("share.cox"), aut, "b")
    assert code == 0 and json.loads(out)["image"] == "a c a"


def test_triples_on_the_command_line(capsys, files, tmp_path):
    d = files("z2d4.cox")
    t = tmp_path / "t.json"
    t.write_text(json.dumps({"w": "b", "u1": "a", "u2": "c"}))
    code, out, _ = run(capsys, "compose", d, t, t)
    assert code == 0 and set(json.loads(out)) == {"w", "u1", "u2"}
    code, out, _ = run(capsys, "invert", d, t)
    assert code == 0
    code, out, _ = run(capsys, "decompose", d)
    assert code == 0 and json.loads(out)["out_finite"]["finite"] is True


def test_output_is_deterministic(files):
    path = files("tripath.cox")
    cmd = [sys.executable, "-m", "coxaut", "verify", path]
    first = subprocess.run(cmd, capture_output=True)
    second = subprocess.run(cmd, capture_output=True)
    assert first.returncode == 0
    assert first.stdout == second.stdout


def test_text_format(capsys, files):
    code, out, _ = run(capsys, "--format", "text", "validate", files("triangle.cox"))
    assert code == 0 and "nvb: true" in out
