import json
import shutil
import subprocess

import pytest

from twforge.cli import main


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def report(out):
    return json.loads(out)


@pytest.fixture
def davies(tmp_path, capsys):
    path = tmp_path / "j.g6"
    code, _, _ = run(capsys, "gen", "davies", "--rho", 0, "--sigma", 1, "--theta", 4, "--out", path)
    assert code == 0
    return path


def test_gen_writes_graph_and_sidecar(davies):
    side = json.loads(open(str(davies) + ".json").read())
    assert side["generator"] == "davies" and len(side["hubs"]) == 4
    assert open(davies, "rb").read().strip() == b"Sh?GGC??G?_@????_?G?@aG`CP@CP?aG_"


def test_check_girth_and_feeble(davies, capsys):
    code, out, _ = run(capsys, "check", "girth", davies, "--min", 6)
    assert code == 0 and report(out)["certificate"]["girth"] == 6
    code, out, _ = run(capsys, "check", "girth", davies, "--min", 7)
    assert code == 1


def test_tw_prints_bare_value(tmp_path, capsys):
    path = tmp_path / "c6.txt"
    path.write_text("6\n0 1\n1 2\n2 3\n3 4\n4 5\n5 0\n")
    code, out, _ = run(capsys, "tw", "exact", path)
    assert code == 0 and out.strip() == "2"
    code, out, _ = run(capsys, "tw", "exact", path, "--json")
    assert report(out)["certificate"]["treewidth"] == 2


def test_clean_needs_budget(davies, capsys, monkeypatch):
    monkeypatch.delenv("TWFORGE_BUDGET", raising=False)
    code, _, err = run(capsys, "check", "clean", davies, "--t", 4)
    assert code == 3 and "budget" in err
    code, out, _ = run(capsys, "check", "clean", davies, "--t", 4, "--budget", 1)
    assert code == 2


def test_connectifier_closed_loop(davies, tmp_path, capsys):
    code, out, _ = run(capsys, "extract", "connectifier", davies, "--S", "0,5,10,15", "--eta", 3, "--budget", 100000)
    assert code == 0
    cert_path = tmp_path / "c.json"
    cert_path.write_text(out)
    code, out, _ = run(capsys, "check", "connectifier", davies, "--cert", cert_path, "--S", "0,5,10,15")
    assert code == 0, out


def test_connectification_closed_loop(tmp_path, capsys):
    g = tmp_path / "x.g6"
    assert run(capsys, "gen", "connectification", "--theta", 3, "--delta", 2, "--lam", 1, "--kind", 4, "--out", g)[0] == 0
    code, out, _ = run(capsys, "check", "connectification", g, "--cert", str(g) + ".json")
    assert code == 0, out


def test_digest_mismatch_is_input_error(davies, tmp_path, capsys):
    other = tmp_path / "w.g6"
    run(capsys, "gen", "wall", "--t", 3, "--out", other)
    code, out, _ = run(capsys, "extract", "hole", other, "--S", "0,5", "--lam", 1, "--budget", 100000)
    assert code == 0
    cert_path = tmp_path / "h.json"
    cert_path.write_text(out)
    code, _, err = run(capsys, "check", "hole", davies, "--cert", cert_path)
    assert code == 3 and "different graph" in err


def test_bad_input(tmp_path, capsys):
    code, _, _ = run(capsys, "tw", "exact", tmp_path / "missing.g6")
    assert code == 3
    bad = tmp_path / "bad.txt"
    bad.write_text("p edge 3 5\ne 1 2\n")
    assert run(capsys, "tw", "exact", bad)[0] == 3
    assert run(capsys, "tw", "exact", bad, "--frobnicate")[0] == 3


def test_report_fields(davies, capsys):
    code, out, _ = run(capsys, "tw", "lower", davies, "--json")
    rep = report(out)
    for key in ("schema", "command", "input_digest", "graph", "result", "wall_time"):
        assert key in rep
    assert rep["graph"]["n"] == 20


@pytest.mark.skipif(shutil.which("twforge") is None, reason="entry point not installed")
def test_entry_point(davies):
    proc = subprocess.run(["twforge", "check", "feeble", str(davies)], capture_output=True, text=True)
    assert proc.returncode in (0, 1)
    assert json.loads(proc.stdout)["command"][0] == "twforge"
