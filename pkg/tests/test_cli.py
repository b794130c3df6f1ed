import json
import subprocess
import sys

import pytest

from uksat import __version__
from uksat.cli import main
from uksat.hypercore import dumps_uhg, read_uhg
from uksat.verify import verify_complementary


@pytest.fixture
def c5_file(tmp_path, c5):
    p = tmp_path / "c5.uhg"
    p.write_text(dumps_uhg(c5))
    return p


def test_verify_saturated(c5_file, capsys):
    assert main(["verify", str(c5_file), "--mode", "saturated", "--r", "3"]) == 0
    assert capsys.readouterr().out.strip() == "ok"


def test_verify_single_star(tmp_path, capsys):
    p = tmp_path / "star.uhg"
    p.write_text("4 2 3\n1 2\n1 3\n1 4\n")
    assert main(["verify", str(p), "--mode", "complementary", "--t", "2", "--s", "1"]) == 1
    assert "Property 3, vertex 1" in capsys.readouterr().out


def test_verify_json(c5_file, capsys):
    assert main(["verify", str(c5_file), "--mode", "saturated", "--r", "4", "--json"]) == 1
    data = json.loads(capsys.readouterr().out)
    assert data["ok"] is False and data["failure_kind"] == "NoCompletion"


def test_verify_tau_critical(tmp_path, c5, capsys):
    from uksat.hypercore import complement_hypergraph
    p = tmp_path / "c5c.uhg"
    p.write_text(dumps_uhg(complement_hypergraph(c5)))
    assert main(["verify", str(p), "--mode", "tau-critical", "--r", "3"]) == 0
    assert main(["verify", str(p), "--mode", "tau-critical"]) == 0
    assert main(["verify", str(p), "--mode", "tau-critical", "--tau", "2"]) == 1


def test_verify_input_errors(tmp_path, c5_file, capsys):
    p = tmp_path / "bad.uhg"
    p.write_text("5 2 3\n1 2\n2 3\n")
    assert main(["verify", str(p), "--mode", "saturated", "--r", "3"]) == 2
    assert "line 3" in capsys.readouterr().err
    assert main(["verify", str(tmp_path / "missing.uhg"), "--mode", "saturated", "--r", "3"]) == 2
    assert main(["verify", str(c5_file), "--mode", "saturated"]) == 2
    assert main(["verify", str(c5_file), "--mode", "complementary"]) == 2


def test_construct_double_star(tmp_path, capsys):
    stem = tmp_path / "ds"
    assert main(["construct", "double-star", "--n", "6", "--k", "4", "--r", "5", "-o", str(stem)]) == 0
    R = read_uhg(stem.with_suffix(".uhg"))
    assert sorted(R.edge_lists()) == [(1, 2), (1, 3), (4, 6), (5, 6)]
    rec = json.loads(stem.with_suffix(".json").read_text())
    assert rec["theorem"] == "thm3.2"
    assert rec["params"] == {"n": 6, "k": 4, "r": 5}
    assert rec["verdict"]["ok"] is True
    assert rec["tau"] == 2
    assert rec["version"] == __version__
    assert rec["certificate_path"] == str(stem.with_suffix(".uhg"))
    # the written certificate re-verifies
    assert main(["verify", rec["certificate_path"], "--mode", "complementary", "--s", "1"]) == 0


def test_construct_tau_critical(tmp_path):
    stem = tmp_path / "tc"
    assert main(["construct", "tau-critical", "--k", "3", "--ell", "2", "--n", "7", "-o", str(stem)]) == 0
    H = read_uhg(stem.with_suffix(".uhg"))
    assert (H.k, len(H.edges)) == (3, 6)
    assert main(["verify", str(stem.with_suffix(".uhg")), "--mode", "tau-critical", "--r", "5"]) == 0


def test_construct_near_complete(tmp_path, capsys):
    stem = tmp_path / "nc"
    assert main(["construct", "near-complete", "--k", "4", "--n", "9", "-o", str(stem)]) == 0
    assert main(["construct", "near-complete", "--k", "4", "--n", "10", "-o", str(stem)]) == 1
    err = capsys.readouterr().err
    assert "out of range" in err and "k+2 <= n <= (k+2)^2/4" in err
    assert main(["construct", "near-complete", "--k", "4"]) == 2


def test_search_writes_certificate(tmp_path, capsys):
    stem = tmp_path / "s"
    assert main(["search", "--n", "5", "--t", "3", "--s", "1", "-o", str(stem)]) == 0
    assert capsys.readouterr().out.startswith("SAT n=5 t=3 s=1 (k=2, r=3)")
    R = read_uhg(stem.with_suffix(".uhg"))
    assert verify_complementary(R, 3, 1).ok
    rec = json.loads(stem.with_suffix(".json").read_text())
    assert rec["status"] == "SAT" and rec["certificates"] == [str(stem.with_suffix(".uhg"))]


def test_search_all_and_limits(tmp_path, capsys):
    stem = tmp_path / "all"
    assert main(["search", "--n", "5", "--t", "3", "--s", "1", "--all", "-o", str(stem)]) == 0
    assert "12 solutions" in capsys.readouterr().out
    assert len(list(tmp_path.glob("all-*.uhg"))) == 12
    assert main(["search", "--n", "5", "--t", "2", "--s", "1"]) == 0
    assert capsys.readouterr().out.startswith("UNSAT")
    assert main(["search", "--n", "11", "--t", "9", "--s", "2", "--node-limit", "10"]) == 1
    assert capsys.readouterr().out.startswith("LIMIT")
    assert main(["search", "--n", "5", "--t", "5", "--s", "1"]) == 2


def test_table_tsv_and_json(tmp_path, capsys):
    assert main(["table", "--k", "2", "--max-ell", "2", "--max-s", "3"]) == 0
    out = capsys.readouterr().out
    assert out == ("k=2\tr=3\tr=4\tr=5\n"
                   "n=r+1\tN:search\tN:bound\tN:bound\n"
                   "n=r+2\tY:search\tN:search\tN:bound\n")
    path = tmp_path / "t.json"
    assert main(["table", "--k", "5", "--max-ell", "1", "--max-s", "8",
                 "--format", "json", "-o", str(path)]) == 0
    data = json.loads(path.read_text())
    glyphs = [c["glyph"] for c in data["cells"]]
    assert glyphs[:6] == ["Y:thm3.2"] * 2 + ["Y:thm5.1"] * 4
    assert glyphs[6:] == ["N:thm5.1", "N:thm5.1"]


def test_bounds(capsys):
    assert main(["bounds", "--k", "2", "--ell", "1"]) == 0
    out = capsys.readouterr().out
    assert "nonexistence_bound(k=2, ell=1) = 5" in out
    assert main(["bounds", "--k", "4", "--ell", "1"]) == 0
    out = capsys.readouterr().out
    assert "6 <= n <= 9" in out


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "uksat", "--version"],
                         capture_output=True, text=True, check=True)
    assert out.stdout.strip() == f"uksat {__version__}"
