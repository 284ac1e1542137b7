import csv
import hashlib
import io
import json

import pytest

from almostkneser.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_check_fixture_exit_codes(capsys, fixtures_dir):
    path = str(fixtures_dir / "ex51_t1.json")
    code, out, _ = run(capsys, "check", path, "--t", "1", "--s", "1")
    assert code == 0
    rep = json.loads(out)
    assert rep["s_almost_t_intersecting"] and not rep["t_intersecting"]
    assert rep["kneser_max_degree_ok"]
    assert rep["covering"]["tau"] == 3
    assert rep["defect_report"]["max_defect"] == 1
    assert rep["bounds"]["lemma32"] == "holds"
    assert run(capsys, "check", path, "--t", "1", "--s", "0")[0] == 1


@pytest.mark.parametrize("name", ["truncated.json", "duplicate.json", "missing.json"])
def test_check_bad_input(capsys, fixtures_dir, name):
    code, _, err = run(capsys, "check", str(fixtures_dir / name), "--t", "1", "--s", "1")
    assert code == 2 and "error" in err


def test_eval_single_and_warning(capsys):
    assert run(capsys, "eval", "h", "7", "3", "1", "1")[:2] == (0, "14\n")
    code, out, err = run(capsys, "eval", "h", "5", "3", "1", "1")
    assert code == 0 and out.strip().isdigit() and "warning" in err
    assert run(capsys, "eval", "f", "20", "4", "2", "1", "2")[1] == "153\n"
    assert run(capsys, "eval", "g", "30", "5", "2", "1", "4")[1] == "1070\n"
    assert run(capsys, "eval", "h", "7", "3")[0] == 2
    assert run(capsys, "eval", "h", "x", "3", "1", "1")[0] == 2


def test_eval_sweep_row_count(capsys):
    code, out, _ = run(capsys, "eval", "f", "20:25", "4", "1:2", "1,3", "2:3")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 6 * 2 * 2 * 2


def test_manifest_beside_output(capsys, tmp_path):
    out = tmp_path / "h.csv"
    assert run(capsys, "eval", "h", "7:9", "3", "1", "1", "--out", str(out))[0] == 0
    manifest = json.loads((tmp_path / "h.csv.manifest.json").read_text())
    assert manifest["digests"]["h.csv"] == hashlib.sha256(out.read_bytes()).hexdigest()
    assert manifest["config"]["which"] == "h"
    assert "python" in manifest["versions"] and manifest["wall_time"] >= 0


def test_construct(capsys, tmp_path):
    out = tmp_path / "c.json"
    code, _, _ = run(capsys, "construct", "THM3_IV", "--t", "1", "--s", "6", "--json-out", str(out))
    obj = json.loads(out.read_text())
    assert code == 0 and obj["checks"]["size"] == 15
    assert (tmp_path / "c.json.manifest.json").exists()
    assert run(capsys, "construct", "THM3_III", "--t", "1", "--s", "3")[0] == 2


def test_search(capsys, tmp_path):
    out = tmp_path / "s.json"
    code, _, _ = run(capsys, "search", "--n", "4", "--k", "2", "--t", "1", "--s", "1",
                     "--not-t-intersecting", "--all-extremal", "--json-out", str(out))
    obj = json.loads(out.read_text())
    assert code == 0 and obj["max_size"] == 6 and obj["exhausted"]
    assert obj["extremal"] == [[[1, 2], [1, 3], [1, 4], [2, 3], [2, 4], [3, 4]]]


def test_search_limits(capsys, monkeypatch):
    assert run(capsys, "search", "--n", "12", "--k", "4", "--t", "1", "--s", "1")[0] == 3
    argv = ["search", "--n", "8", "--k", "3", "--t", "1", "--s", "3", "--vertex-cap", "63"]
    assert run(capsys, *argv, "--node-limit", "20")[0] == 3
    # env var applies when the flag is absent; the flag wins otherwise
    monkeypatch.setenv("KNS_NODE_LIMIT", "20")
    assert run(capsys, *argv)[0] == 3
    assert run(capsys, *argv, "--node-limit", "100000000")[0] == 0


def test_canon(capsys, fixtures_dir):
    code, out, _ = run(capsys, "canon", str(fixtures_dir / "ex51_t1.json"))
    assert code == 0
    assert json.loads(out)["canonical_form"] == "k=2;m=4;size=6|1,2/1,3/1,4/2,3/2,4/3,4"


def test_verify_lemmas_with_skipped_rows(capsys):
    code, out, _ = run(capsys, "verify", "lemmas", "--t-values", "1", "--k-offsets", "2",
                       "--s-values", "1", "--n-offsets=-2,0")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0
    assert {r["outcome"] for r in rows} == {"holds", "skipped"}


def test_verify_thm3_csv(capsys):
    code, out, _ = run(capsys, "verify", "thm3", "--t-max", "1", "--s-max", "2", "--n-extra", "0")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0
    assert [(r["n"], r["max_size"], r["matched_cases"], r["exhausted"]) for r in rows] == [
        ("4", "6", "i", "1"), ("5", "7", "vi", "1"),
    ]


def test_verify_thm3_marks_infeasible_skipped(capsys):
    code, out, _ = run(capsys, "verify", "thm3", "--t-max", "2", "--s-max", "4",
                       "--n-extra", "0", "--vertex-cap", "20")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 8
    assert any(r["status"] == "skipped" for r in rows)


def test_verify_constructions_negative_control(capsys, fixtures_dir):
    path = str(fixtures_dir / "ex51_t1.json")
    base = ["verify", "constructions", "--fixture", path]
    assert run(capsys, *base, "--id", "EX51", "--t", "1", "--s", "1")[0] == 0
    assert run(capsys, *base, "--id", "EX52", "--t", "1", "--s", "3")[0] == 1
    assert run(capsys, "verify", "constructions",
               "--fixture", str(fixtures_dir / "corrupted_ex52.json"),
               "--id", "EX52", "--t", "1", "--s", "3")[0] == 1


def test_verify_properties_seeded(capsys):
    a = run(capsys, "verify", "properties", "--trials", "30", "--seed", "7")
    b = run(capsys, "verify", "properties", "--trials", "30", "--seed", "7")
    assert a[0] == 0 and a[1] == b[1]


def test_verify_all(capsys, tmp_path):
    out = tmp_path / "all.csv"
    code, _, err = run(capsys, "verify", "all", "--trials", "20", "--csv-out", str(out))
    rows = list(csv.DictReader(io.StringIO(out.read_text())))
    assert code == 0
    assert {r["suite"] for r in rows} == {"lemmas", "constructions", "thm3", "properties"}
    assert (tmp_path / "all.csv.manifest.json").exists()
