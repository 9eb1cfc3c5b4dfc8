"""Command line behaviour: artifacts, exit codes, reproducibility."""

import json

import pytest

from qsphere.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_haar_example(capsys):
    code, out, _ = run(capsys, "haar", "--q", "1/2", "--expr", "b*bs")
    assert code == 0
    obj = json.loads(out)
    assert obj["schema"] == "qsphere/1"
    assert obj["kind"] == "haar"
    assert obj["scalar"] == {"num": 4, "den": 5}
    assert obj["config"]["q"] == "1/2"


def test_expand_reorders(capsys):
    code, out, _ = run(capsys, "expand", "--q", "1/2", "--expr", "b*a")
    assert code == 0
    obj = json.loads(out)
    assert obj["element"] == [
        {"aExp": 1, "bExp": 1, "bStarExp": 0, "coeffNum": 1, "coeffDen": 2}]


def test_act(capsys):
    code, out, _ = run(capsys, "act", "--q", "1/2", "--action", "delta1",
                       "--expr", "A")
    assert code == 0
    assert json.loads(out)["text"] == "-a*bs"


def test_spectrum_csv(capsys):
    code, out, _ = run(capsys, "spectrum", "--q", "1/2", "--N", "1",
                       "--max-spin", "2", "--format", "csv")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "n,c"
    assert lines[1] == "0,1.0"
    assert abs(float(lines[2].split(",")[1]) - 16 / 21) < 1e-12
    assert float(lines[3].split(",")[1]) == 0.0


def test_berezin_artifact(capsys):
    code, out, _ = run(capsys, "berezin", "--q", "1/2", "--N", "1",
                       "--expr", "A")
    assert code == 0
    obj = json.loads(out)
    assert obj["kind"] == "berezin"
    assert obj["text"].startswith("4/21")
    assert obj["spectrum"][1]["c"] == {"num": 16, "den": 21}


def test_lipnorm_artifact(capsys):
    code, out, _ = run(capsys, "lipnorm", "--q", "1/2", "--expr", "A",
                       "--trunc", "80")
    assert code == 0
    obj = json.loads(out)
    for key in ("lowerBound", "upperBound", "converged", "MUsed",
                "thetaGridSize", "ladder", "notes"):
        assert key in obj
    assert obj["lowerBound"] <= obj["upperBound"]


def test_usage_errors(capsys):
    code, _, err = run(capsys, "haar", "--q", "0", "--expr", "a")
    assert code == 1 and "q must lie" in err
    code, _, err = run(capsys, "expand", "--q", "1/2", "--expr", "a +* b")
    assert code == 1 and "line 1, col 4" in err
    code, _, err = run(capsys, "verify", "--q", "1/2")
    assert code == 1
    code, _, err = run(capsys, "verify", "--suite", "nope")
    assert code == 1
    code, _, err = run(capsys, "nope")
    assert code == 1


def test_print_config(capsys):
    code, out, _ = run(capsys, "haar", "--q", "3/4", "--seed", "5",
                       "--expr", "a", "--print-config")
    assert code == 0
    obj = json.loads(out)
    assert obj["kind"] == "config"
    assert obj["config"]["q"] == "3/4"
    assert obj["config"]["seed"] == 5


def test_reproducible_bytes(capsys, tmp_path):
    p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
    for p in (p1, p2):
        code, _, _ = run(capsys, "spectrum", "--q", "1/2", "--N", "2",
                         "--out", str(p))
        assert code == 0
    assert p1.read_bytes() == p2.read_bytes()


def test_verify_suite(capsys):
    code, out, _ = run(capsys, "verify", "--q", "1/2", "--suite", "hopf")
    assert code == 0
    obj = json.loads(out)
    assert obj["suite"] == "hopf"
    assert all(c["status"] != "fail" for c in obj["checks"])
    assert "seconds" not in obj


def test_verify_list(capsys):
    code, out, _ = run(capsys, "verify", "--list-suites")
    assert code == 0
    names = out.split()
    assert "hopf" in names and "theoremb" in names


def test_trend_csv_single_level(capsys):
    code, out, _ = run(capsys, "verify", "--q", "1/2", "--N", "1..1",
                       "--M", "2", "--trunc", "80", "--restarts", "1",
                       "--max-iters", "20")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "N,dist_lb,max_probe_ratio,mean_lipSlack"
    first = lines[1].split(",")
    assert first[0] == "1"
    assert float(first[1]) > 0


def test_sweep_cache_resume(capsys, tmp_path):
    args = ("sweep", "--q-list", "1/2", "--N", "1..1", "--M-range", "1..1",
            "--trunc", "60", "--restarts", "1", "--max-iters", "10",
            "--cache-dir", str(tmp_path))
    code, out1, _ = run(capsys, *args)
    assert code == 0
    cached = list(tmp_path.glob("sweep-*.json"))
    assert len(cached) == 1
    code, out2, _ = run(capsys, *args)
    assert code == 0
    assert out1 == out2
    lines = out1.strip().split("\n")
    assert lines[0].startswith("q,N,M,dist_lb")
    row = lines[1].split(",")
    assert row[0] == "1/2" and row[-1] == "ok"
    assert float(row[7]) == 1.0     # c0
