"""End-to-end checks of the isomer-search executable."""
import json
import os
import subprocess
from pathlib import Path

import pytest

EXE = os.environ.get("ISOMER_SEARCH_EXE", "isomer-search")


def run(*args, check=True):
    proc = subprocess.run([EXE, *map(str, args)], capture_output=True, text=True)
    if check and proc.returncode != 0:
        raise AssertionError(f"{args} exited {proc.returncode}: {proc.stderr}")
    return proc


def test_build_butane():
    doc = json.loads(run("build", "--n", 4).stdout)
    assert doc["n"] == 4
    assert doc["offset"] == 18
    indices = {i for e in doc["entries"] for i in e[:2]}
    assert indices == set(range(8))
    assert [0, 0, -8.0] in doc["entries"]


def test_build_scaled_ising():
    doc = json.loads(run("build", "--n", 4, "--ising", "--scale").stdout)
    assert len(doc["h"]) == 8
    assert max(abs(h) for h in doc["h"]) <= 2 + 1e-12
    assert max(abs(c[2]) for c in doc["couplings"]) <= 1 + 1e-12
    assert 0 < doc["scale"] <= 1


def test_oracle_nonane_lines():
    lines = run("oracle", "--n", 9, "--mode", "isomers").stdout.splitlines()
    assert len(lines) == 35
    assert all("certificate" in json.loads(line) for line in lines)


def test_oracle_ground_states():
    lines = run("oracle", "--n", 4, "--mode", "ground-states").stdout.splitlines()
    degrees = sorted(tuple(json.loads(line)["degrees"]) for line in lines)
    assert degrees == [(1, 1, 3, 1), (1, 2, 2, 1), (1, 3, 1, 1)]


def test_enumerate_heptane(tmp_path: Path):
    report = tmp_path / "hept.json"
    run("enumerate", "--n", 7, "--seed", 1, "-o", report)
    doc = json.loads(report.read_text())
    assert doc["isomers_found"] == 9
    dump = (tmp_path / "hept.json.isomers.jsonl").read_text().splitlines()
    assert len(dump) == 9


def test_enumerate_is_deterministic(tmp_path: Path):
    outputs = []
    for k in range(2):
        path = tmp_path / f"r{k}.json"
        run("enumerate", "--n", 5, "--samples", 500, "--seed", 3, "--perturb", "--reverse",
            "--max-iterations", 3, "--target", 0, "-o", path, "--samples-csv", tmp_path / f"s{k}.csv")
        outputs.append((path.read_bytes(), (tmp_path / f"r{k}.json.isomers.jsonl").read_bytes(),
                        (tmp_path / f"s{k}.csv").read_bytes()))
    assert outputs[0] == outputs[1]
    assert json.loads(outputs[0][0])["iterations_used"] == 3


def test_analyze_modes(tmp_path: Path):
    hamming = run("analyze", "--mode", "hamming", "--n", 4).stdout.splitlines()
    assert hamming[0] == "isomer_a,isomer_b,distance"
    assert hamming[1].endswith(",4")

    samples = tmp_path / "s.csv"
    run("enumerate", "--n", 4, "--samples", 300, "--max-iterations", 1, "-o", tmp_path / "r.json",
        "--samples-csv", samples)
    hist = run("analyze", "--mode", "histogram", "--n", 4, samples).stdout.splitlines()
    assert hist[0] == "energy,count"
    assert sum(int(row.split(",")[1]) for row in hist[1:]) == 300
    assert hist[1].startswith("0,")

    cov = run("analyze", "--mode", "coverage", "--n", 4, "--repetitions", 2, "--samples", 500,
              "--methods", "FA,RA+QP").stdout.splitlines()
    assert cov[0] == "method,repetition,iterations"
    assert len(cov) == 5


def test_verify_butane():
    proc = run("verify", "--n", 4)
    assert "[FAIL]" not in proc.stdout
    assert proc.stdout.count("[PASS]") >= 8


@pytest.mark.parametrize("args", [
    ["build"],
    ["build", "--n", 2],
    ["enumerate", "--n", 4, "--s-star", 1.5],
    ["oracle", "--n", 13],
    ["analyze", "--mode", "nonsense"],
    ["no-such-command"],
])
def test_usage_errors_exit_1(args):
    assert run(*args, check=False).returncode == 1
