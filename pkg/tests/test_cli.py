import subprocess
import sys
import xml.etree.ElementTree as ET

import pytest

from permlabel import harness
from permlabel.cli import main
from permlabel.codec import parse_labels
from permlabel.graph import parse_permutation

from conftest import FIG3


@pytest.fixture
def perm_file(tmp_path):
    def write(pi, name="perm.txt"):
        path = tmp_path / name
        path.write_text(f"{len(pi)}\n{' '.join(map(str, pi))}\n")
        return str(path)
    return write


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_gen(capsys):
    code, out, _ = run(capsys, "gen", 10, 0)
    assert code == 0 and parse_permutation(out) == [7, 4, 3, 10, 9, 2, 5, 8, 1, 6]


@pytest.mark.parametrize("scheme", ["L3", "L5", "L7"])
def test_encode_then_query(capsys, tmp_path, perm_file, scheme):
    labels = tmp_path / "labels.txt"
    assert run(capsys, "encode", "--scheme", scheme, perm_file(FIG3), "--out", labels)[0] == 0
    tag, table = parse_labels(labels.read_text())
    assert tag == scheme and sorted(table) == list(range(1, 9))
    assert run(capsys, "query", labels, 1, 2)[1].strip() == "unreachable"
    assert run(capsys, "query", labels, 3, 7)[1].strip() == "2"
    assert run(capsys, "query", labels, 4, 4)[1].strip() == "0"


def test_encode_to_stdout_and_single_inversion(capsys, tmp_path, perm_file):
    code, out, _ = run(capsys, "encode", perm_file([2, 1]))
    assert code == 0 and out.startswith("# scheme L3")
    labels = tmp_path / "l.txt"
    labels.write_text(out)
    assert run(capsys, "query", labels, 1, 2)[1].strip() == "1"


def test_verify_exhaustive(capsys):
    code, out, _ = run(capsys, "verify", "--exhaustive", 5)
    assert code == 0
    assert out.count("PASS") == 3


def test_verify_random_and_perm(capsys, perm_file):
    assert run(capsys, "verify", "--random", 40, 5, 1, "--scheme", "L3,L7")[0] == 0
    code, out, _ = run(capsys, "verify", "--perm", perm_file(FIG3), "--scheme", "L5")
    assert code == 0 and "L5" in out and "L3" not in out


def test_verify_failure_exits_one_with_counterexample(capsys, monkeypatch):
    real = harness.check_labels

    def broken(pi, scheme, labels, truth, instance=""):
        truth = truth.copy()
        truth[truth == 3] = 4
        return real(pi, scheme, labels, truth, instance)

    monkeypatch.setattr(harness, "check_labels", broken)
    code, out, _ = run(capsys, "verify", "--random", 12, 20, 0, "--scheme", "L3")
    assert code == 1
    assert "counterexample" in out and "expected 4, decoded 3" in out
    assert "shrunk to n=4" in out


def test_stats_csv(capsys, tmp_path):
    out = tmp_path / "s.csv"
    assert run(capsys, "stats", "--sizes", "32,16", "--seeds", 2, "--out", out)[0] == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "n,seed,scheme,max_bits,mean_bits,three_log_n,slack"
    assert [tuple(ln.split(",")[:3]) for ln in lines[1:4]] == [("16", "0", s) for s in ("L3", "L5", "L7")]
    assert len(lines) == 13


@pytest.mark.parametrize("augmented", [False, True])
def test_render(capsys, tmp_path, perm_file, augmented):
    out = tmp_path / "pic.svg"
    args = ["render", perm_file(FIG3), "--out", out] + (["--augmented"] if augmented else [])
    assert run(capsys, *args)[0] == 0
    root = ET.fromstring(out.read_text())
    assert root.tag.endswith("svg")
    circles = root.findall(".//{http://www.w3.org/2000/svg}circle")
    assert len(circles) == (8 if not augmented else 1 + 7 * 5 + 4)  # singleton, 7 originals + 28 aux, 4 clearing


def test_bench(capsys):
    code, out, _ = run(capsys, "bench", "--n", 64, "--queries", 200)
    assert code == 0 and "queries=200" in out and "mean_ns=" in out


@pytest.mark.parametrize("argv", [
    [],
    ["nope"],
    ["gen", "0", "1"],
    ["gen", "x", "1"],
    ["encode", "--scheme", "L4", "p.txt"],
    ["encode", "/nonexistent/perm.txt"],
    ["query", "/nonexistent/labels.txt", "1", "2"],
    ["verify"],
    ["verify", "--exhaustive", "3", "--random", "5", "1", "1"],
    ["verify", "--exhaustive", "12"],
    ["verify", "--exhaustive", "3", "--scheme", "L9"],
    ["stats", "--sizes", "a,b", "--seeds", "1"],
    ["stats", "--sizes", "8", "--seeds", "0"],
    ["render", "p.txt"],
    ["bench", "--n", "8"],
])
def test_usage_errors_exit_two(capsys, argv):
    assert main(argv) == 2


def test_query_errors(capsys, tmp_path, perm_file):
    labels = tmp_path / "labels.txt"
    run(capsys, "encode", perm_file([2, 1]), "--out", labels)
    assert run(capsys, "query", labels, 1, 9)[0] == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("# scheme L3\n1 1 1\n2 1 1\n")
    assert run(capsys, "query", bad, 1, 2)[0] == 2
    bad.write_text("# scheme Q1\n1 1 1\n")
    assert run(capsys, "query", bad, 1, 1)[0] == 2


def test_bad_permutation_file(capsys, tmp_path):
    path = tmp_path / "p.txt"
    path.write_text("3\n1 1 2\n")
    assert run(capsys, "encode", path)[0] == 2


def test_module_entry_point(tmp_path, perm_file):
    res = subprocess.run([sys.executable, "-m", "permlabel", "verify", "--perm", perm_file([3, 1, 2])],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.count("PASS") == 3
