import csv
import io
import json
import subprocess
import sys

import pytest

from golden_cases import CASES, GOLDEN
from hopfdual.cli import run
from hopfdual.report import strip_timing, to_csv, to_text


def call(argv, capsys):
    code, report = run(argv)
    out = capsys.readouterr()
    return code, report, out.out, out.err


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(name, capsys):
    want = json.loads((GOLDEN / f"{name}.json").read_text())
    code, report, out, _ = call(CASES[name], capsys)
    assert code == want["exit"]
    assert strip_timing(report) == want["report"]
    assert strip_timing(json.loads(out)) == want["report"]


def test_golden_values_by_hand(capsys):
    _, rep, _, _ = call(CASES["jacobi-jfail"], capsys)
    assert rep["verdicts"]["jacobi"]["jacobiator"] == "-x - y - z"
    _, rep, _, _ = call(CASES["duality-aff1"], capsys)
    co = {(i, w): d for i, w, d in rep["tables"][0]["entries"] if d}
    assert co == {(0, 0): 1, (1, -1): 1}
    assert rep["shift"] == 0 and rep["verdicts"]["untwisted"]["passed"] is False
    _, rep, _, _ = call(CASES["homology-zero2"], capsys)
    ho = {(i, w): d for i, w, d in rep["tables"][0]["entries"]}
    assert (ho[(0, 0)], ho[(1, 0)], ho[(2, 0)]) == (1, 0, 0)  # chains at weight 0 start with A_0 only
    assert ho[(0, 3)] == 4 and ho[(1, 3)] == 2 * 3 and ho[(2, 3)] == 2


@pytest.mark.parametrize(
    "argv, code",
    [
        (["jacobi", "builtin:aff1"], 0),
        (["jacobi", "builtin:jfail"], 1),
        (["duality", "builtin:jfail"], 2),
        (["cohomology", "builtin:aff1-corrupt", "--coefficients", "file-module"], 2),
        (["hochschild", "builtin:aff1"], 2),
        (["axioms", "builtin:so3"], 2),
        (["jacobi", "builtin:nope"], 2),
        (["jacobi", "/nonexistent/file.json"], 2),
        (["cohomology", "builtin:so3", "--min-weight", "3", "--max-weight", "1"], 2),
        (["jacobi", "builtin:aff1", "--threads", "0"], 2),
        (["frobnicate", "builtin:aff1"], 2),
    ],
)
def test_exit_codes(argv, code, capsys):
    got, _, _, err = call(argv, capsys)
    assert got == code
    if code == 2:
        assert err


def write(tmp_path, data, name="s.json"):
    p = tmp_path / name
    p.write_text(data if isinstance(data, str) else json.dumps(data))
    return str(p)


def test_syntax_error_message(tmp_path, capsys):
    f = write(tmp_path, {"kind": "poisson", "variables": ["x", "y"], "brackets": [["x", "y", "x+*y"]]})
    code, _, _, err = call(["jacobi", f], capsys)
    assert code == 2
    assert "polynomial syntax: unexpected token '*' at position 2 in 'x+*y'" in err


@pytest.mark.parametrize(
    "data",
    [
        "{not json",
        "[1, 2]",
        {"kind": "martian"},
        {"kind": "poisson", "variables": ["x", "x"]},
        {"kind": "poisson", "variables": ["x", "y"], "brackets": [["x", "y", "x+1"]]},
        {"kind": "poisson", "variables": ["x", "y"], "brackets": [["x", "y"]]},
        {"kind": "poisson", "variables": ["x", "y"], "window": [3, 1]},
        {"kind": "finite-algebra", "basis": ["a"]},
        {"kind": "finite-algebra", "basis": ["1", "x"], "structure_constants": [["x", "x", "1", "1"]], "unit": {"x": "1"}},
    ],
)
def test_bad_files_exit_2(tmp_path, data, capsys):
    command = "axioms" if isinstance(data, dict) and data.get("kind") == "finite-algebra" else "jacobi"
    code, _, _, err = call([command, write(tmp_path, data)], capsys)
    assert code == 2 and "error:" in err


def test_poisson_file_with_module(tmp_path, capsys):
    data = {
        "kind": "poisson",
        "name": "symp2-file",
        "variables": ["x", "y"],
        "brackets": {"x,y": "1"},
        "module": {
            "rank": 2,
            "generator_weights": [2, 0],
            "connection": [[["0", "0"], ["x", "0"]], [["0", "0"], ["-y", "0"]]],
        },
        "window": [-4, 4],
    }
    code, rep, _, _ = call(["duality", write(tmp_path, data)], capsys)
    _, ref, _, _ = call(["duality", "builtin:symp2-rank2", "--min-weight", "-4", "--max-weight", "4"], capsys)
    assert code == 0 and rep["tables"] == ref["tables"] and rep["shift"] == 0


def test_hochschild_file(tmp_path, capsys):
    data = {"kind": "hochschild", "variables": ["x"], "module": {"rank": 1, "generator_weights": [0], "twist": [[["x"]]]}}
    code, rep, _, _ = call(["hochschild", write(tmp_path, data), "--duality"], capsys)
    assert code == 0
    co = {(i, w): d for i, w, d in rep["tables"][0]["entries"] if d}
    assert co == {(1, -1): 1}
    bad = {"kind": "hochschild", "variables": ["x"], "module": {"rank": 1, "generator_weights": [0], "twist": [[["x+1"]]]}}
    assert call(["hochschild", write(tmp_path, bad, "b.json")], capsys)[0] == 2


def test_finite_algebra_file(tmp_path, capsys):
    from hopfdual.finite import upper_triangular2

    code, rep, _, _ = call(["axioms", write(tmp_path, upper_triangular2().to_json())], capsys)
    assert code == 0 and rep["verdicts"]["passed"]


@pytest.mark.parametrize("argv", [CASES["duality-aff1"], CASES["hochschild-hh2-Der"], CASES["axioms-VL-aff1"]])
def test_csv_and_text_derived_from_json(argv, capsys):
    _, rep, _, _ = call(argv, capsys)
    _, _, out_csv, _ = call(argv + ["--format", "csv"], capsys)
    _, _, out_txt, _ = call(argv + ["--format", "text"], capsys)
    rows = list(csv.reader(io.StringIO(out_csv)))
    assert rows[0] == ["section", "table", "i", "w", "dim"]
    got = sorted((r[1], int(r[2]), int(r[3]), int(r[4])) for r in rows if r[0] == "table")
    want = sorted((T["kind"], i, w, d) for T in rep["tables"] for i, w, d in T["entries"])
    assert got == want
    rep_no_t = dict(rep, timing_ms=0)
    assert to_csv(rep_no_t).splitlines()[:-1] == out_csv.splitlines()[:-1]
    assert to_text(rep_no_t).splitlines()[:-1] == out_txt.splitlines()[:-1]


@pytest.mark.parametrize("name", ["cohomology-so3", "duality-aff1", "hochschild-hh2-Der", "homology-zero2"])
def test_thread_determinism(name, capsys):
    reports = []
    for t in ("1", "3"):
        for _ in range(2):
            _, rep, _, _ = call(CASES[name] + ["--threads", t], capsys)
            reports.append(json.dumps(strip_timing(rep)))
    assert len(set(reports)) == 1


def test_output_flag(tmp_path, capsys):
    out = tmp_path / "r.json"
    code, rep, stdout, _ = call(["jacobi", "builtin:aff1", "-o", str(out)], capsys)
    assert code == 0 and stdout == ""
    assert json.loads(out.read_text()) == rep


def test_console_script():
    r = subprocess.run([sys.executable, "-m", "hopfdual.cli", "jacobi", "builtin:aff1", "--format", "text"], capture_output=True, text=True)
    assert r.returncode == 0 and "jacobi.passed" in r.stdout
