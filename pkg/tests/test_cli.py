from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from fusionscan.cli import EXIT_DIFF, EXIT_OK, EXIT_UNKNOWN, EXIT_USAGE, main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_enumerate():
    code, text = run("enumerate", "--fpdim", "6")
    assert code == EXIT_OK and text.split() == ["(1,2;2,1)"]
    assert run("enumerate", "--fpdim", "84", "--count-only") == (EXIT_OK, "544\n")


def test_filter():
    code, text = run("filter", "--fpdim", "84")
    assert code == EXIT_OK
    lines = text.splitlines()
    assert lines[-1] == "# 35 of 544 candidates survive R1,R2,R3,R4,R5,R6,R7,R8,R9,R10,R11,R12,R13"
    assert "(1,2;3,2;8,1)  requires-exclusion" in lines


def test_filter_r14():
    code, text = run("filter", "--fpdim", "90", "--enable-cor90-6")
    assert code == EXIT_OK and "# 26 of 712" in text


def test_filter_all_lists_reasons():
    code, text = run("filter", "--fpdim", "5", "--all")
    assert code == EXIT_OK and text.startswith("- (1,1;2,1)  ") and "R4:" in text


def test_filter_usage_errors():
    assert run("filter", "--fpdim", "84", "--rules", "R14")[0] == EXIT_USAGE
    assert run("filter", "--fpdim", "84", "--rules", "R99")[0] == EXIT_USAGE


def test_filter_catalog():
    code, text = run("filter", "--fpdim", "1", "--catalog")
    assert code == EXIT_OK and len(json.loads(text)) == 15


def test_solve(tmp_path):
    trace = tmp_path / "t.txt"
    code, text = run("solve", "--type", "(1,2;3,2;8,1)", "--trace", str(trace))
    data = json.loads(text)
    assert code == EXIT_OK and data["status"] == "Excluded" and data["exhaustive"]
    assert trace.read_text().splitlines()[0].startswith("1\tcase\t")


def test_solve_model():
    code, text = run("solve", "--type", "(1,3;3,1)", "--model", "--no-symmetry-breaking")
    data = json.loads(text)
    assert data["status"] == "Realizable" and data["model"]["dims"] == [1, 1, 1, 3]


def test_solve_unknown_and_bad_input():
    assert run("solve", "--type", "(1,2;2,2;4,5)", "--budget", "3")[0] == EXIT_UNKNOWN
    assert run("solve", "--type", "1,2;2,1")[0] == EXIT_USAGE


def test_classify_text_and_check():
    code, text = run("classify", "--fpdim", "84", "--no-cache", "--check", "--strict")
    assert code == EXIT_OK
    assert sum(1 for ln in text.splitlines() if ln.startswith("(")) == 30


def test_classify_check_fails_without_r14(tmp_path):
    code, text = run("classify", "--fpdim", "90", "--cache", str(tmp_path), "--check")
    assert code == EXIT_DIFF and "# diff extra: (1,6;4,3;6,1)" in text


def test_classify_strict():
    code, _ = run("classify", "--fpdim", "84", "--no-cache", "--budget", "1", "--strict")
    assert code == EXIT_UNKNOWN


def test_classify_r14_only_for_90():
    assert run("classify", "--fpdim", "84", "--enable-cor90-6", "--no-cache")[0] == EXIT_USAGE


def test_classify_json_then_diff(tmp_path):
    path = tmp_path / "r.json"
    code, text = run("classify", "--fpdim", "90", "--enable-cor90-6", "--no-cache", "--output", "json",
                     "--out", str(path))
    assert code == EXIT_OK and json.loads(text)["stats"]["survivors"] == 20
    assert run("diff", "--fpdim", "90", "--report", str(path)) == (EXIT_OK, "# 0 binding, 0 informational\n")
    assert run("diff", "--fpdim", "84", "--report", str(path))[0] == EXIT_USAGE


def test_diff_nonempty(tmp_path):
    path = tmp_path / "r.json"
    run("classify", "--fpdim", "90", "--no-cache", "--output", "json", "--out", str(path))
    code, text = run("diff", "--fpdim", "90", "--report", str(path))
    assert code == EXIT_DIFF and "expected: R14" in text


def test_diff_unknown_n(tmp_path):
    path = tmp_path / "r.json"
    run("classify", "--fpdim", "24", "--no-cache", "--output", "json", "--out", str(path))
    assert run("diff", "--fpdim", "24", "--report", str(path))[0] == EXIT_USAGE
    assert run("diff", "--fpdim", "24", "--report", str(tmp_path / "nope.json"))[0] == EXIT_USAGE


@pytest.mark.parametrize("argv", [["bogus"], ["enumerate"], ["enumerate", "--fpdim", "0"], ["classify", "--fpdim", "x"]])
def test_usage_exit_code(argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == EXIT_USAGE


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "fusionscan.cli", "enumerate", "--fpdim", "5"],
                          capture_output=True, text=True, check=True)
    assert proc.stdout == "(1,1;2,1)\n"
