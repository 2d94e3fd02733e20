import csv
import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from kloomo.cli import main
from reference_values import WDIST_Q16, MOMENTS_Q16, WDIST_Q32, MOMENTS_Q32

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.reader(io.StringIO(text)))


def parse_columns(text):
    """(key, value) pairs of a column-pair layout, restored to column-major order."""
    lines = text.splitlines()[1:]
    cols: dict[int, list[tuple[int, int]]] = {}
    for line in lines:
        nums = [int(t) for t in line.split()]
        for c in range(0, len(nums), 2):
            cols.setdefault(c // 2, []).append((nums[c], nums[c + 1]))
    return [p for c in sorted(cols) for p in cols[c]]


@pytest.mark.parametrize("name, table", [("wdist_q16", WDIST_Q16), ("moments_q16", MOMENTS_Q16),
                                         ("wdist_q32", WDIST_Q32), ("moments_q32", MOMENTS_Q32)])
def test_golden_files_hold_reference_values(name, table):
    pairs = parse_columns((GOLDEN / f"{name}.txt").read_text())
    assert pairs == list(enumerate(table))


@pytest.mark.parametrize("argv, name", [
    (["wdist", "--r", "4", "--group", "so2m", "--format", "paper"], "wdist_q16"),
    (["wdist", "--r", "5", "--group", "so2m", "--format", "paper"], "wdist_q32"),
    (["moments", "--r", "4", "--h-max", "29", "--kind", "k", "--method", "recursive", "--format", "paper"],
     "moments_q16"),
    (["moments", "--r", "5", "--h-max", "29", "--kind", "k", "--method", "direct", "--format", "paper"],
     "moments_q32"),
    (["wdist", "--r", "4", "--group", "so2m", "--method", "brute", "--format", "paper"], "wdist_q16"),
    (["moments", "--r", "5", "--h-max", "29", "--method", "recursive-o2", "--format", "paper"], "moments_q32"),
])
def test_column_layout_byte_match(capsys, argv, name):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert out == (GOLDEN / f"{name}.txt").read_text()


def test_field(capsys):
    code, out, _ = run(capsys, "field", "--r", "4")
    info = dict(rows(out)[1:])
    assert code == 0 and info["q"] == "16" and info["poly_hex"] == "0x13" and info["trace_one"] == "8"
    assert run(capsys, "field", "--r", "4", "--poly", "0x13")[1] == out
    assert run(capsys, "field", "--r", "4", "--poly", "13")[1] == out


@pytest.mark.parametrize("argv", [
    ["field", "--r", "4", "--poly", "0x10"],
    ["field", "--r", "30"],
    ["verify", "--r", "30"],
    ["ksum", "--r", "2", "--a", "0"],
    ["ksum", "--r", "2", "--a", "9"],
    ["moments", "--r", "1", "--kind", "k2", "--h-max", "2"],
    ["moments", "--r", "4", "--h-max", "99"],
    ["wdist", "--r", "9", "--group", "so4m"],
    ["field", "--r", "4", "--budget", str(1 << 40)],
    ["field", "--r", "4", "--jobs", "0"],
])
def test_precondition_errors_exit_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == "" and "error" in err


@pytest.mark.parametrize("argv", [["field"], ["bogus", "--r", "2"], ["ksum", "--r", "2"],
                                  ["wdist", "--r", "2", "--method", "fft"], ["field", "--r", "x"]])
def test_bad_flags_exit_2(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_ksum(capsys):
    assert rows(run(capsys, "ksum", "--r", "2", "--a", "1")[1]) == [["a_hex", "K"], ["0x1", "3"]]
    out = run(capsys, "ksum", "--r", "4", "--all")[1]
    table = rows(out)[1:]
    assert len(table) == 15 and {int(k) for _, k in table} == {-5, -1, 3, 7}
    prof = rows(run(capsys, "ksum", "--r", "4", "--all", "--profile")[1])
    assert prof[0] == ["t", "count"] and sum(int(c) for _, c in prof[1:]) == 15
    assert rows(run(capsys, "ksum", "--r", "2", "--a", "1", "--m", "2")[1])[1] == ["0x1", "5"]
    m2 = rows(run(capsys, "ksum", "--r", "3", "--all", "--m", "2")[1])[1:]
    k1 = rows(run(capsys, "ksum", "--r", "3", "--all")[1])[1:]
    assert [int(v) for _, v in m2] == [int(v) ** 2 - 8 for _, v in k1]


def test_ksum_json(capsys):
    doc = json.loads(run(capsys, "ksum", "--r", "4", "--all", "--format", "json")[1])
    assert doc["metadata"]["q"] == 16 and doc["metadata"]["poly_hex"] == "0x13"
    assert len(doc["ksum"]) == 15 and all(isinstance(r["K"], str) for r in doc["ksum"])
    assert {r["t"] for r in doc["profile"]} == {"-5", "-1", "3", "7"}


def test_wdist_prefix_json(capsys):
    dp = json.loads(run(capsys, "wdist", "--r", "2", "--group", "so4m", "--max-weight", "8",
                        "--method", "dp", "--format", "json")[1])
    mw = json.loads(run(capsys, "wdist", "--r", "2", "--group", "so4m", "--max-weight", "8",
                        "--method", "macwilliams", "--format", "json")[1])
    assert dp["metadata"]["mode"] == "PREFIX(8)" and dp["metadata"]["group"] == "so4m"
    assert len(dp["wdist"]) == 9 and dp["wdist"] == mw["wdist"]
    assert set(dp["metadata"]) >= {"r", "q", "poly_hex", "group", "method", "version"}


def test_big_integers_are_strings(capsys):
    doc = json.loads(run(capsys, "moments", "--r", "4", "--h-max", "29", "--format", "json")[1])
    assert doc["moments"][29]["value"] == "6439066453841188580322241"


def test_moments_kinds(capsys):
    out = rows(run(capsys, "moments", "--r", "4", "--h-max", "5", "--kind", "k2", "--method", "recursive")[1])
    assert out[2] == ["1", "-1"]
    direct = run(capsys, "moments", "--r", "4", "--h-max", "5", "--kind", "k2", "--method", "direct")[1]
    assert rows(direct) == out
    even = rows(run(capsys, "moments", "--r", "4", "--h-max", "3", "--kind", "k-even")[1])
    assert [int(v) for _, v in even[1:]] == [MOMENTS_Q16[2 * h] for h in range(4)]
    salie = rows(run(capsys, "moments", "--r", "4", "--h-max", "4", "--method", "salie")[1])
    assert [int(v) for _, v in salie[1:]] == list(MOMENTS_Q16[:5])


def test_output_file(capsys, tmp_path):
    dest = tmp_path / "t1.txt"
    assert main(["wdist", "--r", "4", "--format", "paper", "--output", str(dest)]) == 0
    assert dest.read_text() == (GOLDEN / "wdist_q16.txt").read_text()
    assert capsys.readouterr().out == ""


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--r", "4", "--h-max", "10")
    assert code == 0 and out.rstrip().endswith("PASS") and "FAIL" not in out
    code, out, _ = run(capsys, "verify", "--r", "1", "--h-max", "2")
    assert code == 0 and "SKIPPED moments: SO-(4,q)" in out


def test_verify_failure_exit_1(capsys, monkeypatch):
    from kloomo import moments
    monkeypatch.setattr(moments, "salie_mk", lambda ctx, h: moments.MomentSeries("MK", ctx, (0,) * (h + 1)))
    code, out, _ = run(capsys, "verify", "--r", "2", "--h-max", "3")
    assert code == 1 and "FAIL    moments: Salie" in out


@pytest.mark.parametrize("argv", [
    ["wdist", "--r", "4", "--method", "brute"],
    ["moments", "--r", "6", "--h-max", "12", "--method", "direct"],
    ["ksum", "--r", "8", "--all"],
    ["verify", "--r", "3", "--h-max", "4"],
])
def test_jobs_do_not_change_output(capsys, argv):
    outs = {run(capsys, *argv, "--jobs", str(j))[1] for j in (1, 2, 4)}
    assert len(outs) == 1


def test_budget_flag(capsys):
    assert run(capsys, "ksum", "--r", "4", "--a", "1", "--m", "3", "--budget", "10")[0] == 2
    assert run(capsys, "ksum", "--r", "4", "--a", "1", "--m", "3", "--budget", "4096")[0] == 0


def test_env_budget(monkeypatch, capsys):
    monkeypatch.setenv("KLOOMO_BUDGET", "10")
    assert run(capsys, "ksum", "--r", "4", "--a", "1", "--m", "3")[0] == 2


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "kloomo", "ksum", "--r", "2", "--a", "1"],
                         capture_output=True, text=True, check=True).stdout
    assert out == "a_hex,K\n0x1,3\n"
