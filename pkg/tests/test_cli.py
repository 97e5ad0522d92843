"""CLI surface: argument handling, JSON schema, renders, exit codes."""

import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from minuscule import cli

GOLDEN = Path(__file__).parent / "golden"


def run_cli(*args):
    out = io.StringIO()
    old = sys.stdout
    sys.stdout = out
    try:
        code = cli.main(list(args))
    finally:
        sys.stdout = old
    return code, out.getvalue()


def test_parse_space():
    assert str(cli.parse_space("A6/4")) == "A6/4"
    assert str(cli.parse_space("D5/5")) == "D5/5"
    for bad in ("B3/1", "A6", "E8/1", "A6/9", "D4/2"):
        with pytest.raises(cli.UsageError):
            cli.parse_space(bad)


def test_analyze_json_worked_example():
    code, out = run_cli(
        "analyze", "--space", "A6/4", "--partition", "3,2,1,1"
    )
    assert code == 0
    doc = json.loads(out)
    assert list(doc)[:7] == [
        "space", "ideal_mask", "partition", "permutation",
        "dimension", "smooth", "gorenstein",
    ]
    assert doc["space"] == "A6/4"
    assert doc["ideal_mask"] == "0xfc8"
    assert doc["permutation"] == "2357146"
    assert doc["dimension"] == 7
    assert doc["smooth"] is False and doc["gorenstein"] is False
    assert len(doc["holes"]) == 2
    assert len(doc["singular_components"]) == 2
    assert len(doc["non_gorenstein_holes"]) == 1
    comps = {c["partition"]: c for c in doc["singular_components"]}
    assert comps["3"]["permutation"] == "1237456"
    assert comps["1,1,1,1"]["permutation"] == "2345167"


def test_analyze_inputs_agree():
    base = run_cli("analyze", "--space", "A6/4", "--partition", "3,2,1,1")[1]
    by_mask = run_cli("analyze", "--space", "A6/4", "--ideal", "0xfc8")[1]
    by_word = run_cli(
        "analyze", "--space", "A6/4", "--word", "1,2,4,6,3,5,4"
    )[1]
    assert base == by_mask == by_word


def test_analyze_word_any_reduced_expression():
    # a different reduced word for the same element resolves to the same
    # ideal
    base = run_cli("analyze", "--space", "A6/4", "--word", "1,2,4,6,3,5,4")[1]
    other = run_cli("analyze", "--space", "A6/4", "--word", "4,6,1,2,3,5,4")[1]
    assert base == other


def test_analyze_rejects_bad_inputs():
    assert run_cli("analyze", "--space", "A6/4")[0] == 1
    assert run_cli(
        "analyze", "--space", "A6/4", "--ideal", "0x1", "--word", "4"
    )[0] == 1
    assert run_cli("analyze", "--space", "A6/4", "--ideal", "0x1")[0] == 1  # not an ideal
    assert run_cli("analyze", "--space", "A6/4", "--word", "4,4")[0] == 1  # not reduced
    assert run_cli("analyze", "--space", "A6/4", "--word", "1")[0] == 1  # not minimal
    assert run_cli("analyze", "--space", "D4/4", "--partition", "1")[0] == 1
    assert run_cli("bogus",)[0] == 1


def test_analyze_text_format():
    code, out = run_cli(
        "analyze", "--space", "A6/4", "--partition", "3,2,1,1",
        "--format", "text",
    )
    assert code == 0
    assert "smooth: no" in out and "gorenstein: no" in out
    assert out.count("singular component") == 2


def test_enumerate_text():
    code, out = run_cli("enumerate", "--space", "D4/4")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 8  # 2^{4-1} spinor ideals
    assert lines[0].startswith("0x0 dim=0")
    assert all("gorenstein=" in line for line in lines)


def test_enumerate_json():
    code, out = run_cli("enumerate", "--space", "A2/1", "--format", "json")
    assert code == 0
    records = json.loads(out)
    assert len(records) == 3
    assert all(r["smooth"] for r in records)


def test_verify_single_space_ok():
    code, out = run_cli("verify", "--space", "A6/4", "--suite", "all")
    assert code == 0
    assert "failures=0" in out
    assert out.count(": ok") == len(cli._SUITES)


def test_verify_single_suite():
    code, out = run_cli("verify", "--space", "D4/4", "--suite", "imrac")
    assert code == 0
    assert out.startswith("imrac: ok")


def test_render_golden_ascii(tmp_path):
    code, out = run_cli(
        "render", "--space", "A6/4", "--partition", "3,2,1,1",
        "--format", "ascii",
    )
    assert code == 0
    assert out == (GOLDEN / "a6_4_3211.txt").read_text()
    code, out = run_cli("render", "--space", "D4/4", "--ideal", "0x3f")
    assert code == 0
    assert out == (GOLDEN / "d4_4_full.txt").read_text()


def test_render_golden_svg():
    code, out = run_cli(
        "render", "--space", "A6/4", "--partition", "3,2,1,1",
        "--format", "svg",
    )
    assert code == 0
    assert out == (GOLDEN / "a6_4_3211.svg").read_text()


def test_render_deterministic():
    args = ("render", "--space", "E6/1", "--ideal", "0xffff", "--format", "svg")
    assert run_cli(*args) == run_cli(*args)


def test_out_flag(tmp_path):
    target = tmp_path / "report.json"
    code, _ = run_cli(
        "analyze", "--space", "A6/4", "--partition", "3,2,1,1",
        "--out", str(target),
    )
    assert code == 0
    assert json.loads(target.read_text())["dimension"] == 7


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "minuscule.cli", "enumerate", "--space", "A3/2"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert len(proc.stdout.strip().splitlines()) == 6
