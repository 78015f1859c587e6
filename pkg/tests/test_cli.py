import re
import subprocess
import sys

import pytest

from gauge_ca.cli import main, run_checks
from gauge_ca.scenario import parse_scenario

from conftest import GOLDEN, MALFORMED, SCENARIOS

LINE = re.compile(r"^(PASS|FAIL) [a-z_]+ cases=\d+( \S+)*$")

EXPECTED_STATUS = {
    "fig6a": 0,
    "fig7a": 0,
    "fig9b": 0,
    "line_example": 0,
    "quantum_free": 0,
    "quantum_interacting": 0,
    "bare_noninvariant": 1,
    "nonabelian_literal": 1,
}


@pytest.mark.parametrize("name,status", sorted(EXPECTED_STATUS.items()))
def test_check_exit_status(name, status, capsys):
    assert main(["check", str(SCENARIOS / f"{name}.scn")]) == status
    out = capsys.readouterr().out.splitlines()
    assert out
    for line in out:
        assert LINE.match(line), line
    assert all(l.startswith("PASS") for l in out) == (status == 0)


def test_failures_carry_witness(capsys):
    main(["check", str(SCENARIOS / "bare_noninvariant.scn")])
    out = capsys.readouterr().out
    assert "FAIL local_invariance" in out
    assert "witness=" in out


def test_abelian_local_case_count(capsys):
    main(["check", str(SCENARIOS / "fig6a.scn")])
    assert "PASS local_invariance cases=128" in capsys.readouterr().out


def test_simulate_matches_golden(capsys):
    assert main(["simulate", str(SCENARIOS / "fig6a.scn")]) == 0
    assert capsys.readouterr().out == (GOLDEN / "fig6a.txt").read_text()


def test_simulate_out_and_steps(tmp_path):
    out = tmp_path / "d.svg"
    assert main(["simulate", str(SCENARIOS / "fig6c.scn"), "--format", "svg", "--steps", "2", "--out", str(out)]) == 0
    assert out.read_text().startswith("<svg")
    txt = tmp_path / "d.txt"
    main(["simulate", str(SCENARIOS / "fig6a.scn"), "--steps", "2", "--out", str(txt)])
    rows = [l for l in txt.read_text().splitlines() if not l.startswith("#")]
    assert len(rows) == 3


def test_check_out_and_seed(tmp_path, capsys):
    report = tmp_path / "r.txt"
    assert main(["check", str(SCENARIOS / "quantum_free.scn"), "--seed", "5", "--out", str(report)]) == 0
    assert report.read_text() == capsys.readouterr().out
    assert "seed=5" in report.read_text()


@pytest.mark.parametrize("path", sorted(MALFORMED.glob("*.scn")), ids=lambda p: p.stem)
def test_parse_errors_exit_2(path, capsys):
    assert main(["check", str(path)]) == 2
    err = capsys.readouterr().err
    assert re.search(r"line \d+, column \d+: ", err)


def test_missing_file_and_bad_overrides(tmp_path, capsys):
    assert main(["simulate", str(tmp_path / "absent.scn")]) == 2
    assert main(["simulate", str(SCENARIOS / "fig6a.scn"), "--steps", "-1"]) == 2
    assert main(["check", str(SCENARIOS / "fig6a.scn"), "--seed", "-3"]) == 2


def test_machinery_error_is_distinct(tmp_path, capsys):
    path = tmp_path / "tight.scn"
    path.write_text(
        "[model]\nkind = quantum\nmass = 0\ncharge = 0\nl_max = 0\n"
        "[topology]\nkind = ring\nsize = 3\n[matter]\n0 = 0,1\n[run]\nsteps = 2\nchecks = quantum_norm\n"
    )
    assert main(["check", str(path)]) == 2
    assert capsys.readouterr().out.startswith("ERROR quantum_norm TruncationError")
    assert main(["simulate", str(path)]) == 2


def test_no_checks_passes():
    s = parse_scenario("[model]\nkind = abelian\n")
    assert run_checks(s) == (0, "")


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "gauge_ca", "check", str(SCENARIOS / "fig7a.scn")], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert proc.stdout.startswith("PASS local_invariance cases=17496")
