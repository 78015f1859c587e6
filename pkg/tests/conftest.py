from pathlib import Path

import pytest

from gauge_ca import GaugeElement, abelian_group, symmetric_group

ROOT = Path(__file__).resolve().parents[1]
SCENARIOS = ROOT / "scenarios"
GOLDEN = Path(__file__).parent / "golden"
MALFORMED = Path(__file__).parent / "data" / "malformed"

TAU = GaugeElement((1, 0))


@pytest.fixture(scope="session")
def z2():
    return abelian_group()


@pytest.fixture(scope="session")
def s3():
    return symmetric_group(3)


def pytest_terminal_summary(terminalreporter):
    """One PASS/FAIL line per acceptance criterion, in criterion order."""
    lines = []
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py::test_criterion_" not in nodeid or rep.when not in ("call", "setup"):
                continue
            if rep.when == "setup" and rep.passed:
                continue
            name = nodeid.split("::test_criterion_")[1]
            lines.append((name, "PASS" if rep.passed else "FAIL"))
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for name, verdict in sorted(lines):
        number, _, title = name.partition("_")
        terminalreporter.write_line(f"{verdict} criterion {int(number):2d} {title}")
