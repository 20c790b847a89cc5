import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

_ACCEPTANCE: dict[str, list] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance: acceptance criterion")


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "call" or report.outcome != "passed":
        name = report.nodeid.split("::")[-1]
        crit = name.split("_")[1].upper()
        _ACCEPTANCE.setdefault(crit, []).append((name, report.outcome, report.duration))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for crit in sorted(_ACCEPTANCE, key=lambda c: int(c[2:])):
        runs = _ACCEPTANCE[crit]
        ok = all(outcome == "passed" for _, outcome, _ in runs)
        secs = sum(d for _, _, d in runs)
        label = runs[0][0].split("[")[0].split("_", 2)[2].replace("_", " ")
        terminalreporter.write_line(f"{crit} {label}: {'PASS' if ok else 'FAIL'} ({secs:.2f}s)")
