import re
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

# criterion number -> (passed, label); filled by test_acceptance
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def criterion():
    def record(number: int, label: str, ok: bool, detail: str = ""):
        ACCEPTANCE[number] = (bool(ok), label if ok or not detail else f"{label} ({detail})")
        assert ok, f"criterion {number} failed: {label} {detail}"
    return record


def pytest_terminal_summary(terminalreporter):
    # a criterion test that raised before recording still gets a FAIL line
    for rep in terminalreporter.stats.get("failed", []):
        m = re.search(r"test_criterion_(\d+)", rep.nodeid)
        if m and int(m.group(1)) not in ACCEPTANCE:
            ACCEPTANCE[int(m.group(1))] = (False, f"{rep.nodeid.split('::')[-1]} raised")
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        ok, label = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'} - {label}")
