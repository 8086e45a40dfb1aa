from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from octavics.relations import default_relations_path, load_relations

settings.register_profile(
    "exact",
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("exact")

DATA = Path(__file__).parent / "data"

# results of the acceptance criteria, filled in by test_acceptance.py
ACCEPTANCE: dict[str, tuple[bool, str]] = {}


@pytest.fixture(scope="session")
def relations():
    return load_relations(default_relations_path())


@pytest.fixture(scope="session")
def band_reference():
    rows = []
    for line in (DATA / "band_reference.txt").read_text().splitlines():
        if line.startswith("#") or not line.strip():
            continue
        rows.append(tuple(int(v) for v in line.split()[1:]))
    return rows


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    def order(name):
        head = name.split()[0]
        digits = "".join(ch for ch in head if ch.isdigit())
        return int(digits), head

    for name in sorted(ACCEPTANCE, key=order):
        ok, detail = ACCEPTANCE[name]
        terminalreporter.write_line(f"criterion {name}: {'PASS' if ok else 'FAIL'}  {detail}")
