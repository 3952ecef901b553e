import pytest

from coxwalk.roots import build_root_system

# criterion number -> (passed, note); filled in by test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def record(criterion: int, passed: bool, note: str = ""):
    prev = ACCEPTANCE.get(criterion)
    if prev is not None:
        passed = passed and prev[0]
        note = "; ".join(x for x in (prev[1], note) if x)
    ACCEPTANCE[criterion] = (passed, note)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        passed, note = ACCEPTANCE[k]
        line = f"criterion {k}: {'PASS' if passed else 'FAIL'}"
        if note:
            line += f"  ({note})"
        terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def A1():
    return build_root_system("A1")


@pytest.fixture(scope="session")
def A2():
    return build_root_system("A2")


@pytest.fixture(scope="session")
def A3():
    return build_root_system("A3")


@pytest.fixture(scope="session")
def B2():
    return build_root_system("B2")


@pytest.fixture(scope="session")
def G2():
    return build_root_system("G2")
