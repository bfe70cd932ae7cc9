import pytest

from sunitfermat.quadfield import make_field


@pytest.fixture
def K13():
    return make_field(13)


@pytest.fixture
def K21():
    return make_field(21)


ACCEPTANCE_LINES = []


def record(number, name, ok, detail=""):
    line = f"{'PASS' if ok else 'FAIL'} criterion {number:>2}: {name}" + (f" [{detail}]" if detail else "")
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
