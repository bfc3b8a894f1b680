import pytest

_VERDICTS: list[str] = []


@pytest.fixture
def verdict():
    """Record and print one PASS/FAIL line, then assert on it."""

    def report(number: int, title: str, cases: int, failures: list) -> None:
        head = "PASS" if not failures else "FAIL"
        line = f"{head} criterion {number:2d} {title}: cases={cases}"
        if failures:
            line += f" failures={len(failures)} first={failures[0]}"
        _VERDICTS.append(line)
        print(line)
        assert not failures, line

    return report


def pytest_terminal_summary(terminalreporter):
    if _VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_VERDICTS, key=lambda s: int(s.split()[2])):
            terminalreporter.write_line(line)
