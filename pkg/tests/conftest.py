import pytest


def pytest_terminal_summary(terminalreporter):
    lines = []
    for key in ("passed", "failed"):
        for rep in terminalreporter.stats.get(key, []):
            for name, value in getattr(rep, "user_properties", []):
                if name == "criterion":
                    lines.append(value)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)


@pytest.fixture
def criterion(record_property):
    """Report one acceptance line, then fail the test if there are problems."""

    def report(number: int, title: str, problems: list):
        status = "PASS" if not problems else "FAIL"
        line = f"criterion {number}: {status} {title}"
        if problems:
            line += f" ({len(problems)} problems, first: {problems[0]})"
        print(line)
        record_property("criterion", line)
        assert not problems, "\n".join(map(str, problems[:20]))

    return report
