import registry


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not registry.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, passed, detail in sorted(registry.RESULTS):
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[{status}] criterion {number} ({title}): {detail}")
