import sys


def pytest_terminal_summary(terminalreporter):
    """Echo the acceptance PASS/FAIL lines after the run, capture or not."""
    mod = sys.modules.get("test_acceptance")
    if mod is not None and getattr(mod, "RESULTS", None):
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
