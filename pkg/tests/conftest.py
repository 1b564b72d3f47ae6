"""Shared pytest hooks: surface the acceptance verdict lines.

The acceptance tests register one "criterion NN: PASS/FAIL" line each;
printing them from inside a test would be swallowed by output capture, so
they are replayed in the terminal summary after the run.
"""

acceptance_verdicts = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if acceptance_verdicts:
        terminalreporter.section("acceptance criteria")
        for line in acceptance_verdicts:
            terminalreporter.write_line(line)
