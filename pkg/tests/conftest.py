import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

# filled in by test_acceptance.py; printed once at the end of the run
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section('acceptance criteria')
    for number in sorted(ACCEPTANCE):
        name, ok, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f'[{"PASS" if ok else "FAIL"}] {number:>2}. {name}: {detail}')
