from fractions import Fraction

from hypothesis import strategies as st

rationals = st.builds(Fraction, st.integers(-20, 20), st.integers(1, 9))
small_rationals = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))

ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
