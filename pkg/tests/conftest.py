from fractions import Fraction

import pytest

FIG4_TEXT = "p nae 4 3\n1 3 4\n1 2 4\n1 2 3\n"
FANO_TEXT = "p nae 7 7\n1 2 3\n1 4 5\n1 6 7\n2 4 6\n2 5 7\n3 4 7\n3 5 6\n"

# clique (-1,0), (0,1), (1,0); rays (-3/2,0), (3/2,0), (0,-3/2), numbered as make_pattern(SUN, 3)
S3_POINTS = [
    (Fraction(-1), Fraction(0)),
    (Fraction(0), Fraction(1)),
    (Fraction(1), Fraction(0)),
    (Fraction(-3, 2), Fraction(0)),
    (Fraction(3, 2), Fraction(0)),
    (Fraction(0), Fraction(-3, 2)),
]

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
