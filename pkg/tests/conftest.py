import random

from hypothesis import strategies as st

from ordsum.randgen import random_ordinal, random_sequence

seeds = st.integers(min_value=0, max_value=2**32)
ordinals = seeds.map(lambda k: random_ordinal(random.Random(k)))
sequences = seeds.map(lambda k: random_sequence(random.Random(k)))

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
