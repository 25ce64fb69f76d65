import os
import random

import hypothesis.strategies as st
from hypothesis import HealthCheck, settings

from evimg.generate import (
    fdvect_corpus,
    finmet_corpus,
    finposet_corpus,
    random_invertible,
)

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("ci", max_examples=300, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def _one(gen, **kw):
    return seeds.map(lambda s: next(gen(random.Random(s), 1, **kw)))


@st.composite
def finset_tables(draw, max_size=8, min_size=0):
    n = draw(st.integers(min_size, max_size))
    return tuple(draw(st.lists(st.integers(0, n - 1), min_size=n, max_size=n))) if n else ()


fdvect_endos = _one(fdvect_corpus, max_dim=5)
finmet_endos = _one(finmet_corpus, max_size=6)
finposet_endos = _one(finposet_corpus, max_size=6)


@st.composite
def invertible_matrices(draw, max_dim=5):
    n = draw(st.integers(0, max_dim))
    return random_invertible(random.Random(draw(seeds)), n)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
