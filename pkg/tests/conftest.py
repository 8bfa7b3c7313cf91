import sys

import numpy as np
import pytest

from cm_bethe import (
    RationalFunction,
    TranslateX,
    apply_symmetry,
    random_cauchy_pair,
    random_section,
)


@pytest.fixture
def rng():
    return np.random.default_rng(20240531)


def random_complex(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def generic_setup(seed, n_range=(1, 7)):
    """(pair, section, m) from one seed: Cauchy pair, random section, integer m."""
    rng = np.random.default_rng(seed)
    n = int(rng.integers(*n_range))
    pair = random_cauchy_pair(rng, n)
    section = random_section(rng, pair)
    return pair, section, int(rng.integers(-5, 6))


def singular_cauchy_pair(rng, n):
    """Cauchy pair with the first position at 0, so det X = 0."""
    pair = random_cauchy_pair(rng, n)
    return apply_symmetry(pair, TranslateX(RationalFunction(poly=[-pair.X[0, 0]])))


def pytest_terminal_summary(terminalreporter):
    results = sys.modules.get("test_acceptance")
    if results is None or not results.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results.RESULTS):
        terminalreporter.write_line(results.RESULTS[number])
