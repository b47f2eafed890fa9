import functools

import pytest

from tangentbase.graphs import enumerate_max_degenerate


def pytest_addoption(parser):
    parser.addoption(
        "--regen-golden", action="store_true", default=False,
        help="rewrite the golden files for the CLI tests instead of comparing")


@pytest.fixture
def regen_golden(request):
    return request.config.getoption("--regen-golden")


@functools.lru_cache(maxsize=None)
def enumerated(genus, legs):
    """Shared cache so the larger families are enumerated once per session."""
    return tuple(enumerate_max_degenerate(genus, legs))


# (genus, legs) families with 3g - 3 + n <= 3, i.e. at most three edges
FAMILIES_3 = ((0, 3), (0, 4), (0, 5), (0, 6), (1, 1), (1, 2), (1, 3), (2, 0))

# the six families whose counts the brute-force oracle fixes
ORACLE_FAMILIES = ((0, 3), (0, 4), (0, 5), (1, 1), (1, 2), (2, 0))

# families with at most four edges, for the exhaustive group-law checks
FAMILIES_4 = FAMILIES_3 + ((0, 7), (1, 4), (2, 1))
