import pytest

from symcanon import FieldSpec, classify, general_rank_strata, symmetric_rank_strata

# every (p, k) with a stored reference table
ALL_PAIRS = [(2, 3), (3, 3), (5, 3), (7, 3), (11, 3), (13, 3), (17, 3),
             (2, 4), (3, 4), (5, 4), (7, 4)]


def _memoized(compute):
    cache = {}

    def get(p, k):
        if (p, k) not in cache:
            cache[(p, k)] = compute(FieldSpec(p), k)
        return cache[(p, k)]

    return get


@pytest.fixture(scope="session")
def strata_for():
    return _memoized(symmetric_rank_strata)


@pytest.fixture(scope="session")
def classification_for():
    return _memoized(classify)


@pytest.fixture(scope="session")
def general_for():
    return _memoized(general_rank_strata)
