import pytest

from mondrian_sieve.arithmetic import ArithmeticCache


@pytest.fixture(scope="session")
def cache() -> ArithmeticCache:
    return ArithmeticCache(10**6)
