import pytest

from legwalk.primes import sieve_upto


@pytest.fixture(scope="session")
def table_1e5():
    return sieve_upto(10**5 + 1)


@pytest.fixture(scope="session")
def table_1e6():
    return sieve_upto(10**6 + 1)


@pytest.fixture(scope="session")
def table_1e7():
    return sieve_upto(10**7 + 1)
