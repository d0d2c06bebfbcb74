import pytest

from sumsetlab import BlockSet, GrowthSchedule, sieve_primes


@pytest.fixture(scope="session")
def table_small():
    return sieve_primes(1000)


@pytest.fixture(scope="session")
def table_cheb():
    # covers the 10^4-th odd prime (104743) with room to spare
    return sieve_primes(120_000)


@pytest.fixture(scope="session")
def table_1e6():
    return sieve_primes(10**6)


@pytest.fixture(scope="session")
def poly_blocks(table_small):
    return BlockSet.materialize(GrowthSchedule.polynomial(), 6, table_small)


@pytest.fixture(scope="session")
def paper_blocks(table_small):
    return BlockSet.materialize(GrowthSchedule.paper(), 3, table_small)
