"""Exact integer and rational arithmetic primitives.

Provides the prime table that backs all sieve work, odd primorials,
Möbius-signed squarefree divisor enumeration, Legendre-style coprime
counting, Chebyshev and Mertens evaluations, and base-2 logarithms of
arbitrary-precision integers.

Everything here is a pure function of immutable inputs; a PrimeTable is
never mutated after construction and may be shared freely between
threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple

import numpy as np

from .errors import CapacityError

__all__ = [
    "PrimeTable",
    "ChebyshevCheck",
    "sieve_primes",
    "sieve_covering_odd",
    "is_prime",
    "odd_primorial",
    "check_chebyshev",
    "mertens_product",
    "squarefree_divisors_signed",
    "legendre_count",
    "big_log2",
]

# Deterministic Miller-Rabin witness set; sound for every n below this bound.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_BOUND = 3_317_044_064_679_887_385_961_981


@dataclass(frozen=True, eq=False)
class PrimeTable:
    """All primes up to ``limit`` plus running log sums over the odd primes.

    Attributes:
        limit: Inclusive sieve bound (>= 2).
        primes: Ascending int64 array of all primes <= limit.
        is_prime: Boolean lookup array of length limit + 1.
        theta_prefix: float64 array; theta_prefix[i] = sum of log p over
            the first i + 1 odd primes (3, 5, 7, ...), i.e. the Chebyshev
            theta sum at the (i + 1)-th odd prime with 2 excluded.
    """

    limit: int
    primes: np.ndarray
    is_prime: np.ndarray
    theta_prefix: np.ndarray

    @property
    def odd_primes(self) -> np.ndarray:
        return self.primes[1:]

    @property
    def odd_count(self) -> int:
        return int(self.odd_primes.size)

    def odd_prime(self, i: int) -> int:
        """The i-th odd prime (1-based: odd_prime(1) == 3)."""
        if i < 1:
            raise ValueError(f"odd prime index must be >= 1, got {i}")
        if i > self.odd_count:
            raise CapacityError(
                f"table up to {self.limit} holds only {self.odd_count} odd primes, "
                f"index {i} requested"
            )
        return int(self.odd_primes[i - 1])


def sieve_primes(limit: int) -> PrimeTable:
    """Sieve of Eratosthenes up to ``limit`` with odd-prime log prefix sums.

    Args:
        limit: Inclusive upper bound, must be >= 2.

    Returns:
        A PrimeTable covering [2, limit].

    Raises:
        ValueError: limit < 2 (the table would be empty).
    """
    if limit < 2:
        raise ValueError(f"sieve limit must be >= 2, got {limit}")
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    primes = np.flatnonzero(flags).astype(np.int64)
    # Sequential accumulation keeps consecutive differences within one
    # rounding of log(p_i), which the table invariant relies on.
    theta = np.cumsum(np.log(primes[1:].astype(np.float64)))
    return PrimeTable(limit=limit, primes=primes, is_prime=flags, theta_prefix=theta)


def sieve_covering_odd(count: int) -> PrimeTable:
    """A prime table guaranteed to contain at least ``count`` odd primes."""
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    n = count + 1  # prime index including 2
    if n < 6:
        limit = 15
    else:
        # Rosser-Schoenfeld upper bound on the n-th prime.
        limit = int(n * (math.log(n) + math.log(math.log(n)))) + 10
    return sieve_primes(limit)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin primality test for n < 3.3e24.

    Raises:
        ValueError: n is beyond the deterministic witness bound.
    """
    if n >= _MR_BOUND:
        raise ValueError(f"{n} exceeds the deterministic Miller-Rabin bound")
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n == p:
            return True
        if n % p == 0:
            return False
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def odd_primorial(t: int, table: PrimeTable) -> int:
    """Product of the first t odd primes: 3 * 5 * 7 * ... (exact).

    Raises:
        ValueError: t < 1.
        CapacityError: the table holds fewer than t odd primes.
    """
    if t < 1:
        raise ValueError(f"t must be >= 1, got {t}")
    if t > table.odd_count:
        raise CapacityError(
            f"table up to {table.limit} holds only {table.odd_count} odd primes, "
            f"{t} requested"
        )
    return math.prod(int(p) for p in table.odd_primes[:t])


class ChebyshevCheck(NamedTuple):
    theta: float
    bound: float
    holds: bool


def check_chebyshev(j: int, table: PrimeTable) -> ChebyshevCheck:
    """Compare the odd-prime log sum at the j-th odd prime against 2*j*log(j).

    theta = sum of log p over odd primes up to p_j; holds iff
    theta <= 2*j*log(j). At j = 1 the bound is 0, so holds is False:
    the estimate only kicks in from j = 2.
    """
    if j < 1:
        raise ValueError(f"j must be >= 1, got {j}")
    if j > table.odd_count:
        raise CapacityError(f"table holds only {table.odd_count} odd primes")
    theta = float(table.theta_prefix[j - 1])
    bound = 2.0 * j * math.log(j)
    return ChebyshevCheck(theta=theta, bound=bound, holds=theta <= bound)


def mertens_product(j: int, table: PrimeTable, include_two: bool = False) -> Fraction:
    """Exact rational product of (1 - 1/p) over the first j odd primes.

    Args:
        j: Number of odd primes in the product (j >= 1).
        table: Prime table covering at least j odd primes.
        include_two: Multiply an extra (1 - 1/2) into the product. The
            sieve-facing callers always use the odd-only product; the flag
            exists for exploratory comparison.

    Returns:
        The product as a Fraction in lowest terms.
    """
    if j < 1:
        raise ValueError(f"j must be >= 1, got {j}")
    if j > table.odd_count:
        raise CapacityError(f"table holds only {table.odd_count} odd primes")
    product = Fraction(1, 2) if include_two else Fraction(1)
    for p in table.odd_primes[:j]:
        p = int(p)
        product *= Fraction(p - 1, p)
    return product


def squarefree_divisors_signed(modulus_primes: Iterable[int]) -> list[tuple[int, int]]:
    """All squarefree divisors of the product of distinct primes, with Möbius signs.

    Returns the 2^k pairs (divisor, mu(divisor)) where mu is (-1)^(number
    of prime factors). The empty input yields [(1, +1)].

    Raises:
        ValueError: the input contains duplicates.
    """
    primes = sorted(int(p) for p in modulus_primes)
    if len(primes) != len(set(primes)):
        raise ValueError(f"modulus primes must be distinct, got {primes}")
    divisors = [(1, 1)]
    for p in primes:
        divisors.extend([(d * p, -sign) for d, sign in divisors])
    return divisors


def legendre_count(x: int, modulus_primes: Iterable[int]) -> int:
    """Exact count of 1 <= c <= x coprime to the product of the given primes.

    Evaluates sum over squarefree divisors l of mu(l) * floor(x / l); pure
    integer arithmetic, valid for x of any bit length.

    Raises:
        ValueError: x < 0.
    """
    x = int(x)
    if x < 0:
        raise ValueError(f"x must be >= 0, got {x}")
    return sum(sign * (x // d) for d, sign in squarefree_divisors_signed(modulus_primes))


def big_log2(x: int) -> float:
    """log2 of a positive integer of any bit length.

    Uses the top 53 bits as an exact float mantissa plus the bit length,
    so powers of two come out exactly and the relative error stays below
    1e-12 for any practical input.

    Raises:
        ValueError: x <= 0.
    """
    x = int(x)
    if x <= 0:
        raise ValueError(f"log2 needs a positive integer, got {x}")
    bits = x.bit_length()
    if bits <= 53:
        return math.log2(x)
    shift = bits - 53
    return math.log2(x >> shift) + shift
