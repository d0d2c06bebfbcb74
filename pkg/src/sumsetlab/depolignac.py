"""Covering-congruence certificates and prime-plus-power-of-two scans.

A covering system pairs each residue class a_i (mod m_i) with a prime q_i
dividing 2^m_i - 1. When the classes cover all integers, the Chinese
remainder theorem produces an arithmetic progression of odd numbers n such
that every n - 2^k is divisible by some q_i, so n is never a prime plus a
power of two unless n - 2^k equals q_i itself. The scanners here audit
that claim by brute force rather than trusting it, and measure the
empirical density of odd numbers that ARE representable.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from importlib import resources
from typing import NamedTuple

import numpy as np

from .arith import PrimeTable, is_prime, sieve_primes
from .errors import CRTError, MalformedSystemError, NotCoveringError

__all__ = [
    "CoveringEntry",
    "CoveringSystem",
    "APCertificate",
    "ScanReport",
    "CoverCheck",
    "covering_verify",
    "crt_combine",
    "ap_scan",
    "romanov_density_scan",
    "default_covering_system",
]


@dataclass(frozen=True)
class CoveringEntry:
    """Residue class ``residue (mod modulus)`` tagged with its prime divisor of 2^modulus - 1."""

    residue: int
    modulus: int
    prime: int


@dataclass(frozen=True)
class CoveringSystem:
    """A finite family of residue classes with order-of-2 witnesses."""

    entries: tuple[CoveringEntry, ...]

    @property
    def lcm(self) -> int:
        return math.lcm(*(e.modulus for e in self.entries)) if self.entries else 1

    def validate(self) -> None:
        """Structural audit; raises MalformedSystemError on any violation.

        Checks per entry: modulus >= 2, prime is actually prime, primes
        pairwise distinct, and 2^modulus == 1 (mod prime).
        """
        seen: set[int] = set()
        for e in self.entries:
            if e.modulus < 2:
                raise MalformedSystemError(f"modulus {e.modulus} < 2 in entry {e}")
            if e.prime < 2 or not is_prime(e.prime):
                raise MalformedSystemError(f"q={e.prime} is not prime in entry {e}")
            if e.prime in seen:
                raise MalformedSystemError(f"duplicate prime q={e.prime}")
            seen.add(e.prime)
            if pow(2, e.modulus, e.prime) != 1:
                raise MalformedSystemError(
                    f"q={e.prime} does not divide 2^{e.modulus} - 1"
                )

    @classmethod
    def from_entries(cls, triples) -> "CoveringSystem":
        return cls(tuple(CoveringEntry(int(a), int(m), int(q)) for a, m, q in triples))

    def to_json(self) -> dict:
        return {
            "entries": [
                {"residue": e.residue, "modulus": e.modulus, "prime": e.prime}
                for e in self.entries
            ]
        }

    @classmethod
    def from_json(cls, obj: dict) -> "CoveringSystem":
        return cls.from_entries(
            (e["residue"], e["modulus"], e["prime"]) for e in obj["entries"]
        )


class CoverCheck(NamedTuple):
    covers: bool
    uncovered: tuple[int, ...]  # residues mod lcm missed by every class


def covering_verify(system: CoveringSystem) -> CoverCheck:
    """Decide whether the residue classes cover every integer.

    Scans all residues modulo the lcm of the moduli; the empty system
    covers nothing.

    Raises:
        MalformedSystemError: structural invariant violated.
    """
    system.validate()
    L = system.lcm
    uncovered = tuple(
        k
        for k in range(L)
        if not any((k - e.residue) % e.modulus == 0 for e in system.entries)
    )
    return CoverCheck(covers=bool(system.entries) and not uncovered, uncovered=uncovered)


@dataclass(frozen=True)
class APCertificate:
    """Arithmetic progression residue (mod modulus) of odd numbers n with
    some system prime dividing n - 2^k for every k >= 1."""

    residue: int
    modulus: int
    source: CoveringSystem | None = None

    def __post_init__(self) -> None:
        if not 0 < self.residue < self.modulus:
            raise ValueError(f"residue must lie in (0, modulus), got {self.residue}")
        if self.residue % 2 == 0:
            raise ValueError(f"certificate residue must be odd, got {self.residue}")
        if self.source is not None:
            for e in self.source.entries:
                if self.residue % e.prime != pow(2, e.residue, e.prime):
                    raise ValueError(
                        f"residue {self.residue} != 2^{e.residue} (mod {e.prime})"
                    )

    def to_json(self) -> dict:
        payload = {"residue": self.residue, "modulus": self.modulus}
        if self.source is not None:
            payload["source"] = self.source.to_json()
        return payload


def _crt(residues: list[int], moduli: list[int]) -> tuple[int, int]:
    """Solve the simultaneous congruences; moduli must be pairwise coprime."""
    r, m = 0, 1
    for a, n in zip(residues, moduli):
        if math.gcd(m, n) != 1:
            raise CRTError(f"moduli {m} and {n} are not coprime")
        r += m * ((a - r) * pow(m, -1, n) % n)
        m *= n
    return r % m, m


def crt_combine(system: CoveringSystem) -> APCertificate:
    """Combine a verified covering system into a progression certificate.

    Solves n == 1 (mod 2) and n == 2^a_i (mod q_i) for all entries. Any n
    in the resulting class has, for every k >= 1, some q_i dividing
    n - 2^k: pick the entry covering k, then 2^k == 2^a_i (mod q_i).

    Raises:
        MalformedSystemError: invalid entry data.
        NotCoveringError: the system leaves some k uncovered.
        CRTError: non-coprime moduli (distinct odd primes never trigger this).
    """
    check = covering_verify(system)
    if not check.covers:
        raise NotCoveringError(
            f"system misses residues {check.uncovered[:8]} (mod {system.lcm})"
        )
    residues = [1] + [pow(2, e.residue, e.prime) for e in system.entries]
    moduli = [2] + [e.prime for e in system.entries]
    r, m = _crt(residues, moduli)
    return APCertificate(residue=r, modulus=m, source=system)


@dataclass(frozen=True)
class ScanReport:
    """Outcome of a representation scan.

    exceptions holds (n, p, k) witnesses with n = p + 2^k and p prime;
    representable_fraction is filled by the density scan only.
    """

    limit: int
    members_scanned: int
    exceptions: tuple[tuple[int, int, int], ...] = ()
    representable_fraction: float | None = None


def _table_for(limit: int, table: PrimeTable | None) -> PrimeTable:
    if table is None or table.limit < limit:
        return sieve_primes(max(limit, 2))
    return table


def ap_scan(
    cert: APCertificate,
    limit: int,
    k_min: int = 1,
    table: PrimeTable | None = None,
) -> ScanReport:
    """Test every progression member n <= limit for n = p + 2^k.

    For each member, every exponent k >= k_min with 2^k < n is tried
    against a sieve; any representable member is recorded with its
    smallest-k witness rather than assumed away (n - 2^k can equal a
    system prime, which IS prime).
    """
    if limit < 1:
        raise ValueError(f"limit must be >= 1, got {limit}")
    if k_min < 0:
        raise ValueError(f"k_min must be >= 0, got {k_min}")
    table = _table_for(limit, table)
    isp = table.is_prime
    exceptions = []
    scanned = 0
    n = cert.residue
    while n <= limit:
        scanned += 1
        k = k_min
        while (1 << k) < n:
            p = n - (1 << k)
            if isp[p]:
                exceptions.append((n, p, k))
                break
            k += 1
        n += cert.modulus
    return ScanReport(limit=limit, members_scanned=scanned, exceptions=tuple(exceptions))


def romanov_density_scan(
    limit: int,
    k_min: int = 1,
    table: PrimeTable | None = None,
) -> ScanReport:
    """Fraction of odd n <= limit representable as prime + 2^k, k >= k_min.

    Marks p + 2^k over the whole range for every prime p and admissible k,
    then counts marked odd values; even sums (p = 2) fall outside the odd
    count automatically.
    """
    if limit < 3:
        raise ValueError(f"limit must be >= 3, got {limit}")
    if k_min < 0:
        raise ValueError(f"k_min must be >= 0, got {k_min}")
    table = _table_for(limit, table)
    marked = np.zeros(limit + 1, dtype=bool)
    k = k_min
    while (1 << k) + 2 <= limit:
        power = 1 << k
        ps = table.primes[table.primes <= limit - power]
        marked[ps + power] = True
        k += 1
    odd_total = (limit + 1) // 2
    odd_hits = int(np.count_nonzero(marked[1::2]))
    return ScanReport(
        limit=limit,
        members_scanned=odd_total,
        representable_fraction=odd_hits / odd_total,
    )


def default_covering_system() -> CoveringSystem:
    """The classical six-entry covering system shipped with the package."""
    data = resources.files("sumsetlab.data").joinpath("erdos_covering.json")
    return CoveringSystem.from_json(json.loads(data.read_text()))
