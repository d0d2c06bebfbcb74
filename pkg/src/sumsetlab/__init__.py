"""Exact-arithmetic toolkit for sumset density experiments.

Builds block sets (multiples of odd primorials over doubling windows),
counts them and their power-of-two sumsets exactly, audits every
inequality of the associated density bound chain with rational
arithmetic, and runs covering-congruence and prime-plus-power-of-two
scans.
"""

from ._version import __version__
from .arith import (
    ChebyshevCheck,
    PrimeTable,
    big_log2,
    check_chebyshev,
    is_prime,
    legendre_count,
    mertens_product,
    odd_primorial,
    sieve_covering_odd,
    sieve_primes,
    squarefree_divisors_signed,
)
from .blocks import (
    Block,
    BlockCountReport,
    BlockSet,
    GrowthSchedule,
    WindowCheck,
    b_member,
    block_index,
    conjecture_ratio,
    count_b,
    count_b_lower_bound,
    grow,
    j_window_check,
)
from .depolignac import (
    APCertificate,
    CoverCheck,
    CoveringEntry,
    CoveringSystem,
    ScanReport,
    ap_scan,
    covering_verify,
    crt_combine,
    default_covering_system,
    romanov_density_scan,
)
from .errors import (
    CapacityError,
    ConfigError,
    CRTError,
    InapplicableError,
    MalformedSystemError,
    NotCoveringError,
    SumsetLabError,
)
from .sumset import (
    RatioPoint,
    SumsetReport,
    c_upper_report,
    enumerate_c,
    ratio_scan,
    s1_bound,
    s2_bound,
    split_s1_s2,
)

__all__ = [
    "__version__",
    "APCertificate",
    "Block",
    "BlockCountReport",
    "BlockSet",
    "CapacityError",
    "ChebyshevCheck",
    "ConfigError",
    "CoverCheck",
    "CoveringEntry",
    "CoveringSystem",
    "CRTError",
    "GrowthSchedule",
    "InapplicableError",
    "MalformedSystemError",
    "NotCoveringError",
    "PrimeTable",
    "RatioPoint",
    "ScanReport",
    "SumsetLabError",
    "SumsetReport",
    "WindowCheck",
    "ap_scan",
    "b_member",
    "big_log2",
    "block_index",
    "c_upper_report",
    "check_chebyshev",
    "conjecture_ratio",
    "count_b",
    "count_b_lower_bound",
    "covering_verify",
    "crt_combine",
    "default_covering_system",
    "enumerate_c",
    "grow",
    "is_prime",
    "j_window_check",
    "legendre_count",
    "mertens_product",
    "odd_primorial",
    "ratio_scan",
    "romanov_density_scan",
    "s1_bound",
    "s2_bound",
    "sieve_covering_odd",
    "sieve_primes",
    "split_s1_s2",
    "squarefree_divisors_signed",
]
