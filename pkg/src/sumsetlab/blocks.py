"""Block sets: unions of primorial progressions over doubling windows.

A growth schedule fixes window boundaries G(t) = 2^e(t); block t holds the
multiples of the t-th odd primorial d_t inside [G(t), G(t+1)). The union of
all blocks is the member set counted here. Counting uses pure floor
arithmetic, so it stays exact for x thousands of bits wide.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from .arith import PrimeTable, big_log2, sieve_covering_odd
from .errors import CapacityError, ConfigError, InapplicableError

__all__ = [
    "DEFAULT_BIT_BUDGET",
    "GrowthSchedule",
    "Block",
    "BlockSet",
    "BlockCountReport",
    "WindowCheck",
    "grow",
    "block_index",
    "j_window_check",
    "b_member",
    "count_b",
    "count_b_lower_bound",
    "conjecture_ratio",
]

# Largest integer the library will materialize, in bits.
DEFAULT_BIT_BUDGET = 1_000_000

_KINDS = ("paper", "polynomial", "custom")


@dataclass(frozen=True)
class GrowthSchedule:
    """Window exponent schedule e(t); boundaries are G(t) = 2^e(t).

    Kinds:
        paper:      e(t) = 2^(t*t)  (doubly exponential; the normative default)
        polynomial: e(t) = t*t      (desk-scale default, keeps enumeration feasible)
        custom:     explicit strictly increasing exponent list, e(1) >= 1
    """

    kind: str
    exponents: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise ConfigError(f"unknown schedule kind {self.kind!r}")
        if self.kind == "custom":
            exps = tuple(int(e) for e in self.exponents)
            if not exps:
                raise ConfigError("custom schedule needs at least one exponent")
            if exps[0] < 1:
                raise ConfigError("custom schedule needs e(1) >= 1")
            if any(b <= a for a, b in zip(exps, exps[1:])):
                raise ConfigError("custom schedule exponents must be strictly increasing")
            object.__setattr__(self, "exponents", exps)
        elif self.exponents:
            raise ConfigError(f"{self.kind} schedule takes no explicit exponents")

    @classmethod
    def paper(cls) -> "GrowthSchedule":
        return cls("paper")

    @classmethod
    def polynomial(cls) -> "GrowthSchedule":
        return cls("polynomial")

    @classmethod
    def custom(cls, exponents: Sequence[int]) -> "GrowthSchedule":
        return cls("custom", tuple(exponents))

    def exponent(self, t: int) -> int:
        """e(t) for t >= 1; custom schedules raise CapacityError when exhausted."""
        if t < 1:
            raise ValueError(f"t must be >= 1, got {t}")
        if self.kind == "paper":
            return 2 ** (t * t)
        if self.kind == "polynomial":
            return t * t
        if t > len(self.exponents):
            raise CapacityError(
                f"custom schedule defines {len(self.exponents)} exponents, t={t} requested"
            )
        return self.exponents[t - 1]

    def to_json(self) -> dict:
        if self.kind == "custom":
            return {"kind": "custom", "exponents": list(self.exponents)}
        return {"kind": self.kind}

    @classmethod
    def from_json(cls, obj: dict) -> "GrowthSchedule":
        if not isinstance(obj, dict) or "kind" not in obj:
            raise ConfigError(f"schedule spec must be an object with a 'kind': {obj!r}")
        kind = obj["kind"]
        if kind == "custom":
            return cls.custom(obj.get("exponents", ()))
        return cls(kind)


def grow(schedule: GrowthSchedule, t: int, bit_budget: int = DEFAULT_BIT_BUDGET) -> int:
    """Window boundary G(t) = 2^e(t) as an exact integer.

    Raises:
        CapacityError: e(t) exceeds the bit budget, or a custom schedule
            is exhausted.
    """
    e = schedule.exponent(t)
    if e >= bit_budget:
        raise CapacityError(
            f"G({t}) needs {e + 1} bits, over the {bit_budget}-bit budget"
        )
    return 1 << e


def block_index(x: int, schedule: GrowthSchedule) -> int:
    """Largest j >= 1 with G(j) <= x, or 0 when x < G(1).

    Compares exponents against floor(log2 x), so no boundary ever has to
    be materialized. For a custom schedule the result is capped at the
    last defined exponent; block operations raise CapacityError when the
    window containing x is undefined.
    """
    x = int(x)
    if x < 0:
        raise ValueError(f"x must be >= 0, got {x}")
    log2_floor = x.bit_length() - 1
    j = 0
    while True:
        try:
            e = schedule.exponent(j + 1)
        except CapacityError:
            break
        if e <= log2_floor:
            j += 1
        else:
            break
    return j


@dataclass(frozen=True)
class Block:
    """One window [lo, hi) holding the multiples of ``modulus``."""

    t: int
    modulus: int
    lo: int
    hi: int


@dataclass(frozen=True, eq=False)
class BlockSet:
    """Blocks 1..max_t of a schedule, immutable after materialization."""

    schedule: GrowthSchedule
    blocks: tuple[Block, ...]
    max_t: int

    @classmethod
    def materialize(
        cls,
        schedule: GrowthSchedule,
        max_t: int,
        table: PrimeTable | None = None,
        bit_budget: int = DEFAULT_BIT_BUDGET,
    ) -> "BlockSet":
        """Build blocks 1..max_t; needs boundaries up to G(max_t + 1)."""
        if max_t < 1:
            raise ValueError(f"max_t must be >= 1, got {max_t}")
        if table is None:
            table = sieve_covering_odd(max_t)
        blocks = []
        lo = grow(schedule, 1, bit_budget)
        modulus = 1
        for t in range(1, max_t + 1):
            modulus *= table.odd_prime(t)
            hi = grow(schedule, t + 1, bit_budget)
            blocks.append(Block(t=t, modulus=modulus, lo=lo, hi=hi))
            lo = hi
        return cls(schedule=schedule, blocks=tuple(blocks), max_t=max_t)

    @classmethod
    def covering(
        cls,
        schedule: GrowthSchedule,
        x: int,
        table: PrimeTable | None = None,
        bit_budget: int = DEFAULT_BIT_BUDGET,
    ) -> "BlockSet":
        """Materialize just deep enough that queries up to x are answerable."""
        return cls.materialize(
            schedule, max(block_index(x, schedule), 1), table, bit_budget
        )

    def _require_depth(self, j: int) -> None:
        if j > self.max_t:
            raise CapacityError(
                f"block {j} not materialized (max_t={self.max_t}); "
                "extend the block set to cover this x"
            )


def b_member(n: int, blocks: BlockSet) -> bool:
    """Whether n lies in some block's window and is divisible by its modulus.

    Raises:
        CapacityError: n is beyond the materialized windows (membership is
            never silently reported false there).
    """
    n = int(n)
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    j = block_index(n, blocks.schedule)
    if j == 0:
        return False
    blocks._require_depth(j)
    return n % blocks.blocks[j - 1].modulus == 0


def count_b(x: int, blocks: BlockSet) -> int:
    """Exact number of block-set members in [1, x].

    Sums floor(upper/d) - floor((lo-1)/d) per block; the top block is
    truncated at x. Pure integer arithmetic at any bit length.
    """
    x = int(x)
    if x < 0:
        raise ValueError(f"x must be >= 0, got {x}")
    j = block_index(x, blocks.schedule)
    if j == 0:
        return 0
    blocks._require_depth(j)
    total = 0
    for blk in blocks.blocks[:j]:
        upper = x if blk.t == j else blk.hi - 1
        total += upper // blk.modulus - (blk.lo - 1) // blk.modulus
    return total


def count_b_lower_bound(x: int, blocks: BlockSet) -> Fraction:
    """Certified lower bound on count_b(x) from the top two blocks.

    (x - G(j))/d_j + (G(j) - G(j-1))/d_(j-1) - 2, exact rational. Each
    block contributes at least its window length over its modulus minus
    one boundary loss; lower blocks are dropped entirely.

    Raises:
        InapplicableError: block index of x is below 2.
    """
    x = int(x)
    j = block_index(x, blocks.schedule)
    if j < 2:
        raise InapplicableError(f"lower bound needs block index >= 2, got {j} at x={x}")
    blocks._require_depth(j)
    top = blocks.blocks[j - 1]
    prev = blocks.blocks[j - 2]
    return (
        Fraction(x - top.lo, top.modulus)
        + Fraction(top.lo - prev.lo, prev.modulus)
        - 2
    )


@dataclass(frozen=True)
class BlockCountReport:
    """Exact member count at x with the density-criterion ratio.

    a_count is floor(log2 x), the number of powers 2^a <= x with a >= 1;
    conjecture_ratio is a_count * b_count / x, the quantity whose positive
    lower bound the density conjectures hypothesize.
    """

    x: int
    j: int
    b_count: int
    a_count: int
    b_lower_bound: Fraction | None
    ratio_exact: Fraction
    conjecture_ratio: float

    def __post_init__(self) -> None:
        if self.b_count < 0:
            raise ValueError("b_count must be >= 0")
        if self.b_lower_bound is not None and self.b_count < self.b_lower_bound:
            raise ValueError(
                f"count {self.b_count} fell below its certified bound "
                f"{self.b_lower_bound} at x={self.x}"
            )


def conjecture_ratio(x: int, blocks: BlockSet) -> BlockCountReport:
    """Exact count report with ratio a_count * b_count / x at x >= 2."""
    x = int(x)
    if x < 2:
        raise ValueError(f"x must be >= 2, got {x}")
    j = block_index(x, blocks.schedule)
    b = count_b(x, blocks)
    a = x.bit_length() - 1
    bound = count_b_lower_bound(x, blocks) if j >= 2 else None
    ratio = Fraction(a * b, x)
    return BlockCountReport(
        x=x,
        j=j,
        b_count=b,
        a_count=a,
        b_lower_bound=bound,
        ratio_exact=ratio,
        conjecture_ratio=float(ratio),
    )


class WindowCheck(NamedTuple):
    j: int
    lower: float
    upper: float
    holds: bool


def j_window_check(x: int, schedule: GrowthSchedule) -> WindowCheck:
    """Check sqrt(loglog x) < j <= 2*sqrt(loglog x)/sqrt(log 2) (paper schedule).

    The window is the analytic consequence of G(j) <= x < G(j+1) under the
    doubly exponential schedule; logs are natural and evaluated through
    big_log2 so x may be thousands of bits wide.

    Raises:
        InapplicableError: schedule is not the paper kind.
        ValueError: x below G(1) = 4.
    """
    if schedule.kind != "paper":
        raise InapplicableError("the block-index window applies to the paper schedule only")
    x = int(x)
    if x < 4:
        raise ValueError(f"x must be >= G(1) = 4, got {x}")
    ln_x = big_log2(x) * math.log(2.0)
    loglog = math.log(ln_x)
    lower = math.sqrt(loglog)
    upper = 2.0 * math.sqrt(loglog) / math.sqrt(math.log(2.0))
    j = block_index(x, schedule)
    return WindowCheck(j=j, lower=lower, upper=upper, holds=lower < j <= upper)
