"""Degree-sequence arithmetic and exact/asymptotic counting formulas."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence


class DivisibilityError(ValueError):
    """Raised when the degree sum M is not divisible by the uniformity r."""


@dataclass(frozen=True)
class DegreeSequence:
    """Degrees k_1..k_n of an r-uniform hypergraph."""

    r: int
    degrees: tuple[int, ...]

    def __init__(self, degrees: Sequence[int], r: int):
        degrees = tuple(int(d) for d in degrees)
        if r < 2:
            raise ValueError(f"uniformity r must be >= 2, got {r}")
        if len(degrees) < 1:
            raise ValueError("degree sequence must have at least one vertex")
        if any(d < 0 for d in degrees):
            raise ValueError(f"degrees must be nonnegative: {degrees}")
        object.__setattr__(self, "r", int(r))
        object.__setattr__(self, "degrees", degrees)

    @classmethod
    def regular(cls, n: int, deg: int, r: int) -> "DegreeSequence":
        return cls([deg] * n, r)

    @property
    def n(self) -> int:
        return len(self.degrees)

    @property
    def M(self) -> int:
        return sum(self.degrees)

    @property
    def k_max(self) -> int:
        return max(self.degrees)

    @property
    def num_parts(self) -> int:
        self.require_divisible()
        return self.M // self.r

    def moment(self, t: int) -> int:
        return moment(self, t)

    def require_divisible(self) -> None:
        if self.M % self.r:
            raise DivisibilityError(f"M={self.M} not divisible by r={self.r}")

    def __repr__(self) -> str:
        return f"DegreeSequence({list(self.degrees)}, r={self.r})"


@dataclass(frozen=True)
class CountResult:
    """Main term of the enumeration formula, split into its two factors.

    ``leading_term`` is exact; ``log_correction`` is the exponent of the
    correction factor. ``exact_value`` is filled in when an exhaustive
    count is available.
    """

    leading_term: Fraction
    log_correction: float
    estimate: float
    exact_value: Optional[int] = field(default=None)

    def with_exact(self, value: int) -> "CountResult":
        return CountResult(self.leading_term, self.log_correction, self.estimate, value)


def falling_factorial(a: int, m: int) -> int:
    """Return (a)_m = a (a-1) ... (a-m+1)."""
    if m < 0:
        raise ValueError(f"m must be nonnegative, got {m}")
    out = 1
    for j in range(m):
        out *= a - j
        if out == 0:
            break
    return out


def moment(k: DegreeSequence, t: int) -> int:
    """Falling-factorial moment M_t = sum_i (k_i)_t."""
    if t < 1:
        raise ValueError(f"t must be positive, got {t}")
    return sum(falling_factorial(d, t) for d in k.degrees)


def _pairings(M: int, r: int) -> int:
    # M! / ((M/r)! (r!)^(M/r))
    parts = M // r
    return math.factorial(M) // (math.factorial(parts) * math.factorial(r) ** parts)


def partition_space_size(k: DegreeSequence) -> int:
    """Number of unordered partitions of the M points into r-sets."""
    k.require_divisible()
    return _pairings(k.M, k.r)


def configuration_multiplicity(k: DegreeSequence) -> int:
    """Number of partitions mapping to each simple hypergraph: prod k_i!."""
    out = 1
    for d in k.degrees:
        out *= math.factorial(d)
    return out


def _estimate(leading: Fraction, log_correction: float) -> float:
    try:
        return float(leading) * math.exp(log_correction)
    except OverflowError:
        pass
    if leading == 0:
        return 0.0
    log_val = math.log(leading.numerator) - math.log(leading.denominator) + log_correction
    try:
        return math.exp(log_val)
    except OverflowError:
        return math.inf


def asymptotic_count(k: DegreeSequence) -> CountResult:
    """Asymptotic number of simple r-uniform hypergraphs with degrees ``k``.

    The O(k_max^3 / M) term in the exponent is dropped.
    """
    if k.r < 3:
        raise ValueError("asymptotic formula requires r >= 3")
    k.require_divisible()
    M = k.M
    if M == 0:
        return CountResult(Fraction(1), 0.0, 1.0)
    leading = Fraction(partition_space_size(k), configuration_multiplicity(k))
    log_corr = -(k.r - 1) * moment(k, 2) / (2 * M)
    return CountResult(leading, log_corr, _estimate(leading, log_corr))


def asymptotic_count_regular(n: int, deg: int, r: int) -> CountResult:
    """Regular case: every vertex has degree ``deg``."""
    if r < 3:
        raise ValueError("asymptotic formula requires r >= 3")
    M = deg * n
    if M % r:
        raise DivisibilityError(f"kn={M} not divisible by r={r}")
    if M == 0:
        return CountResult(Fraction(1), 0.0, 1.0)
    leading = Fraction(_pairings(M, r), math.factorial(deg) ** n)
    log_corr = -(deg - 1) * (r - 1) / 2
    return CountResult(leading, log_corr, _estimate(leading, log_corr))


def loop_cap_N(k: DegreeSequence) -> int:
    """Cap on the number of loop-containing parts: max(ceil(log M), ceil(9(r-1)M_2/M))."""
    M = k.M
    if M < 1:
        raise ValueError("loop cap requires M >= 1")
    by_log = math.ceil(math.log(M))
    by_moment = -(-9 * (k.r - 1) * moment(k, 2) // M)
    return max(by_log, by_moment)


def part_containment_probability(k: DegreeSequence, c: int) -> Fraction:
    """Probability that a uniform partition contains ``c`` fixed disjoint r-sets."""
    k.require_divisible()
    r, M = k.r, k.M
    if c < 1:
        raise ValueError(f"c must be positive, got {c}")
    if r * c > M:
        raise ValueError(f"cannot fit {c} disjoint parts of size {r} into {M} points")
    num = math.factorial(r) ** c * falling_factorial(M // r, c)
    return Fraction(num, falling_factorial(M, r * c))
