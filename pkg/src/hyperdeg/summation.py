"""Bounds on sums of ratio-recurrence sequences, and the resulting model of P_r(k).

Given A(i), C(i) on 1..N, the sequence n_0 = 1,
n_i = (A(i) - (i-1) C(i)) n_{i-1} / i has total sandwiched between

    Sigma_1 = exp(A_1 - A_1 C_2 / 2) - (2 e c)^N
    Sigma_2 = exp(A_2 - A_2 C_1 / 2 + A_2 C_1^2 / 2) + (2 e c)^N

where A_1, A_2 (C_1, C_2) are the min and max of A (C).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple, Sequence, Union

from .core import DegreeSequence, loop_cap_N, moment

SWITCHING_C_HAT = 1 / 16

Coefficients = Union[Callable[[int], float], Sequence[float]]


class SummationError(ValueError):
    """An admissibility condition of the summation problem fails."""

    def __init__(self, message: str, index: int | None = None):
        super().__init__(message if index is None else f"{message} (index {index})")
        self.index = index


@dataclass
class SummationProblem:
    """``A`` and ``C`` are callables on 1..N or sequences indexed from 1 (entry 0 is A(1))."""

    N: int
    A: Coefficients
    C: Coefficients
    c_hat: float

    def values(self) -> tuple[list[float], list[float]]:
        def expand(f):
            if callable(f):
                return [float(f(i)) for i in range(1, self.N + 1)]
            vals = [float(v) for v in f]
            if len(vals) != self.N:
                raise SummationError(f"expected {self.N} coefficients, got {len(vals)}")
            return vals
        return expand(self.A), expand(self.C)

    def check(self) -> None:
        if self.N < 2:
            raise SummationError(f"N must be >= 2, got {self.N}")
        if not 0 < self.c_hat < 1 / 3:
            raise SummationError(f"c_hat must lie in (0, 1/3), got {self.c_hat}")
        A, C = self.values()
        for i, (a, c) in enumerate(zip(A, C), start=1):
            if a < 0:
                raise SummationError(f"A(i) = {a} < 0", i)
            if a - (i - 1) * c < 0:
                raise SummationError(f"A(i) - (i-1)C(i) = {a - (i - 1) * c} < 0", i)
        bound = max(max(A) / self.N, abs(min(C)), abs(max(C)))
        if bound > self.c_hat:
            raise SummationError(f"max(A_2/N, |C_1|, |C_2|) = {bound} exceeds c_hat = {self.c_hat}")


@dataclass
class SummationResult:
    n: list[float]
    total: float
    sigma1: float
    sigma2: float


def evaluate_summation(p: SummationProblem) -> SummationResult:
    p.check()
    A, C = p.values()
    n = [1.0]
    for i in range(1, p.N + 1):
        n.append((A[i - 1] - (i - 1) * C[i - 1]) * n[-1] / i)
    A1, A2, C1, C2 = min(A), max(A), min(C), max(C)
    tail = (2 * math.e * p.c_hat) ** p.N
    sigma1 = math.exp(A1 - 0.5 * A1 * C2) - tail
    sigma2 = math.exp(A2 - 0.5 * A2 * C1 + 0.5 * A2 * C1 ** 2) + tail
    return SummationResult(n, math.fsum(n), sigma1, sigma2)


class SwitchingModelEstimate(NamedTuple):
    estimate: float
    lower: float
    upper: float
    admissible: bool
    summation: SummationResult | None


def p_simple_from_switching_model(k: DegreeSequence) -> SwitchingModelEstimate:
    """Main-term estimate of P_r(k) together with brackets from the summation bounds.

    The ratio model uses A(l) = (r-1) M_2 / (2M), C(l) = 0 (the bounded
    correction terms are dropped), so (lower, upper) bracket the model, not
    the true probability. When the admissibility condition fails (tiny M)
    the brackets degrade to [0, 1] and ``admissible`` is False.
    """
    if k.r < 3:
        raise ValueError("switching model requires r >= 3")
    k.require_divisible()
    if k.M < 1:
        raise ValueError("switching model requires M >= 1")
    a = (k.r - 1) * moment(k, 2) / (2 * k.M)
    estimate = math.exp(-a)
    N = loop_cap_N(k)
    problem = SummationProblem(N, [a] * N, [0.0] * N, SWITCHING_C_HAT)
    try:
        res = evaluate_summation(problem)
    except SummationError:
        return SwitchingModelEstimate(estimate, 0.0, 1.0, False, None)
    lower = 1 / res.sigma2
    upper = 1 / res.sigma1 if res.sigma1 > 1 else 1.0
    return SwitchingModelEstimate(estimate, lower, upper, True, res)
