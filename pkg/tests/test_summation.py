import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hyperdeg.core import DegreeSequence, asymptotic_count, loop_cap_N
from hyperdeg.summation import (
    SWITCHING_C_HAT,
    SummationError,
    SummationProblem,
    evaluate_summation,
    p_simple_from_switching_model,
)


def test_constant_A_zero_C_is_partial_exponential():
    a, N, c = 0.5, 12, 0.1
    res = evaluate_summation(SummationProblem(N, [a] * N, [0.0] * N, c))
    partial = math.fsum(a ** i / math.factorial(i) for i in range(N + 1))
    assert res.total == pytest.approx(partial, rel=1e-12)
    assert res.n[3] == pytest.approx(a ** 3 / 6, rel=1e-15)
    tail = (2 * math.e * c) ** N
    assert res.sigma1 == pytest.approx(math.exp(a) - tail, rel=1e-12)
    assert res.sigma1 <= res.total <= res.sigma2


def test_all_zero_N2():
    c = 0.25
    res = evaluate_summation(SummationProblem(2, [0, 0], [0, 0], c))
    assert res.n == [1.0, 0.0, 0.0]
    assert res.total == 1.0
    tail = (2 * math.e * c) ** 2
    assert res.sigma1 == pytest.approx(1 - tail)
    assert res.sigma2 == pytest.approx(1 + tail)


def test_callable_coefficients():
    p1 = SummationProblem(5, lambda i: 0.2, lambda i: 0.01 * i, 0.1)
    p2 = SummationProblem(5, [0.2] * 5, [0.01, 0.02, 0.03, 0.04, 0.05], 0.1)
    assert evaluate_summation(p1) == evaluate_summation(p2)


def test_recurrence_values():
    res = evaluate_summation(SummationProblem(3, [0.3, 0.3, 0.3], [0.1, 0.1, 0.1], 0.15))
    # n1 = 0.3, n2 = (0.3-0.1)*0.3/2 = 0.03, n3 = (0.3-0.2)*0.03/3 = 0.001
    assert res.n == pytest.approx([1, 0.3, 0.03, 0.001], rel=1e-14)


@pytest.mark.parametrize("N, A, C, c_hat, index", [
    (1, [0.1], [0.0], 0.1, None),
    (3, [0.1] * 3, [0.0] * 3, 0.4, None),
    (3, [0.1] * 3, [0.0] * 3, 0.0, None),
    (3, [0.1, -0.1, 0.1], [0.0] * 3, 0.1, 2),
    (3, [0.1, 0.1, 0.1], [0.0, 0.0, 0.06], 0.1, 3),
    (3, [0.6, 0.1, 0.1], [0.0] * 3, 0.1, None),
    (3, [0.1] * 2, [0.0] * 3, 0.1, None),
])
def test_admissibility_errors(N, A, C, c_hat, index):
    with pytest.raises(SummationError) as info:
        evaluate_summation(SummationProblem(N, A, C, c_hat))
    assert info.value.index == index


@st.composite
def admissible_problems(draw):
    N = draw(st.integers(2, 40))
    c_hat = draw(st.floats(0.01, 0.33))
    A = draw(st.lists(st.floats(0, c_hat * N * (1 - 1e-9)), min_size=N, max_size=N))
    C = []
    for i, a in enumerate(A, start=1):
        hi = c_hat if i == 1 else min(c_hat, a / (i - 1))
        C.append(draw(st.floats(-c_hat, hi)))
    return SummationProblem(N, A, C, c_hat)


@settings(max_examples=300, deadline=None)
@given(admissible_problems())
def test_sandwich_property(problem):
    res = evaluate_summation(problem)
    assert res.sigma1 <= res.total * (1 + 1e-12)
    assert res.total <= res.sigma2 * (1 + 1e-12)


def test_constant_A_converges_to_exp():
    a, c = 1.0, 0.1
    for N in (10, 20, 40):
        res = evaluate_summation(SummationProblem(N, [a] * N, [0.0] * N, c))
        tail = a ** (N + 1) / math.factorial(N + 1) * math.e
        assert abs(res.total - math.exp(a)) <= (2 * math.e * c) ** N + tail


def test_switching_model_examples():
    assert p_simple_from_switching_model(DegreeSequence([1] * 6, 3)).estimate == 1.0
    est = p_simple_from_switching_model(DegreeSequence([2, 2, 1, 1], 3))
    assert est.estimate == pytest.approx(math.exp(-2 / 3), rel=1e-15)
    assert est.admissible
    assert est.lower <= est.estimate <= est.upper
    est = p_simple_from_switching_model(DegreeSequence([2] * 6, 3))
    assert est.estimate == pytest.approx(math.exp(-1), rel=1e-15)


def test_switching_model_rejects():
    with pytest.raises(ValueError):
        p_simple_from_switching_model(DegreeSequence([1, 1], 2))
    with pytest.raises(ValueError):
        p_simple_from_switching_model(DegreeSequence([2, 2], 3))
    with pytest.raises(ValueError):
        p_simple_from_switching_model(DegreeSequence([0, 0, 0], 3))


def test_switching_model_uses_loop_cap():
    k = DegreeSequence([3] * 12, 3)
    res = p_simple_from_switching_model(k)
    assert len(res.summation.n) == loop_cap_N(k) + 1
    assert res.summation.sigma1 <= res.summation.total <= res.summation.sigma2


def test_model_matches_core_correction():
    rng = np.random.default_rng(5)
    for _ in range(50):
        r = int(rng.integers(3, 6))
        degs = rng.integers(1, 6, size=int(rng.integers(3, 30))).tolist()
        degs += [1] * ((-sum(degs)) % r)
        k = DegreeSequence(degs, r)
        est = p_simple_from_switching_model(k).estimate
        assert est * math.exp(-asymptotic_count(k).log_correction) == pytest.approx(1, rel=1e-12)


def test_c_hat_constant():
    assert SWITCHING_C_HAT == 0.0625
