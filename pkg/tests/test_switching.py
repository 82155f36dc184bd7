import pytest
from hypothesis import given, settings, strategies as st

from hyperdeg.configuration import (
    CellLayout,
    Partition,
    classify_lambda_plus,
    edges_of,
    lambda_plus_class,
    loop_part_count,
    random_partition,
)
from hyperdeg.core import DegreeSequence, loop_cap_N, moment
from hyperdeg.oracle import iter_partitions
from hyperdeg.switching import (
    SwitchingError,
    SwitchingTuple,
    apply_forward,
    apply_reverse,
    diagnose_forward,
    diagnose_reverse,
    enumerate_forward_candidates,
    enumerate_reverse_candidates,
    iter_forward,
    iter_reverse,
    ratio_prediction,
)

from conftest import brute_forward_tuples, brute_reverse_tuples


def P(*parts):
    return Partition.from_parts(parts)


K9 = DegreeSequence([2, 2, 2, 1, 1, 1], 3)
L9 = CellLayout.of(K9)
Q9 = P([0, 1, 4], [2, 6, 7], [3, 5, 8])


def test_forward_hand_example():
    # U={0,1,4}, W1={2,6,7}, W2={3,5,8}: U^={4,6,5}, W1^={2,7,0}, W2^={3,8,1}
    t = SwitchingTuple(0, 1, 6, 5)
    Qp = apply_forward(Q9, t, L9)
    assert Qp == P([0, 2, 7], [1, 3, 8], [4, 5, 6])
    assert apply_reverse(Qp, t, L9) == Q9
    Qp.validate(9, 3)
    # y2=5 shares cell 3 with x's partner 4 in U, so U^ picks up a loop
    diag = diagnose_forward(Q9, t, L9)
    assert not diag.legal
    assert "II" in diag.conditions
    assert loop_part_count(Qp, L9) == 1


def test_forward_legal_example():
    t = SwitchingTuple(0, 1, 2, 8)
    Qp = apply_forward(Q9, t, L9)
    # hand-applied: U^={4,2,8}, W1^={6,7,0}, W2^={3,5,1}
    assert Qp == P([0, 6, 7], [1, 3, 5], [2, 4, 8])
    diag = diagnose_forward(Q9, t, L9)
    assert diag.legal and diag.conditions == frozenset()
    assert loop_part_count(Qp, L9) == loop_part_count(Q9, L9) - 1
    rev = diagnose_reverse(Qp, t, L9)
    assert rev.legal
    assert apply_reverse(Qp, t, L9) == Q9


def test_reverse_creates_loop():
    Qp = P([0, 6, 7], [1, 3, 5], [2, 4, 8])
    t = SwitchingTuple(0, 1, 2, 8)
    Q = apply_reverse(Qp, t, L9)
    U = next(U for U in Q.parts if 0 in U)
    assert 1 in U


def test_reverse_conditions_on_illegal_tuples():
    Qp = P([0, 6, 7], [1, 3, 5], [2, 4, 8])
    seen_illegal = 0
    for t in enumerate_reverse_candidates(Qp, L9):
        d = diagnose_reverse(Qp, t, L9)
        if not d.legal:
            seen_illegal += 1
            assert d.conditions
        else:
            assert not d.conditions
    assert seen_illegal > 0


def test_forward_condition_I_witness():
    k = DegreeSequence([2, 2] + [1] * 8, 3)
    lay = CellLayout.of(k)
    Q = P([0, 1, 4], [2, 3, 5], [6, 7, 8], [9, 10, 11])
    t = SwitchingTuple(0, 1, 2, 6)   # y1 breaks the loop {2,3} of W1
    assert t not in enumerate_forward_candidates(Q, lay)
    d = diagnose_forward(Q, t, lay)
    assert not d.legal and d.conditions == frozenset({"I"})


def test_forward_legal_outside_candidate_set():
    # W1 keeps its own loop, so the move is legal though W1 is not loopless
    k = DegreeSequence([2, 2] + [1] * 8, 3)
    lay = CellLayout.of(k)
    Q = P([0, 1, 4], [2, 3, 5], [6, 7, 8], [9, 10, 11])
    t = SwitchingTuple(0, 1, 5, 6)
    assert t not in enumerate_forward_candidates(Q, lay)
    assert diagnose_forward(Q, t, lay).legal


def test_reverse_condition_I_witness():
    k = DegreeSequence([3, 2] + [1] * 7, 3)
    lay = CellLayout.of(k)
    Qp = P([0, 1, 5], [2, 6, 7], [3, 8, 9], [4, 10, 11])
    t = SwitchingTuple(0, 2, 3, 8)
    assert t in enumerate_reverse_candidates(Qp, lay)
    d = diagnose_reverse(Qp, t, lay)
    assert not d.legal and d.conditions == frozenset({"I'"})


def test_structural_errors():
    with pytest.raises(SwitchingError):
        apply_forward(Q9, SwitchingTuple(0, 4, 6, 5), L9)   # not a loop
    with pytest.raises(SwitchingError):
        apply_forward(Q9, SwitchingTuple(0, 1, 2, 3), L9)   # y's same cell
    with pytest.raises(SwitchingError):
        apply_forward(Q9, SwitchingTuple(0, 1, 6, 7), L9)   # W1 == W2
    with pytest.raises(SwitchingError):
        apply_forward(Q9, SwitchingTuple(0, 0, 6, 5), L9)
    with pytest.raises(SwitchingError):
        apply_reverse(Q9, SwitchingTuple(0, 1, 6, 5), L9)   # x's share a part


def test_tuple_json():
    t = SwitchingTuple(0, 1, 2, 8)
    assert SwitchingTuple.from_json(t.to_json()) == t
    assert t.to_json() == '{"x1": 0, "x2": 1, "y1": 2, "y2": 8}'


def test_candidates_empty_cases():
    lay = CellLayout.of(DegreeSequence([1] * 6, 3))
    Q = P([0, 1, 2], [3, 4, 5])
    assert enumerate_forward_candidates(Q, lay) == []
    assert enumerate_reverse_candidates(Q, lay) == []
    lay = CellLayout.of(DegreeSequence([2, 2, 1, 1], 3))
    Q = P([0, 1, 4], [2, 3, 5])
    assert enumerate_forward_candidates(Q, lay) == []
    assert enumerate_reverse_candidates(Q, lay) == []


def test_candidates_match_brute_force_m9():
    for i, Q in enumerate(iter_partitions(K9)):
        if i % 7:
            continue
        fwd = {t.as_tuple() for t in enumerate_forward_candidates(Q, L9)}
        assert fwd == brute_forward_tuples(Q.parts, L9, loopless_w=True)
        rev = {t.as_tuple() for t in enumerate_reverse_candidates(Q, L9)}
        assert rev == brute_reverse_tuples(Q.parts, L9, loopless_u=True)
        assert {t for t, _ in iter_forward(Q, L9)} == brute_forward_tuples(Q.parts, L9, False)
        assert {t for t, _ in iter_reverse(Q, L9)} == brute_reverse_tuples(Q.parts, L9, False)


def test_candidate_list_size_m9():
    # frozen from brute_forward_tuples
    assert len(enumerate_forward_candidates(Q9, L9)) == 32


@pytest.mark.parametrize("degs, r", [((2, 2, 2, 1, 1, 1), 3), ((2, 2, 2, 2, 1), 3),
                                     ((3, 2, 2, 1), 4), ((2,) * 6, 3)])
def test_candidate_size_caps(degs, r):
    k = DegreeSequence(degs, r)
    lay = CellLayout.of(k)
    M, M2, N = k.M, moment(k, 2), loop_cap_N(k)
    for Q in iter_partitions(k):
        ell = lambda_plus_class(Q.parts, lay.cell_of, N)
        if ell < 0:
            continue
        s = len(enumerate_forward_candidates(Q, lay))
        assert s <= 2 * ell * M * M
        if ell == 0:
            assert s == 0
        sp = len(enumerate_reverse_candidates(Q, lay))
        up = ell + 1
        assert sp <= (r - 1) * (M - r * (up - 1)) * M2
        assert sp >= (r - 1) * (M - r * (up + 1)) * M2


def test_condition_sets_exhaustive_m9():
    N = loop_cap_N(K9)
    for Q in iter_partitions(K9):
        ell = lambda_plus_class(Q.parts, L9.cell_of, N)
        if ell < 0:
            continue
        for t, _ in iter_forward(Q, L9):
            d = diagnose_forward(Q, SwitchingTuple(*t), L9, N)
            assert d.legal or d.conditions
            if d.legal:
                assert loop_part_count(apply_forward(Q, SwitchingTuple(*t), L9), L9) == ell - 1
        for t, _ in iter_reverse(Q, L9):
            d = diagnose_reverse(Q, SwitchingTuple(*t), L9, N)
            assert d.legal or d.conditions
            if d.legal:
                assert loop_part_count(apply_reverse(Q, SwitchingTuple(*t), L9), L9) == ell + 1


@pytest.mark.parametrize("degs, ell, expected", [
    ((1,) * 6, 1, 0.0), ((1,) * 6, 3, 0.0),
    ((2,) * 6, 1, 1.0),
    ((2, 2, 1, 1), 1, 2 / 3),
])
def test_ratio_prediction(degs, ell, expected):
    assert ratio_prediction(DegreeSequence(degs, 3), ell) == pytest.approx(expected, rel=1e-15)


@st.composite
def loopy_instances(draw):
    r = draw(st.integers(3, 4))
    degs = draw(st.lists(st.integers(1, 3), min_size=3, max_size=10))
    degs = degs + [1] * ((-sum(degs)) % r)
    k = DegreeSequence(degs, r)
    return k, random_partition(k, draw(st.integers(0, 2**32 - 1))), draw(st.randoms(use_true_random=False))


@settings(max_examples=150)
@given(loopy_instances())
def test_switchings_are_inverse(inst):
    k, Q, rnd = inst
    lay = CellLayout.of(k)
    fwd = list(iter_forward(Q, lay))
    for t, _ in rnd.sample(fwd, min(10, len(fwd))):
        t = SwitchingTuple(*t)
        Qp = apply_forward(Q, t, lay)
        Qp.validate(k.M, k.r)
        assert apply_reverse(Qp, t, lay) == Q
        assert edges_of(Qp, lay).degrees() == list(k.degrees)
    rev = list(iter_reverse(Q, lay))
    for t, _ in rnd.sample(rev, min(10, len(rev))):
        t = SwitchingTuple(*t)
        Q0 = apply_reverse(Q, t, lay)
        assert apply_forward(Q0, t, lay) == Q
        assert len(Q0) == len(Q)


@settings(max_examples=100)
@given(loopy_instances())
def test_legal_moves_change_loop_count_by_one(inst):
    k, Q, rnd = inst
    lay = CellLayout.of(k)
    if not classify_lambda_plus(Q, lay).in_lambda_plus:
        return
    ell = loop_part_count(Q, lay)
    for t in enumerate_forward_candidates(Q, lay)[:30]:
        if diagnose_forward(Q, t, lay).legal:
            assert loop_part_count(apply_forward(Q, t, lay), lay) == ell - 1
    for t in enumerate_reverse_candidates(Q, lay)[:30]:
        if diagnose_reverse(Q, t, lay).legal:
            assert loop_part_count(apply_reverse(Q, t, lay), lay) == ell + 1
