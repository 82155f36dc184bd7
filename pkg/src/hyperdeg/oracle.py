"""Exhaustive ground truth for small instances.

Everything here is exact: partitions are enumerated one by one, hypergraphs
are counted by a backtracking search that never touches the partition model,
and ratios are returned as ``Fraction``.
"""

from __future__ import annotations

import json
import os
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Iterator, Optional

from .configuration import (
    CellLayout,
    Partition,
    is_simple,
    lambda_plus_class,
    multiset_intersection,
    part_has_loop,
)
from .core import DegreeSequence, configuration_multiplicity, loop_cap_N
from .switching import (
    _forward_image,
    _reverse_image,
    forward_conditions,
    iter_forward,
    iter_reverse,
    reverse_conditions,
)

DEFAULT_CAP_M = 12
DEFAULT_CAP_N = 12


class CapExceededError(ValueError):
    """The instance is too large for exhaustive enumeration."""


def cap_M(override: Optional[int] = None) -> int:
    if override is not None:
        return override
    env = os.environ.get("HYPERDEG_CAP_M")
    return int(env) if env else DEFAULT_CAP_M


def _check_cap(k: DegreeSequence, cap: Optional[int]) -> None:
    k.require_divisible()
    limit = cap_M(cap)
    if k.M > limit:
        raise CapExceededError(f"M={k.M} exceeds enumeration cap {limit}")


def _partitions_of(points: tuple[int, ...], r: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    if not points:
        yield ()
        return
    first, rest = points[0], points[1:]
    for partners in combinations(rest, r - 1):
        taken = set(partners)
        left = tuple(p for p in rest if p not in taken)
        head = ((first,) + partners,)
        for tail in _partitions_of(left, r):
            yield head + tail


def iter_partitions(k: DegreeSequence, cap: Optional[int] = None) -> Iterator[Partition]:
    """Every partition of the M points into r-sets, each exactly once, canonical."""
    _check_cap(k, cap)
    for parts in _partitions_of(tuple(range(k.M)), k.r):
        yield Partition(parts)


def enumerate_partitions(k: DegreeSequence, visitor: Optional[Callable[[Partition], None]] = None,
                         cap: Optional[int] = None) -> int:
    count = 0
    for Q in iter_partitions(k, cap):
        if visitor is not None:
            visitor(Q)
        count += 1
    return count


@dataclass
class ExactCensus:
    lambda_size: int
    lambda_plus_size: int
    class_sizes: dict[int, int]
    simple_partitions: int
    p_simple: Fraction
    hypergraph_count: int
    N: int
    simple_outside_plus: int = 0

    def to_dict(self) -> dict:
        return {
            "lambda": self.lambda_size,
            "lambda_plus": self.lambda_plus_size,
            "classes": {str(l): c for l, c in sorted(self.class_sizes.items())},
            "p_simple": f"{self.p_simple.numerator}/{self.p_simple.denominator}",
            "hypergraphs": self.hypergraph_count,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def class_size(self, ell: int) -> int:
        return self.class_sizes.get(ell, 0)


def _census_branch(args):
    k, partners, N = args
    layout = CellLayout.of(k)
    cell = layout.cell_of
    head = ((0,) + partners,)
    taken = set(partners)
    rest = tuple(p for p in range(1, k.M) if p not in taken)
    total = plus = simple = simple_out = 0
    classes: dict[int, int] = defaultdict(int)
    for tail in _partitions_of(rest, k.r):
        parts = head + tail
        total += 1
        ell = lambda_plus_class(parts, cell, N)
        s = is_simple(Partition(parts), layout)
        if ell >= 0:
            plus += 1
            classes[ell] += 1
        if s:
            simple += 1
            if ell < 0:
                simple_out += 1
    return total, plus, dict(classes), simple, simple_out


def census(k: DegreeSequence, cap: Optional[int] = None, workers: int = 1) -> ExactCensus:
    """Classify every partition: simple or not, in Lambda^+ or not, loop-part count."""
    _check_cap(k, cap)
    if k.M == 0:
        return ExactCensus(1, 1, {0: 1}, 1, Fraction(1), 1, 0)
    N = loop_cap_N(k)
    jobs = [(k, partners, N) for partners in combinations(range(1, k.M), k.r - 1)]
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            results = list(pool.map(_census_branch, jobs))
    else:
        results = [_census_branch(j) for j in jobs]
    total = plus = simple = simple_out = 0
    classes: dict[int, int] = defaultdict(int)
    for t, p, c, s, so in results:
        total += t
        plus += p
        simple += s
        simple_out += so
        for ell, cnt in c.items():
            classes[ell] += cnt
    mult = configuration_multiplicity(k)
    if simple % mult:
        raise AssertionError(f"{simple} simple partitions not divisible by prod k_i! = {mult}")
    return ExactCensus(total, plus, dict(sorted(classes.items())), simple,
                       Fraction(simple, total), simple // mult, N, simple_out)


def enumerate_simple_hypergraphs(k: DegreeSequence, cap_n: int = DEFAULT_CAP_N,
                                 cap: Optional[int] = None) -> int:
    """Count simple r-uniform hypergraphs with degrees ``k`` by backtracking over edge sets."""
    _check_cap(k, cap)
    if k.n > cap_n:
        raise CapExceededError(f"n={k.n} exceeds hypergraph enumeration cap {cap_n}")
    r = k.r
    remaining = list(k.degrees)
    n = k.n

    def search(last_edge: tuple[int, ...]) -> int:
        v = next((i for i in range(n) if remaining[i] > 0), None)
        if v is None:
            return 1
        # every edge covering v has v as its smallest vertex
        candidates = [u for u in range(v + 1, n) if remaining[u] > 0]
        if len(candidates) < r - 1:
            return 0
        count = 0
        for others in combinations(candidates, r - 1):
            edge = (v,) + others
            if edge <= last_edge:
                continue
            for u in edge:
                remaining[u] -= 1
            count += search(edge)
            for u in edge:
                remaining[u] += 1
        return count

    return search(())


def exact_ratio(k: DegreeSequence, ell: int, c: Optional[ExactCensus] = None) -> Fraction:
    """|C_ell| / |C_{ell-1}| exactly."""
    if ell < 1:
        raise ValueError("ell must be positive")
    if c is None:
        c = census(k)
    below = c.class_size(ell - 1)
    if below == 0:
        raise ZeroDivisionError(f"class C_{ell - 1} is empty")
    return Fraction(c.class_size(ell), below)


@dataclass
class LevelTally:
    forward_tuples: int = 0
    forward_legal: int = 0
    forward_candidates: int = 0
    forward_candidates_legal: int = 0
    reverse_tuples: int = 0
    reverse_legal: int = 0
    reverse_candidates: int = 0
    reverse_candidates_legal: int = 0


@dataclass
class SwitchingTally:
    """Exhaustive switching statistics per loop level ell.

    Forward counts run over partitions in C_ell, reverse counts over
    partitions in C_{ell-1}. ``*_candidates`` restrict to the counting sets
    S and S' (loopless W parts, resp. loopless U^ part).
    """

    N: int
    levels: dict[int, LevelTally] = field(default_factory=dict)
    forward_counterexamples: list = field(default_factory=list)
    reverse_counterexamples: list = field(default_factory=list)
    max_forward_candidates: dict[int, int] = field(default_factory=dict)
    max_reverse_candidates: dict[int, int] = field(default_factory=dict)

    def double_count_holds(self) -> bool:
        return all(t.forward_legal == t.reverse_legal for t in self.levels.values())


def classify_partitions(k: DegreeSequence, cap: Optional[int] = None) -> dict:
    """Map every canonical partition (tuple of parts) to its loop-part count, or -1
    if it lies outside Lambda^+."""
    layout = CellLayout.of(k)
    N = loop_cap_N(k)
    return {Q.parts: lambda_plus_class(Q.parts, layout.cell_of, N) for Q in iter_partitions(k, cap)}


def _edge_key(parts, cell) -> tuple[tuple[int, ...], ...]:
    return tuple(sorted(tuple(sorted(cell[p] for p in U)) for U in parts))


def _counts(e: tuple[int, ...]) -> dict[int, int]:
    out: dict[int, int] = {}
    for v in e:
        out[v] = out.get(v, 0) + 1
    return out


class _EdgeClassifier:
    """Loop-part count of a partition from its hypergraph alone (-1 outside Lambda^+).

    Membership in Lambda^+ and the loop count depend only on G(Q), so results
    are memoized on the sorted edge list.
    """

    def __init__(self, N: int):
        self.N = N
        self.memo: dict = {}

    def __call__(self, edges: tuple[tuple[int, ...], ...]) -> int:
        got = self.memo.get(edges)
        if got is None:
            cnts = [_counts(e) for e in edges]
            got = lambda_plus_class_from_counts(cnts, self.N)
            self.memo[edges] = got
        return got


def lambda_plus_class_from_counts(cnts: list[dict[int, int]], N: int) -> int:
    loops = 0
    for c in cnts:
        doubled = 0
        for m in c.values():
            if m > 2:
                return -1
            if m == 2:
                doubled += 1
        if doubled > 1:
            return -1
        loops += doubled
    if loops > N:
        return -1
    for i in range(len(cnts)):
        for j in range(i + 1, len(cnts)):
            if multiset_intersection(cnts[i], cnts[j]) > 2:
                return -1
    return loops


def _swap_edge(e: tuple[int, ...], remove: tuple[int, ...], add: tuple[int, ...]) -> tuple[int, ...]:
    out = list(e)
    for v in remove:
        out.remove(v)
    out.extend(add)
    out.sort()
    return tuple(out)


def _image(edges, idx, new_edges):
    out = [e for i, e in enumerate(edges) if i not in idx]
    out.extend(new_edges)
    out.sort()
    return tuple(out)


def _edge_conditions(edges, idx, loopy, reverse: bool) -> frozenset[str]:
    iU, iW1, iW2 = idx
    e, f1, f2 = (set(edges[i]) for i in idx)
    conds = set()
    if reverse:
        if loopy[iU] or loopy[iW1] or loopy[iW2]:
            conds.add("I'")
        if e & f1 or e & f2:
            conds.add("II'")
    else:
        if loopy[iW1] or loopy[iW2]:
            conds.add("I")
        if e & f1 or e & f2 or f1 & f2:
            conds.add("II")
    for i, other in enumerate(edges):
        if i in idx:
            continue
        vs = set(other)
        if vs & e and (vs & f1 or vs & f2):
            conds.add("III'" if reverse else "III")
            break
    return frozenset(conds)


def _tally_hypergraph(edges, ell, weight, classify, tally, max_counterexamples):
    """Add the switching statistics of every partition with hypergraph ``edges``.

    A forward switching's image hypergraph depends only on the parts (U, W1, W2)
    and the cells of y1, y2; the number of point tuples realizing each choice
    is a product of cell multiplicities. Reverse switchings likewise.
    """
    N = tally.N
    cnts = [_counts(e) for e in edges]
    loopy = [len(c) < len(e) for c, e in zip(cnts, edges)]
    P = len(edges)
    if ell >= 1:
        lev = tally.levels.setdefault(ell, LevelTally())
        s_count = 0
        for iU in range(P):
            if not loopy[iU]:
                continue
            cx = next(v for v, m in cnts[iU].items() if m == 2)
            for iW1 in range(P):
                if iW1 == iU:
                    continue
                for iW2 in range(P):
                    if iW2 == iU or iW2 == iW1:
                        continue
                    idx = (iU, iW1, iW2)
                    in_s = not (loopy[iW1] or loopy[iW2])
                    conds = None
                    for c1, m1 in cnts[iW1].items():
                        for c2, m2 in cnts[iW2].items():
                            if c1 == c2:
                                continue
                            mult = 2 * m1 * m2
                            image = _image(edges, idx, (
                                _swap_edge(edges[iU], (cx, cx), (c1, c2)),
                                _swap_edge(edges[iW1], (c1,), (cx,)),
                                _swap_edge(edges[iW2], (c2,), (cx,)),
                            ))
                            legal = classify(image) == ell - 1
                            lev.forward_tuples += weight * mult
                            if legal:
                                lev.forward_legal += weight * mult
                            if in_s:
                                s_count += mult
                                lev.forward_candidates += weight * mult
                                if legal:
                                    lev.forward_candidates_legal += weight * mult
                            if not legal:
                                if conds is None:
                                    conds = _edge_conditions(edges, idx, loopy, reverse=False)
                                if not conds and len(tally.forward_counterexamples) < max_counterexamples:
                                    tally.forward_counterexamples.append((edges, idx, (c1, c2)))
        tally.max_forward_candidates[ell] = max(tally.max_forward_candidates.get(ell, 0), s_count)
    up = ell + 1
    lev = tally.levels.setdefault(up, LevelTally())
    s_count = 0
    for iW1 in range(P):
        for iW2 in range(P):
            if iW1 == iW2:
                continue
            for v, a in cnts[iW1].items():
                b = cnts[iW2].get(v, 0)
                if not b:
                    continue
                xm = a * b
                for iU in range(P):
                    if iU == iW1 or iU == iW2:
                        continue
                    idx = (iU, iW1, iW2)
                    in_s = not loopy[iU]
                    conds = None
                    for c1, m1 in cnts[iU].items():
                        for c2, m2 in cnts[iU].items():
                            if c1 == c2:
                                continue
                            mult = xm * m1 * m2
                            image = _image(edges, idx, (
                                _swap_edge(edges[iU], (c1, c2), (v, v)),
                                _swap_edge(edges[iW1], (v,), (c1,)),
                                _swap_edge(edges[iW2], (v,), (c2,)),
                            ))
                            legal = classify(image) == up
                            lev.reverse_tuples += weight * mult
                            if legal:
                                lev.reverse_legal += weight * mult
                            if in_s:
                                s_count += mult
                                lev.reverse_candidates += weight * mult
                                if legal:
                                    lev.reverse_candidates_legal += weight * mult
                            if not legal and up <= N:
                                if conds is None:
                                    conds = _edge_conditions(edges, idx, loopy, reverse=True)
                                if not conds and len(tally.reverse_counterexamples) < max_counterexamples:
                                    tally.reverse_counterexamples.append((edges, idx, (c1, c2)))
    tally.max_reverse_candidates[up] = max(tally.max_reverse_candidates.get(up, 0), s_count)


def switching_tally(k: DegreeSequence, cap: Optional[int] = None,
                    max_counterexamples: int = 20) -> SwitchingTally:
    """Apply every forward and reverse switching to every partition in Lambda^+.

    Legality is decided by classifying the image. Every illegal switching is
    checked for a nonempty condition set; failures are recorded as
    counterexamples. Reverse switchings out of C_N are not checked for
    conditions since C_{N+1} is empty by definition.

    Partitions are grouped by their hypergraph G(Q), which determines all of
    these statistics; ``switching_tally_explicit`` is the point-level
    reference.
    """
    layout = CellLayout.of(k)
    N = loop_cap_N(k)
    classify = _EdgeClassifier(N)
    graphs: dict = defaultdict(int)
    for Q in iter_partitions(k, cap):
        graphs[_edge_key(Q.parts, layout.cell_of)] += 1
    tally = SwitchingTally(N)
    for edges, weight in graphs.items():
        ell = classify(edges)
        if ell >= 0:
            _tally_hypergraph(edges, ell, weight, classify, tally, max_counterexamples)
    tally.levels = dict(sorted(tally.levels.items()))
    return tally


def switching_tally_explicit(k: DegreeSequence, cap: Optional[int] = None,
                             max_counterexamples: int = 20) -> SwitchingTally:
    """Point-level version of ``switching_tally``: every 4-tuple is applied."""
    classes = classify_partitions(k, cap)
    layout = CellLayout.of(k)
    cell = layout.cell_of
    N = loop_cap_N(k)
    tally = SwitchingTally(N)
    for parts, ell in classes.items():
        if ell < 0:
            continue
        Q = Partition(parts)
        loopy = [part_has_loop(U, cell) for U in parts]
        if ell >= 1:
            lev = tally.levels.setdefault(ell, LevelTally())
            s_count = 0
            for t, idx in iter_forward(Q, layout):
                legal = classes[_forward_image(parts, idx, t)] == ell - 1
                lev.forward_tuples += 1
                lev.forward_legal += legal
                if not (loopy[idx[1]] or loopy[idx[2]]):
                    s_count += 1
                    lev.forward_candidates += 1
                    lev.forward_candidates_legal += legal
                if not legal and not forward_conditions(parts, idx, t, cell):
                    if len(tally.forward_counterexamples) < max_counterexamples:
                        tally.forward_counterexamples.append((parts, t))
            tally.max_forward_candidates[ell] = max(tally.max_forward_candidates.get(ell, 0), s_count)
        up = ell + 1
        lev = tally.levels.setdefault(up, LevelTally())
        s_count = 0
        for t, idx in iter_reverse(Q, layout):
            legal = classes[_reverse_image(parts, idx, t)] == up
            lev.reverse_tuples += 1
            lev.reverse_legal += legal
            if not loopy[idx[0]]:
                s_count += 1
                lev.reverse_candidates += 1
                lev.reverse_candidates_legal += legal
            if not legal and up <= N and not reverse_conditions(parts, idx, t, cell):
                if len(tally.reverse_counterexamples) < max_counterexamples:
                    tally.reverse_counterexamples.append((parts, t))
        tally.max_reverse_candidates[up] = max(tally.max_reverse_candidates.get(up, 0), s_count)
    tally.levels = dict(sorted(tally.levels.items()))
    return tally
