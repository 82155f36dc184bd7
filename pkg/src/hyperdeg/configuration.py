"""The configuration model: cells of points, partitions into r-sets, and G(Q).

Points are numbered 0..M-1 and vertex i (1-based) owns the contiguous block of
k_i points following the block of vertex i-1.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .core import DegreeSequence, loop_cap_N


@dataclass(frozen=True)
class CellLayout:
    k: DegreeSequence
    cell_of: tuple[int, ...]
    offsets: tuple[int, ...]

    @classmethod
    def of(cls, k: DegreeSequence) -> "CellLayout":
        cell_of = []
        offsets = []
        for i, d in enumerate(k.degrees, start=1):
            offsets.append(len(cell_of))
            cell_of.extend([i] * d)
        return cls(k, tuple(cell_of), tuple(offsets))

    @property
    def point_count(self) -> int:
        return len(self.cell_of)

    def points_of(self, vertex: int) -> range:
        start = self.offsets[vertex - 1]
        return range(start, start + self.k.degrees[vertex - 1])


@dataclass(frozen=True)
class Partition:
    """An unordered partition of the points into parts of size r, canonical form."""

    parts: tuple[tuple[int, ...], ...]

    @classmethod
    def from_parts(cls, parts: Iterable[Iterable[int]]) -> "Partition":
        return cls(tuple(sorted(tuple(sorted(U)) for U in parts)))

    def canonical(self) -> "Partition":
        return Partition.from_parts(self.parts)

    def validate(self, point_count: int, r: int) -> None:
        seen = sorted(p for U in self.parts for p in U)
        if seen != list(range(point_count)):
            raise ValueError("parts do not form an exact cover of the points")
        if any(len(U) != r for U in self.parts):
            raise ValueError(f"every part must have exactly {r} points")

    def part_index(self) -> dict[int, int]:
        """Map point -> index of the part containing it."""
        return {p: i for i, U in enumerate(self.parts) for p in U}

    def to_json(self) -> str:
        return json.dumps([list(U) for U in self.parts])

    @classmethod
    def from_json(cls, text: str) -> "Partition":
        return cls.from_parts(json.loads(text))

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)


@dataclass(frozen=True)
class HypergraphView:
    """G(Q): vertices 1..n, edges as sorted vertex multisets (sorted edge list)."""

    n: int
    edges: tuple[tuple[int, ...], ...]

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for e in self.edges:
            for v in e:
                deg[v - 1] += 1
        return deg

    def has_loop(self) -> bool:
        return any(len(set(e)) < len(e) for e in self.edges)

    def has_repeated_edge(self) -> bool:
        return len(set(self.edges)) < len(self.edges)

    def is_simple(self) -> bool:
        return not self.has_loop() and not self.has_repeated_edge()

    def to_json(self) -> str:
        return json.dumps([list(e) for e in self.edges])

    @classmethod
    def from_json(cls, text: str, n: int) -> "HypergraphView":
        return cls(n, tuple(sorted(tuple(sorted(e)) for e in json.loads(text))))


@dataclass
class LambdaPlusReport:
    prop_i: bool
    prop_ii: bool
    prop_iii: bool
    prop_iv: bool
    loop_parts: int
    violations: list[dict] = field(default_factory=list)

    @property
    def in_lambda_plus(self) -> bool:
        return self.prop_i and self.prop_ii and self.prop_iii and self.prop_iv


def _rng(rng) -> np.random.Generator:
    if isinstance(rng, np.random.Generator):
        return rng
    return np.random.default_rng(rng)


def random_partition(k: DegreeSequence, rng=None) -> Partition:
    """Uniform random partition: shuffle the points, cut into consecutive r-blocks."""
    k.require_divisible()
    if k.M < 1:
        raise ValueError("random_partition requires M >= 1")
    perm = _rng(rng).permutation(k.M).reshape(-1, k.r)
    return Partition.from_parts(perm.tolist())


def edges_of(Q: Partition, layout: CellLayout) -> HypergraphView:
    cell_of = layout.cell_of
    edges = sorted(tuple(sorted(cell_of[p] for p in U)) for U in Q.parts)
    return HypergraphView(layout.k.n, tuple(edges))


def _cell_counts(U: Sequence[int], cell_of: Sequence[int]) -> dict[int, int]:
    cnt: dict[int, int] = {}
    for p in U:
        c = cell_of[p]
        cnt[c] = cnt.get(c, 0) + 1
    return cnt


def part_has_loop(U: Sequence[int], cell_of: Sequence[int]) -> bool:
    cells = [cell_of[p] for p in U]
    return len(set(cells)) < len(cells)


def loop_part_count(Q: Partition, layout: CellLayout) -> int:
    """Number of parts holding two or more points of a single cell."""
    return sum(part_has_loop(U, layout.cell_of) for U in Q.parts)


def is_simple(Q: Partition, layout: CellLayout) -> bool:
    cell_of = layout.cell_of
    seen = set()
    for U in Q.parts:
        e = tuple(sorted(cell_of[p] for p in U))
        if len(set(e)) < len(e) or e in seen:
            return False
        seen.add(e)
    return True


def multiset_intersection(e1: dict[int, int], e2: dict[int, int]) -> int:
    """|e1 & e2| counted with multiplicity: sum over vertices of min multiplicity."""
    if len(e2) < len(e1):
        e1, e2 = e2, e1
    return sum(min(m, e2.get(v, 0)) for v, m in e1.items())


def classify_lambda_plus(Q: Partition, layout: CellLayout, N: int | None = None) -> LambdaPlusReport:
    """Check properties (i)-(iv) and report witnesses for every failure."""
    if N is None:
        N = loop_cap_N(layout.k)
    cell_of = layout.cell_of
    violations: list[dict] = []
    counts = [_cell_counts(U, cell_of) for U in Q.parts]
    prop_i = prop_ii = prop_iii = True
    loops = 0
    for U, cnt in zip(Q.parts, counts):
        if max(cnt.values()) > 2:
            prop_i = False
            violations.append({"property": "i", "part": list(U)})
        doubled = sum(1 for m in cnt.values() if m >= 2)
        if sum(1 for m in cnt.values() if m == 2) > 1:
            prop_ii = False
            violations.append({"property": "ii", "part": list(U)})
        if doubled:
            loops += 1
    for (a, ca), (b, cb) in combinations(zip(Q.parts, counts), 2):
        if multiset_intersection(ca, cb) > 2:
            prop_iii = False
            violations.append({"property": "iii", "parts": [list(a), list(b)]})
    prop_iv = loops <= N
    if not prop_iv:
        violations.append({"property": "iv", "loop_parts": loops, "N": N})
    return LambdaPlusReport(prop_i, prop_ii, prop_iii, prop_iv, loops, violations)


def lambda_plus_class(parts: Sequence[Sequence[int]], cell_of: Sequence[int], N: int) -> int:
    """Fast membership test: the loop-part count if the partition lies in
    Lambda^+, otherwise -1."""
    loops = 0
    counts = []
    for U in parts:
        cnt = _cell_counts(U, cell_of)
        if len(cnt) < len(U):
            doubled = 0
            for m in cnt.values():
                if m > 2:
                    return -1
                if m == 2:
                    doubled += 1
            if doubled > 1:
                return -1
            loops += 1
        counts.append(cnt)
    if loops > N:
        return -1
    for i in range(len(counts)):
        ci = counts[i]
        for j in range(i + 1, len(counts)):
            if multiset_intersection(ci, counts[j]) > 2:
                return -1
    return loops
