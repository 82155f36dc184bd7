"""Forward and reverse loop-removing switchings on partitions.

A forward switching (x1, x2, y1, y2) takes a loop {x1, x2} in part U and
points y1 in W1, y2 in W2, and produces

    U^ = U - {x1, x2} + {y1, y2},  W1^ = W1 - {y1} + {x1},  W2^ = W2 - {y2} + {x2}.

The reverse switching with the same tuple undoes it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .configuration import CellLayout, Partition, lambda_plus_class, part_has_loop
from .core import DegreeSequence, loop_cap_N, moment


class SwitchingError(ValueError):
    """The tuple does not describe a switching in the given partition."""


@dataclass(frozen=True)
class SwitchingTuple:
    x1: int
    x2: int
    y1: int
    y2: int

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.x1, self.x2, self.y1, self.y2)

    def to_json(self) -> str:
        return json.dumps({"x1": self.x1, "x2": self.x2, "y1": self.y1, "y2": self.y2})

    @classmethod
    def from_json(cls, text: str) -> "SwitchingTuple":
        d = json.loads(text)
        return cls(d["x1"], d["x2"], d["y1"], d["y2"])


@dataclass
class LegalityDiagnosis:
    legal: bool
    conditions: frozenset[str] = field(default_factory=frozenset)

    def to_json(self) -> str:
        return json.dumps({"legal": self.legal, "conditions": sorted(self.conditions)})


def _locate(Q: Partition, t: SwitchingTuple, M: int) -> dict[int, int]:
    pts = t.as_tuple()
    if len(set(pts)) != 4:
        raise SwitchingError(f"points of {pts} are not distinct")
    where = Q.part_index()
    for p in pts:
        if p not in where:
            raise SwitchingError(f"point {p} is not in the partition (M={M})")
    return where


def forward_parts(Q: Partition, t: SwitchingTuple, layout: CellLayout) -> tuple[int, int, int]:
    """Indices of (U, W1, W2) for a forward switching; raises on a malformed tuple."""
    where = _locate(Q, t, layout.point_count)
    cell = layout.cell_of
    iU = where[t.x1]
    if where[t.x2] != iU or cell[t.x1] != cell[t.x2]:
        raise SwitchingError("{x1, x2} is not a loop in a single part")
    iW1, iW2 = where[t.y1], where[t.y2]
    if len({iU, iW1, iW2}) != 3:
        raise SwitchingError("parts U, W1, W2 are not distinct")
    if cell[t.y1] == cell[t.y2]:
        raise SwitchingError("y1 and y2 lie in the same cell")
    return iU, iW1, iW2


def reverse_parts(Qp: Partition, t: SwitchingTuple, layout: CellLayout) -> tuple[int, int, int]:
    """Indices of (U^, W1^, W2^) for a reverse switching; raises on a malformed tuple."""
    where = _locate(Qp, t, layout.point_count)
    cell = layout.cell_of
    iU = where[t.y1]
    if where[t.y2] != iU:
        raise SwitchingError("y1 and y2 are not in a single part")
    if cell[t.y1] == cell[t.y2]:
        raise SwitchingError("y1 and y2 lie in the same cell")
    if cell[t.x1] != cell[t.x2]:
        raise SwitchingError("x1 and x2 lie in different cells")
    iW1, iW2 = where[t.x1], where[t.x2]
    if len({iU, iW1, iW2}) != 3:
        raise SwitchingError("parts U^, W1^, W2^ are not distinct")
    return iU, iW1, iW2


def _replace(parts, iU, iW1, iW2, new_U, new_W1, new_W2) -> tuple[tuple[int, ...], ...]:
    out = [U for i, U in enumerate(parts) if i not in (iU, iW1, iW2)]
    out.extend((tuple(sorted(new_U)), tuple(sorted(new_W1)), tuple(sorted(new_W2))))
    out.sort()
    return tuple(out)


def _forward_image(parts, idx, t):
    iU, iW1, iW2 = idx
    x1, x2, y1, y2 = t
    U = [p for p in parts[iU] if p != x1 and p != x2] + [y1, y2]
    W1 = [p for p in parts[iW1] if p != y1] + [x1]
    W2 = [p for p in parts[iW2] if p != y2] + [x2]
    return _replace(parts, iU, iW1, iW2, U, W1, W2)


def _reverse_image(parts, idx, t):
    iU, iW1, iW2 = idx
    x1, x2, y1, y2 = t
    U = [p for p in parts[iU] if p != y1 and p != y2] + [x1, x2]
    W1 = [p for p in parts[iW1] if p != x1] + [y1]
    W2 = [p for p in parts[iW2] if p != x2] + [y2]
    return _replace(parts, iU, iW1, iW2, U, W1, W2)


def apply_forward(Q: Partition, t: SwitchingTuple, layout: CellLayout) -> Partition:
    idx = forward_parts(Q, t, layout)
    return Partition(_forward_image(Q.parts, idx, t.as_tuple()))


def apply_reverse(Qp: Partition, t: SwitchingTuple, layout: CellLayout) -> Partition:
    idx = reverse_parts(Qp, t, layout)
    return Partition(_reverse_image(Qp.parts, idx, t.as_tuple()))


def iter_forward(Q: Partition, layout: CellLayout, loopless_only: bool = False
                 ) -> Iterator[tuple[tuple[int, int, int, int], tuple[int, int, int]]]:
    """Yield (tuple, (iU, iW1, iW2)) for every forward switching in ``Q``.

    With ``loopless_only`` the W parts must contain no loop, which gives the
    candidate set used for counting.
    """
    cell = layout.cell_of
    parts = Q.parts
    loopy = [part_has_loop(U, cell) for U in parts]
    allowed = [i for i in range(len(parts)) if not (loopless_only and loopy[i])]
    for iU, U in enumerate(parts):
        if not loopy[iU]:
            continue
        loop_pairs = [(a, b) for a in U for b in U if a != b and cell[a] == cell[b]]
        for iW1 in allowed:
            if iW1 == iU:
                continue
            for iW2 in allowed:
                if iW2 == iU or iW2 == iW1:
                    continue
                for y1 in parts[iW1]:
                    c1 = cell[y1]
                    for y2 in parts[iW2]:
                        if cell[y2] == c1:
                            continue
                        for x1, x2 in loop_pairs:
                            yield (x1, x2, y1, y2), (iU, iW1, iW2)


def iter_reverse(Qp: Partition, layout: CellLayout, loopless_only: bool = False
                 ) -> Iterator[tuple[tuple[int, int, int, int], tuple[int, int, int]]]:
    """Yield (tuple, (iU^, iW1^, iW2^)) for every reverse switching in ``Qp``.

    With ``loopless_only`` the part U^ must contain no loop.
    """
    cell = layout.cell_of
    parts = Qp.parts
    where = Qp.part_index()
    loopy = [part_has_loop(U, cell) for U in parts]
    y_pairs = []
    for iU, U in enumerate(parts):
        if loopless_only and loopy[iU]:
            continue
        y_pairs.append((iU, [(a, b) for a in U for b in U if a != b and cell[a] != cell[b]]))
    for v in range(1, layout.k.n + 1):
        pts = layout.points_of(v)
        for x1 in pts:
            for x2 in pts:
                if x1 == x2 or where[x1] == where[x2]:
                    continue
                iW1, iW2 = where[x1], where[x2]
                for iU, pairs in y_pairs:
                    if iU == iW1 or iU == iW2:
                        continue
                    for y1, y2 in pairs:
                        yield (x1, x2, y1, y2), (iU, iW1, iW2)


def enumerate_forward_candidates(Q: Partition, layout: CellLayout) -> list[SwitchingTuple]:
    """The candidate set S: loops (both orders) times points of two distinct loopless parts."""
    return [SwitchingTuple(*t) for t, _ in iter_forward(Q, layout, loopless_only=True)]


def enumerate_reverse_candidates(Qp: Partition, layout: CellLayout) -> list[SwitchingTuple]:
    """The candidate set S': ordered same-cell pairs in distinct parts times ordered
    pairs from a third, loopless part."""
    return [SwitchingTuple(*t) for t, _ in iter_reverse(Qp, layout, loopless_only=True)]


def _vertex_sets(parts, idx, cell):
    return [frozenset(cell[p] for p in parts[i]) for i in idx]


def _outside_bridge(parts, idx, cell, e, fs) -> bool:
    for i, W in enumerate(parts):
        if i in idx:
            continue
        vs = {cell[p] for p in W}
        if vs & e and any(vs & f for f in fs):
            return True
    return False


def forward_conditions(parts, idx, t, cell) -> frozenset[str]:
    """Conditions (I)-(III) evaluated in G(Q) for a forward switching."""
    iU, iW1, iW2 = idx
    conds = set()
    if part_has_loop(parts[iW1], cell) or part_has_loop(parts[iW2], cell):
        conds.add("I")
    e, f1, f2 = _vertex_sets(parts, idx, cell)
    if e & f1 or e & f2 or f1 & f2:
        conds.add("II")
    if _outside_bridge(parts, idx, cell, e, (f1, f2)):
        conds.add("III")
    return frozenset(conds)


def reverse_conditions(parts, idx, t, cell) -> frozenset[str]:
    """Conditions (I')-(III') evaluated in G(Q') for a reverse switching."""
    conds = set()
    if any(part_has_loop(parts[i], cell) for i in idx):
        conds.add("I'")
    e, f1, f2 = _vertex_sets(parts, idx, cell)
    if e & f1 or e & f2:
        conds.add("II'")
    if _outside_bridge(parts, idx, cell, e, (f1, f2)):
        conds.add("III'")
    return frozenset(conds)


def diagnose_forward(Q: Partition, t: SwitchingTuple, layout: CellLayout, N: int | None = None
                     ) -> LegalityDiagnosis:
    """Legal iff the image lies in Lambda^+ with one fewer loop part; an illegal
    switching also reports which of (I), (II), (III) hold in G(Q)."""
    if N is None:
        N = loop_cap_N(layout.k)
    idx = forward_parts(Q, t, layout)
    cell = layout.cell_of
    ell = sum(part_has_loop(U, cell) for U in Q.parts)
    image = _forward_image(Q.parts, idx, t.as_tuple())
    if lambda_plus_class(image, cell, N) == ell - 1:
        return LegalityDiagnosis(True)
    return LegalityDiagnosis(False, forward_conditions(Q.parts, idx, t, cell))


def diagnose_reverse(Qp: Partition, t: SwitchingTuple, layout: CellLayout, N: int | None = None
                     ) -> LegalityDiagnosis:
    if N is None:
        N = loop_cap_N(layout.k)
    idx = reverse_parts(Qp, t, layout)
    cell = layout.cell_of
    ell = sum(part_has_loop(U, cell) for U in Qp.parts) + 1
    image = _reverse_image(Qp.parts, idx, t.as_tuple())
    if lambda_plus_class(image, cell, N) == ell:
        return LegalityDiagnosis(True)
    return LegalityDiagnosis(False, reverse_conditions(Qp.parts, idx, t, cell))


def ratio_prediction(k: DegreeSequence, ell: int) -> float:
    """Main term (r-1) M_2 / (2 ell M) of |C_ell| / |C_{ell-1}|."""
    if ell < 1:
        raise ValueError("ell must be positive")
    if k.M < 1:
        raise ValueError("ratio prediction requires M >= 1")
    return (k.r - 1) * moment(k, 2) / (2 * ell * k.M)
