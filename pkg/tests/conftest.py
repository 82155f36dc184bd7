from itertools import permutations

import pytest

from hyperdeg.configuration import CellLayout


def integer_partitions(total, max_part):
    """Nonincreasing tuples of positive integers <= max_part summing to total."""
    if total == 0:
        yield ()
        return
    for first in range(min(total, max_part), 0, -1):
        for rest in integer_partitions(total - first, first):
            yield (first,) + rest


def acceptance_instances():
    """All degree sequences (up to vertex order) used by the exhaustive checks."""
    out = []
    for M in (3, 6, 9, 12):
        out.extend((degs, 3) for degs in integer_partitions(M, 4))
    for M in (4, 8):
        out.extend((degs, 4) for degs in integer_partitions(M, 4))
    return out


def brute_partitions(M, r):
    """Set of all canonical partitions via every permutation of the points (M <= 9)."""
    seen = set()
    for perm in permutations(range(M)):
        parts = tuple(sorted(tuple(sorted(perm[i:i + r])) for i in range(0, M, r)))
        seen.add(parts)
    return seen


def brute_forward_tuples(parts, layout, loopless_w):
    """Candidate forward tuples by filtering all M^4 point tuples against the definition."""
    cell = layout.cell_of
    M = layout.point_count
    where = {p: i for i, U in enumerate(parts) for p in U}
    loopy = [len({cell[p] for p in U}) < len(U) for U in parts]
    out = set()
    for x1 in range(M):
        for x2 in range(M):
            for y1 in range(M):
                for y2 in range(M):
                    if len({x1, x2, y1, y2}) < 4:
                        continue
                    if cell[x1] != cell[x2] or where[x1] != where[x2]:
                        continue
                    U, W1, W2 = where[x1], where[y1], where[y2]
                    if len({U, W1, W2}) < 3 or cell[y1] == cell[y2]:
                        continue
                    if loopless_w and (loopy[W1] or loopy[W2]):
                        continue
                    out.add((x1, x2, y1, y2))
    return out


def brute_reverse_tuples(parts, layout, loopless_u):
    cell = layout.cell_of
    M = layout.point_count
    where = {p: i for i, U in enumerate(parts) for p in U}
    loopy = [len({cell[p] for p in U}) < len(U) for U in parts]
    out = set()
    for x1 in range(M):
        for x2 in range(M):
            for y1 in range(M):
                for y2 in range(M):
                    if len({x1, x2, y1, y2}) < 4:
                        continue
                    if cell[x1] != cell[x2] or where[y1] != where[y2]:
                        continue
                    U, W1, W2 = where[y1], where[x1], where[x2]
                    if len({U, W1, W2}) < 3 or cell[y1] == cell[y2]:
                        continue
                    if loopless_u and loopy[U]:
                        continue
                    out.add((x1, x2, y1, y2))
    return out


@pytest.fixture
def layout_factory():
    from hyperdeg.core import DegreeSequence

    def make(degs, r=3):
        k = DegreeSequence(degs, r)
        return k, CellLayout.of(k)
    return make
