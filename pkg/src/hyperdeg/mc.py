"""Monte Carlo estimation over uniform random partitions.

Sampling is batched with numpy: each row of a batch is a uniform permutation
of the points cut into consecutive r-blocks. Worker ``w`` of a run seeded with
``seed`` draws from ``numpy.random.default_rng(stream_seed(seed, w))``, so a
report is reproducible from (seed, workers, samples). Changing the worker
count changes which streams are used and hence the exact counts.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from typing import Iterator, Optional, Sequence

import numpy as np

from .configuration import CellLayout, HypergraphView, edges_of, is_simple, random_partition
from .core import DegreeSequence, loop_cap_N

DEFAULT_Z = 3.0
BATCH = 8192
EVENTS = ("i", "ii", "iii", "iv", "not_simple")

_MASK64 = (1 << 64) - 1


def splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def stream_seed(seed: int, worker: int) -> int:
    """64-bit seed of worker ``worker``'s stream: splitmix64(seed + worker * golden)."""
    return splitmix64((seed + worker * 0x9E3779B97F4A7C15) & _MASK64)


class ExhaustedError(RuntimeError):
    """Rejection sampling hit ``max_tries`` without a simple hypergraph."""

    def __init__(self, tries: int):
        super().__init__(f"no simple hypergraph after {tries} tries")
        self.tries = tries


@dataclass(frozen=True)
class EstimateReport:
    samples: int
    successes: int
    p_hat: float
    std_err: float
    ci_low: float
    ci_high: float
    seed: int
    workers: int

    @classmethod
    def from_counts(cls, successes: int, samples: int, seed: int, workers: int,
                    z: float = DEFAULT_Z) -> "EstimateReport":
        p = successes / samples
        se = math.sqrt(p * (1 - p) / samples)
        return cls(samples, successes, p, se, max(0.0, p - z * se), min(1.0, p + z * se),
                   seed, workers)

    def contains(self, p: float) -> bool:
        return self.ci_low <= p <= self.ci_high

    def to_dict(self) -> dict:
        d = asdict(self)
        d["ci"] = [d.pop("ci_low"), d.pop("ci_high")]
        return d


def sample_batch(k: DegreeSequence, size: int, rng: np.random.Generator) -> np.ndarray:
    """Point arrays of ``size`` uniform partitions, shape (size, M/r, r)."""
    base = np.broadcast_to(np.arange(k.M), (size, k.M))
    return rng.permuted(base, axis=1).reshape(size, k.M // k.r, k.r)


def batch_is_simple(cells: np.ndarray) -> np.ndarray:
    """Simplicity of each partition from its (B, P, r) array of cells."""
    s = np.sort(cells, axis=2)
    loop = (s[:, :, 1:] == s[:, :, :-1]).any(axis=(1, 2))
    base = int(s.max()) + 1 if s.size else 1
    keys = np.zeros(s.shape[:2], dtype=np.int64)
    for j in range(s.shape[2]):
        keys = keys * base + s[:, :, j]
    keys.sort(axis=1)
    repeated = (keys[:, 1:] == keys[:, :-1]).any(axis=1)
    return ~(loop | repeated)


def batch_lambda_plus(cells: np.ndarray, n: int, N: int) -> dict[str, np.ndarray]:
    """Failure indicators of properties (i)-(iv) and the loop-part counts.

    Edge intersections count multiplicity, as in ``classify_lambda_plus``.
    """
    B, P, r = cells.shape
    s = np.sort(cells, axis=2)
    eq = s[:, :, 1:] == s[:, :, :-1]
    triple = (eq[:, :, 1:] & eq[:, :, :-1]).any(axis=2)
    # runs of exactly two equal cells: eq at j, but not at j-1 or j+1
    doubles = eq.copy()
    doubles[:, :, 1:] &= ~eq[:, :, :-1]
    doubles[:, :, :-1] &= ~eq[:, :, 1:]
    loopy = eq.any(axis=2)
    loops = loopy.sum(axis=1)
    fail_iii = np.zeros(B, dtype=bool)
    if P > 1:
        cnt = np.zeros((B, P, n + 1), dtype=np.int8)
        bi, pi = np.meshgrid(np.arange(B), np.arange(P), indexing="ij")
        for j in range(r):
            np.add.at(cnt, (bi, pi, cells[:, :, j]), 1)
        iu, ju = np.triu_indices(P, 1)
        step = max(1, 4_000_000 // (B * (n + 1)))
        for a in range(0, len(iu), step):
            inter = np.minimum(cnt[:, iu[a:a + step]], cnt[:, ju[a:a + step]]).sum(axis=2)
            fail_iii |= (inter > 2).any(axis=1)
    return {
        "i": triple.any(axis=1),
        "ii": (doubles.sum(axis=2) > 1).any(axis=1),
        "iii": fail_iii,
        "iv": loops > N,
        "loops": loops,
    }


def _split(samples: int, workers: int) -> list[int]:
    base, rem = divmod(samples, workers)
    return [base + (w < rem) for w in range(workers)]


def _cells_array(k: DegreeSequence) -> np.ndarray:
    return np.asarray(CellLayout.of(k).cell_of, dtype=np.int64)


def _count_simple(args) -> int:
    k, samples, seed = args
    rng = np.random.default_rng(seed)
    cell = _cells_array(k)
    hits = 0
    for start in range(0, samples, BATCH):
        size = min(BATCH, samples - start)
        hits += int(batch_is_simple(cell[sample_batch(k, size, rng)]).sum())
    return hits


def _count_events(args) -> dict[str, int]:
    k, samples, seed, fixed = args
    rng = np.random.default_rng(seed)
    cell = _cells_array(k)
    N = loop_cap_N(k)
    totals = {e: 0 for e in EVENTS}
    if fixed:
        totals["contains_fixed_parts"] = 0
        fixed_sorted = np.sort(np.asarray(fixed), axis=1)
    chunk = max(64, min(BATCH, 2_000_000 // max(1, (k.M // k.r) ** 2 * (k.n + 1))))
    for start in range(0, samples, chunk):
        size = min(chunk, samples - start)
        pts = sample_batch(k, size, rng)
        cells = cell[pts]
        flags = batch_lambda_plus(cells, k.n, N)
        for e in ("i", "ii", "iii", "iv"):
            totals[e] += int(flags[e].sum())
        totals["not_simple"] += int((~batch_is_simple(cells)).sum())
        if fixed:
            parts = np.sort(pts, axis=2)
            has_all = np.ones(size, dtype=bool)
            for U in fixed_sorted:
                has_all &= (parts == U).all(axis=2).any(axis=1)
            totals["contains_fixed_parts"] += int(has_all.sum())
    return totals


def _run(func, jobs, workers):
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            return list(pool.map(func, jobs))
    return [func(j) for j in jobs]


def estimate_p_simple(k: DegreeSequence, samples: int, seed: int = 0, workers: int = 1,
                      z: float = DEFAULT_Z) -> EstimateReport:
    """Estimate the probability that a uniform partition is simple."""
    k.require_divisible()
    if samples < 1:
        raise ValueError("samples must be >= 1")
    if k.M == 0:
        return EstimateReport.from_counts(samples, samples, seed, workers, z)
    jobs = [(k, n, stream_seed(seed, w)) for w, n in enumerate(_split(samples, workers))]
    hits = sum(_run(_count_simple, jobs, workers))
    return EstimateReport.from_counts(hits, samples, seed, workers, z)


def estimate_event_rates(k: DegreeSequence, samples: int, seed: int = 0, workers: int = 1,
                         fixed_parts: Optional[Sequence[Sequence[int]]] = None,
                         z: float = DEFAULT_Z) -> dict[str, EstimateReport]:
    """Empirical failure rates of properties (i)-(iv) and of simplicity.

    With ``fixed_parts`` (disjoint r-sets of points) the rate of partitions
    containing all of them is reported as ``contains_fixed_parts``.
    """
    k.require_divisible()
    if samples < 1:
        raise ValueError("samples must be >= 1")
    if k.M == 0:
        raise ValueError("event rates require M >= 1")
    fixed = [sorted(U) for U in fixed_parts] if fixed_parts else None
    jobs = [(k, n, stream_seed(seed, w), fixed) for w, n in enumerate(_split(samples, workers))]
    totals: dict[str, int] = {}
    for part in _run(_count_events, jobs, workers):
        for e, c in part.items():
            totals[e] = totals.get(e, 0) + c
    return {e: EstimateReport.from_counts(c, samples, seed, workers, z) for e, c in totals.items()}


def sample_simple_hypergraph(k: DegreeSequence, seed=0, max_tries: int = 10_000) -> HypergraphView:
    """Uniform simple hypergraph with degrees ``k``, by rejection on G(Q).

    ``seed`` may also be a ``numpy.random.Generator`` to draw several samples
    from one stream.
    """
    if max_tries < 1:
        raise ValueError("max_tries must be >= 1")
    k.require_divisible()
    layout = CellLayout.of(k)
    if k.M == 0:
        return HypergraphView(k.n, ())
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    for _ in range(max_tries):
        Q = random_partition(k, rng)
        if is_simple(Q, layout):
            return edges_of(Q, layout)
    raise ExhaustedError(max_tries)


def iter_samples(k: DegreeSequence, count: int, seed: int = 0, simple: bool = False,
                 max_tries: int = 10_000) -> Iterator:
    """``count`` partitions (or simple hypergraphs) from a single seeded stream.

    Failed rejection runs yield the ``ExhaustedError`` instead of raising.
    """
    rng = np.random.default_rng(seed)
    for _ in range(count):
        if simple:
            try:
                yield sample_simple_hypergraph(k, rng, max_tries)
            except ExhaustedError as err:
                yield err
        else:
            yield random_partition(k, rng)
