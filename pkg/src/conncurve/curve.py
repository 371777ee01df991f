"""Exact connectivity curves via a decreasing-threshold union-find sweep.

For an affinity matrix A and threshold ``lam``, two points are linked
when their affinity is strictly above ``lam`` (infinite entries are
above every threshold). The number of connected components
``kappa(lam)`` is then a right-continuous, nondecreasing integer step
function of ``lam``. It can only jump where ``lam`` crosses a finite
matrix value, so the whole curve is computed exactly in one pass:
sweep the distinct finite values from the largest down, merging edges
into a disjoint-set forest as they activate, and read the component
count on each interval. Breakpoints where the count does not change
are dropped, so the stored breakpoints are exactly the jump locations.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass, field

import numpy as np

from .affinity import AffinityMatrix
from .errors import DegenerateCurveError, NonPositiveThresholdError
from .oracle import Partition

__all__ = [
    "ConnectivityCurve",
    "DisjointSetForest",
    "kappa_at",
    "connectivity_curve",
    "sweep_partitions",
    "evaluate",
    "compare",
    "concavity_score",
]


class DisjointSetForest:
    """Union-find with union by size, path compression, and a live count."""

    __slots__ = ("parent", "size", "component_count")

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n
        self.component_count = n

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> bool:
        """Merge the sets of ``a`` and ``b``; True if they were distinct."""
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        self.component_count -= 1
        return True

    def partition(self) -> Partition:
        return Partition.from_labels(self.find(i) for i in range(len(self.parent)))


@dataclass(frozen=True)
class ConnectivityCurve:
    """The step function ``lam -> kappa(lam)`` with explicit breakpoints.

    ``values[0]`` is the component count on ``(0, breakpoints[0])``,
    ``values[k]`` the count on ``[breakpoints[k-1], breakpoints[k])``,
    and ``values[-1]`` (== ``kappa_inf``) the stabilized count on
    ``[breakpoints[-1], inf)``. Right-continuity follows from the strict
    comparison in the threshold rule: at a breakpoint the post-jump
    value applies. With no breakpoints the curve is constant.
    """

    n: int
    breakpoints: tuple[float, ...]
    values: tuple[int, ...]
    kappa_inf: int = field(default=-1)

    def __post_init__(self):
        if self.kappa_inf == -1:
            object.__setattr__(self, "kappa_inf", self.values[-1] if self.values else 0)
        if self.n < 1:
            raise ValueError("curve needs at least one point")
        if len(self.values) != len(self.breakpoints) + 1:
            raise ValueError("values must have exactly one more entry than breakpoints")
        for b in self.breakpoints:
            if not (b > 0 and math.isfinite(b)):
                raise ValueError(f"breakpoint {b!r} is not a finite positive real")
        if any(b2 <= b1 for b1, b2 in zip(self.breakpoints, self.breakpoints[1:])):
            raise ValueError("breakpoints must be strictly increasing")
        for v1, v2 in zip(self.values, self.values[1:]):
            if v2 < v1:
                raise ValueError("values must be nondecreasing")
        if any(not 1 <= v <= self.n for v in self.values):
            raise ValueError("values must lie in [1, n]")
        if self.kappa_inf != self.values[-1]:
            raise ValueError("kappa_inf must equal the final value")

    def __call__(self, lam: float) -> int:
        return evaluate(self, lam)


def _bfs_component_count(adj: np.ndarray) -> int:
    n = adj.shape[0]
    seen = np.zeros(n, dtype=bool)
    count = 0
    for start in range(n):
        if seen[start]:
            continue
        count += 1
        seen[start] = True
        stack = [start]
        while stack:
            v = stack.pop()
            fresh = np.flatnonzero(adj[v] & ~seen)
            seen[fresh] = True
            stack.extend(fresh.tolist())
    return count


def kappa_at(A: AffinityMatrix, lam: float) -> int:
    """Component count at one threshold, by direct breadth-first search.

    Edges join pairs with affinity strictly above ``lam`` (infinite
    entries included). Independent of the sweep in
    :func:`connectivity_curve`, so the two can check each other.

    Raises
    ------
    NonPositiveThresholdError
    """
    if not lam > 0:
        raise NonPositiveThresholdError(lam)
    return _bfs_component_count(A.entries > lam)


def _sweep(A: AffinityMatrix) -> tuple[ConnectivityCurve, tuple[Partition, ...]]:
    n = A.n
    iu, ju = np.triu_indices(n, k=1)
    vals = A.entries[iu, ju]
    finite = np.isfinite(vals)

    dsf = DisjointSetForest(n)
    for i, j in zip(iu[~finite], ju[~finite]):
        dsf.union(int(i), int(j))

    fvals = vals[finite]
    fi = iu[finite]
    fj = ju[finite]
    order = np.argsort(fvals)
    fvals, fi, fj = fvals[order], fi[order], fj[order]
    # Group boundaries between runs of exactly equal values: edges tied at
    # one value activate together and never produce intermediate counts.
    cuts = np.flatnonzero(np.diff(fvals)) + 1
    starts = np.concatenate(([0], cuts))
    stops = np.concatenate((cuts, [fvals.size])) if fvals.size else np.array([], dtype=int)

    counts_desc = [dsf.component_count]  # on [v_m, inf)
    partitions_desc = [dsf.partition()]
    for g in range(len(starts) - 1, -1, -1):
        for k in range(starts[g], stops[g]):
            dsf.union(int(fi[k]), int(fj[k]))
        counts_desc.append(dsf.component_count)
        partitions_desc.append(dsf.partition())

    candidates = [float(fvals[s]) for s in starts]  # ascending distinct values
    values_asc = counts_desc[::-1]
    partitions_asc = partitions_desc[::-1]

    breakpoints = []
    values = [values_asc[0]]
    partitions = [partitions_asc[0]]
    for k, v in enumerate(candidates, start=1):
        if values_asc[k] != values[-1]:
            breakpoints.append(v)
            values.append(values_asc[k])
            partitions.append(partitions_asc[k])

    curve = ConnectivityCurve(n=n, breakpoints=tuple(breakpoints), values=tuple(values))
    return curve, tuple(partitions)


def _round_significant(x: float, digits: int) -> float:
    if x == 0 or not math.isfinite(x):
        return x
    return round(x, digits - 1 - math.floor(math.log10(abs(x))))


def connectivity_curve(
    A: AffinityMatrix, *, quantize_digits: int | None = None
) -> ConnectivityCurve:
    """Compute the exact connectivity curve of ``A``.

    Distinct finite values are separated by exact float equality. For
    noisy data, ``quantize_digits`` optionally rounds finite entries to
    that many significant digits first, clustering near-ties; it is off
    by default because silent epsilon-merging would change the curve
    unpredictably.
    """
    if quantize_digits is not None:
        E = A.entries
        rounded = np.array(
            [[_round_significant(v, quantize_digits) if math.isfinite(v) else v for v in row] for row in E]
        )
        A = AffinityMatrix(rounded)
    curve, _ = _sweep(A)
    return curve


def sweep_partitions(
    A: AffinityMatrix,
) -> tuple[ConnectivityCurve, tuple[Partition, ...]]:
    """Curve plus the component partition on each of its intervals.

    ``partitions[k]`` labels the components for thresholds in the k-th
    interval of the curve (same indexing as ``values``), which lets the
    sweep be checked block-by-block against the brute-force oracles.
    """
    return _sweep(A)


def evaluate(curve: ConnectivityCurve, lam: float) -> int:
    """Value of the step function at ``lam`` (right-continuous lookup)."""
    if not lam > 0:
        raise NonPositiveThresholdError(lam)
    return curve.values[bisect_right(curve.breakpoints, lam)]


def _rescaled_steps(curve: ConnectivityCurve) -> tuple[list[float], list[float]]:
    """Jump grid and values of the curve rescaled into the unit square.

    The threshold domain [first breakpoint, last breakpoint] maps
    affinely onto [0, 1] and the component range [kappa at the first
    breakpoint, n] onto [0, 1]. Returns (ts, ys): the function equals
    ys[k] on [ts[k], ts[k+1]), with ts[0] == 0, plus a final ts of 1.
    """
    m = len(curve.breakpoints)
    if m == 0:
        raise DegenerateCurveError("no breakpoints")
    lo = curve.values[1]
    if curve.values[-1] == lo:
        raise DegenerateCurveError("kappa is constant over the breakpoint span")
    v1, vm = curve.breakpoints[0], curve.breakpoints[-1]
    span = vm - v1
    ts = [(b - v1) / span for b in curve.breakpoints] + [1.0]
    ys = [(v - lo) / (curve.n - lo) for v in curve.values[1:]]
    return ts, ys


def compare(c1: ConnectivityCurve, c2: ConnectivityCurve) -> float:
    """L1 distance between two curves rescaled to the unit square.

    Both step functions are normalized as in :func:`_rescaled_steps`,
    making the distance invariant to rescaling either the thresholds or
    the number of points. Symmetric; zero iff the rescaled curves agree
    almost everywhere; bounded by 1.

    Raises
    ------
    DegenerateCurveError
        If either curve has no breakpoints or is constant across them.
    """
    t1, y1 = _rescaled_steps(c1)
    t2, y2 = _rescaled_steps(c2)
    grid = sorted(set(t1) | set(t2))
    total = 0.0
    for a, b in zip(grid, grid[1:]):
        g1 = y1[bisect_right(t1, a) - 1]
        g2 = y2[bisect_right(t2, a) - 1]
        total += abs(g1 - g2) * (b - a)
    return total


def concavity_score(curve: ConnectivityCurve) -> float:
    """Signed area between the rescaled curve and the unit-square chord.

    Positive means the curve spends more area above the chord from
    (0, 0) to (1, 1) (components split early and fast, a concave-like
    shape); negative means convex-like. A diagnostic, not a theorem:
    the sign summarizes shape the way side-by-side plots would.

    Raises
    ------
    DegenerateCurveError
        If the curve has fewer than 3 breakpoints or is constant across
        them.
    """
    if len(curve.breakpoints) < 3:
        raise DegenerateCurveError("need at least 3 breakpoints for a shape score")
    ts, ys = _rescaled_steps(curve)
    area = sum(y * (b - a) for y, a, b in zip(ys, ts, ts[1:]))
    return area - 0.5
