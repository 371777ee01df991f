"""Brute-force topological oracles on finite affinity spaces.

An affinity induces a topology in which a set U is open when every
point of U can be surrounded by a superlevel set ``{y : A(x, y) > a}``
contained in U. On a finite set that existential test collapses to a
containment test against the infinity neighborhood
``{y : A(x, y) == inf}``, and connected components can be found by
exhaustively searching for separations by disjoint open sets.

Everything here favors fidelity to the definitions over speed: open
sets are enumerated as bitmasks over all ``2**n`` subsets and candidate
components are split by literal disjoint-open-pair searches. The point
is to cross-check the fast union-find sweep in :mod:`conncurve.curve`,
so the exhaustive path is capped at small ``n``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .affinity import AffinityMatrix
from .errors import IndexOutOfRangeError, TooLargeForOracleError

__all__ = [
    "Partition",
    "InfinityGraph",
    "minimal_neighborhood",
    "is_open",
    "is_connected",
    "components_topological",
    "components_graph",
    "ORACLE_SIZE_LIMIT",
]

# Exhaustive subset enumeration beyond this many points is pointless.
ORACLE_SIZE_LIMIT = 12


@dataclass(frozen=True)
class Partition:
    """A canonical labeling of {0..n-1} into disjoint blocks.

    Labels are renumbered by first appearance, so ``labels[0] == 0`` and
    each new block id exceeds all earlier ids by exactly one. Two
    partitions are equal iff their label tuples are equal.
    """

    labels: tuple[int, ...]

    @classmethod
    def from_labels(cls, raw) -> "Partition":
        remap: dict[int, int] = {}
        out = []
        for r in raw:
            if r not in remap:
                remap[r] = len(remap)
            out.append(remap[r])
        return cls(tuple(out))

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def n_blocks(self) -> int:
        return max(self.labels) + 1 if self.labels else 0

    def blocks(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.n_blocks)]
        for i, b in enumerate(self.labels):
            out[b].append(i)
        return out


@dataclass(frozen=True)
class InfinityGraph:
    """Boolean adjacency over the infinite entries of an affinity matrix."""

    n: int
    adjacency: np.ndarray  # (n, n) bool, symmetric, True on the diagonal

    @classmethod
    def from_affinity(cls, A: AffinityMatrix) -> "InfinityGraph":
        adj = np.isinf(A.entries)
        adj.flags.writeable = False
        return cls(A.n, adj)


def _check_index(x: int, n: int) -> None:
    if not 0 <= x < n:
        raise IndexOutOfRangeError(x, n)


def minimal_neighborhood(A: AffinityMatrix, x: int) -> set[int]:
    """Indices with infinite affinity to ``x`` (always contains ``x``).

    This is the intersection of all superlevel sets around ``x`` and is
    contained in every open set containing ``x``.
    """
    _check_index(x, A.n)
    return set(np.flatnonzero(np.isinf(A.entries[x])).tolist())


def _open_at_literal(A: AffinityMatrix, x: int, members: set[int]) -> bool:
    # Scan every candidate level a: the distinct finite affinities from x
    # plus one value above the largest, which realizes every distinct
    # superlevel set {y : A(x, y) > a}.
    row = A.entries[x]
    finite = row[np.isfinite(row)]
    cands = sorted(set(finite.tolist()))
    cands.append(cands[-1] + 1.0 if cands else 1.0)
    for a in cands:
        if set(np.flatnonzero(row > a).tolist()) <= members:
            return True
    return False


def is_open(A: AffinityMatrix, U, *, literal: bool = False) -> bool:
    """Whether ``U`` belongs to the topology induced by ``A``.

    The default test checks ``minimal_neighborhood(A, x) <= U`` for every
    ``x`` in ``U``. With ``literal=True`` the existential definition is
    scanned instead (some level around each point keeps its superlevel
    set inside U); the flag exists so tests can guard the finite-set
    reduction against the literal definition. The empty set is open.
    """
    n = A.n
    members = set()
    for x in U:
        _check_index(x, n)
        members.add(int(x))
    if literal:
        return all(_open_at_literal(A, x, members) for x in members)
    return all(minimal_neighborhood(A, x) <= members for x in members)


def _neighbor_masks(A: AffinityMatrix) -> list[int]:
    inf_rows = np.isinf(A.entries)
    masks = []
    for x in range(A.n):
        m = 0
        for y in np.flatnonzero(inf_rows[x]):
            m |= 1 << int(y)
        masks.append(m)
    return masks


def _open_masks(nbr: list[int], n: int) -> list[int]:
    opens = []
    for mask in range(1 << n):
        rest = mask
        ok = True
        while rest:
            low = rest & -rest
            rest ^= low
            if nbr[low.bit_length() - 1] & ~mask:
                ok = False
                break
        if ok:
            opens.append(mask)
    return opens


class _SeparationOracle:
    """Splits subsets by disjoint pairs of open sets, all as bitmasks."""

    def __init__(self, A: AffinityMatrix):
        self.n = A.n
        self.opens = _open_masks(_neighbor_masks(A), A.n)
        self._widest: dict[int, int] = {}

    def _widest_disjoint(self, u: int) -> int:
        # Union of all opens disjoint from u: itself open, and a superset
        # of any single open that could play the second role in a
        # separating pair, so testing it alone is exhaustive.
        w = self._widest.get(u)
        if w is None:
            w = 0
            for v in self.opens:
                if not v & u:
                    w |= v
            self._widest[u] = w
        return w

    def split(self, s: int) -> tuple[int, int] | None:
        """A separation (s & U, s & V) by disjoint opens, or None."""
        for u in self.opens:
            inside = s & u
            outside = s & ~u
            if inside and outside and not outside & ~self._widest_disjoint(u):
                return inside, outside
        return None


def is_connected(A: AffinityMatrix, S, *, limit: int = ORACLE_SIZE_LIMIT) -> bool:
    """Whether the subset ``S`` is connected in the induced topology.

    A subset is disconnected exactly when two disjoint open sets cover
    it while each meets it. Exhaustive over open sets; capped at
    ``limit`` points.
    """
    n = A.n
    if n > limit:
        raise TooLargeForOracleError(n, limit)
    s = 0
    for x in S:
        _check_index(x, n)
        s |= 1 << int(x)
    if not s:
        return True
    return _SeparationOracle(A).split(s) is None


def components_topological(
    A: AffinityMatrix, *, limit: int = ORACLE_SIZE_LIMIT
) -> Partition:
    """Connected components straight from the topological definition.

    Starting from the full set, any subset that two disjoint open sets
    separate is split along them and the parts are reexamined. A
    connected set is never cut by such a pair, so the final parts are
    exactly the maximal connected subsets.

    Raises
    ------
    TooLargeForOracleError
        If ``A.n`` exceeds ``limit`` (default ``ORACLE_SIZE_LIMIT``).
    """
    n = A.n
    if n > limit:
        raise TooLargeForOracleError(n, limit)
    oracle = _SeparationOracle(A)
    blocks: list[int] = []
    stack = [(1 << n) - 1]
    while stack:
        s = stack.pop()
        sep = oracle.split(s)
        if sep is None:
            blocks.append(s)
        else:
            stack.extend(sep)
    labels = [0] * n
    for b, mask in enumerate(blocks):
        rest = mask
        while rest:
            low = rest & -rest
            rest ^= low
            labels[low.bit_length() - 1] = b
    return Partition.from_labels(labels)


def components_graph(A: AffinityMatrix) -> Partition:
    """Path components of the infinity graph, by breadth-first search."""
    g = InfinityGraph.from_affinity(A)
    n = g.n
    labels = [-1] * n
    block = 0
    for start in range(n):
        if labels[start] != -1:
            continue
        labels[start] = block
        queue = [start]
        while queue:
            v = queue.pop()
            for w in np.flatnonzero(g.adjacency[v]):
                w = int(w)
                if labels[w] == -1:
                    labels[w] = block
                    queue.append(w)
        block += 1
    return Partition.from_labels(labels)
