"""Schmidt-rank plus majorization semiorder and poset sorting by chain merge.

Convention: ``a`` *precedes* ``b`` (a < b) when ``a`` has the larger Schmidt
rank, or equal rank and squared coefficients majorized by those of ``b``.
Read as "no less entangled precedes".

Poset sorting inserts elements one at a time.  For every existing chain two
binary searches locate the last element below the newcomer and the first
element above it; the newcomer's relation to every inserted element then
follows by transitivity, without further queries.  The chain decomposition
is kept minimum (via bipartite matching) so the number of chains never
exceeds the width of the poset, which bounds queries by O(w n log n).
"""

from __future__ import annotations

import dataclasses
import enum
from typing import Callable, Hashable, Sequence

import numpy as np

from entsort.errors import DomainError, StateError
from entsort.schmidt import SchmidtData, schmidt_of
from entsort.tolerances import T_MAJ, T_RANK


class Comparison(enum.Enum):
    PRECEDES = "Precedes"
    SUCCEEDS = "Succeeds"
    NONCOMPARABLE = "NonComparable"


def _majorized(c1: np.ndarray, c2: np.ndarray, tol: float) -> bool:
    return bool(np.all(c1 <= c2 + tol))


def sd_query_oracle(s1: SchmidtData, s2: SchmidtData, tol: float = T_MAJ) -> Comparison:
    """Compare two Schmidt records under the semiorder."""
    for s in (s1, s2):
        if s.kind == "pure" and abs(float(np.sum(s.weights)) - 1.0) > 1e-8:
            raise DomainError("pure-state Schmidt coefficients are not normalized")
    if s1.rank > s2.rank:
        return Comparison.PRECEDES
    if s2.rank > s1.rank:
        return Comparison.SUCCEEDS
    c1, c2 = s1.cumulative, s2.cumulative
    if _majorized(c1, c2, tol):
        return Comparison.PRECEDES
    if _majorized(c2, c1, tol):
        return Comparison.SUCCEEDS
    return Comparison.NONCOMPARABLE


class QueryCounter:
    """Callable wrapper that counts oracle invocations."""

    def __init__(self, oracle: Callable):
        self.oracle = oracle
        self.count = 0

    def __call__(self, a, b):
        self.count += 1
        return self.oracle(a, b)

    def reset(self):
        self.count = 0


def query_counter(oracle: Callable) -> QueryCounter:
    return QueryCounter(oracle)


@dataclasses.dataclass
class RankBucket:
    rank: int
    members: list


def rank_partition(data: Sequence[SchmidtData], ids: Sequence[Hashable] | None = None) -> list[RankBucket]:
    """Group ids by Schmidt rank, ranks ascending, input order kept inside."""
    ids = list(range(len(data))) if ids is None else list(ids)
    groups: dict[int, list] = {}
    for sid, s in zip(ids, data):
        groups.setdefault(s.rank, []).append(sid)
    return [RankBucket(r, groups[r]) for r in sorted(groups)]


def _last_true(n: int, pred) -> int:
    """Largest index whose predicate holds, for a prefix-true predicate; -1 if none."""
    lo, hi = 0, n
    while lo < hi:
        mid = (lo + hi) // 2
        if pred(mid):
            lo = mid + 1
        else:
            hi = mid
    return lo - 1


def _first_true(n: int, pred) -> int:
    """Smallest index whose predicate holds, for a suffix-true predicate; n if none."""
    lo, hi = 0, n
    while lo < hi:
        mid = (lo + hi) // 2
        if pred(mid):
            hi = mid
        else:
            lo = mid + 1
    return lo


class ChainMergeIndex:
    """Chain decomposition of a poset with per-chain dominance positions.

    The relation among members is held as a boolean matrix,
    ``rel[i, j]`` true iff member ``i`` precedes member ``j`` (reflexive),
    indexed by insertion sequence and filled from the binary searches.
    """

    def __init__(self):
        self.chains: list[list] = []
        self._seq: dict[Hashable, int] = {}
        self._rel = np.zeros((0, 0), dtype=bool)
        self._dominance = None

    def __len__(self):
        return len(self._seq)

    def __contains__(self, x):
        return x in self._seq

    @property
    def members(self) -> list:
        return list(self._seq)

    def precedes(self, a, b) -> bool:
        """Answer a < b from stored data alone."""
        return bool(self._rel[self._seq[a], self._seq[b]])

    def _grow(self):
        n = len(self._seq)
        if n >= self._rel.shape[0]:
            cap = max(8, 2 * self._rel.shape[0])
            rel = np.zeros((cap, cap), dtype=bool)
            rel[:n, :n] = self._rel[:n, :n]
            self._rel = rel

    def insert(self, s: Hashable, oracle: Callable) -> "ChainMergeIndex":
        if s in self._seq:
            raise ValueError(f"{s!r} is already indexed")
        memo: dict = {}

        def ask(a, b) -> bool:
            # True iff oracle(a, b) is Precedes; the reverse answer is reused when implied.
            if (a, b) in memo:
                return memo[(a, b)]
            res = oracle(a, b)
            memo[(a, b)] = res is Comparison.PRECEDES
            if res is Comparison.SUCCEEDS:
                memo[(b, a)] = True
            elif res is Comparison.NONCOMPARABLE:
                memo[(b, a)] = False
            return memo[(a, b)]

        placements = [
            (_last_true(len(chain), lambda p: ask(chain[p], s)),
             _first_true(len(chain), lambda p: ask(s, chain[p])))
            for chain in self.chains
        ]

        self._grow()
        k = self._seq[s] = len(self._seq)
        self._rel[k, k] = True
        for chain, (lo, hi) in zip(self.chains, placements):
            self._rel[[self._seq[y] for y in chain[: lo + 1]], k] = True
            self._rel[k, [self._seq[y] for y in chain[hi:]]] = True
        self._dominance = None

        for chain, (lo, hi) in zip(self.chains, placements):
            pos = lo + 1
            if pos == len(chain) or hi <= pos:
                chain.insert(pos, s)
                return self
        self.chains.append([s])
        self._rebalance()
        return self

    def _strict(self) -> np.ndarray:
        n = len(self._seq)
        rel = self._rel[:n, :n]
        later = np.triu(np.ones((n, n), dtype=bool), 1)
        # Mutually preceding (equal) members are ordered by insertion.
        strict = rel & ~(rel.T & ~later)
        np.fill_diagonal(strict, False)
        return strict

    def _rebalance(self):
        """Restore a minimum chain cover after a singleton chain was appended.

        Chains are a matching in the bipartite graph of the strict order
        (Dilworth).  The previous cover was minimum, so one augmenting path,
        if any exists, merges the newcomer's chain away.
        """
        n = len(self._seq)
        if n <= 1:
            return
        strict = self._strict()
        succ = np.full(n, -1)
        pred = np.full(n, -1)
        for chain in self.chains:
            for a, b in zip(chain, chain[1:]):
                succ[self._seq[a]] = self._seq[b]
                pred[self._seq[b]] = self._seq[a]

        # Alternating BFS from every unmatched left vertex.
        parent = np.full(n, -1)  # right vertex -> left vertex it was reached from
        seen = np.zeros(n, dtype=bool)
        frontier = np.flatnonzero(succ < 0)
        end = -1
        while frontier.size and end < 0:
            reach = strict[frontier].any(axis=0) & ~seen
            new = np.flatnonzero(reach)
            if not new.size:
                break
            parent[new] = frontier[strict[np.ix_(frontier, new)].argmax(axis=0)]
            seen[new] = True
            free = new[pred[new] < 0]
            if free.size:
                end = int(free[0])
            frontier = pred[new[pred[new] >= 0]]
        if end < 0:
            return

        r = end
        while r >= 0:
            l = int(parent[r])
            nxt = int(succ[l])
            succ[l], pred[r] = r, l
            r = nxt
        nodes = list(self._seq)
        chains = []
        for i in np.flatnonzero(pred < 0):
            chain, j = [], int(i)
            while j >= 0:
                chain.append(nodes[j])
                j = int(succ[j])
            chains.append(chain)
        self.chains = chains

    @property
    def dominance(self) -> dict:
        """(member, chain index) -> last chain position preceding the member, or None."""
        if self._dominance is None:
            n = len(self._seq)
            nodes = list(self._seq)
            table = {}
            for c, chain in enumerate(self.chains):
                idx = [self._seq[y] for y in chain]
                hits = self._rel[idx, :n]  # hits[p, x]: chain[p] precedes x
                count = hits.sum(axis=0)  # prefix property: positions 0..count-1
                for x, m in zip(nodes, count):
                    table[(x, c)] = int(m) - 1 if m else None
            self._dominance = table
        return self._dominance

    def chain_of(self, x) -> int:
        for c, chain in enumerate(self.chains):
            if x in chain:
                return c
        raise KeyError(x)


def chain_insert(index: ChainMergeIndex, s: Hashable, oracle: Callable) -> ChainMergeIndex:
    return index.insert(s, oracle)


@dataclasses.dataclass
class PosetResult:
    buckets: list[RankBucket]
    indexes: list[ChainMergeIndex]
    query_count: int
    schmidt: dict = dataclasses.field(default_factory=dict, repr=False)

    def chains(self) -> list[list[list]]:
        return [idx.chains for idx in self.indexes]


def chain_merge_sort(
    states: Sequence,
    ids: Sequence[Hashable] | None = None,
    shuffle_seed=None,
    tol: float = T_MAJ,
    rank_tol: float = T_RANK,
) -> PosetResult:
    """Partition states by Schmidt rank and chain-merge each bucket.

    ``states`` may hold PureState, DensityState or SchmidtData items.
    Members are inserted in input order unless ``shuffle_seed`` is given.
    """
    if len(states) == 0:
        raise ValueError("chain_merge_sort needs at least one state")
    ids = list(range(len(states))) if ids is None else list(ids)
    if len(set(ids)) != len(ids) or len(ids) != len(states):
        raise ValueError("ids must be unique and match the states")
    data = {}
    for i, (sid, s) in enumerate(zip(ids, states)):
        try:
            data[sid] = schmidt_of(s, rank_tol)
        except (ValueError, TypeError, ArithmeticError) as exc:
            raise StateError(i, exc) from exc

    buckets = rank_partition([data[i] for i in ids], ids)
    rng = np.random.default_rng(shuffle_seed) if shuffle_seed is not None else None
    indexes, total = [], 0
    for bucket in buckets:
        counter = QueryCounter(lambda a, b: sd_query_oracle(data[a], data[b], tol))
        order = list(bucket.members)
        if rng is not None:
            order = [order[i] for i in rng.permutation(len(order))]
        idx = ChainMergeIndex()
        for sid in order:
            idx.insert(sid, counter)
        indexes.append(idx)
        total += counter.count
    return PosetResult(buckets, indexes, total, data)
