"""Undirected circulant graphs on Z_n and breadth-first distance computations.

A circulant graph is described by its generator set: the residues of the
connection set that lie in (0, n/2].  When n is even, n/2 is its own
inverse and contributes a single edge per vertex; every other generator
contributes two.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import reduce
from math import gcd
from typing import Iterable, Sequence

import numpy as np

from .errors import Disconnected, DuplicateGenerator, InputError, ZeroResidue

__all__ = [
    "GeneratorSet",
    "CirculantGraph",
    "DistanceProfile",
    "reduce_residue",
    "units",
    "make_graph",
    "diameter",
    "distance_profile",
    "all_pairs_diameter",
]


def reduce_residue(g: int, n: int) -> int:
    """Map ``g`` to its representative of ``{g, -g}`` in ``[0, n/2]``."""
    g %= n
    return min(g, n - g)


def units(n: int) -> np.ndarray:
    """Units of Z_n in ascending order, as an int64 array."""
    if n == 1:
        return np.array([0], dtype=np.int64)
    r = np.arange(1, n, dtype=np.int64)
    return r[np.gcd(r, n) == 1]


@dataclass(frozen=True)
class GeneratorSet:
    n: int
    gens: tuple[int, ...]

    def __post_init__(self):
        if self.n < 2:
            raise InputError(f"order must be at least 2 (got {self.n})")
        if not self.gens:
            raise InputError("generator set is empty")
        prev = 0
        for g in self.gens:
            if g <= prev or 2 * g > self.n:
                raise InputError(
                    f"generators must be strictly increasing in (0, n/2]: {self.gens}"
                )
            prev = g
        if reduce(gcd, self.gens, self.n) != 1:
            raise Disconnected(f"gcd(n, generators) != 1 for n={self.n}, {list(self.gens)}")

    @property
    def has_half(self) -> bool:
        return 2 * self.gens[-1] == self.n

    @property
    def dimension(self) -> int:
        return len(self.gens) - self.has_half

    @property
    def degree(self) -> int:
        return 2 * self.dimension + self.has_half

    @property
    def pairs(self) -> tuple[int, ...]:
        """Generators strictly below n/2."""
        return self.gens[:-1] if self.has_half else self.gens

    def connection_set(self) -> tuple[int, ...]:
        return tuple(sorted({g % self.n for g in self.gens} | {(-g) % self.n for g in self.gens}))

    def __str__(self):
        return ",".join(map(str, self.gens))


@dataclass(frozen=True)
class CirculantGraph:
    generator_set: GeneratorSet

    @property
    def n(self) -> int:
        return self.generator_set.n

    @property
    def gens(self) -> tuple[int, ...]:
        return self.generator_set.gens

    @property
    def degree(self) -> int:
        return self.generator_set.degree

    @property
    def dimension(self) -> int:
        return self.generator_set.dimension

    def connection_set(self) -> tuple[int, ...]:
        return self.generator_set.connection_set()


@dataclass(frozen=True)
class DistanceProfile:
    counts: tuple[int, ...]

    @property
    def eccentricity(self) -> int:
        return len(self.counts) - 1


def make_graph(n: int, gens: Iterable[int], *, self_inverse: bool = False) -> CirculantGraph:
    """Build a validated circulant graph from arbitrary residues.

    Residues are normalized with ``g -> min(g mod n, n - g mod n)``, so
    connection-set elements may be passed directly.  With ``self_inverse``
    the element n/2 is adjoined (odd-degree convention, n must be even).
    """
    if n < 2:
        raise InputError(f"order must be at least 2 (got {n})")
    raw = [int(g) for g in gens]
    if self_inverse:
        if n % 2:
            raise InputError(f"odd degree requires even order (got n={n})")
        raw.append(n // 2)
    if not raw:
        raise InputError("generator set is empty")
    seen: set[int] = set()
    for g in raw:
        r = reduce_residue(g, n)
        if r == 0:
            raise ZeroResidue(f"generator {g} is 0 mod {n}")
        if r in seen:
            raise DuplicateGenerator(f"generator {g} duplicates {r} mod {n}")
        seen.add(r)
    return CirculantGraph(GeneratorSet(n, tuple(sorted(seen))))


def _bfs_levels(graph: CirculantGraph) -> list[int]:
    n = graph.n
    conn = np.array(graph.connection_set(), dtype=np.int64)
    dtype = np.int64 if n > 2**31 else np.int32
    seen = np.zeros(n, dtype=bool)
    seen[0] = True
    frontier = np.zeros(1, dtype=dtype)
    counts = [1]
    while True:
        nxt = (frontier[:, None] + conn[None, :]).ravel()
        nxt[nxt >= n] -= n
        nxt = np.unique(nxt)
        nxt = nxt[~seen[nxt]]
        if nxt.size == 0:
            break
        seen[nxt] = True
        counts.append(int(nxt.size))
        frontier = nxt
    if sum(counts) != n:
        # unreachable for a validated GeneratorSet
        raise Disconnected(f"BFS reached {sum(counts)} of {n} vertices")
    return counts


def distance_profile(graph: CirculantGraph) -> DistanceProfile:
    """Number of vertices at each distance from vertex 0."""
    return DistanceProfile(tuple(_bfs_levels(graph)))


def diameter(graph: CirculantGraph) -> int:
    """Exact diameter: the eccentricity of vertex 0 (circulants are vertex transitive)."""
    return len(_bfs_levels(graph)) - 1


def all_pairs_diameter(n: int, connection: Sequence[int]) -> int:
    """Reference diameter by BFS from every vertex over an explicit adjacency list.

    Quadratic; intended as a test oracle for small n.
    """
    adj = [sorted({(v + c) % n for c in connection}) for v in range(n)]
    best = 0
    for src in range(n):
        dist = [-1] * n
        dist[src] = 0
        q = deque([src])
        while q:
            v = q.popleft()
            for w in adj[v]:
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    q.append(w)
        if min(dist) < 0:
            raise Disconnected("graph is disconnected")
        best = max(best, max(dist))
    return best
