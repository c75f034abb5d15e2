"""Exhaustive search for the largest circulant graph of given degree and diameter.

Candidate orders are scanned downward from a ceiling (by default the
Abelian Cayley upper bound).  A generator set g_1..g_f on Z_n has diameter
at most k exactly when every residue is a word of length <= k, i.e. when
the Lee ball of radius k in Z^f maps onto Z_n under x -> sum x_i g_i
(for odd degree, together with n/2 + image of the radius k-1 ball).
Candidate sets are tested in numpy batches this way; every witness is
re-checked by BFS.

Multiplication by a unit of Z_n preserves the graph, so only sets that
can be orbit-minimal are enumerated: the least element of the canonical
form is ``min gcd(g, n)`` over the set, so a candidate starts with a
divisor p of n and all later elements h have ``gcd(h, n) >= p``.  The
``full_enumeration`` switch turns this off for auditing.
"""

from __future__ import annotations

import itertools
import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache, reduce
from math import gcd
from pathlib import Path
from typing import Callable, Iterator, Optional

import numpy as np

from .bounds import cj_lower_bound, mac_upper_bound
from .errors import CeilingBelowKnownWitness, InputError, VerificationError
from .graph import GeneratorSet, diameter, make_graph, reduce_residue, units
from .spectra import same_spectrum, spectrum

__all__ = [
    "SearchResult",
    "SearchProgress",
    "SearchLimits",
    "canonical_form",
    "enumerate_generator_sets",
    "search_extremal",
]

BATCH = 16384


@dataclass(frozen=True)
class SearchLimits:
    """Largest k per degree that counts as desk scale (no ``--allow-long``)."""

    max_k: dict = field(default_factory=lambda: {2: 60, 3: 60, 4: 12, 5: 10, 6: 5, 7: 4, 8: 3, 9: 3})

    def allows(self, d: int, k: int) -> bool:
        return k <= self.max_k.get(d, 0)

    @classmethod
    def from_file(cls, path: str | os.PathLike) -> "SearchLimits":
        data = json.loads(Path(path).read_text())
        return cls({int(d): int(k) for d, k in data.items()})


def canonical_form(n: int, gens) -> GeneratorSet:
    """Lexicographically least reduced image of ``gens`` over all units of Z_n."""
    gs = make_graph(n, gens).generator_set
    us = units(n)
    us = us[2 * us <= n] if n > 2 else us
    g = np.array(gs.gens, dtype=np.int64)
    best = None
    for start in range(0, len(us), 65536):
        img = (us[start:start + 65536, None] * g[None, :]) % n
        img = np.minimum(img, n - img)
        img.sort(axis=1)
        order = np.lexsort(img.T[::-1])
        cand = tuple(int(x) for x in img[order[0]])
        if best is None or cand < best:
            best = cand
    return GeneratorSet(n, best)


def _top(n: int, odd: bool, allow_half: bool) -> int:
    if odd:
        return n // 2 - 1
    return n // 2 if allow_half else (n - 1) // 2


def _prefixes(n: int, top: int, pruned: bool) -> list[int]:
    if not pruned:
        return list(range(1, top + 1))
    return [p for p in range(1, top + 1) if n % p == 0]


def _pool(n: int, top: int, prefix: int, pruned: bool) -> list[int]:
    if not pruned:
        return list(range(prefix + 1, top + 1))
    return [h for h in range(prefix + 1, top + 1) if gcd(h, n) >= prefix]


def _unit_sets(n: int, f: int, odd: bool, top: int, prefix: int, pruned: bool) -> Iterator[tuple[int, ...]]:
    base = n // 2 if odd else n
    pool = _pool(n, top, prefix, pruned)
    for rest in itertools.combinations(pool, f - 1):
        if reduce(gcd, rest, gcd(prefix, base)) == 1:
            yield (prefix,) + rest


def enumerate_generator_sets(
    n: int,
    f: int,
    *,
    odd_degree: bool = False,
    allow_half: bool = True,
    canonical_only: bool = False,
) -> Iterator[GeneratorSet]:
    """Connected f-subsets of {1..floor(n/2)} in lexicographic order.

    With ``odd_degree`` the subsets come from {1..n/2-1} and n/2 is
    adjoined.  ``allow_half=False`` drops n/2 from the pool for
    even-degree searches.  ``canonical_only`` keeps one representative
    (the canonical form) per multiplier orbit.
    """
    if n < 2 or f < 1:
        raise InputError(f"need n >= 2 and f >= 1 (got n={n}, f={f})")
    if odd_degree and n % 2:
        raise InputError(f"odd degree needs even n (got {n})")
    top = _top(n, odd_degree, allow_half)
    for prefix in _prefixes(n, top, canonical_only):
        for s in _unit_sets(n, f, odd_degree, top, prefix, canonical_only):
            full = s + ((n // 2,) if odd_degree else ())
            if canonical_only and canonical_form(n, full).gens != full:
                continue
            yield GeneratorSet(n, full)


@lru_cache(maxsize=None)
def lee_ball(f: int, k: int) -> np.ndarray:
    """All points of Z^f with l1 norm <= k, shape (S(f,k), f)."""
    if k < 0:
        return np.zeros((0, f), dtype=np.int64)
    pts = [p for p in itertools.product(range(-k, k + 1), repeat=f) if sum(map(abs, p)) <= k]
    return np.array(pts, dtype=np.int64).reshape(-1, f)


def covers(n: int, k: int, sets: np.ndarray, odd: bool) -> np.ndarray:
    """Boolean mask: which rows of ``sets`` (shape (B, f)) give diameter <= k on Z_n."""
    B, f = sets.shape
    vals = (sets @ lee_ball(f, k).T) % n
    if odd:
        vals = np.concatenate([vals, (sets @ lee_ball(f, k - 1).T + n // 2) % n], axis=1)
    if vals.shape[1] < n:
        return np.zeros(B, dtype=bool)
    hit = np.zeros((B, n), dtype=bool)
    hit[np.repeat(np.arange(B), vals.shape[1]), vals.ravel()] = True
    return hit.all(axis=1)


def _run_unit(args) -> tuple[int, int, int, list[tuple[int, ...]], bool]:
    n, f, k, odd, top, prefix, pruned, stop_early = args
    tested = 0
    found: list[tuple[int, ...]] = []
    it = _unit_sets(n, f, odd, top, prefix, pruned)
    while True:
        chunk = list(itertools.islice(it, BATCH))
        if not chunk:
            break
        arr = np.array(chunk, dtype=np.int64)
        tested += len(chunk)
        ok = covers(n, k, arr, odd)
        found.extend(chunk[i] for i in np.flatnonzero(ok))
        if found and stop_early:
            return n, prefix, tested, found, False
    return n, prefix, tested, found, True


@dataclass(frozen=True)
class SearchProgress:
    n: int
    units_done: int
    units_total: int
    sets_tested: int
    elapsed: float

    @property
    def rate(self) -> float:
        return self.sets_tested / self.elapsed if self.elapsed > 0 else 0.0


@dataclass
class SearchResult:
    degree: int
    diameter: int
    extremal_order: int
    ceiling: int
    witnesses: list[GeneratorSet]  # one canonical generator set per multiplier class
    exhaustive: bool
    audited: bool
    sets_tested: int
    orders_tried: int
    spectrally_distinct: Optional[bool] = None

    @property
    def class_count(self) -> int:
        return len(self.witnesses)


class _Checkpoint:
    def __init__(self, path: Optional[os.PathLike], header: str):
        self.path = Path(path) if path else None
        self.done: dict[tuple[int, int], list[tuple[int, ...]]] = {}
        if self.path is None:
            return
        if self.path.exists():
            lines = self.path.read_text().splitlines()
            if lines and lines[0] != header:
                raise InputError(f"checkpoint {self.path} belongs to another search: {lines[0]!r}")
            for line in lines[1:]:
                fields = dict(tok.split("=", 1) for tok in line.split())
                if fields.get("status") != "done":
                    continue
                wit = [tuple(int(x) for x in w.split("-")) for w in fields.get("witnesses", "").split(",") if w]
                self.done[(int(fields["n"]), int(fields["prefix"]))] = wit
        else:
            self.path.write_text(header + "\n")

    def record(self, n: int, prefix: int, witnesses: list[tuple[int, ...]]) -> None:
        self.done[(n, prefix)] = witnesses
        if self.path is None:
            return
        line = f"n={n} prefix={prefix} status=done"
        if witnesses:
            line += " witnesses=" + ",".join("-".join(map(str, w)) for w in witnesses)
        with self.path.open("a") as fh:
            fh.write(line + "\n")


def search_extremal(
    d: int,
    k: int,
    ceiling: Optional[int] = None,
    mode: str = "exhaustive",
    *,
    full_enumeration: bool = False,
    threads: int = 1,
    checkpoint: Optional[os.PathLike] = None,
    progress: Optional[Callable[[SearchProgress], None]] = None,
    check_spectra: bool = True,
) -> SearchResult:
    """Largest n admitting a degree-d circulant of diameter <= k, with all witness classes.

    ``mode="first_witness"`` stops at the first witness of the largest
    feasible order; ``"exhaustive"`` collects every class at that order.
    """
    if mode not in ("exhaustive", "first_witness"):
        raise InputError(f"unknown mode {mode!r}")
    if d < 2 or k < 1:
        raise InputError(f"need d >= 2 and k >= 1 (got d={d}, k={k})")
    f, odd = d // 2, d % 2 == 1
    if ceiling is None:
        ceiling = mac_upper_bound(d, k)
    if d % 2 == 0 and f >= 3 and k >= f:
        known = cj_lower_bound(d, k).order
        if ceiling < known:
            raise CeilingBelowKnownWitness(
                f"ceiling {ceiling} is below the Chen-Jia witness order {known}"
            )
    pruned = not full_enumeration
    stop_early = mode == "first_witness"
    header = f"# circdd search d={d} k={k} ceiling={ceiling} enumeration={'pruned' if pruned else 'full'}"
    ckpt = _Checkpoint(checkpoint, header)

    t0 = time.perf_counter()
    tested = 0
    orders = 0
    pool = ProcessPoolExecutor(max_workers=threads) if threads > 1 else None
    try:
        for n in range(ceiling, 1, -1):
            if odd and n % 2:
                continue
            top = _top(n, odd, allow_half=False)
            if top < f:
                continue
            orders += 1
            prefixes = _prefixes(n, top, pruned)
            found: list[tuple[int, ...]] = []
            todo = []
            for p in prefixes:
                if (n, p) in ckpt.done:
                    found.extend(ckpt.done[(n, p)])
                else:
                    todo.append((n, f, k, odd, top, p, pruned, stop_early))
            done_units = len(prefixes) - len(todo)
            if not (stop_early and found):
                results = pool.map(_run_unit, todo) if pool else map(_run_unit, todo)
                for _, p, cnt, wit, complete in results:
                    tested += cnt
                    done_units += 1
                    found.extend(wit)
                    if complete:
                        ckpt.record(n, p, wit)
                    if progress:
                        progress(SearchProgress(n, done_units, len(prefixes), tested,
                                                time.perf_counter() - t0))
                    if stop_early and found:
                        break
            if found:
                return _finish(d, k, n, ceiling, found, mode, pruned, tested, orders, check_spectra)
    finally:
        if pool:
            pool.shutdown(cancel_futures=True)
    raise VerificationError(f"no circulant of degree {d} and diameter <= {k} found")


def _finish(d, k, n, ceiling, found, mode, pruned, tested, orders, check_spectra) -> SearchResult:
    odd = d % 2 == 1
    classes = sorted({canonical_form(n, w + ((n // 2,) if odd else ())).gens for w in found})
    reps = []
    for gens in classes:
        g = make_graph(n, gens)
        got = diameter(g)
        if got > k or g.degree != d:
            raise VerificationError(f"witness {gens} on Z_{n} has diameter {got} / degree {g.degree}")
        reps.append(g.generator_set)
    distinct = None
    if check_spectra and len(reps) > 1 and n <= 5000:
        specs = [spectrum(make_graph(n, r.gens)) for r in reps]
        distinct = all(
            not same_spectrum(a, b) for a, b in itertools.combinations(specs, 2)
        )
    return SearchResult(
        degree=d,
        diameter=k,
        extremal_order=n,
        ceiling=ceiling,
        witnesses=reps,
        exhaustive=mode == "exhaustive",
        audited=not pruned,
        sets_tested=tested,
        orders_tried=orders,
        spectrally_distinct=distinct,
    )
