"""Adjacency spectra of circulant graphs and multiplier isomorphisms.

The eigenvalues of a circulant graph with connection indicator c_i are
``lambda_l = sum_i c_i cos(2 pi l i / n)`` for l = 1..n; pairing i with
n - i gives one ``2 cos`` term per generator below n/2, plus
``cos(l pi)`` for the self-inverse element n/2.  Only nonzero c_i are
summed, and every angle is reduced exactly (``l*g mod n``) before the
cosine is taken.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import NotAUnit, TooLarge, UnstableClassification
from .graph import CirculantGraph, GeneratorSet, make_graph, reduce_residue, units

__all__ = [
    "Spectrum",
    "Inertia",
    "DEFAULT_TAU",
    "TAU_SWEEP",
    "SPECTRUM_MAX_N",
    "spectrum",
    "inertia",
    "apply_multiplier",
    "multiplier_isomorphic",
    "same_spectrum",
]

DEFAULT_TAU = 1e-8
TAU_SWEEP = (1e-10, 1e-9, 1e-8, 1e-7, 1e-6)
SPECTRUM_MAX_N = 50_000


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: np.ndarray  # index 0 holds l = 1
    tolerance: float = DEFAULT_TAU

    @property
    def n(self) -> int:
        return len(self.eigenvalues)

    def sorted(self) -> np.ndarray:
        return np.sort(self.eigenvalues)


@dataclass(frozen=True)
class Inertia:
    positive: int
    zero: int
    negative: int

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.positive, self.zero, self.negative)


def _neumaier(terms: np.ndarray) -> np.ndarray:
    """Compensated sum along axis 0."""
    total = np.zeros(terms.shape[1:])
    comp = np.zeros_like(total)
    for t in terms:
        s = total + t
        big = np.abs(total) >= np.abs(t)
        comp += np.where(big, (total - s) + t, (t - s) + total)
        total = s
    return total + comp


def spectrum(
    graph: CirculantGraph,
    *,
    tolerance: float = DEFAULT_TAU,
    max_n: int = SPECTRUM_MAX_N,
    allow_large: bool = False,
) -> Spectrum:
    n = graph.n
    if n > max_n and not allow_large:
        raise TooLarge(f"spectrum of n={n} exceeds the guard {max_n}; pass allow_large")
    gs = graph.generator_set
    l = np.arange(1, n + 1, dtype=np.int64)
    terms = [2.0 * np.cos(2.0 * np.pi * ((l * g) % n) / n) for g in gs.pairs]
    if gs.has_half:
        terms.append(np.where(l % 2 == 0, 1.0, -1.0))
    return Spectrum(_neumaier(np.array(terms)), tolerance)


def _classify(values: np.ndarray, tau: float) -> Inertia:
    pos = int(np.count_nonzero(values > tau))
    neg = int(np.count_nonzero(values < -tau))
    return Inertia(pos, len(values) - pos - neg, neg)


def inertia(s: Spectrum, sweep: Sequence[float] = TAU_SWEEP) -> Inertia:
    """(positive, zero, negative) eigenvalue counts, with |lambda| <= tau counted as zero.

    The counts must agree for every threshold in ``sweep`` (and for the
    spectrum's own tolerance); otherwise :class:`UnstableClassification`.
    """
    result = _classify(s.eigenvalues, s.tolerance)
    for tau in sweep:
        other = _classify(s.eigenvalues, tau)
        if other != result:
            raise UnstableClassification(
                f"inertia {other.as_tuple()} at tau={tau:g} differs from "
                f"{result.as_tuple()} at tau={s.tolerance:g}"
            )
    return result


def same_spectrum(a: Spectrum, b: Spectrum, tol: float = 1e-7) -> bool:
    if a.n != b.n:
        return False
    return bool(np.allclose(a.sorted(), b.sorted(), atol=tol, rtol=0.0))


def apply_multiplier(n: int, gens: Iterable[int], u: int) -> GeneratorSet:
    """Image of a generator set under multiplication by the unit u of Z_n."""
    if np.gcd(int(u) % n, n) != 1:
        raise NotAUnit(f"{u} is not a unit mod {n}")
    return make_graph(n, [reduce_residue(u * g, n) for g in gens]).generator_set


def _images(n: int, gens: Sequence[int], us: np.ndarray) -> np.ndarray:
    """Sorted reduced images of ``gens`` under each unit in ``us``: shape (len(us), len(gens))."""
    g = np.asarray(gens, dtype=np.int64)
    img = (us[:, None] * g[None, :]) % n
    img = np.minimum(img, n - img)
    img.sort(axis=1)
    return img


def multiplier_isomorphic(n: int, gens_a: Sequence[int], gens_b: Sequence[int]) -> Optional[int]:
    """Least unit u with u * gens_a = gens_b (as reduced sets), or None."""
    a = sorted(reduce_residue(g, n) for g in gens_a)
    b = np.array(sorted(reduce_residue(g, n) for g in gens_b), dtype=np.int64)
    if len(a) != len(b):
        return None
    us = units(n)
    for start in range(0, len(us), 65536):
        chunk = us[start:start + 65536]
        hit = np.flatnonzero((_images(n, a, chunk) == b).all(axis=1))
        if hit.size:
            return int(chunk[hit[0]])
    return None
