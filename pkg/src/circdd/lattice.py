"""The degree-8 lattice construction and its computational verification.

For each diameter k a lattice L_k in Z^4 is spanned by four explicit
vectors.  Its quotient Z^4/L_k is cyclic of order L(8,k), generated by
e_1, with e_i = m_i e_1; the images 1, m_2, m_3, m_4 are the degree-8
family generators.  A Cayley graph of Z^4/L_k on e_1..e_4 has diameter at
most k exactly when the Lee sphere of radius k meets every coset of L_k.

Two independent checks of that covering are provided: BFS on the cyclic
quotient, and reduction of every Lee-sphere point to its coset via the
Hermite normal form of the basis.  All arithmetic is exact.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import reduce
from math import gcd
from typing import Optional, Sequence

import numpy as np

from .errors import InputError, InvariantViolated, MethodsDisagree, VerificationError
from .families import construct_family, family_order
from .graph import distance_profile, make_graph, reduce_residue
from .search import lee_ball

__all__ = [
    "Lattice",
    "OrthantSet",
    "QuotientMultipliers",
    "CoveringCertificate",
    "lattice_basis",
    "quotient_multipliers",
    "orthant_representatives",
    "covering_check",
    "determinant",
    "hermite_normal_form",
    "invariant_factors",
    "DIRECT_MAX_K",
]

Vector = tuple[int, int, int, int]
DIRECT_MAX_K = 8


class VerificationFailed(VerificationError):
    pass


def determinant(m: Sequence[Sequence[int]]) -> int:
    """Exact integer determinant (Bareiss fraction-free elimination)."""
    a = [list(map(int, row)) for row in m]
    n = len(a)
    sign, prev = 1, 1
    for c in range(n - 1):
        if a[c][c] == 0:
            swap = next((r for r in range(c + 1, n) if a[r][c] != 0), None)
            if swap is None:
                return 0
            a[c], a[swap] = a[swap], a[c]
            sign = -sign
        for r in range(c + 1, n):
            for j in range(c + 1, n):
                a[r][j] = (a[r][j] * a[c][c] - a[r][c] * a[c][j]) // prev
        prev = a[c][c]
    return sign * a[-1][-1]


def hermite_normal_form(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Upper-triangular row basis of the same lattice, positive pivots, entries above reduced."""
    h = [list(map(int, r)) for r in rows]
    n = len(h)
    for c in range(n):
        for r in range(c + 1, n):
            while h[r][c] != 0:
                q = h[c][c] // h[r][c]
                h[c] = [x - q * y for x, y in zip(h[c], h[r])]
                h[c], h[r] = h[r], h[c]
        if h[c][c] == 0:
            raise InputError("basis is singular")
        if h[c][c] < 0:
            h[c] = [-x for x in h[c]]
        for r in range(c):
            q = h[r][c] // h[c][c]
            h[r] = [x - q * y for x, y in zip(h[r], h[c])]
    return h


def invariant_factors(rows: Sequence[Sequence[int]]) -> list[int]:
    """Invariant factors of Z^n / L from gcds of j x j minors."""
    n = len(rows)
    divisors = [1]
    for j in range(1, n + 1):
        g = 0
        for ri in itertools.combinations(range(n), j):
            for ci in itertools.combinations(range(n), j):
                g = gcd(g, determinant([[rows[r][c] for c in ci] for r in ri]))
        divisors.append(g)
    return [divisors[j] // divisors[j - 1] for j in range(1, n + 1)]


@dataclass(frozen=True)
class Lattice:
    k: int
    parity: str
    lat_a: int
    basis: tuple[Vector, Vector, Vector, Vector]
    index: int


def lattice_basis(k: int) -> Lattice:
    if k < 2:
        raise InputError(f"lattice defined for k >= 2 (got {k})")
    if k % 2 == 0:
        a = k // 2
        basis = (
            (-a - 1, a + 1, a, -a + 1),
            (a - 1, a + 1, a + 1, -a),
            (-a - 1, -a + 1, a + 1, -a),
            (-a, -a, a, a + 1),
        )
        parity = "even"
    else:
        a = (k + 1) // 2
        basis = (
            (-a + 1, a + 1, -a + 1, a),
            (a + 1, a + 1, -a + 2, a - 1),
            (-a - 1, a - 1, a - 1, -a),
            (-a, a, a, a - 1),
        )
        parity = "odd"
    index = abs(determinant(basis))
    expected = family_order(8, k)
    if index != expected:
        raise VerificationError(f"|det L_{k}| = {index}, expected L(8,{k}) = {expected}")
    return Lattice(k, parity, a, basis, index)


def _combine(coeffs: Sequence[int], basis: Sequence[Vector]) -> Vector:
    return tuple(sum(c * v[j] for c, v in zip(coeffs, basis)) for j in range(4))


def _adjugate(m: Sequence[Sequence[int]]) -> list[list[int]]:
    n = len(m)
    adj = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [[m[r][c] for c in range(n) if c != j] for r in range(n) if r != i]
            adj[j][i] = (-1) ** (i + j) * determinant(minor)
    return adj


@dataclass(frozen=True)
class QuotientMultipliers:
    multipliers: tuple[int, int, int]
    combinations: tuple[tuple[int, ...], ...]  # coefficients on v1..v4 giving (m_i, .., -1, ..)

    def generators(self, n: int) -> tuple[int, ...]:
        return tuple(sorted(reduce_residue(g, n) for g in (1,) + self.multipliers))


def _closed_form_multipliers(lat: Lattice) -> tuple[int, int, int]:
    a = lat.lat_a
    if lat.parity == "even":
        return (
            4 * a**3 + 4 * a**2 + 6 * a + 1,
            4 * a**4 + 4 * a**2 - 4 * a,
            4 * a**4 + 4 * a**2 - 2 * a,
        )
    return (
        4 * a**3 - 4 * a**2 + 6 * a - 1,
        4 * a**4 - 8 * a**3 + 8 * a**2 - 8 * a,
        4 * a**4 - 8 * a**3 + 8 * a**2 - 6 * a,
    )


def quotient_multipliers(lat: Lattice) -> QuotientMultipliers:
    """Integers m_2, m_3, m_4 with e_i = m_i e_1 in Z^4 / L_k.

    Membership of ``m_i e_1 - e_i`` in the lattice is certified by solving
    for its (necessarily integral) coefficients on the basis.
    """
    ms = _closed_form_multipliers(lat)
    det = determinant(lat.basis)
    adj = _adjugate(lat.basis)
    combos = []
    for i, m in enumerate(ms, start=1):
        target = [m, 0, 0, 0]
        target[i] = -1
        num = [sum(target[r] * adj[r][c] for r in range(4)) for c in range(4)]
        if any(x % det for x in num):
            raise VerificationFailed(f"{m} e1 - e{i + 1} is not in L_{lat.k}")
        coeffs = tuple(x // det for x in num)
        if _combine(coeffs, lat.basis) != tuple(target):
            raise VerificationFailed(f"combination for e{i + 1} does not reproduce {target}")
        combos.append(coeffs)
    result = QuotientMultipliers(ms, tuple(combos))
    family = construct_family(8, lat.k, iso_class=1, variant=1, verify=False)[0]
    if result.generators(lat.index) != family.gens:
        raise VerificationFailed(
            f"quotient generators {result.generators(lat.index)} differ from family {family.gens}"
        )
    return result


@dataclass(frozen=True)
class OrthantSet:
    derived: tuple[Vector, Vector, Vector, Vector]  # v5..v8
    signed: tuple[Vector, ...]  # +v1..+v8 then -v1..-v8

    def by_orthant(self) -> dict[tuple[int, ...], Vector]:
        return {tuple(1 if x > 0 else -1 for x in v): v for v in self.signed}


_ORTHANT_COMBOS = {
    "even": ((1, 0, -1, 1), (1, -1, 0, -1), (1, -1, -1, 0), (0, 1, -1, 1)),
    "odd": ((1, -1, 0, -1), (0, 1, 1, -1), (1, 0, 1, -1), (1, -1, -1, 0)),
}


def orthant_representatives(lat: Lattice) -> OrthantSet:
    """One lattice vector strictly inside each of the 16 orthants of Z^4."""
    if (lat.parity == "even" and lat.k < 4) or (lat.parity == "odd" and lat.k < 5):
        raise InputError(f"orthant representatives need k >= 4 (even) or k >= 5 (odd); got {lat.k}")
    derived = tuple(_combine(c, lat.basis) for c in _ORTHANT_COMBOS[lat.parity])
    positive = lat.basis + derived
    signed = positive + tuple(tuple(-x for x in v) for v in positive)
    a, k = lat.lat_a, lat.k

    patterns = set()
    for v in signed:
        if 0 in v:
            raise InvariantViolated(f"{v} lies on a coordinate hyperplane")
        patterns.add(tuple(x > 0 for x in v))
        if sum(map(abs, v)) != 2 * k + 1:
            raise InvariantViolated(f"{v} has l1 norm {sum(map(abs, v))}, expected {2 * k + 1}")
    if len(patterns) != 16:
        raise InvariantViolated(f"only {len(patterns)} distinct orthants covered")
    bound = a + 2 if lat.parity == "even" else a + 1
    for i, v in enumerate(signed):
        top = max(map(abs, v))
        if top > bound:
            raise InvariantViolated(f"{v} has a coordinate above {bound}")
        # even k: only +-v5 and +-v7 reach a+2
        if lat.parity == "even" and top == a + 2 and i % 8 not in (4, 6):
            raise InvariantViolated(f"v{i % 8 + 1} reaches a+2")
    if lat.parity == "even" and not all(max(map(abs, positive[i])) == a + 2 for i in (4, 6)):
        raise InvariantViolated("v5 and v7 should reach a+2")
    return OrthantSet(derived, signed)


@dataclass(frozen=True)
class CoveringCertificate:
    k: int
    index: int
    generators: tuple[int, ...]
    covered: bool
    quotient_radius: Optional[int] = None  # eccentricity of the quotient circulant
    direct_radius: Optional[int] = None  # least r with S_{4,r} meeting every coset (None if > k)
    cosets_hit: Optional[int] = None

    def summary(self) -> str:
        parts = [f"k={self.k}", f"index={self.index}", f"covered={self.covered}"]
        if self.quotient_radius is not None:
            parts.append(f"quotient_eccentricity={self.quotient_radius}")
        if self.cosets_hit is not None:
            parts.append(f"cosets_hit={self.cosets_hit}/{self.index}")
            parts.append(f"direct_radius={self.direct_radius}")
        return " ".join(parts)


def _direct_radius(lat: Lattice) -> tuple[Optional[int], int]:
    h = np.array(hermite_normal_form(lat.basis), dtype=np.int64)
    diag = np.diag(h)
    if int(np.prod(diag)) != lat.index:
        raise VerificationError("Hermite form disagrees with the determinant")
    pts = lee_ball(4, lat.k).copy()
    norms = np.abs(pts).sum(axis=1)
    for c in range(4):
        q = np.floor_divide(pts[:, c], diag[c])
        pts -= q[:, None] * h[c][None, :]
    ids = ((pts[:, 0] * diag[1] + pts[:, 1]) * diag[2] + pts[:, 2]) * diag[3] + pts[:, 3]
    best = np.full(lat.index, lat.k + 1, dtype=np.int64)
    np.minimum.at(best, ids, norms)
    hit = int(np.count_nonzero(best <= lat.k))
    return (int(best.max()) if hit == lat.index else None), hit


def covering_check(
    k: int,
    method: str = "quotient_bfs",
    *,
    max_direct_k: int = DIRECT_MAX_K,
) -> CoveringCertificate:
    """Decide whether S_{4,k} + L_k = Z^4.

    ``method`` is ``quotient_bfs``, ``direct_lattice`` or ``both``; with
    ``both`` a disagreement raises :class:`MethodsDisagree`.
    """
    if method not in ("quotient_bfs", "direct_lattice", "both"):
        raise InputError(f"unknown method {method!r}")
    lat = lattice_basis(k)
    mult = quotient_multipliers(lat)
    gens = mult.generators(lat.index)
    qr = dr = hit = None
    verdicts = []
    if method in ("quotient_bfs", "both"):
        qr = distance_profile(make_graph(lat.index, gens)).eccentricity
        verdicts.append(qr <= k)
    if method in ("direct_lattice", "both"):
        if k > max_direct_k:
            raise InputError(f"direct lattice scan limited to k <= {max_direct_k} (got {k})")
        dr, hit = _direct_radius(lat)
        verdicts.append(dr is not None)
    if len(set(verdicts)) > 1 or (qr is not None and dr is not None and qr != dr):
        raise MethodsDisagree(f"k={k}: quotient eccentricity {qr}, direct radius {dr}")
    return CoveringCertificate(k, lat.index, gens, verdicts[0], qr, dr, hit)
