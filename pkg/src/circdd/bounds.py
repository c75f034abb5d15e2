"""Lee-sphere sizes and the order bounds built from them.

``S(f, k)`` counts the points of Z^f within l1 distance k of the origin.
It bounds the order of any Abelian Cayley graph of degree 2f and diameter
k.  For odd degree 2f+1 the bound is ``S(f, k) + S(f, k-1)``.  The
constructive lower bound for even degree uses the generator set
``{1, 4a, (4a)^2, ..., (4a)^(f-1)}`` with ``a = floor((k - f + 3)/f)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import NamedTuple, Optional

from .errors import (
    DiameterTooSmall,
    InputError,
    InvalidDimension,
    UnsupportedDegree,
    VerificationError,
)
from .graph import GeneratorSet

__all__ = [
    "BoundsRecord",
    "ChenJia",
    "lee_sphere_recurrence",
    "lee_sphere_closed_form",
    "lee_sphere_size",
    "mac_upper_bound",
    "cj_lower_bound",
    "bounds_record",
    "predicted_leading_terms",
    "dimension_of",
]


def dimension_of(d: int) -> int:
    return d // 2


def lee_sphere_recurrence(f: int, k: int) -> int:
    """S(f,k) from S(f,k) = S(f,k-1) + S(f-1,k) + S(f-1,k-1), S(0,k) = S(f,0) = 1."""
    row = [1] * (k + 1)
    for _ in range(f):
        new = [1] * (k + 1)
        for j in range(1, k + 1):
            new[j] = new[j - 1] + row[j] + row[j - 1]
        row = new
    return row[k]


def lee_sphere_closed_form(f: int, k: int) -> int:
    return sum(2**i * comb(f, i) * comb(k, i) for i in range(f + 1))


def lee_sphere_size(f: int, k: int) -> int:
    """Number of points of Z^f with l1 norm at most k.

    Evaluated by both the recurrence and the closed binomial sum; a
    mismatch raises :class:`VerificationError`.
    """
    if f < 1:
        raise InvalidDimension(f"dimension must be >= 1 (got {f})")
    if k < 0:
        raise InputError(f"radius must be >= 0 (got {k})")
    closed = lee_sphere_closed_form(f, k)
    if closed != lee_sphere_recurrence(f, k):
        raise VerificationError(f"Lee-sphere formulas disagree at f={f}, k={k}")
    return closed


def mac_upper_bound(d: int, k: int) -> int:
    """Upper bound on the order of an Abelian Cayley graph of degree d, diameter k."""
    if d < 2 or k < 1:
        raise InputError(f"need d >= 2 and k >= 1 (got d={d}, k={k})")
    f = dimension_of(d)
    if d % 2 == 0:
        return lee_sphere_size(f, k)
    return lee_sphere_size(f, k) + lee_sphere_size(f, k - 1)


class ChenJia(NamedTuple):
    order: int
    witness: Optional[GeneratorSet]  # None when a = 0 (trivial bound)
    cj_a: int


def cj_lower_bound(d: int, k: int) -> ChenJia:
    if d % 2:
        raise UnsupportedDegree(f"the Chen-Jia bound is defined for even degree only (got {d})")
    f = d // 2
    if f < 3:
        raise UnsupportedDegree(f"the Chen-Jia bound needs degree >= 6 (got {d})")
    if k < f:
        raise DiameterTooSmall(f"the Chen-Jia bound needs k >= {f} for degree {d} (got {k})")
    a = (k - f + 3) // f
    if a == 0:
        return ChenJia(0, None, 0)
    powers = [(4 * a) ** i for i in range(f)]
    order = 2 * a * sum(powers)
    return ChenJia(order, GeneratorSet(order, tuple(powers)), a)


@dataclass(frozen=True)
class BoundsRecord:
    degree: int
    diameter: int
    dimension: int
    lee_sphere: int
    upper: int
    lower: Optional[int] = None
    cj_witness: Optional[GeneratorSet] = None
    cj_a: Optional[int] = None


def bounds_record(d: int, k: int) -> BoundsRecord:
    f = dimension_of(d)
    lower = witness = a = None
    if d % 2 == 0 and f >= 3 and k >= f:
        lower, witness, a = cj_lower_bound(d, k)
    return BoundsRecord(
        degree=d,
        diameter=k,
        dimension=f,
        lee_sphere=lee_sphere_size(f, k),
        upper=mac_upper_bound(d, k),
        lower=lower,
        cj_witness=witness,
        cj_a=a,
    )


def predicted_leading_terms(d: int) -> tuple[Fraction, Fraction]:
    """Conjectured coefficients of k^f and k^(f-1) in the extremal order."""
    if d < 2:
        raise InputError(f"degree must be >= 2 (got {d})")
    f = dimension_of(d)
    base = Fraction(4, f)
    if d % 2 == 0:
        return base**f / 2, base ** (f - 1)
    return base**f, Fraction(0)
