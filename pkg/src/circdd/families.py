"""Closed-form extremal and largest-known circulant families for degrees 2 to 9.

Every order and generator is a polynomial in the diameter k, selected by
the residue of k modulo 2, 3, 4, 6 or 14.  Generators are evaluated
exactly, reduced into (0, n/2], and (below a size ceiling) the resulting
graph is checked by BFS to have diameter exactly k.

For odd degree the self-inverse element n/2 is implied by the degree and
is not listed among a record's generators.
"""

from __future__ import annotations

import enum
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from .errors import (
    DiameterBelowThreshold,
    FamilyVerificationFailed,
    InputError,
    ResidueClassUnavailable,
)
from .graph import CirculantGraph, diameter, make_graph, reduce_residue
from .poly import Poly, poly

__all__ = [
    "ExtremalStatus",
    "FamilyRecord",
    "VerificationEntry",
    "VerificationReport",
    "THRESHOLDS",
    "family_order",
    "order_polynomial",
    "construct_family",
    "verify_family",
    "isomorphism_factor",
    "known_small_solutions",
    "DEFAULT_VERIFY_CEILING",
]

DEFAULT_VERIFY_CEILING = 10**7


class ExtremalStatus(str, enum.Enum):
    PROVEN_EXTREMAL = "ProvenExtremal"
    LARGEST_KNOWN = "LargestKnown"
    NOT_OPTIMAL = "NotOptimal"


# minimum diameter for which each degree's formulas are emitted
THRESHOLDS = {2: 1, 3: 1, 4: 1, 5: 2, 6: 2, 7: 3, 8: 2, 9: 5}

# largest k proven extremal by exhaustive search
_PROVEN_UP_TO = {6: 18, 7: 10, 8: 7, 9: 6}


# ---------------------------------------------------------------------------
# order polynomials: degree -> (modulus, {residue: Poly})

_ORDERS: dict[int, tuple[int, dict[int, Poly]]] = {
    2: (1, {0: poly(1, 2, 1)}),
    3: (1, {0: poly(1, 4, 0)}),
    4: (1, {0: poly(1, 2, 2, 1)}),
    5: (1, {0: poly(1, 4, 0, 0)}),
    6: (3, {
        0: poly(27, 32, 48, 54, 27),
        1: poly(27, 32, 48, 78, 31),
        2: poly(27, 32, 48, 54, 11),
    }),
    7: (3, {
        0: poly(27, 64, 0, 108, 0),
        1: poly(27, 64, 0, 60, -16),
        2: poly(27, 64, 0, 60, 16),
    }),
    8: (2, {
        0: poly(2, 1, 2, 6, 4, 0),
        1: poly(2, 1, 2, 6, 6, 1),
    }),
    9: (2, {
        0: poly(1, 1, 0, 3, 2, 0),
        1: poly(1, 1, 0, 3, 0, 0),
    }),
}

_ONE = poly(1, 1)


@dataclass(frozen=True)
class _Variant:
    degree: int
    iso_class: int
    variant: int
    modulus: int
    gens: dict[int, tuple[Poly, ...]]  # residue of k -> generator polynomials
    source: str

    def available(self, k: int) -> bool:
        return k % self.modulus in self.gens


def _v(degree, iso_class, variant, modulus, source, **by_residue):
    gens = {int(r.lstrip("r")): (_ONE,) + tuple(ps) for r, ps in by_residue.items()}
    return _Variant(degree, iso_class, variant, modulus, gens, source)


def _mod14(*rows):
    return tuple(poly(7, *r) for r in rows)


_VARIANTS: list[_Variant] = [
    _v(2, 1, 1, 1, "CC(2,k): cycle", r0=()),
    _v(3, 1, 1, 1, "CC(3,k): cycle plus diagonals", r0=()),
    _v(4, 1, 1, 1, "CC(4,k)", r0=(poly(1, 2, 1),)),
    _v(5, 1, 1, 1, "CC(5,k)", r0=(poly(1, 2, -1),)),
    # degree 6, order DF(6,k)
    _v(6, 1, 1, 3, "Table 3F degree 6 class 1",
       r0=(poly(3, 4, 3), poly(9, 16, 12, 9)),
       r2=(poly(3, 4, 1), poly(9, 16, 20, 13))),
    _v(6, 2, 1, 3, "Table 3F degree 6 class 2",
       r0=(poly(9, 8, 6, 0), poly(9, 8, 18, 18)),
       r1=(poly(9, 8, 2, 8), poly(9, 8, 14, 14)),
       r2=(poly(9, 8, -2, 8), poly(9, 8, 10, 2))),
    # degree 7, order DF(7,k)
    _v(7, 1, 1, 3, "Table 3F degree 7 class 1",
       r1=(poly(3, 4, -1), poly(9, 16, 4, 7)),
       r2=(poly(3, 4, 1), poly(9, 16, -4, 7))),
    _v(7, 2, 1, 3, "Table 3F degree 7 class 2",
       r0=(poly(27, 32, -24, 36, -27), poly(27, 32, -24, 72, -27)),
       r1=(poly(27, 32, -24, 24, -5), poly(27, 32, -24, 60, -41)),
       r2=(poly(27, 32, -24, 0, -25), poly(27, 32, -24, 36, 11))),
    # degree 8, order L(8,k)
    _v(8, 1, 1, 2, "Table 5B",
       r0=(poly(2, 1, 2, 6, 2), poly(4, 1, 0, 4, -8, 0), poly(4, 1, 0, 4, -4, 0)),
       r1=(poly(2, 1, 1, 5, 3), poly(4, 1, 0, 2, -8, -11), poly(4, 1, 0, 2, -4, -7))),
    # degree 9 class 1, order L(9,k)
    _v(9, 1, 1, 4, "Table 5F set 1",
       r0=(poly(1, 1, 1), poly(2, 1, -1, 2, 0, -2), poly(2, 1, -1, 4, 0, -2)),
       r2=(poly(1, 1, 1), poly(2, 1, -1, 2, 0, -2), poly(2, 1, -1, 4, 0, -2)),
       r1=(poly(1, 1, 0), poly(4, 1, 1, 1, 3, -2), poly(4, 1, 1, 5, 3, 2)),
       r3=(poly(1, 1, 0), poly(4, 1, -1, 1, -3, -2), poly(4, 1, -1, 5, -3, 2))),
    _v(9, 1, 2, 2, "Table 5F set 2",
       r0=(poly(1, 1, -1, 3, -1), poly(1, 1, -1, 4, -1), poly(1, 3, -2, 10, -1)),
       r1=(poly(1, 1, 0, 2, 0), poly(1, 1, 0, 3, 1), poly(1, 1, 1, 3, 2))),
    _v(9, 1, 3, 2, "Table 5F set 3",
       r0=(poly(2, 1, 0, 2, 2), poly(2, 1, -1, 4, -2, 2), poly(2, 1, 0, 2, 2, -2)),
       r1=(poly(1, 1, -1, 3, -2), poly(1, 1, 0, 2, 0), poly(1, 1, 0, 3, -1))),
    _v(9, 1, 4, 6, "Table 5F set 4",
       r0=(poly(3, 1, 1, 1, 6, -3), poly(3, 1, 1, 4, 3, 3), poly(3, 1, 1, 4, 6, 3)),
       r2=(poly(3, 1, -1, 2, -2, -3), poly(3, 1, -1, 2, 1, -3), poly(3, 1, -1, 5, -2, 3))),
    # degree 9 class 2, odd k only, keyed on k mod 14
    _v(9, 2, 1, 14, "Table 5J set 1",
       r1=_mod14((1, 1, 5, 0, 0), (1, 1, 5, 7, 7), (3, 3, 8, 7, 0)),
       r3=_mod14((1, -1, 1, -7, -7), (1, -1, 1, 0, 0), (3, -3, 10, -7, 0)),
       # linear term -7k restores the k=5 set 1,45,225,231 listed in Table 5E
       r5=_mod14((1, -3, 4, -7, 0), (2, 1, 8, 0, 0), (2, 1, 8, 7, 7)),
       r7=_mod14((2, -3, 7, -7, 0), (3, -1, 7, -7, -7), (3, -1, 7, 0, 0)),
       r11=_mod14((2, 3, 5, 7, 0), (3, 1, 11, 0, 0), (3, 1, 11, 7, 7)),
       # linear term +7k restores the k=13 set 1,5083,7929,7943 listed in Table 5E
       r13=_mod14((1, 3, 2, 7, 0), (2, -1, 4, -7, -7), (2, -1, 4, 0, 0))),
    _v(9, 2, 2, 14, "Table 5J set 2",
       r1=_mod14((1, -3, 2, -7, 0), (2, 1, 4, 0, 0), (2, 1, 4, 7, -7)),
       r3=_mod14((2, -3, 5, -7, 0), (3, -1, 11, -7, 7), (3, -1, 11, 0, 0)),
       r7=_mod14((2, 3, 7, 7, 0), (3, 1, 7, 0, 0), (3, 1, 7, 7, -7)),
       r9=_mod14((1, 3, 4, 7, 0), (2, -1, 8, -7, 7), (2, -1, 8, 0, 0)),
       r11=_mod14((1, 1, 1, 0, 0), (1, 1, 1, 7, -7), (3, 3, 10, 7, 0)),
       r13=_mod14((1, -1, 5, -7, 7), (1, -1, 5, 0, 0), (3, -3, 8, -7, 0))),
]

# Multipliers taking set 1 of a class onto another set: the factor is the
# generator of the target set at the given position (0-based, 1 first).
# (degree, class, variant) -> (modulus, {residue: position})
_FACTORS = {
    (9, 1, 2): (2, {0: 3, 1: 3}),
    (9, 1, 3): (2, {0: 2, 1: 1}),
    (9, 1, 4): (6, {0: 1, 2: 3}),
    (9, 2, 2): (14, {1: 3, 3: 2, 7: 3, 11: 2, 13: 1}),
}

# Solutions found by search below the closed-form thresholds.
_SMALL = {
    (8, 2): (35, ((1, 6, 7, 10), (1, 7, 11, 16))),
    (9, 2): (42, ((1, 5, 14, 17), (2, 7, 8, 10))),
    (9, 3): (130, ((1, 8, 14, 47), (1, 8, 20, 35), (1, 26, 49, 61), (2, 8, 13, 32))),
    (9, 4): (320, ((1, 15, 25, 83),)),
}


def known_small_solutions(d: int, k: int) -> Optional[tuple[int, tuple[tuple[int, ...], ...]]]:
    """Order and one generator set per isomorphism class, for small k found by search."""
    return _SMALL.get((d, k))


def _check_range(d: int, k: int) -> None:
    if d not in _ORDERS:
        raise InputError(f"families exist for degrees 2..9 (got {d})")
    if k < THRESHOLDS[d]:
        raise DiameterBelowThreshold(d, k, THRESHOLDS[d])


def order_polynomial(d: int, k: int) -> Poly:
    _check_range(d, k)
    modulus, polys = _ORDERS[d]
    return polys[k % modulus]


def family_order(d: int, k: int) -> int:
    """Order of the extremal or largest-known family member of degree d, diameter k."""
    return order_polynomial(d, k)(k)


def _status(d: int, k: int) -> ExtremalStatus:
    if d == 8 and k == 2:
        return ExtremalStatus.NOT_OPTIMAL
    if k <= _PROVEN_UP_TO.get(d, 10**9):
        return ExtremalStatus.PROVEN_EXTREMAL
    return ExtremalStatus.LARGEST_KNOWN


@dataclass(frozen=True)
class FamilyRecord:
    degree: int
    diameter: int
    order: int
    iso_class: Optional[int]
    variant: int
    gens: tuple[int, ...]
    provenance: str
    extremal_status: ExtremalStatus
    verified: Optional[bool] = field(default=None, compare=False)

    @property
    def graph(self) -> CirculantGraph:
        return make_graph(self.order, self.gens, self_inverse=self.degree % 2 == 1)

    def as_json(self) -> dict:
        return {
            "n": self.order,
            "degree": self.degree,
            "generators": list(self.gens),
            "diameter": self.diameter,
            "iso_class": self.iso_class,
            "provenance": self.provenance,
        }


def _evaluate(var: _Variant, k: int, n: int) -> tuple[int, ...]:
    values = [p(k) for p in var.gens[k % var.modulus]]
    gens = sorted(reduce_residue(g, n) for g in values)
    if len(set(gens)) != len(gens) or gens[0] == 0 or 2 * gens[-1] >= n:
        raise FamilyVerificationFailed(
            f"{var.source} at k={k} yields invalid generators {gens} on Z_{n}"
        )
    return tuple(gens)


def _check(rec: FamilyRecord, ceiling: int) -> FamilyRecord:
    if rec.order > ceiling:
        return rec
    got = diameter(rec.graph)
    if got != rec.diameter:
        raise FamilyVerificationFailed(
            f"degree {rec.degree} k={rec.diameter} class {rec.iso_class} set {rec.variant}: "
            f"Z_{rec.order} gens {list(rec.gens)} has diameter {got}"
        )
    return FamilyRecord(**{**rec.__dict__, "verified": True})


def construct_family(
    d: int,
    k: int,
    iso_class: Optional[int] = None,
    variant: Optional[int] = None,
    *,
    verify: bool = True,
    verify_ceiling: int = DEFAULT_VERIFY_CEILING,
) -> list[FamilyRecord]:
    """All family records of degree d and diameter k, optionally filtered.

    Records on at most ``verify_ceiling`` vertices are checked by BFS to
    have diameter exactly k; a failure raises
    :class:`FamilyVerificationFailed`.  Asking for a class or set that does
    not exist for this residue of k raises :class:`ResidueClassUnavailable`.
    """
    n = family_order(d, k)
    status = _status(d, k)
    records = []
    if d == 8 and k == 2 and iso_class is None and variant is None:
        order, sets = _SMALL[(8, 2)]
        for i, gens in enumerate(sets, start=1):
            records.append(
                FamilyRecord(8, 2, order, i, 1, gens, "Table 5A (k=2)",
                             ExtremalStatus.PROVEN_EXTREMAL)
            )
    for var in _VARIANTS:
        if var.degree != d:
            continue
        if iso_class is not None and var.iso_class != iso_class:
            continue
        if variant is not None and var.variant != variant:
            continue
        if not var.available(k):
            if variant is not None and iso_class is not None:
                raise ResidueClassUnavailable(
                    f"degree {d} class {var.iso_class} set {var.variant} has no solution "
                    f"for k = {k % var.modulus} (mod {var.modulus})"
                )
            continue
        gens = _evaluate(var, k, n)
        # the k=2 degree-8 formula graph is not optimal and has no class label
        label = None if (d == 8 and k == 2) else var.iso_class
        records.append(FamilyRecord(d, k, n, label, var.variant, gens, var.source, status))
    if not records:
        raise ResidueClassUnavailable(
            f"degree {d}: no generator set for class {iso_class} set {variant} at k={k}"
        )
    if verify:
        records = [_check(r, verify_ceiling) for r in records]
    return records


def isomorphism_factor(d: int, k: int, iso_class: int, variant: int) -> int:
    """Unit u of Z_n with u * (set 1) = (set ``variant``) for the given class.

    Only the degree-9 classes have tabulated factors.
    """
    key = (d, iso_class, variant)
    if key not in _FACTORS:
        raise InputError(f"no tabulated factor for degree {d} class {iso_class} set {variant}")
    modulus, positions = _FACTORS[key]
    if k % modulus not in positions:
        raise ResidueClassUnavailable(
            f"no factor for class {iso_class} set {variant} at k = {k % modulus} (mod {modulus})"
        )
    var = next(v for v in _VARIANTS if (v.degree, v.iso_class, v.variant) == key)
    if not var.available(k):
        raise ResidueClassUnavailable(f"set {variant} of class {iso_class} absent at k={k}")
    n = family_order(d, k)
    return var.gens[k % var.modulus][positions[k % modulus]](k) % n


def set_one(d: int, k: int, iso_class: int) -> tuple[int, ...]:
    """Reduced generator set 1 of a class (without verification)."""
    var = next(v for v in _VARIANTS if (v.degree, v.iso_class, v.variant) == (d, iso_class, 1))
    if not var.available(k):
        raise ResidueClassUnavailable(f"set 1 of class {iso_class} absent at k={k}")
    return _evaluate(var, k, family_order(d, k))


@dataclass(frozen=True)
class VerificationEntry:
    k: int
    iso_class: Optional[int]
    variant: int
    order: int
    expected_order: int
    gens: tuple[int, ...]
    measured_diameter: Optional[int]
    passed: bool
    seconds: float
    message: str = ""


@dataclass
class VerificationReport:
    degree: int
    k_min: int
    k_max: int
    entries: list[VerificationEntry]

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    def failures(self) -> list[VerificationEntry]:
        return [e for e in self.entries if not e.passed]


def _verify_one(d: int, k: int) -> list[VerificationEntry]:
    t0 = time.perf_counter()
    try:
        expected = family_order(d, k)
        records = construct_family(d, k, verify=False)
    except Exception as exc:  # reported, not raised
        return [VerificationEntry(k, 0, 0, 0, 0, (), None, False, 0.0, str(exc))]
    out = []
    for rec in records:
        t1 = time.perf_counter()
        exp = expected
        if rec.provenance.startswith("Table 5A"):
            exp = _SMALL[(8, 2)][0]
        try:
            got = diameter(rec.graph)
            ok = got == k and rec.order == exp
            msg = "" if ok else f"diameter {got}, order {rec.order} (expected {exp})"
        except Exception as exc:
            got, ok, msg = None, False, str(exc)
        out.append(
            VerificationEntry(k, rec.iso_class, rec.variant, rec.order, exp, rec.gens,
                              got, ok, time.perf_counter() - t1, msg)
        )
    if not out:
        out.append(VerificationEntry(k, 0, 0, 0, expected, (), None, False,
                                     time.perf_counter() - t0, "no records"))
    return out


def verify_family(d: int, k_min: int, k_max: int, *, threads: int = 1) -> VerificationReport:
    """Check order and exact BFS diameter of every record for k in [k_min, k_max]."""
    if k_max < k_min:
        raise InputError(f"empty range {k_min}..{k_max}")
    ks = list(range(k_min, k_max + 1))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(lambda k: _verify_one(d, k), ks))
    else:
        chunks = [_verify_one(d, k) for k in ks]
    return VerificationReport(d, k_min, k_max, [e for c in chunks for e in c])
