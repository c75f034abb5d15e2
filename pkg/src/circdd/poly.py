"""Integer polynomials in the diameter k with an exact common denominator."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import VerificationError


class NotDivisible(VerificationError):
    pass


@dataclass(frozen=True)
class Poly:
    """``(c[0] k^m + c[1] k^(m-1) + ... + c[m]) / den`` with integer coefficients."""

    coeffs: tuple[int, ...]
    den: int = 1

    def __call__(self, k: int) -> int:
        num = 0
        for c in self.coeffs:
            num = num * k + c
        q, r = divmod(num, self.den)
        if r:
            raise NotDivisible(f"{self.text()} is not an integer at k={k}")
        return q

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, power: int) -> Fraction:
        idx = self.degree - power
        if idx < 0 or idx >= len(self.coeffs):
            return Fraction(0)
        return Fraction(self.coeffs[idx], self.den)

    def text(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            p = self.degree - i
            mag = abs(c)
            if p == 0:
                body = str(mag)
            else:
                body = ("" if mag == 1 else str(mag)) + ("k" if p == 1 else f"k^{p}")
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        if not terms:
            return "0"
        s = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        s += "".join(f"{sg}{b}" for sg, b in terms[1:])
        if self.den != 1:
            s = f"({s})/{self.den}"
        return s


def poly(den: int, *coeffs: int) -> Poly:
    return Poly(tuple(coeffs), den)
