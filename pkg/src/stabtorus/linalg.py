"""Exact 2x2 rational matrices.

Entries are coerced through Fraction, so even float input becomes an exact
dyadic rational and every product, inverse and determinant downstream is
computed without rounding.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


def _frac(x) -> Fraction:
    if isinstance(x, bool):
        raise TypeError("matrix entries must be numbers")
    return Fraction(x)


@dataclass(frozen=True)
class Matrix2:
    """Row-major exact 2x2 matrix ((a, b), (c, d))."""

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    def __post_init__(self):
        for f in ("a", "b", "c", "d"):
            object.__setattr__(self, f, _frac(getattr(self, f)))

    @staticmethod
    def identity() -> "Matrix2":
        return Matrix2(1, 0, 0, 1)

    @staticmethod
    def scalar(s) -> "Matrix2":
        return Matrix2(s, 0, 0, s)

    def det(self) -> Fraction:
        return self.a * self.d - self.b * self.c

    def mul(self, other: "Matrix2") -> "Matrix2":
        return Matrix2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    __matmul__ = mul

    def inverse(self) -> "Matrix2":
        det = self.det()
        if det == 0:
            raise ZeroDivisionError("matrix is singular")
        return Matrix2(self.d / det, -self.b / det, -self.c / det, self.a / det)

    def neg(self) -> "Matrix2":
        return Matrix2(-self.a, -self.b, -self.c, -self.d)

    def apply(self, x, y):
        """Matrix times column vector; mixed exact/float input allowed."""
        return (self.a * x + self.b * y, self.c * x + self.d * y)

    def column0(self):
        return (self.a, self.c)

    def rows(self):
        return ((self.a, self.b), (self.c, self.d))
