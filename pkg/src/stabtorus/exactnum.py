"""Number helpers shared by all modules.

Policy: values constructed from integers or rational strings stay exact
(`fractions.Fraction`); genuinely irrational quantities (generic cotangents,
arctangent phases) are floats compared at ``TOL``. Every branch decision that
matters lands on a phase in (1/2)Z, where the helpers below return exact
values, so float noise never flips a branch.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import ZeroCharge

# comparison tolerance for float phases; documented part of the contract
TOL = 1e-12

HALF = Fraction(1, 2)


def is_exact(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def as_number(x):
    """Coerce to Fraction when exact, keep floats as floats."""
    if isinstance(x, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, float):
        return x
    if isinstance(x, str):
        return parse_number(x)
    raise TypeError(f"not a number: {x!r}")


def parse_number(s: str):
    """Parse "7", "3/10" or "0.3" exactly; fall back to float for the rest."""
    s = s.strip()
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        return float(s)


def format_number(x) -> str:
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return str(x)


def num_eq(x, y, tol: float = TOL) -> bool:
    """Equality that is exact on exact inputs and tolerant across floats."""
    if is_exact(x) and is_exact(y):
        return x == y
    return abs(float(x) - float(y)) <= tol


def direction_angle(x, y):
    """Angle of the nonzero vector (x, y) in units of pi, in (-1, 1].

    Axis directions come back exact (0, 1, 1/2, -1/2); everything else is a
    float from atan2. Raises ZeroCharge on the zero vector.
    """
    if x == 0 and y == 0:
        raise ZeroCharge("direction of the zero vector is undefined")
    if y == 0:
        return Fraction(1) if x < 0 else Fraction(0)
    if x == 0:
        return HALF if y > 0 else -HALF
    return math.atan2(float(y), float(x)) / math.pi


def cot_pi(gamma):
    """cot(pi*gamma) for gamma in (0, 1), exact at the rational points."""
    g = as_number(gamma)
    if not 0 < g < 1:
        raise ValueError("cot_pi needs an argument in (0, 1)")
    if is_exact(g):
        if g == HALF:
            return Fraction(0)
        if g == Fraction(1, 4):
            return Fraction(1)
        if g == Fraction(3, 4):
            return Fraction(-1)
    gf = float(g)
    return math.cos(math.pi * gf) / math.sin(math.pi * gf)


def gamma_from_cot(c):
    """Inverse of cot_pi into (0, 1); exact at c in {-1, 0, 1}."""
    if is_exact(c):
        if c == 1:
            return Fraction(1, 4)
        if c == 0:
            return HALF
        if c == -1:
            return Fraction(3, 4)
    return math.atan2(1.0, float(c)) / math.pi


def phase_mod1(re, im):
    """Phase of the nonzero value re + i*im folded into (0, 1]."""
    theta = direction_angle(re, im)
    return theta if theta > 0 else theta + 1
