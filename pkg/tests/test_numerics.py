"""Exact number helpers and the 2x2 matrix kernel."""

import math
from fractions import Fraction

import pytest

from stabtorus.exactnum import (
    TOL,
    as_number,
    cot_pi,
    direction_angle,
    format_number,
    gamma_from_cot,
    is_exact,
    num_eq,
    parse_number,
    phase_mod1,
)
from stabtorus.errors import DomainError
from stabtorus.linalg import Matrix2


def test_parse_and_format_round_trip():
    for s in ("3/4", "-1/2", "5", "-7"):
        assert format_number(parse_number(s)) == s
    assert parse_number("3/4") == Fraction(3, 4)
    # decimal strings are read exactly, not as binary floats
    assert parse_number("0.25") == Fraction(1, 4)


def test_as_number_keeps_exact_values_exact():
    assert as_number(Fraction(1, 3)) == Fraction(1, 3)
    assert as_number(2) == Fraction(2)
    assert is_exact(as_number("1/2"))
    assert not is_exact(as_number(0.3))


def test_num_eq_tolerance():
    assert num_eq(Fraction(1, 2), 0.5)
    assert num_eq(0.5, 0.5 + TOL / 2)
    assert not num_eq(0.5, 0.5001)


def test_cot_pi_special_values():
    assert cot_pi(Fraction(1, 4)) == 1
    assert cot_pi(Fraction(1, 2)) == 0
    assert abs(float(cot_pi(Fraction(1, 6))) - math.sqrt(3)) < 1e-12


def test_gamma_from_cot_inverts_cot_pi():
    for g in (Fraction(1, 4), Fraction(1, 3), Fraction(1, 8)):
        back = gamma_from_cot(cot_pi(g))
        assert num_eq(back, g, 1e-12)
    # the quarter turn is recognized exactly
    assert gamma_from_cot(1) == Fraction(1, 4)


def test_direction_angle_axes_are_exact():
    assert direction_angle(1, 0) == 0
    assert direction_angle(0, 1) == Fraction(1, 2)
    assert direction_angle(-1, 0) == 1
    assert direction_angle(0, -1) == Fraction(-1, 2)
    assert is_exact(direction_angle(0, 5))


def test_phase_mod1_window():
    # values land in (0, 1]
    assert phase_mod1(-1, 0) == 1
    assert phase_mod1(0, 1) == Fraction(1, 2)
    assert abs(float(phase_mod1(1, 1)) - 0.25) < 1e-12
    assert abs(float(phase_mod1(1, -1)) - 0.75) < 1e-12


def test_matrix_basics():
    m = Matrix2(1, 2, 3, 4)
    assert m.det() == -2
    assert m.rows() == ((1, 2), (3, 4))
    assert m.column0() == (1, 3)
    assert m.apply(1, 0) == (1, 3)
    assert Matrix2.identity().mul(m) == m
    assert Matrix2.scalar(3).apply(1, 1) == (3, 3)


def test_matrix_inverse_is_exact():
    m = Matrix2(2, 1, 1, 1)
    inv = m.inverse()
    assert m @ inv == Matrix2.identity()
    assert inv @ m == Matrix2.identity()
    assert isinstance(inv.a, Fraction)


def test_singular_matrix_has_no_inverse():
    with pytest.raises(ZeroDivisionError):
        Matrix2(1, 2, 2, 4).inverse()


def test_matrix_entries_coerced_to_fractions():
    m = Matrix2("1/2", 0, 0, 2)
    assert m.a == Fraction(1, 2)
    assert m.det() == 1
