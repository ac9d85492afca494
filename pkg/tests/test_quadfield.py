r"""
Exact arithmetic in real quadratic fields.

The field axioms and the order structure are checked by property-based
tests against Fraction pairs; comparisons are cross-checked against the
float embedding on inputs small enough for doubles to be trustworthy.
"""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from tracksurf.quadfield import GOLDEN, QuadNumber, sqrtD

rationals = st.fractions(
    min_value=-100, max_value=100, max_denominator=50
)


def quads(D=5):
    return st.builds(lambda a, b: QuadNumber(a, b, D), rationals, rationals)


def test_construction_and_parts():
    x = QuadNumber(Fraction(1, 2), Fraction(-3, 4))
    assert x.a == Fraction(1, 2) and x.b == Fraction(-3, 4) and x.D == 5
    assert QuadNumber(7).b == 0
    assert QuadNumber(x) == x


def test_floats_are_rejected():
    with pytest.raises(TypeError):
        QuadNumber(0.5)
    with pytest.raises(TypeError):
        QuadNumber(1, 0.25)


def test_bad_discriminant_rejected():
    for bad in (0, 1, 4, 12, -5):
        with pytest.raises(ValueError):
            QuadNumber(1, 1, bad)


def test_sqrt5_squares_to_five():
    r = sqrtD(5)
    assert r * r == 5
    assert float(r) == pytest.approx(5 ** 0.5)


def test_golden_ratio_identity():
    assert GOLDEN * GOLDEN == GOLDEN + 1
    assert 1 / GOLDEN == GOLDEN - 1
    assert float(GOLDEN) == pytest.approx((1 + 5 ** 0.5) / 2)


@given(quads(), quads(), quads())
def test_ring_axioms(x, y, z):
    assert x + y == y + x
    assert x * y == y * x
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + 0 == x and x * 1 == x
    assert x - x == 0


@given(quads(), quads())
def test_division_inverts_multiplication(x, y):
    if y != 0:
        assert (x * y) / y == x
        assert (x / y) * y == x


@given(quads())
def test_conjugate_norm_is_rational(x):
    n = x * x.conjugate()
    assert n.b == 0
    assert n.as_fraction() == x.a * x.a - 5 * x.b * x.b


@given(quads(), quads())
def test_order_matches_float_embedding(x, y):
    # doubles are exact enough at this size to serve as the order oracle
    fx, fy = float(x), float(y)
    if abs(fx - fy) > 1e-6:
        assert (x < y) == (fx < fy)
        assert (x > y) == (fx > fy)
    assert (x == y) == ((x - y).sign() == 0)


@given(quads(), quads(), quads())
def test_order_is_translation_and_scaling_invariant(x, y, z):
    if x < y:
        assert x + z < y + z
        if z > 0:
            assert x * z < y * z
        if z < 0:
            assert x * z > y * z


@given(quads())
def test_hash_consistent_with_int_and_fraction(x):
    if x.b == 0:
        assert hash(x) == hash(x.a)
        assert x == x.a
    assert hash(x) == hash(QuadNumber(x.a, x.b, 5))


@given(quads())
def test_abs_and_sign(x):
    s = x.sign()
    assert s in (-1, 0, 1)
    assert abs(x) == (x if s >= 0 else -x)
    assert abs(x) >= 0


def test_mixed_arithmetic_with_int_and_fraction():
    x = QuadNumber(1, 1)
    assert x + 1 == QuadNumber(2, 1)
    assert 1 + x == QuadNumber(2, 1)
    assert x * Fraction(1, 2) == QuadNumber(Fraction(1, 2), Fraction(1, 2))
    assert 2 - x == QuadNumber(1, -1)
    assert (x / Fraction(1, 2)) == QuadNumber(2, 2)


def test_incompatible_fields_do_not_mix():
    x = QuadNumber(1, 1, 5)
    y = QuadNumber(1, 1, 2)
    with pytest.raises(ValueError):
        x + y
