"""Tests for exact cyclotomic arithmetic."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest
import sympy

from gxkirby import scalars
from gxkirby.scalars import Cyclotomic, ScalarError, cyclotomic_polynomial, root_of_unity


def test_cyclotomic_polynomials_match_sympy():
    x = sympy.symbols("x")
    for n in range(1, 31):
        ours = cyclotomic_polynomial(n)
        theirs = sympy.Poly(sympy.cyclotomic_poly(n, x), x).all_coeffs()[::-1]
        assert list(ours) == [int(c) for c in theirs]


def test_root_of_unity_basics():
    i = root_of_unity(4, 1)
    assert (i * i) == Cyclotomic.from_rational(4, -1)
    for n in (1, 2, 3, 4, 5, 6, 12):
        assert root_of_unity(n, 0).is_one()


def test_zeta6_cubed_is_minus_one():
    # Oracle: reduce x^3 modulo Phi_6 = x^2 - x + 1 by naive polynomial division.
    # x^3 = (x + 1)(x^2 - x + 1) - 1, so zeta_6^3 = -1.
    x = sympy.symbols("x")
    _, rem = sympy.div(x**3, sympy.cyclotomic_poly(6, x), x)
    assert rem == -1
    z = root_of_unity(6, 3)
    assert z == Cyclotomic.from_rational(6, -1)
    assert (z * z).is_one()
    assert not z.is_one()


def test_rejects_order_zero():
    with pytest.raises(ScalarError):
        root_of_unity(0, 1)


def test_add_mul_inverse_examples():
    one = Cyclotomic.one(4)
    assert (one + (-one)).is_zero()
    i = root_of_unity(4, 1)
    assert i * i == -one
    two = Cyclotomic.from_rational(4, 2)
    half = two.inverse()
    assert half == Cyclotomic.from_rational(4, Fraction(1, 2))
    assert (two * half).is_one()
    with pytest.raises(ScalarError):
        Cyclotomic.zero(4).inverse()


def test_conductor_mismatch_is_error():
    with pytest.raises(ScalarError):
        root_of_unity(4, 1) + root_of_unity(5, 1)
    a = root_of_unity(4, 1).embed(20)
    b = root_of_unity(5, 1).embed(20)
    assert (a * b) == root_of_unity(20, 5 + 4)


def test_to_float_embedding():
    assert scalars.to_float(Cyclotomic.zero(7)) == 0
    assert abs(scalars.to_float(root_of_unity(4, 1)) - 1j) < 1e-12
    half = Cyclotomic.from_rational(4, Fraction(1, 2))
    val = half + half * root_of_unity(4, 1)
    # Oracle: direct embedding zeta_4 -> exp(2 pi i / 4).
    assert abs(scalars.to_float(val) - (0.5 + 0.5j)) < 1e-12


def _random_scalar(rng: random.Random, order: int) -> Cyclotomic:
    deg = len(cyclotomic_polynomial(order)) - 1
    return Cyclotomic(
        order,
        [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(deg)],
    )


@pytest.mark.parametrize("order", [1, 4, 5, 6, 10, 12])
def test_field_axioms_random(order):
    rng = random.Random(order)
    for _ in range(25):
        a = _random_scalar(rng, order)
        b = _random_scalar(rng, order)
        c = _random_scalar(rng, order)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert (a * b).conjugate() == a.conjugate() * b.conjugate()
        assert a.conjugate().conjugate() == a
        if not a.is_zero():
            assert (a * a.inverse()).is_one()


@pytest.mark.parametrize("order", [1, 4, 5, 12])
def test_serialization_roundtrip(order):
    rng = random.Random(order + 100)
    for _ in range(10):
        a = _random_scalar(rng, order)
        assert Cyclotomic.from_json(a.to_json()) == a


def test_reduction_matches_numeric_embedding():
    rng = random.Random(7)
    for order in (5, 8, 9, 12):
        for _ in range(10):
            ks = [rng.randrange(order) for _ in range(3)]
            val = root_of_unity(order, ks[0])
            num = scalars.to_float(root_of_unity(order, ks[0]))
            for k in ks[1:]:
                val = val * root_of_unity(order, k)
                num *= scalars.to_float(root_of_unity(order, k))
            assert abs(val.to_complex() - num) < 1e-9


def test_conjugate_sends_zeta_to_inverse():
    for order in (3, 4, 5, 8):
        z = root_of_unity(order, 1)
        assert z.conjugate() == root_of_unity(order, order - 1)
        assert (z * z.conjugate()).is_one()
