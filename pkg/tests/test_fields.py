"""Tests for finite field arithmetic and univariate factorisation."""

import random

import pytest

from etaleh1.errors import ZeroPolynomial
from etaleh1.fields import (
    ExtField,
    FieldSpec,
    PrimeField,
    factor_univariate,
    field_for_order,
    find_irreducible,
    is_irreducible,
    poly_deg,
    poly_eval,
    poly_from_ints,
    poly_gcd,
    poly_mul,
    poly_roots,
    poly_scale,
    poly_sub,
    poly_x,
)


def brute_roots(F, f):
    """Independent oracle: exhaustive evaluation over the field."""
    return sorted(
        (a for a in F.elements() if F.is_zero(poly_eval(F, f, a))),
        key=F.to_int,
    )


def reassemble(F, lead, factors):
    prod = (lead,)
    for g, mult in factors:
        for _ in range(mult):
            prod = poly_mul(F, prod, g)
    return prod


class TestFieldArithmetic:
    def test_prime_field_ops(self):
        F = PrimeField(7)
        assert F.add(3, 5) == 1
        assert F.mul(3, 5) == 1
        assert F.inv(3) == 5
        assert F.sub(2, 5) == 4
        assert F.pow(3, 6) == 1

    def test_ext_field_ops(self):
        F9 = field_for_order(3, 2)
        g = F9.gen()
        # g satisfies the modulus
        m = F9.modulus
        acc = F9.zero()
        p = F9.base
        for i, c in enumerate(m):
            acc = F9.add(acc, F9.mul(F9.from_int(c), F9.pow(g, i)))
        assert F9.is_zero(acc)
        # field axioms on all 81 pairs
        els = list(F9.elements())
        for a in els:
            for b in els:
                assert F9.mul(a, b) == F9.mul(b, a)
                if not F9.is_zero(b):
                    assert F9.mul(F9.div(a, b), b) == a

    def test_multiplicative_order(self):
        F8 = field_for_order(2, 3)
        nonzero = [a for a in F8.elements() if not F8.is_zero(a)]
        for a in nonzero:
            assert F8.pow(a, 7) == F8.one()

    def test_fieldspec_roundtrip(self):
        spec = FieldSpec.for_order(5, 3)
        line = spec.serialize()
        again = FieldSpec.parse(line)
        assert again == spec
        F = again.build()
        assert F.order == 125

    def test_fieldspec_prime(self):
        spec = FieldSpec.parse("p=7;m=1;mod=0,1")
        F = spec.build()
        assert isinstance(F, PrimeField) and F.p == 7


class TestFrobeniusRoot:
    def test_identity_on_one(self):
        F = field_for_order(3, 2)
        assert F.frobenius_root(F.one()) == F.one()

    def test_f9_cube(self):
        # x^(1/3) = x^3 in F_9 since Frobenius has order 2
        F9 = field_for_order(3, 2)
        for a in F9.elements():
            assert F9.frobenius_root(a) == F9.pow(a, 3)

    def test_f32_square_root(self):
        # x^(1/2) = x^16 in F_32
        F32 = field_for_order(2, 5)
        rng = random.Random(5)
        for _ in range(20):
            a = F32.rand(rng)
            b = F32.frobenius_root(a)
            assert F32.mul(b, b) == a
            assert b == F32.pow(a, 16)

    def test_inverse_of_frobenius_exhaustive(self):
        # exhaustive on all fields of size <= 64
        for p, m in [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (3, 2), (2, 3),
                     (5, 2), (7, 2), (2, 4), (3, 3), (2, 5), (2, 6)]:
            F = field_for_order(p, m)
            if F.order > 64:
                continue
            for a in F.elements():
                assert F.pow(F.frobenius_root(a), p) == a
                assert F.frobenius_root(F.pow(a, p)) == a


class TestFactorisation:
    def test_x2_plus_1_f3_irreducible(self):
        # -1 is a non-residue mod 3
        F = PrimeField(3)
        f = poly_from_ints(F, [1, 0, 1])
        lead, fs = factor_univariate(F, f)
        assert lead == 1 and fs == [(f, 1)]

    def test_x2_plus_1_f5_splits(self):
        # 2^2 = 4 = -1 in F_5
        F = PrimeField(5)
        f = poly_from_ints(F, [1, 0, 1])
        _, fs = factor_univariate(F, f)
        assert fs == [(poly_from_ints(F, [2, 1]), 1), (poly_from_ints(F, [3, 1]), 1)]

    def test_x4_minus_1_f7_linear_factors_match_roots(self):
        # independent oracle: exhaustive root enumeration over F_7
        F = PrimeField(7)
        f = poly_from_ints(F, [-1, 0, 0, 0, 1])
        roots = brute_roots(F, f)
        assert roots == [1, 6]
        lead, fs = factor_univariate(F, f)
        linear_roots = sorted(
            (F.neg(g[0]) for g, _ in fs if poly_deg(g) == 1), key=F.to_int
        )
        assert linear_roots == roots
        assert reassemble(F, lead, fs) == f

    def test_zero_polynomial_rejected(self):
        with pytest.raises(ZeroPolynomial):
            factor_univariate(PrimeField(5), ())

    def test_product_reconstruction_random(self):
        # spec invariant: exact reconstruction for seeded random polynomials
        rng = random.Random(20240809)
        fields = [PrimeField(2), PrimeField(3), PrimeField(5), PrimeField(7),
                  field_for_order(2, 2), field_for_order(3, 2), field_for_order(7, 2),
                  field_for_order(5, 2)]
        count = 0
        for F in fields:
            for _ in range(125):
                deg = rng.randrange(1, 13)
                coeffs = [F.rand(rng) for _ in range(deg)] + [F.one()]
                f = tuple(coeffs)
                lead, fs = factor_univariate(F, f)
                assert reassemble(F, lead, fs) == f
                for g, _m in fs:
                    assert is_irreducible(F, g)
                    assert g[-1] == F.one()
                count += 1
        assert count == 1000

    def test_multiplicities(self):
        F = PrimeField(5)
        x = poly_x(F)
        g = poly_from_ints(F, [1, 1])  # x + 1
        f = poly_mul(F, poly_mul(F, x, x), poly_mul(F, g, poly_mul(F, g, g)))
        _, fs = factor_univariate(F, f)
        assert fs == [(x, 2), (g, 3)]

    def test_char2_equal_degree(self):
        F = field_for_order(2, 2)
        # product of all monic linear polynomials over F_4
        f = (F.one(),)
        for a in F.elements():
            f = poly_mul(F, f, (F.neg(a), F.one()))
        _, fs = factor_univariate(F, f)
        assert len(fs) == 4 and all(poly_deg(g) == 1 for g, _ in fs)

    def test_deterministic_across_runs(self):
        F = PrimeField(7)
        rng = random.Random(7)
        f = tuple([F.rand(rng) for _ in range(9)] + [F.one()])
        assert factor_univariate(F, f) == factor_univariate(F, f)

    def test_roots_ordered(self):
        F = PrimeField(7)
        f = poly_from_ints(F, [-1, 0, 0, 0, 1])
        assert poly_roots(F, f) == [1, 6]


class TestPolyToolkit:
    def test_gcd(self):
        F = PrimeField(5)
        f = poly_mul(F, poly_from_ints(F, [1, 1]), poly_from_ints(F, [2, 1]))
        g = poly_mul(F, poly_from_ints(F, [1, 1]), poly_from_ints(F, [3, 1]))
        assert poly_gcd(F, f, g) == poly_from_ints(F, [1, 1])

    def test_find_irreducible_smallest(self):
        F = PrimeField(2)
        assert find_irreducible(F, 2) == (1, 1, 1)  # x^2 + x + 1

    def test_sub_scale(self):
        F = PrimeField(3)
        f = poly_from_ints(F, [1, 2])
        assert poly_sub(F, f, f) == ()
        assert poly_scale(F, 0, f) == ()
