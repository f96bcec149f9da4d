import random

import pytest

from projstark.poly import (
    NEG_INF,
    Polynomial,
    divide_exact,
    interpolate,
    poly_arith,
    vanishing,
)


def rand_poly(rng, field, max_deg):
    return Polynomial(field, [rng.randrange(field.modulus) for _ in range(max_deg + 1)])


def test_zero_polynomial_degree(field):
    z = Polynomial.zero(field)
    assert z.degree == NEG_INF
    assert z.reported_degree == 0
    assert z.is_zero()
    assert z(17).value == 0


def test_trailing_zeros_trimmed(field):
    p = Polynomial(field, (3, 0, 0))
    assert p.coeffs == (3,)
    assert p.degree == 0
    assert Polynomial(field, (0, 0)).is_zero()


def test_evaluate(field):
    p = Polynomial(field, (1, 1))  # 1 + x
    assert p(330).value == 0
    assert p(0).value == 1
    cubic = Polynomial(field, (5, 0, 0, 2))  # 5 + 2x^3
    assert cubic(3).value == (5 + 2 * 27) % 331


def test_addition_and_subtraction(field):
    a = Polynomial(field, (1, 2, 3))
    b = Polynomial(field, (330, 329))
    assert (a + b).coeffs == (0, 0, 3)
    assert (a - a).is_zero()
    assert (-a + a).is_zero()


def test_multiplication(field):
    x_plus = Polynomial(field, (1, 1))
    x_minus = Polynomial(field, (-1, 1))
    assert (x_plus * x_minus).coeffs == (330, 0, 1)  # x^2 - 1
    assert (x_plus * Polynomial.zero(field)).is_zero()


def test_degree_is_additive_under_product(field):
    rng = random.Random(5)
    for _ in range(50):
        a = rand_poly(rng, field, rng.randrange(6))
        b = rand_poly(rng, field, rng.randrange(6))
        if a.is_zero() or b.is_zero():
            continue
        assert (a * b).degree == a.degree + b.degree


def test_scale_and_scale_argument(field):
    p = Polynomial(field, (1, 2, 3))
    assert p.scale(2).coeffs == (2, 4, 6)
    # p(2x): coefficient i picks up 2^i
    assert p.scale_argument(2).coeffs == (1, 4, 12)
    x = 7
    assert p.scale_argument(5)(x) == p(5 * x % 331)


def test_divmod_basics(field):
    num = Polynomial(field, (330, 0, 1))  # x^2 - 1
    den = Polynomial(field, (330, 1))  # x - 1
    quot, rem = divmod(num, den)
    assert quot.coeffs == (1, 1)
    assert rem.is_zero()
    with pytest.raises(ZeroDivisionError):
        divmod(num, Polynomial.zero(field))


def test_divmod_with_remainder(field):
    num = Polynomial(field, (1, 0, 1))  # x^2 + 1
    den = Polynomial(field, (330, 1))  # x - 1
    quot, rem = divmod(num, den)
    assert quot * den + rem == num
    assert rem.coeffs == (2,)


def test_divide_exact_flags_remainders(field):
    num = Polynomial(field, (330, 0, 1))
    den = Polynomial(field, (330, 1))
    quot, exact = divide_exact(num, den)
    assert exact and quot.coeffs == (1, 1)
    _, exact = divide_exact(Polynomial(field, (1, 0, 1)), den)
    assert not exact


def test_division_roundtrip_randomized(field):
    rng = random.Random(23)
    for _ in range(50):
        a = rand_poly(rng, field, rng.randrange(8))
        b = rand_poly(rng, field, rng.randrange(1, 5))
        if b.is_zero():
            continue
        quot, exact = divide_exact(a * b, b)
        assert exact and quot == a


def test_poly_arith_dispatch(field):
    a = Polynomial(field, (1, 1))
    b = Polynomial(field, (2,))
    assert poly_arith(a, b, "add") == a + b
    assert poly_arith(a, b, "sub") == a - b
    assert poly_arith(a, b, "mul") == a * b
    assert poly_arith(a, 3, "scale") == a.scale(3)
    with pytest.raises(ValueError):
        poly_arith(a, b, "pow")


def test_interpolate_constant_column(field, domain):
    points = [(e.value, 3) for e in domain]
    p = interpolate(points, field)
    assert p.coeffs == (3,)
    assert p.reported_degree == 0


def test_interpolate_roundtrip(field, domain):
    rng = random.Random(7)
    points = [(e.value, rng.randrange(331)) for e in domain]
    p = interpolate(points, field)
    assert p.degree <= len(points) - 1
    for x, y in points:
        assert p(x).value == y


def test_interpolate_recovers_low_degree(field):
    rng = random.Random(9)
    for _ in range(20):
        target = rand_poly(rng, field, rng.randrange(5))
        xs = rng.sample(range(331), 12)
        p = interpolate([(x, target(x).value) for x in xs], field)
        assert p == target


def test_interpolate_duplicate_x_rejected(field):
    with pytest.raises(ValueError):
        interpolate([(1, 5), (1, 6)], field)


def test_interpolate_empty(field):
    assert interpolate([], field).is_zero()


def test_vanishing_full_subgroup(field, domain):
    zv = vanishing([e.value for e in domain], field)
    # x^30 - 1
    assert zv.coeffs == (330,) + (0,) * 29 + (1,)
    for e in domain:
        assert zv(e).value == 0


def test_vanishing_step_domain_factors(field, domain):
    xs = [e.value for e in domain]
    zv = vanishing(xs[:29], field)
    assert zv.degree == 29
    last = Polynomial(field, (-xs[29], 1))
    assert zv * last == vanishing(xs, field)
    assert zv(xs[29]).value != 0


def test_vanishing_single_point(field):
    assert vanishing([1], field).coeffs == (330, 1)
    with pytest.raises(ValueError):
        vanishing([4, 4], field)
