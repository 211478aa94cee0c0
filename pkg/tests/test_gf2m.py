"""Field arithmetic tests: modulus table, axioms, trace, element orders."""

import random

import pytest

from quintic_codes.gf2m import (
    IRREDUCIBLE_POLY,
    MAX_DEGREE,
    FieldContext,
    field_context,
    is_irreducible_f2,
    poly_mod_f2,
)


def naive_poly_divides(g: int, p: int) -> bool:
    """Independent trial-division oracle (long division, no shortcuts)."""
    dg = g.bit_length() - 1
    r = p
    while r.bit_length() - 1 >= dg and r:
        r ^= g << (r.bit_length() - 1 - dg)
    return r == 0


def test_modulus_table_spans_supported_range():
    assert sorted(IRREDUCIBLE_POLY) == list(range(1, MAX_DEGREE + 1))
    for m, p in IRREDUCIBLE_POLY.items():
        assert p.bit_length() - 1 == m


@pytest.mark.parametrize("m", range(1, MAX_DEGREE + 1))
def test_modulus_table_entries_irreducible(m):
    p = IRREDUCIBLE_POLY[m]
    for d in range(1, m // 2 + 1):
        for low in range(1 << d):
            assert not naive_poly_divides((1 << d) | low, p)


def test_m2_modulus_is_the_unique_irreducible_quadratic():
    quadratics = [q for q in range(0b100, 0b1000) if is_irreducible_f2(q, 2)]
    assert quadratics == [0b111]
    assert IRREDUCIBLE_POLY[2] == 0b111


def test_m4_modulus_passes_independent_factor_check():
    assert IRREDUCIBLE_POLY[4] == 0b10011  # x^4 + x + 1
    for d in (1, 2):
        for low in range(1 << d):
            assert not naive_poly_divides((1 << d) | low, 0b10011)


def test_reducible_modulus_rejected():
    with pytest.raises(ValueError):
        FieldContext(4, modulus=0b10111)  # x^4+x^2+x+1, divisible by x+1


def test_degree_out_of_range():
    with pytest.raises(ValueError):
        FieldContext(0)
    with pytest.raises(ValueError):
        FieldContext(13)


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_field_axioms_exhaustive(m):
    f = field_context(m)
    q = f.order
    for a in range(q):
        assert f.add(a, a) == 0
        assert f.mul(a, 1) == a
        assert f.mul(a, 0) == 0
    for a in range(q):
        for b in range(q):
            assert f.mul(a, b) == f.mul(b, a)
            for c in range(0, q, max(1, q // 8)):
                assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
                assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))


@pytest.mark.parametrize("m", range(5, MAX_DEGREE + 1))
def test_field_axioms_randomized(m):
    f = field_context(m)
    rng = random.Random(1000 + m)
    for _ in range(500):
        a, b, c = (rng.randrange(f.order) for _ in range(3))
        assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
        assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
        assert f.mul(f.add(a, b), f.add(a, b)) == f.add(f.mul(a, a), f.mul(b, b))  # Frobenius


@pytest.mark.parametrize("m", range(1, 9))
def test_inverse_roundtrip_exhaustive(m):
    f = field_context(m)
    for a in range(1, f.order):
        assert f.mul(a, f.inv(a)) == 1


def test_inverse_of_zero_rejected():
    with pytest.raises(ZeroDivisionError):
        field_context(3).inv(0)


def test_f4_product_of_generator_with_itself():
    # with the basis of x^2+x+1, x*x = x+1
    f = field_context(2)
    w = f.element_of_order(3)
    assert w == 0b10
    assert f.mul(w, w) == 0b11


def test_pow_matches_repeated_multiplication():
    f = field_context(5)
    rng = random.Random(7)
    for _ in range(100):
        a = rng.randrange(1, f.order)
        e = rng.randrange(0, 40)
        acc = 1
        for _ in range(e):
            acc = f.mul(acc, a)
        assert f.pow(a, e) == acc


@pytest.mark.parametrize("m", range(1, MAX_DEGREE + 1))
def test_generator_has_full_order(m):
    f = field_context(m)
    assert f.multiplicative_order(f.generator) == f.order - 1


@pytest.mark.parametrize("m", range(1, MAX_DEGREE + 1))
def test_trace_linear_surjective_and_frobenius_invariant(m):
    f = field_context(m)
    rng = random.Random(m)
    values = {f.tr(x) for x in f.elements()}
    assert values == {0, 1}
    for _ in range(200):
        a, b = rng.randrange(f.order), rng.randrange(f.order)
        assert f.tr(f.add(a, b)) == f.tr(a) ^ f.tr(b)
        assert f.tr(f.mul(a, a)) == f.tr(a)


def test_trace_base_cases():
    f1 = field_context(1)
    assert [f1.tr(x) for x in (0, 1)] == [0, 1]
    f2 = field_context(2)
    w = f2.element_of_order(3)
    assert f2.tr(w) == 1  # w + w^2 = w + (w+1) = 1


@pytest.mark.parametrize("m", range(1, 9))
def test_character_sum_balance(m):
    # sum over the whole field of (-1)^tr(z*x) vanishes for every nonzero z
    f = field_context(m)
    for z in f.nonzero_elements():
        total = sum(1 if f.tr(f.mul(z, x)) == 0 else -1 for x in f.elements())
        assert total == 0


def test_element_of_order_basics():
    assert field_context(3).element_of_order(1) == 1
    f2 = field_context(2)
    w = f2.element_of_order(3)
    assert f2.add(f2.add(f2.mul(w, w), w), 1) == 0  # w^2 + w + 1 = 0
    f4 = field_context(4)
    eps = f4.element_of_order(5)
    assert eps != 1
    assert f4.pow(eps, 5) == 1
    # any order-5 element is a root of 1 + x + x^2 + x^3 + x^4
    acc = 0
    for k in range(5):
        acc ^= f4.pow(eps, k)
    assert acc == 0


def test_element_of_order_requires_divisibility():
    with pytest.raises(ValueError):
        field_context(3).element_of_order(5)  # 5 does not divide 7
    with pytest.raises(ValueError):
        field_context(1).element_of_order(3)  # 3 does not divide 1
    with pytest.raises(ValueError):
        field_context(2).element_of_order(5)  # order 5 needs 4 | m
