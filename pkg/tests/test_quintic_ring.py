"""Ring structure tests: arithmetic, trace, units, profiles, idempotents, CRT."""

import random

import numpy as np
import pytest

from quintic_codes.quintic_ring import ParityClass, parity_class_of, quintic_ring


def naive_is_unit(ring, a):
    """Independent oracle: search the whole ring for a multiplicative inverse."""
    for code in range(ring.size):
        if ring.mul(a, ring.unpack(code)) == ring.one:
            return True
    return False


def test_parity_classes():
    assert parity_class_of(1) is ParityClass.ODD
    assert parity_class_of(3) is ParityClass.ODD
    assert parity_class_of(2) is ParityClass.SINGLY_EVEN
    assert parity_class_of(6) is ParityClass.SINGLY_EVEN
    assert parity_class_of(4) is ParityClass.DOUBLY_EVEN
    assert parity_class_of(12) is ParityClass.DOUBLY_EVEN


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_v_multiplication_rotates(m):
    ring = quintic_ring(m)
    rng = random.Random(m)
    for _ in range(50):
        a = ring.unpack(rng.randrange(ring.size))
        assert ring.mul(ring.v, a) == (a[4], a[0], a[1], a[2], a[3])


def test_v_times_v4_is_one():
    ring = quintic_ring(3)
    v4 = (0, 0, 0, 0, 1)
    assert ring.mul(ring.v, v4) == ring.one


def test_annihilator_product_vanishes():
    ring = quintic_ring(2)
    one_plus_v = (1, 1, 0, 0, 0)
    all_ones = (1, 1, 1, 1, 1)
    assert ring.mul(one_plus_v, all_ones) == ring.zero


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_ring_axioms_random(m):
    ring = quintic_ring(m)
    rng = random.Random(100 + m)
    for _ in range(100):
        a, b, c = (ring.unpack(rng.randrange(ring.size)) for _ in range(3))
        assert ring.mul(a, b) == ring.mul(b, a)
        assert ring.mul(ring.mul(a, b), c) == ring.mul(a, ring.mul(b, c))
        assert ring.mul(a, ring.add(b, c)) == ring.add(ring.mul(a, b), ring.mul(a, c))
        assert ring.mul(a, ring.one) == a


def test_trace_is_identity_at_m1():
    ring = quintic_ring(1)
    for code in range(ring.size):
        a = ring.unpack(code)
        assert ring.trace(a) == a


@pytest.mark.parametrize("m", [2, 3, 4])
def test_trace_additive_and_base_linear(m):
    ring = quintic_ring(m)
    rng = random.Random(m)
    for _ in range(100):
        a = ring.unpack(rng.randrange(ring.size))
        b = ring.unpack(rng.randrange(ring.size))
        left = ring.trace(ring.add(a, b))
        right = tuple(x ^ y for x, y in zip(ring.trace(a), ring.trace(b)))
        assert left == right
        # base-ring scalars (0/1 coefficient elements) pass through the trace
        r = tuple(rng.randrange(2) for _ in range(5))
        base = quintic_ring(1)
        assert ring.trace(ring.mul(r, a)) == base.mul(r, ring.trace(a))


@pytest.mark.parametrize("m", [1, 2, 3])
def test_trace_pairing_nondegenerate_exhaustive(m):
    # only x = 0 has Tr(a*x) = 0 for every a
    ring = quintic_ring(m)
    zero = ring.zero
    for code in range(1, ring.size):
        x = ring.unpack(code)
        witness = any(
            ring.trace(ring.mul(ring.unpack(a), x)) != zero for a in range(ring.size)
        )
        assert witness, f"x={x} is orthogonal to everything"


def test_is_unit_basics():
    ring = quintic_ring(2)
    assert ring.is_unit(ring.v)
    assert not ring.is_unit((1, 1, 0, 0, 0))
    assert not ring.is_unit(ring.zero)
    assert ring.is_unit(ring.one)


def test_unit_count_m1_is_15():
    ring = quintic_ring(1)
    count = sum(ring.is_unit(ring.unpack(c)) for c in range(ring.size))
    assert count == 15


@pytest.mark.parametrize("m,expected", [(1, 15), (2, 675), (3, 28665), (4, 759375)])
def test_unit_counts_match_closed_form(m, expected):
    ring = quintic_ring(m)
    assert ring.unit_count() == expected
    assert len(ring.units()) == expected


@pytest.mark.parametrize("m", [1, 2])
def test_units_against_inverse_search_oracle(m):
    ring = quintic_ring(m)
    expected = [c for c in range(ring.size) if naive_is_unit(ring, ring.unpack(c))]
    assert ring.units().tolist() == expected


def test_canonical_order_is_ascending_packed():
    units = quintic_ring(2).units()
    assert np.all(units[1:] > units[:-1])


@pytest.mark.parametrize("m", [1, 2, 3])
def test_unit_profile_agrees_with_gcd_exhaustive(m):
    ring = quintic_ring(m)
    for code in range(ring.size):
        a = ring.unpack(code)
        assert ring.unit_profile(a).is_unit == ring.is_unit(a)


def test_unit_profile_agrees_with_gcd_sampled_m4():
    ring = quintic_ring(4)
    rng = np.random.default_rng(4)
    codes = rng.integers(0, ring.size, size=1_000_000, dtype=np.uint32)
    by_profile = ring.class_ids_bulk(codes) == 5
    for code, flag in zip(codes.tolist(), by_profile.tolist()):
        assert ring.is_unit(ring.unpack(code)) == bool(flag)


@pytest.mark.parametrize("m", [1, 2])
def test_units_form_a_group(m):
    ring = quintic_ring(m)
    units = [ring.unpack(int(c)) for c in ring.units()]
    unit_set = {ring.pack(u) for u in units}
    rng = random.Random(m)
    for _ in range(200):
        u, w = rng.choice(units), rng.choice(units)
        assert ring.pack(ring.mul(u, w)) in unit_set
    for u in units:
        assert any(ring.mul(u, w) == ring.one for w in units)


def test_profile_zero_element():
    ring = quintic_ring(3)
    profile = ring.unit_profile(ring.zero)
    assert profile.values == (0, 0, 0, 0, 0)
    assert not any(profile.component_pattern)
    assert not profile.is_unit


def test_profile_scaled_all_ones_odd():
    # alpha * (1+v+v^2+v^3+v^4): point value nonzero, quartic block zero
    ring = quintic_ring(3)
    for alpha in range(1, ring.q):
        a = tuple([alpha] * 5)
        profile = ring.unit_profile(a)
        assert profile.component_pattern == (True, False)
        assert profile.values[0] == alpha
        assert profile.values[1:] == (0, 0, 0, 0)


def test_profile_single_idempotent_component():
    ring = quintic_ring(4)
    basis = ring.idempotent_basis()
    for i in range(5):
        a = ring.scalar_mul(3, basis.etas[i])
        profile = ring.unit_profile(a)
        assert profile.nonzero_components == 1
        assert profile.component_pattern[i]


def test_idempotent_invariants():
    ring = quintic_ring(4)
    basis = ring.idempotent_basis()
    assert basis.etas[0] == (1, 1, 1, 1, 1)
    total = ring.zero
    for i, eta in enumerate(basis.etas):
        assert ring.mul(eta, eta) == eta
        total = ring.add(total, eta)
        for j in range(i + 1, 5):
            assert ring.mul(eta, basis.etas[j]) == ring.zero
    assert total == ring.one


def test_idempotents_from_independent_construction():
    ring = quintic_ring(4)
    f = ring.field
    eps = f.element_of_order(5)
    basis = ring.idempotent_basis()
    assert basis.epsilon == eps
    for t in range(5):
        expected = tuple(f.pow(eps, (-t * k) % 5) for k in range(5))
        assert basis.etas[t] == expected


def test_idempotents_require_doubly_even():
    with pytest.raises(ValueError):
        quintic_ring(3).idempotent_basis()
    with pytest.raises(ValueError):
        quintic_ring(2).crt_decompose((0, 0, 0, 0, 0))


def test_crt_decompose_of_one():
    ring = quintic_ring(4)
    assert ring.crt_decompose(ring.one) == (1, 1, 1, 1, 1)


def test_crt_roundtrip_sampled_scalar():
    ring = quintic_ring(4)
    rng = random.Random(11)
    for _ in range(300):
        a = ring.unpack(rng.randrange(ring.size))
        comps = ring.crt_decompose(a)
        assert ring.crt_recompose(comps) == a
        # decomposition is the evaluation at the five fifth roots of unity
        back = ring.zero
        for r, eta in zip(comps, ring.idempotent_basis().etas):
            back = ring.add(back, ring.scalar_mul(r, eta))
        assert back == a


def test_crt_roundtrip_exhaustive_bulk():
    ring = quintic_ring(4)
    codes = np.arange(ring.size, dtype=np.uint32)
    comps = ring.components_bulk(codes)
    assert np.array_equal(ring.recompose_bulk(comps), codes)


def test_crt_unit_iff_all_components_nonzero_sampled():
    ring = quintic_ring(4)
    rng = random.Random(5)
    for _ in range(3000):
        a = ring.unpack(rng.randrange(ring.size))
        comps = ring.crt_decompose(a)
        assert ring.is_unit(a) == all(c != 0 for c in comps)


def test_pack_unpack_hex_roundtrip():
    for m in (1, 2, 3, 4):
        ring = quintic_ring(m)
        rng = random.Random(m)
        for _ in range(50):
            code = rng.randrange(ring.size)
            a = ring.unpack(code)
            assert ring.pack(a) == code
            assert ring.from_hex(ring.to_hex(a)) == a


def test_packed_layout_is_little_endian_by_coefficient():
    ring = quintic_ring(2)
    assert ring.pack((1, 0, 0, 0, 0)) == 1
    assert ring.pack((0, 1, 0, 0, 0)) == 1 << 2
    assert ring.pack((0, 0, 0, 0, 2)) == 2 << 8
    assert ring.to_hex((0, 1, 0, 0, 0)) == "004"


def test_unit_mask_guard():
    with pytest.raises(ValueError):
        quintic_ring(5).units()


def test_iter_units_matches_materialized_m1():
    ring = quintic_ring(1)
    assert list(ring.iter_units()) == ring.units().tolist()
