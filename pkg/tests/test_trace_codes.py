"""Code construction tests: Gray map, evaluation, theta, distributions, closures."""

import json
import pathlib
import random

import numpy as np
import pytest

from quintic_codes.quintic_ring import quintic_ring
from quintic_codes.trace_codes import (
    EnumerationBudgetError,
    classified_distribution,
    code_spec,
    codeword_lee_weight,
    enumerate_distribution,
    enumerate_weights,
    evaluate,
    evaluate_packed,
    generator_column_codes,
    generator_matrix,
    gray,
    gray_image,
    lee_weight,
    theoretical_distribution,
    theta,
    unit_permutation,
    weight_classes,
)

GOLDEN = pathlib.Path(__file__).parent / "golden"


def naive_codeword_weight(ring, a):
    """Definition-level oracle: multiply out every unit, trace, count bits."""
    total = 0
    for code in ring.units().tolist():
        total += sum(ring.trace(ring.mul(a, ring.unpack(code))))
    return total


# -- Gray map -------------------------------------------------------------------


def test_gray_map_values():
    assert gray((0, 0, 0, 0, 0)) == (0, 0, 0, 0, 0)
    assert gray((1, 1, 0, 0, 0)) == (1, 1, 0, 0, 0)
    assert gray((1, 1, 1, 1, 1)) == (1, 1, 1, 1, 1)


def test_gray_rejects_non_base_elements():
    with pytest.raises(ValueError):
        gray((2, 0, 0, 0, 0))


def test_lee_weight_values():
    assert lee_weight((0, 0, 0, 0, 0)) == 0
    assert lee_weight((0, 1, 0, 1, 0)) == 2
    assert lee_weight((1, 1, 1, 1, 1)) == 5


# -- code shape -------------------------------------------------------------------


@pytest.mark.parametrize(
    "m,L",
    [(1, 15), (2, 675), (3, 28665), (4, 759375)],
)
def test_code_spec_parameters(m, L):
    spec = code_spec(m)
    assert spec.L == L
    assert spec.s == 5 * L
    assert spec.dimension == 5 * m


# -- evaluation -------------------------------------------------------------------


def test_evaluate_zero_gives_zero_word():
    assert all(r == (0, 0, 0, 0, 0) for r in evaluate(2, (0, 0, 0, 0, 0)))


def test_evaluate_all_ones_m1():
    word = evaluate(1, (1, 1, 1, 1, 1))
    assert len(word) == 15
    assert all(r == (1, 1, 1, 1, 1) for r in word)
    assert sum(map(lee_weight, word)) == 75


def test_evaluate_linearity_random():
    ring = quintic_ring(2)
    rng = random.Random(2)
    for _ in range(25):
        a = ring.unpack(rng.randrange(ring.size))
        b = ring.unpack(rng.randrange(ring.size))
        left = evaluate(2, ring.add(a, b))
        right = [tuple(x ^ y for x, y in zip(u, w)) for u, w in zip(evaluate(2, a), evaluate(2, b))]
        assert left == right


def test_evaluate_packed_matches_evaluate():
    ring = quintic_ring(2)
    rng = random.Random(3)
    for _ in range(10):
        a = ring.unpack(rng.randrange(ring.size))
        packed = evaluate_packed(2, a)
        plain = evaluate(2, a)
        for code, r in zip(packed.tolist(), plain):
            assert tuple((code >> i) & 1 for i in range(5)) == r


def test_codeword_weight_values():
    assert codeword_lee_weight(1, (0, 0, 0, 0, 0)) == 0
    assert codeword_lee_weight(1, (1, 0, 0, 0, 0)) == 35
    ring3 = quintic_ring(3)
    some_unit = ring3.unpack(int(ring3.units()[0]))
    assert codeword_lee_weight(3, some_unit) == 71660


@pytest.mark.parametrize("m", [1, 2])
def test_codeword_weight_matches_naive_oracle(m):
    ring = quintic_ring(m)
    rng = random.Random(m)
    codes = range(ring.size) if m == 1 else [rng.randrange(ring.size) for _ in range(40)]
    for code in codes:
        a = ring.unpack(code)
        assert codeword_lee_weight(m, a) == naive_codeword_weight(ring, a)


def test_theta_values():
    spec1 = code_spec(1)
    assert theta(1, (0, 0, 0, 0, 0)) == spec1.s
    ring1 = quintic_ring(1)
    for code in ring1.units().tolist():
        assert theta(1, ring1.unpack(code)) == 5
    ring3 = quintic_ring(3)
    assert theta(3, ring3.unpack(int(ring3.units()[17]))) == 5
    ring2 = quintic_ring(2)
    for code in ring2.units()[:20].tolist():
        assert theta(2, ring2.unpack(code)) == -5


@pytest.mark.parametrize("m", [1, 2, 3])
def test_weight_theta_identity_sampled(m):
    ring = quintic_ring(m)
    spec = code_spec(m)
    rng = random.Random(40 + m)
    for _ in range(300):
        a = ring.unpack(rng.randrange(ring.size))
        assert 2 * codeword_lee_weight(m, a) == spec.s - theta(m, a)


# -- distributions -----------------------------------------------------------------


def test_enumerated_m1_against_definition_oracle():
    ring = quintic_ring(1)
    expected = {}
    for code in range(ring.size):
        w = naive_codeword_weight(ring, ring.unpack(code))
        expected[w] = expected.get(w, 0) + 1
    assert expected == {0: 1, 35: 15, 40: 15, 75: 1}
    assert enumerate_distribution(1).entries == expected


def test_enumerated_m2_matches_published_table():
    dist = enumerate_distribution(2)
    assert dist.entries == {0: 1, 1650: 90, 1680: 225, 1690: 675, 1800: 30, 2250: 3}


@pytest.mark.parametrize("m", [1, 2, 3])
def test_oracle_equality(m):
    assert enumerate_distribution(m).entries == theoretical_distribution(m).entries


@pytest.mark.parametrize("m", [1, 2, 3])
def test_golden_distributions(m):
    golden = json.loads((GOLDEN / f"distribution_m{m}.json").read_text())
    assert enumerate_distribution(m).to_json_dict() == golden


def test_theoretical_m4_totals():
    dist = theoretical_distribution(4)
    assert dist.total_codewords() == 1 << 20
    freqs = sorted(dist.entries.values())
    assert freqs == [1, 75, 2250, 33750, 253125, 759375]


@pytest.mark.parametrize("m", range(1, 13))
def test_theoretical_first_moment_all_supported_m(m):
    dist = theoretical_distribution(m)
    assert dist.first_moment() == dist.spec.s * (1 << (5 * m - 1))
    assert dist.total_codewords() == 1 << (5 * m)


def test_enumeration_budget_refusal():
    with pytest.raises(EnumerationBudgetError) as err:
        enumerate_distribution(4)
    assert "classified" in str(err.value)
    with pytest.raises(EnumerationBudgetError):
        enumerate_distribution(3, budget=1000)


def test_classified_m4_matches_theoretical():
    dist = classified_distribution(4, seed=0)
    assert dist.entries == theoretical_distribution(4).entries
    classes = {c["nonzeroComponents"]: c for c in dist.detail["classes"]}
    assert {k: c["size"] for k, c in classes.items()} == {
        0: 1, 1: 75, 2: 2250, 3: 33750, 4: 253125, 5: 759375,
    }
    assert classes[3]["weight"] == 1899000


def test_classified_requires_doubly_even():
    with pytest.raises(ValueError):
        classified_distribution(3)


def test_weight_classes_cover_message_space():
    for m in (1, 2, 3, 4, 5, 6):
        classes = weight_classes(m)
        assert sum(c.frequency for c in classes) == 1 << (5 * m)
        zero = [c for c in classes if c.weight == 0]
        assert len(zero) == 1 and zero[0].frequency == 1


@pytest.mark.parametrize("m", [1, 2])
def test_class_prediction_exhaustive_small(m):
    ring = quintic_ring(m)
    by_key = {c.key: c.weight for c in weight_classes(m)}
    W = enumerate_weights(m)
    for code in range(ring.size):
        profile = ring.unit_profile(ring.unpack(code))
        assert W[code] == by_key[profile.class_key]


# -- structural closures -------------------------------------------------------------


@pytest.mark.parametrize("m", [1, 2])
def test_regular_action_closure(m):
    ring = quintic_ring(m)
    rng = random.Random(m)
    messages = [ring.unpack(rng.randrange(ring.size)) for _ in range(3)]
    base = [evaluate_packed(m, a) for a in messages]
    for code in ring.units().tolist():
        u = ring.unpack(code)
        perm = unit_permutation(m, u)
        for a, ev_a in zip(messages, base):
            assert np.array_equal(evaluate_packed(m, ring.mul(a, u)), ev_a[perm])


@pytest.mark.parametrize("m", [1, 2])
def test_quasi_cyclic_closure(m):
    ring = quintic_ring(m)
    for code in range(ring.size):
        a = ring.unpack(code)
        blocks = evaluate_packed(m, a)
        rotated = (((blocks.astype(np.uint16) << 1) | (blocks >> 4)) & 31).astype(np.uint8)
        assert np.array_equal(rotated, evaluate_packed(m, ring.mul(ring.v, a)))


def test_unit_permutation_rejects_non_units():
    with pytest.raises(ValueError):
        unit_permutation(2, (1, 1, 0, 0, 0))


# -- generator matrix ------------------------------------------------------------------


def rank_f2(matrix):
    rows = [int("".join(map(str, row)), 2) for row in matrix.tolist()]
    pivots = {}
    for x in rows:
        while x:
            h = x.bit_length() - 1
            if h not in pivots:
                pivots[h] = x
                break
            x ^= pivots[h]
    return len(pivots)


@pytest.mark.parametrize("m,shape", [(1, (5, 75)), (2, (10, 3375))])
def test_generator_matrix_shape_and_rank(m, shape):
    G = generator_matrix(m)
    assert G.shape == shape
    assert rank_f2(G) == shape[0]


def test_generator_rows_are_codewords():
    weights = set(enumerate_distribution(1).entries)
    G = generator_matrix(1)
    for row in G:
        assert int(row.sum()) in weights


def test_generator_encodes_messages():
    ring = quintic_ring(2)
    G = generator_matrix(2)
    rng = random.Random(9)
    for _ in range(10):
        code = rng.randrange(ring.size)
        bits = np.array([(code >> b) & 1 for b in range(10)], dtype=np.uint8)
        word = (bits.astype(np.int32) @ G.astype(np.int32)) & 1
        assert np.array_equal(word.astype(np.uint8), gray_image(2, ring.unpack(code)))


def test_column_codes_match_matrix():
    G = generator_matrix(1)
    codes = generator_column_codes(1)
    for j in range(G.shape[1]):
        expected = sum(int(G[b, j]) << b for b in range(G.shape[0]))
        assert int(codes[j]) == expected
