import math
from collections import defaultdict
from itertools import combinations, permutations

import numpy as np
import pytest

from blockperm.block import (
    NablaLabel,
    ReedSolomonSet,
    encode_systematic,
    extend,
    hamming_distance,
    hamming_set,
    label_rank,
    nabla,
    partition_blocks,
    project,
    rs_auxiliary_set,
    sample_aux_pairs,
    sample_systematic_pairs,
    systematic_encoder,
    verify_pair,
)
from blockperm.errors import ParameterError, SizeMismatch
from blockperm.perm import CyclicCoset, compose, d_block, embed, inverse, omega, power

from oracles import min_weight_rs


def rand_perm(rng, n):
    return tuple(int(v) + 1 for v in rng.permutation(n))


# -- nabla partition ---------------------------------------------------------------

def test_nabla_slot_is_position_of_one():
    rng = np.random.default_rng(0)
    for _ in range(100):
        sigma = rand_perm(rng, 9)
        assert nabla(sigma, 9, 4).slot == inverse(sigma)[0]


def test_nabla_across_rotations():
    rng = np.random.default_rng(1)
    for _ in range(30):
        sigma = rand_perm(rng, 7)
        base = nabla(sigma, 7, 4)
        for k in range(1, 7):
            other = nabla(compose(sigma, power(omega(7), k)), 7, 4)
            assert other.key == base.key and other.slot != base.slot


def test_nabla_size_mismatch():
    with pytest.raises(SizeMismatch):
        nabla((1, 2, 3, 4), 5, 4)


@pytest.fixture(scope="module")
def classes_6_4():
    return partition_blocks(6, 4)


def test_partition_covers_s6(classes_6_4):
    members = [m for book in classes_6_4.values() for m in book.members]
    assert len(members) == 720 == len(set(members))
    assert set(members) == set(permutations(range(1, 7)))
    assert len(classes_6_4) <= 6 * 7 ** 3
    best = max(len(b) for b in classes_6_4.values())
    assert best >= math.ceil(math.factorial(5) / 7 ** 3)


def test_partition_classes_have_block_distance_4(classes_6_4):
    for label, book in classes_6_4.items():
        assert book.metric == "block" and book.d == 4
        for a, b in combinations(book.members, 2):
            assert d_block(a, b) >= 4
        assert all(nabla(m, 6, 4) == label for m in book.members)


def test_partition_workers_invariant():
    assert partition_blocks(6, 4, workers=1) == partition_blocks(6, 4, workers=2)


# -- extension ---------------------------------------------------------------------

def test_extend_worked_example():
    sigma = (3, 2, 5, 4, 1, 8, 7, 6)
    assert extend(sigma, (8, 2, 4, 4, 4)) == (3, 2, 10, 5, 4, 13, 12, 11, 1, 8, 9, 7, 6)
    assert extend(sigma, ()) == sigma
    assert extend((1, 2, 3), (3,)) == (1, 2, 3, 4)
    with pytest.raises(ParameterError, match="position 2"):
        extend((1, 2, 3), (1, 4))


def test_project_recovers():
    sigma = (3, 2, 5, 4, 1, 8, 7, 6)
    assert project(extend(sigma, (8, 2, 4, 4, 4)), 8) == sigma


def test_hamming_set_examples():
    assert hamming_set((8, 2, 4, 4, 4), (8, 2, 4, 4, 4)) == frozenset()
    assert hamming_set((8, 2, 4, 4, 4), (8, 2, 4, 5, 4)) == {4}
    assert hamming_set((1, 2, 1), (2, 1, 2)) == {1, 2}
    assert hamming_distance((1, 2, 1), (2, 1, 2)) == 3
    with pytest.raises(SizeMismatch):
        hamming_set((1,), (1, 2))


@pytest.mark.parametrize("n", range(5, 10))
def test_extension_preserves_distance(n):
    rng = np.random.default_rng(100 + n)
    for k in range(1, 7):
        for _ in range(10_000 // 6):
            s, t = rand_perm(rng, n), rand_perm(rng, n)
            seq = tuple(int(v) + 1 for v in rng.integers(0, n, size=k))
            assert d_block(extend(s, seq), extend(t, seq)) == d_block(s, t)


@pytest.mark.parametrize("n", range(5, 10))
def test_extension_distance_at_least_hamming_set(n):
    rng = np.random.default_rng(200 + n)
    for k in range(1, 7):
        for _ in range(10_000 // 6):
            s, t = rand_perm(rng, n), rand_perm(rng, n)
            s1 = tuple(int(v) + 1 for v in rng.integers(0, n, size=k))
            s2 = tuple(int(v) + 1 for v in rng.integers(0, n, size=k))
            assert d_block(extend(s, s1), extend(t, s2)) >= len(hamming_set(s1, s2))


# -- Reed-Solomon sets ---------------------------------------------------------------

def test_scaled_rs_instance_min_weight():
    assert min_weight_rs(7, 7, 4) == 4
    rs = ReedSolomonSet(7, 7, 4)
    assert rs.designed_distance == 4
    zero = rs.member(0)
    assert min(hamming_distance(zero, rs.member(t)) for t in range(1, rs.size)) == 4


def test_aux_set_basics():
    aux = rs_auxiliary_set(24, 4)
    assert (aux.q, aux.p, aux.length, aux.dimension) == (13, 29, 11, 8)
    assert aux.member(0) == (1,) * 11
    assert aux.member(1) == (2,) * 11
    assert all(1 <= v <= aux.q for v in aux.member(123456))
    with pytest.raises(ParameterError):
        aux.member(aux.size)


@pytest.mark.parametrize("n,d,match", [
    (11, 4, "n >= 12"), (24, 3, "d >= 4"), (30, 6, "n >= 6d"),
])
def test_aux_set_hypotheses(n, d, match):
    with pytest.raises(ParameterError, match=match):
        rs_auxiliary_set(n, d)


def test_aux_sampled_hamming_distance():
    report = sample_aux_pairs(24, 4, 100_000, seed=7)
    assert report["violations"] == 0 and report["min_hamming"] >= 4


def test_aux_hamming_set_can_be_small():
    # under set semantics two members can share too few distinct disagreeing values
    aux = rs_auxiliary_set(24, 4)
    assert len(hamming_set(aux.member(0), aux.member(1))) == 1
    assert hamming_distance(aux.member(0), aux.member(1)) == 11


def test_label_rank_injective():
    n, d = 24, 4
    aux = rs_auxiliary_set(n, d)
    p = aux.p
    assert n * p ** (d - 1) <= aux.q ** (2 * d)
    rng = np.random.default_rng(3)
    labels = {NablaLabel(tuple(int(v) for v in rng.integers(0, p, size=d - 1)),
                         int(rng.integers(1, n + 1))) for _ in range(100_000)}
    ranks = {label_rank(lab, n, p) for lab in labels}
    assert len(ranks) == len(labels)
    assert max(ranks) < n * p ** (d - 1)


# -- systematic code -------------------------------------------------------------------

def test_encode_projection_and_length():
    rng = np.random.default_rng(4)
    enc = systematic_encoder(24, 4)
    for _ in range(50):
        sigma = rand_perm(rng, 24)
        word = encode_systematic(sigma, 24, 4)
        assert len(word) == enc.length == 35
        assert sorted(word) == list(range(1, 36))
        assert project(word, 24) == sigma
    with pytest.raises(SizeMismatch):
        encode_systematic((1, 2, 3), 24, 4)


def test_same_label_encodings():
    rng = np.random.default_rng(5)
    buckets = defaultdict(list)
    for _ in range(30_000):
        sigma = rand_perm(rng, 24)
        buckets[nabla(sigma, 24, 4)].append(sigma)
    pairs = 0
    for members in buckets.values():
        for a, b in combinations(members, 2):
            wa, wb = encode_systematic(a, 24, 4), encode_systematic(b, 24, 4)
            assert d_block(wa, wb) == d_block(a, b) >= 4
            pairs += 1
    assert pairs > 100


def test_random_encoded_pairs():
    report = sample_systematic_pairs(24, 4, 5_000, seed=11)
    assert report["violations"] == 0 and report["projection_failures"] == 0
    assert report["min_distance"] >= 4


def test_sampling_independent_of_workers():
    a = sample_systematic_pairs(24, 4, 6_000, seed=2, workers=1)
    b = sample_systematic_pairs(24, 4, 6_000, seed=2, workers=3)
    assert a == b
    assert sample_aux_pairs(24, 4, 12_000, 2, 1) == sample_aux_pairs(24, 4, 12_000, 2, 4)


# A zero-key coset where slot changes only move the constant extension value.
# Placing 1 at slots 12 and 13 gives labels of rank 11 and 12, i.e. the
# extensions (12,)*11 and (13,)*11, and the encodings end up at distance 3.
ZERO_KEY_COSET = (1, 11, 24, 17, 9, 8, 14, 5, 6, 2, 10, 12, 4, 21, 7, 19, 3, 23, 18, 22, 16, 15, 13, 20)


def test_known_distance_three_pair():
    enc = systematic_encoder(24, 4)
    coset = CyclicCoset(ZERO_KEY_COSET)
    a, b = embed(coset, 12), embed(coset, 13)
    assert enc.label(a) == NablaLabel((0, 0, 0), 12)
    assert enc.extension(a) == (12,) * 11 and enc.extension(b) == (13,) * 11
    report = verify_pair(enc.encode(a), enc.encode(b), 4)
    assert report.distance == 3 and not report.passed


def test_verify_pair_examples():
    word = (3, 2, 10, 5, 4, 13, 12, 11, 1, 8, 9, 7, 6)
    assert verify_pair(word, word, 4).distance == 0
    assert not verify_pair(word, word, 4).passed
    swapped = word[:3] + (word[4], word[3]) + word[5:]
    assert verify_pair(word, swapped, 1).passed
    with pytest.raises(SizeMismatch):
        verify_pair(word, word[:-1], 4)
