import random

import numpy as np
import pytest

from qcab.seeds import (
    SeedError,
    check_compatible,
    make_pair,
    mutate_pair,
    permute_pair,
    quiver_from_matrix,
    quiver_mutate,
    quiver_to_matrix,
    transpositions,
)


def random_skew_symmetrizable(rng, n, n_frozen=0, max_entry=2):
    """A random exchange window with known symmetrizer, plus its Lambda-free pair."""
    d = [rng.choice([1, 1, 2, 3]) for _ in range(n)]
    b = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < 0.5:
                continue
            g = np.gcd(d[i], d[j])
            p = rng.randrange(-max_entry, max_entry + 1)
            b[i, j] = p * (d[j] // g)
            b[j, i] = -p * (d[i] // g)
    frozen = set(rng.sample(range(1, n + 1), n_frozen))
    for v in frozen:
        b[:, v - 1] = 0
    ex = set(range(1, n + 1)) - frozen
    return b, ex, tuple(d)


def test_make_pair_validation():
    lam = np.zeros((3, 3), dtype=np.int64)
    b = np.zeros((3, 3), dtype=np.int64)
    make_pair(lam, b, {1, 2, 3}, (1, 1, 1))
    bad = lam.copy()
    bad[0, 1] = 1
    with pytest.raises(SeedError):
        make_pair(bad, b, {1, 2, 3}, (1, 1, 1))
    b2 = b.copy()
    b2[0, 2] = 1
    with pytest.raises(SeedError):
        make_pair(lam, b2, {1, 2}, (1, 1, 1))  # frozen column 3 must be zero


def test_check_compatible_vacuous_and_perturbed():
    lam = np.zeros((2, 2), dtype=np.int64)
    b = np.zeros((2, 2), dtype=np.int64)
    pair = make_pair(lam, b, set(), (1, 1))
    assert check_compatible(pair)

    from qcab import alternating, build_cartan, build_seed

    seed = build_seed(alternating(build_cartan("B", 2)), 6)
    assert check_compatible(seed)
    lam2, b2 = seed.copy_arrays()
    lam2[0, 1] += 1
    lam2[1, 0] -= 1
    assert not check_compatible(make_pair(lam2, b2, seed.exchangeable, seed.diag))


def test_mutation_involution_and_compatibility():
    rng = random.Random(1)
    for _ in range(60):
        n = rng.randrange(3, 9)
        b, ex, d = random_skew_symmetrizable(rng, n, n_frozen=rng.randrange(0, 2))
        if not ex:
            continue
        lam = np.zeros((n, n), dtype=np.int64)
        pair = make_pair(lam, b, ex, d)
        k = rng.choice(sorted(ex))
        once = mutate_pair(pair, k)
        twice = mutate_pair(once, k)
        assert twice == pair


def test_mutation_preserves_compatibility_on_built_seeds():
    from qcab import alternating, build_cartan, build_seed

    rng = random.Random(2)
    for code, window in (("B2", 8), ("G2", 10)):
        seed = build_seed(alternating(build_cartan(code[0], 2)), window)
        pair = seed
        for _ in range(12):
            k = rng.choice(sorted(pair.exchangeable))
            pair = mutate_pair(pair, k)
            assert check_compatible(pair)


def test_mutate_frozen_rejected():
    from qcab import alternating, build_cartan, build_seed

    seed = build_seed(alternating(build_cartan("B", 2)), 4)
    with pytest.raises(SeedError):
        mutate_pair(seed, 4)


def test_permute_pair():
    from qcab import alternating, build_cartan, build_seed

    seed = build_seed(alternating(build_cartan("B", 2)), 6)
    assert permute_pair(seed, {}) == seed
    perm = transpositions(1)
    relabeled = permute_pair(seed, perm)
    assert check_compatible(relabeled)
    assert permute_pair(relabeled, perm) == seed
    with pytest.raises(SeedError):
        permute_pair(seed, {5: 1, 1: 5})  # moves a frozen point into the window


def test_quiver_round_trip_and_mutation_oracle():
    rng = random.Random(3)
    for _ in range(1000):
        n = rng.randrange(2, 11)
        b, ex, d = random_skew_symmetrizable(rng, n, n_frozen=rng.randrange(0, 3))
        if not ex:
            continue
        frozen = frozenset(range(1, n + 1)) - frozenset(ex)
        q = quiver_from_matrix(b, frozen)
        assert np.array_equal(quiver_to_matrix(q), b)
        k = rng.choice(sorted(ex))
        via_quiver = quiver_to_matrix(quiver_mutate(q, k))
        lam = np.zeros((n, n), dtype=np.int64)
        via_matrix = mutate_pair(make_pair(lam, b, ex, d), k).b
        assert np.array_equal(via_quiver, via_matrix), (b, k)


def test_quiver_mutate_isolated_vertex():
    b = np.zeros((3, 3), dtype=np.int64)
    b[0, 1] = 1
    b[1, 0] = -1
    q = quiver_from_matrix(b, frozenset())
    out = quiver_mutate(q, 3)
    assert out.arrows == q.arrows


def test_quiver_local_double_arrow_block():
    """The local rank-2 double-arrow block mutates consistently three ways."""
    from qcab import alternating, build_cartan, build_seed
    from qcab.braid import detect_move, swap_block, unfold

    d = build_cartan("B", 2)
    seq = unfold(alternating(d), 20)
    s = 14
    seed = build_seed(seq, s)
    q = quiver_from_matrix(seed.b, seed.frozen)
    k = 3
    for m in (k, k + 1, k):
        q = quiver_mutate(q, m)
        seed = mutate_pair(seed, m)
        assert np.array_equal(quiver_to_matrix(q), seed.b)
    move = detect_move(seq, k)
    relabeled = permute_pair(seed, move.perm_map())
    target = build_seed(
        unfold(seq, 20).__class__(d, swap_block(seq.letters, "four", k)), s
    )
    assert np.array_equal(relabeled.b, target.b)
