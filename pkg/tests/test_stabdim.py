"""Exact stabilizer dimensions and the defectiveness predicate."""

import random

import pytest

from zeropat.patterns import Pattern, delta, mu, ne, random_permutation
from zeropat.stabdim import (
    constraint_rows,
    float_system_rank,
    integer_rank,
    is_defective,
    stabilizer_dim,
    traceless_basis,
)


def rand_strict(rng, n):
    cells = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
    return Pattern(rng.sample(cells, mu(n)))


def test_basis_dimension():
    for n in (3, 4, 5):
        rng = random.Random(n)
        I = rand_strict(rng, n)
        assert len(traceless_basis(I, n)) == n * n - 1 - len(I)


def test_whole_algebra_for_empty_pattern():
    assert stabilizer_dim(Pattern(), 3) == 9


def test_triangular_pattern_has_torus_stabilizer():
    assert stabilizer_dim(ne(4), 4) == 4
    assert not is_defective(ne(4), 4)


def test_known_defective_representative():
    for n in (4, 5):
        I = Pattern([p for p in ne(n) if p != (1, 2)] + [(4, 3)])
        assert stabilizer_dim(I, n) > n
        assert is_defective(I, n)


def test_improper_pattern_rejected():
    with pytest.raises(ValueError):
        stabilizer_dim(delta(3), 3)


def test_torus_lower_bound():
    rng = random.Random(0)
    for n in (3, 4, 5):
        for _ in range(15):
            assert stabilizer_dim(rand_strict(rng, n), n) >= n


def test_invariance_under_relabeling_and_transpose():
    rng = random.Random(1)
    for n in (4, 5):
        for _ in range(15):
            I = rand_strict(rng, n)
            d = stabilizer_dim(I, n)
            p = random_permutation(rng, n)
            assert stabilizer_dim(I.apply_perm(p), n) == d
            assert stabilizer_dim(I.transpose(), n) == d


def test_exact_rank_matches_float_oracle():
    # same system, independent rank computations
    rng = random.Random(2)
    for n in (4, 5):
        for _ in range(100):
            I = rand_strict(rng, n)
            rows = constraint_rows(I, n)
            assert integer_rank(rows, n * n) == float_system_rank(I, n)


def test_integer_rank_small_matrices():
    assert integer_rank([(1, 0), (0, 1)], 2) == 2
    assert integer_rank([(1, 2), (2, 4)], 2) == 1
    assert integer_rank([], 3) == 0
    # regression: zero-multiplier rows must still be rescaled during the
    # fraction-free sweep, otherwise later divisions truncate
    m = [
        (2, 0, 1, 0),
        (0, 3, 0, 1),
        (0, 5, 0, 7),
        (3, 0, 5, 0),
    ]
    assert integer_rank(m, 4) == 4
