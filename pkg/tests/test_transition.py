import math

import numpy as np
import pytest

from interfere.errors import BudgetExceededError, DimensionMismatchError
from interfere.matrixcore import (
    balanced_beamsplitter,
    fourier_matrix,
    haar_random_unitary,
    permutation_matrix,
    validate_unitary,
)
from interfere.transition import (
    ProbabilityCache,
    boson_prob,
    classical_prob,
    fermion_prob,
    output_distribution,
    transition_triple,
)

from helpers import naive_boson, naive_classical, naive_fermion


BS = balanced_beamsplitter()
F3 = fourier_matrix(3)


def test_hong_ou_mandel_values():
    triple = transition_triple(BS, (1, 1), (1, 1))
    assert abs(triple.boson - 0.0) <= 1e-12
    assert abs(triple.fermion - 1.0) <= 1e-12
    assert abs(triple.classical - 0.5) <= 1e-12


def test_fourier3_three_particle_values():
    assert abs(boson_prob(F3, (1, 1, 1), (1, 1, 1)) - 1.0 / 3.0) <= 1e-12
    assert abs(fermion_prob(F3, (1, 1, 1), (1, 1, 1)) - 1.0) <= 1e-12


def test_fourier3_classical_three_particle():
    # brute force: permanent of the all-1/3 matrix over 3! routings
    expected = naive_classical(F3.matrix, (1, 1, 1), (1, 1, 1))
    assert expected == pytest.approx(2.0 / 9.0, abs=1e-15)
    assert abs(classical_prob(F3, (1, 1, 1), (1, 1, 1)) - expected) <= 1e-12


def test_fourier3_two_particle_values():
    assert abs(boson_prob(F3, (1, 1, 0), (1, 1, 0)) - 1.0 / 9.0) <= 1e-12
    assert abs(fermion_prob(F3, (1, 1, 0), (1, 1, 0)) - 1.0 / 3.0) <= 1e-12


def test_beamsplitter_bunched_input():
    assert abs(boson_prob(BS, (2, 0), (1, 1)) - 0.5) <= 1e-12
    assert fermion_prob(BS, (2, 0), (1, 1)) == 0.0


def test_vacuum_transition():
    triple = transition_triple(BS, (0, 0), (0, 0))
    assert triple == (1.0, 1.0, 1.0)


def test_particle_number_mismatch_short_circuits():
    # 25 particles would blow the permanent cap if a kernel ran
    u = validate_unitary(np.eye(2))
    assert boson_prob(u, (25, 0), (0, 0)) == 0.0
    assert fermion_prob(u, (1, 0), (1, 1)) == 0.0
    assert classical_prob(u, (25, 0), (0, 0)) == 0.0


def test_fermion_double_occupation_is_zero():
    assert fermion_prob(BS, (2, 0), (2, 0)) == 0.0
    assert fermion_prob(F3, (1, 1, 0), (0, 2, 0)) == 0.0


def test_single_particle_statistics_agree():
    for seed in range(4):
        u = haar_random_unitary(4, seed)
        for a in range(4):
            for b in range(4):
                i = tuple(1 if s == a else 0 for s in range(4))
                n = tuple(1 if s == b else 0 for s in range(4))
                expected = abs(u.matrix[b, a]) ** 2
                assert abs(boson_prob(u, i, n) - expected) <= 1e-12
                assert abs(fermion_prob(u, i, n) - expected) <= 1e-12
                assert abs(classical_prob(u, i, n) - expected) <= 1e-12


def test_against_brute_force_oracles():
    rng = np.random.default_rng(123)
    for seed in range(3):
        u = haar_random_unitary(3, 60 + seed)
        for _ in range(8):
            total = int(rng.integers(0, 4))
            i = tuple(rng.multinomial(total, np.ones(3) / 3))
            n = tuple(rng.multinomial(total, np.ones(3) / 3))
            assert boson_prob(u, i, n) == pytest.approx(
                naive_boson(u.matrix, i, n), abs=1e-12
            )
            assert fermion_prob(u, i, n) == pytest.approx(
                naive_fermion(u.matrix, i, n), abs=1e-12
            )
            assert classical_prob(u, i, n) == pytest.approx(
                naive_classical(u.matrix, i, n), abs=1e-12
            )


def test_swap_symmetry_with_adjoint():
    for seed in (2, 9):
        u = haar_random_unitary(4, seed)
        u_dag = validate_unitary(u.matrix.conj().T)
        pairs = [((1, 1, 0, 0), (0, 1, 1, 0)), ((2, 0, 1, 0), (1, 1, 1, 0))]
        for i, n in pairs:
            assert abs(
                boson_prob(u, i, n) - boson_prob(u_dag, n, i)
            ) <= 1e-12


def test_permutation_matrix_routes_deterministically():
    u = permutation_matrix([2, 3, 1])
    i = (2, 0, 1)
    routed = (1, 2, 0)
    for stats in ("boson", "classical"):
        dist = output_distribution(u, i, stats)
        assert dist[routed] == pytest.approx(1.0, abs=1e-12)
        total = sum(p for n, p in dist.items() if n != routed)
        assert abs(total) <= 1e-12


def test_output_distribution_beamsplitter():
    dist = output_distribution(BS, (2, 0), "boson")
    assert set(dist) == {(2, 0), (1, 1), (0, 2)}
    assert dist[(2, 0)] == pytest.approx(0.25, abs=1e-12)
    assert dist[(0, 2)] == pytest.approx(0.25, abs=1e-12)
    assert dist[(1, 1)] == pytest.approx(0.5, abs=1e-12)
    # cross-check each value against the permutation-sum oracle
    for n, p in dist.items():
        assert p == pytest.approx(naive_boson(BS.matrix, (2, 0), n), abs=1e-14)


def test_output_distribution_identity():
    u = validate_unitary(np.eye(3))
    for stats in ("boson", "fermion", "classical"):
        dist = output_distribution(u, (1, 0, 1), stats)
        assert dist[(1, 0, 1)] == pytest.approx(1.0, abs=1e-12)


def test_output_distribution_fourier_fermion():
    dist = output_distribution(F3, (1, 1, 1), "fermion")
    assert dist[(1, 1, 1)] == pytest.approx(1.0, abs=1e-12)
    for n, p in dist.items():
        if n != (1, 1, 1):
            assert abs(p) <= 1e-12


def test_output_distribution_normalization():
    for n_modes, seed, total in ((3, 1, 3), (4, 2, 4), (5, 3, 3)):
        u = haar_random_unitary(n_modes, seed)
        i = tuple(
            np.random.default_rng(seed).multinomial(total, np.ones(n_modes) / n_modes)
        )
        for stats in ("boson", "classical"):
            dist = output_distribution(u, i, stats)
            assert math.fsum(dist.values()) == pytest.approx(1.0, abs=1e-9)
        ones = tuple(1 if s < total else 0 for s in range(n_modes))
        dist = output_distribution(u, ones, "fermion")
        assert math.fsum(dist.values()) == pytest.approx(1.0, abs=1e-9)


def test_output_distribution_gates():
    with pytest.raises(BudgetExceededError):
        output_distribution(BS, (9, 0), "boson")
    with pytest.raises(ValueError):
        output_distribution(BS, (2, 0), "fermion")
    with pytest.raises(ValueError):
        output_distribution(BS, (1, 0), "thermal")
    with pytest.raises(DimensionMismatchError):
        boson_prob(BS, (1, 1, 0), (1, 1))


def test_probabilities_stay_in_unit_interval():
    for seed in range(3):
        u = haar_random_unitary(4, 40 + seed)
        rng = np.random.default_rng(seed)
        for _ in range(10):
            t = int(rng.integers(0, 5))
            i = tuple(rng.multinomial(t, np.ones(4) / 4))
            n = tuple(rng.multinomial(t, np.ones(4) / 4))
            for p in transition_triple(u, i, n):
                assert -1e-12 <= p <= 1.0 + 1e-12


def test_probability_cache_matches_direct_functions():
    u = haar_random_unitary(3, 15)
    cache = ProbabilityCache(u)
    pairs = [((1, 1, 0), (0, 1, 1)), ((2, 0, 0), (1, 1, 0)), ((0, 0, 0), (0, 0, 0))]
    for i, n in pairs:
        assert cache.boson(i, n) == boson_prob(u, i, n)
        assert cache.fermion(i, n) == fermion_prob(u, i, n)
        assert cache.classical(i, n) == classical_prob(u, i, n)
        # memo hit returns the identical value
        assert cache.boson(i, n) == cache.boson(i, n)
