"""Independent brute-force oracles used only by the tests."""

import itertools
import math

import numpy as np


def naive_permanent(a):
    """Permutation-sum permanent via plain Python loops."""
    a = np.asarray(a, dtype=complex)
    n = a.shape[0]
    total = 0.0 + 0.0j
    for perm in itertools.permutations(range(n)):
        prod = 1.0 + 0.0j
        for row, col in enumerate(perm):
            prod *= a[row, col]
        total += prod
    return total


def _parity(perm):
    sign = 1
    seen = [False] * len(perm)
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def naive_determinant(a):
    """Signed permutation-sum determinant via plain Python loops."""
    a = np.asarray(a, dtype=complex)
    n = a.shape[0]
    total = 0.0 + 0.0j
    for perm in itertools.permutations(range(n)):
        prod = complex(_parity(perm))
        for row, col in enumerate(perm):
            prod *= a[row, col]
        total += prod
    return total


def expand_pattern(a, row_occ, col_occ):
    """Row/column repetition by occupation, written independently."""
    a = np.asarray(a, dtype=complex)
    rows = [s for s, c in enumerate(row_occ) for _ in range(c)]
    cols = [s for s, c in enumerate(col_occ) for _ in range(c)]
    out = np.zeros((len(rows), len(cols)), dtype=complex)
    for ri, r in enumerate(rows):
        for ci, c in enumerate(cols):
            out[ri, ci] = a[r, c]
    return out


def fact_prod(occ):
    result = 1
    for c in occ:
        result *= math.factorial(c)
    return result


def naive_boson(u, input_occ, output_occ):
    if sum(input_occ) != sum(output_occ):
        return 0.0
    sub = expand_pattern(u, output_occ, input_occ)
    amp = naive_permanent(sub)
    return abs(amp) ** 2 / (fact_prod(output_occ) * fact_prod(input_occ))


def naive_fermion(u, input_occ, output_occ):
    if any(c > 1 for c in input_occ) or any(c > 1 for c in output_occ):
        return 0.0
    if sum(input_occ) != sum(output_occ):
        return 0.0
    sub = expand_pattern(u, output_occ, input_occ)
    return abs(naive_determinant(sub)) ** 2


def naive_classical(u, input_occ, output_occ):
    if sum(input_occ) != sum(output_occ):
        return 0.0
    weights = np.abs(np.asarray(u, dtype=complex)) ** 2
    sub = expand_pattern(weights, output_occ, input_occ)
    return naive_permanent(sub).real / fact_prod(output_occ)


def random_disk_matrix(rng, n):
    """Complex matrix with entries uniform in the unit disk."""
    radius = np.sqrt(rng.uniform(0.0, 1.0, (n, n)))
    angle = rng.uniform(0.0, 2.0 * np.pi, (n, n))
    return radius * np.exp(1j * angle)


def random_pattern(rng, n_modes, total):
    """Random occupation tuple with the given total."""
    counts = [0] * n_modes
    for _ in range(total):
        counts[int(rng.integers(0, n_modes))] += 1
    return tuple(counts)
