"""Bosonic, fermionic, and classical transition probabilities.

For an interferometer U, the probability of sending the occupation
pattern ``i`` to the pattern ``n`` is |per(U_{n,i})|^2 / (n! i!) for
bosons, |det(U_{n,i})|^2 for fermions, and per(M_{n,i}) / n! for fully
distinguishable particles, where M holds the squared moduli of U and
U_{n,i} repeats rows/columns by occupation.  Probabilities vanish
whenever the particle totals differ; that case never touches a kernel.
"""

from __future__ import annotations

from typing import NamedTuple, Sequence

import numpy as np

from .combinat import (
    as_occupation,
    enumerate_occupations,
    factorial_product,
    support,
)
from .errors import BudgetExceededError, DimensionMismatchError
from .matrixcore import matrix_of
from .permdet import occupation_permanent

STATISTICS = ("boson", "fermion", "classical")
DEFAULT_PARTICLE_BUDGET = 8


class TransitionTriple(NamedTuple):
    """The (bosonic, fermionic, classical) probabilities of one transition."""

    boson: float
    fermion: float
    classical: float


def _pattern_pair(m: np.ndarray, input_occ, output_occ):
    i = as_occupation(input_occ)
    n = as_occupation(output_occ)
    if len(i) != m.shape[0] or len(n) != m.shape[0]:
        raise DimensionMismatchError(
            f"patterns of lengths {len(i)}/{len(n)} do not match the "
            f"{m.shape[0]}-mode interferometer"
        )
    return i, n


def _boson_value(m: np.ndarray, i, n) -> float:
    if sum(i) != sum(n):
        return 0.0
    amp = occupation_permanent(m, n, i).value
    return abs(amp) ** 2 / (factorial_product(n) * factorial_product(i))


def _fermion_value(m: np.ndarray, i, n) -> float:
    if any(c > 1 for c in i) or any(c > 1 for c in n):
        return 0.0
    if sum(i) != sum(n):
        return 0.0
    rows = [s - 1 for s in support(n)]
    cols = [s - 1 for s in support(i)]
    if not rows:
        return 1.0
    amp = np.linalg.det(m[np.ix_(rows, cols)])
    return float(abs(amp) ** 2)


def boson_prob(u, input_occ: Sequence[int], output_occ: Sequence[int]) -> float:
    """Bosonic transition probability |per(U_{n,i})|^2 / (n! i!)."""
    m = matrix_of(u)
    i, n = _pattern_pair(m, input_occ, output_occ)
    return _boson_value(m, i, n)


def fermion_prob(u, input_occ: Sequence[int], output_occ: Sequence[int]) -> float:
    """Fermionic transition probability |det(U_{n,i})|^2.

    Patterns with any occupation above one describe states that do not
    exist for fermions and get probability 0.
    """
    m = matrix_of(u)
    i, n = _pattern_pair(m, input_occ, output_occ)
    return _fermion_value(m, i, n)


def classical_prob(u, input_occ: Sequence[int], output_occ: Sequence[int]) -> float:
    """Transition probability for fully distinguishable particles.

    per(M_{n,i}) / n! with M the squared-modulus matrix.  The output
    factorial alone normalizes the distribution: summed over outputs it
    gives exactly 1, and it reproduces the independent-routing law
    C_n^(i) = sum_k C_k^(j) C_{n-k}^(i-j) for every input split.  On
    one-particle-per-mode patterns this coincides with dividing by both
    factorials.
    """
    m = matrix_of(u)
    i, n = _pattern_pair(m, input_occ, output_occ)
    return _classical_value(np.abs(m) ** 2, i, n)


def _classical_value(weights: np.ndarray, i, n) -> float:
    if sum(i) != sum(n):
        return 0.0
    value = occupation_permanent(weights, n, i).value.real
    return value / factorial_product(n)


def transition_triple(
    u, input_occ: Sequence[int], output_occ: Sequence[int]
) -> TransitionTriple:
    """All three statistics for one (input, output) pattern pair."""
    m = matrix_of(u)
    i, n = _pattern_pair(m, input_occ, output_occ)
    cache = ProbabilityCache(m)
    return TransitionTriple(cache.boson(i, n), cache.fermion(i, n), cache.classical(i, n))


def output_distribution(
    u,
    input_occ: Sequence[int],
    statistics: str,
    *,
    particle_budget: int = DEFAULT_PARTICLE_BUDGET,
    max_patterns: int = 10**6,
) -> dict[tuple[int, ...], float]:
    """Probabilities over every output pattern with the input's total.

    Keys are output occupation tuples in enumeration order; for each
    statistics the values sum to 1 up to numerical noise.  Fermionic
    inputs must be 0/1 patterns (anything else has no fermionic state to
    propagate).
    """
    if statistics not in STATISTICS:
        raise ValueError(f"statistics must be one of {STATISTICS}, got {statistics!r}")
    m = matrix_of(u)
    i = as_occupation(input_occ)
    if len(i) != m.shape[0]:
        raise DimensionMismatchError(
            f"pattern of length {len(i)} does not match the "
            f"{m.shape[0]}-mode interferometer"
        )
    total = sum(i)
    if total > particle_budget:
        raise BudgetExceededError(
            f"{total} particles exceed the budget of {particle_budget}"
        )
    if statistics == "fermion" and any(c > 1 for c in i):
        raise ValueError("fermionic input occupations must be 0 or 1")
    cache = ProbabilityCache(m)
    prob = {
        "boson": cache.boson,
        "fermion": cache.fermion,
        "classical": cache.classical,
    }[statistics]
    outputs = enumerate_occupations(len(i), total, max_patterns=max_patterns)
    return {n: prob(i, n) for n in outputs}


class ProbabilityCache:
    """Memoized transition values for one fixed matrix.

    Works for any square complex matrix; the cached quantities are the
    permanent/determinant ratios of the occupation submatrices, which
    are probabilities exactly when the matrix is unitary.  Patterns must
    be occupation tuples.
    """

    def __init__(self, matrix):
        self.matrix = matrix_of(matrix)
        if self.matrix.shape[0] != self.matrix.shape[1]:
            raise DimensionMismatchError("cache requires a square matrix")
        self._weights = np.abs(self.matrix) ** 2
        self._boson: dict[tuple, float] = {}
        self._fermion: dict[tuple, float] = {}
        self._classical: dict[tuple, float] = {}

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    def boson(self, i: tuple, n: tuple) -> float:
        key = (i, n)
        value = self._boson.get(key)
        if value is None:
            value = _boson_value(self.matrix, i, n)
            self._boson[key] = value
        return value

    def fermion(self, i: tuple, n: tuple) -> float:
        key = (i, n)
        value = self._fermion.get(key)
        if value is None:
            value = _fermion_value(self.matrix, i, n)
            self._fermion[key] = value
        return value

    def classical(self, i: tuple, n: tuple) -> float:
        key = (i, n)
        value = self._classical.get(key)
        if value is None:
            value = _classical_value(self._weights, i, n)
            self._classical[key] = value
        return value
