"""Weight combinatorics for su(N) at level k.

Weights are tuples of N-1 non-negative Dynkin labels. The level-k alcove
consists of the weights whose labels sum to at most k; it indexes the simple
objects of the category and fixes the row/column order of every matrix in
this package (lexicographic, zero weight first).

All quantities here are exact: inner products and conformal weights are
``fractions.Fraction``. Every function is pure and safe for concurrent use.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb

Weight = tuple[int, ...]

__all__ = [
    "Weight",
    "alcove_size",
    "enumerate_alcove",
    "inverse_cartan",
    "inner_product",
    "conformal_weight",
    "conjugate",
    "weyl_vector",
]


def _check_rank(N: int) -> None:
    if N < 2:
        raise ValueError(f"need N >= 2, got N={N}")


def _check_weight(N: int, weight: Weight) -> None:
    if len(weight) != N - 1:
        raise ValueError(f"weight {weight!r} does not have {N - 1} labels")
    if any(a < 0 for a in weight):
        raise ValueError(f"weight {weight!r} has a negative Dynkin label")


def alcove_size(N: int, k: int) -> int:
    """Number of weights with label sum <= k, i.e. C(N-1+k, k)."""
    return comb(N - 1 + k, k)


@lru_cache(maxsize=None)
def enumerate_alcove(N: int, k: int) -> tuple[Weight, ...]:
    """All weights of the level-k alcove, lexicographically ordered.

    The zero weight comes first and the result has ``alcove_size(N, k)``
    entries. The order is the canonical index of every matrix downstream.
    """
    _check_rank(N)
    if k < 0:
        raise ValueError(f"need k >= 0, got k={k}")
    out: list[Weight] = []

    def extend(prefix: tuple[int, ...], budget: int) -> None:
        if len(prefix) == N - 1:
            out.append(prefix)
            return
        for a in range(budget + 1):
            extend(prefix + (a,), budget - a)

    extend((), k)
    out.sort()
    return tuple(out)


@lru_cache(maxsize=None)
def inverse_cartan(N: int) -> tuple[tuple[Fraction, ...], ...]:
    """Symmetrized inverse Cartan matrix G of su(N).

    G[i][j] = min(i, j) * (N - max(i, j)) / N with 1-based math indices;
    stored 0-based, so G[i][j] here corresponds to labels i+1, j+1.
    """
    _check_rank(N)
    return tuple(
        tuple(
            Fraction(min(i, j) * (N - max(i, j)), N)
            for j in range(1, N)
        )
        for i in range(1, N)
    )


def inner_product(N: int, mu: Weight, nu: Weight) -> Fraction:
    """Bilinear form (mu, nu) = sum_ij mu_i nu_j G_ij, exact."""
    _check_weight(N, tuple(mu))
    _check_weight(N, tuple(nu))
    # Accumulate the integer numerator over the common denominator N.
    num = 0
    for i in range(1, N):
        mi = mu[i - 1]
        if mi == 0:
            continue
        for j in range(1, N):
            nj = nu[j - 1]
            if nj:
                num += mi * nj * min(i, j) * (N - max(i, j))
    return Fraction(num, N)


def weyl_vector(N: int) -> Weight:
    """All-ones weight (1, ..., 1)."""
    return (1,) * (N - 1)


@lru_cache(maxsize=None)
def conformal_weight(N: int, k: int, weight: Weight) -> Fraction:
    """Conformal weight (lambda, lambda + 2*rho) / (2*(k + N)), exact.

    Zero for the zero weight, non-negative everywhere, and invariant under
    label reversal.
    """
    _check_weight(N, weight)
    shifted = tuple(a + 2 for a in weight)  # lambda + 2*rho
    num = 0
    for i in range(1, N):
        mi = weight[i - 1]
        if mi == 0:
            continue
        for j in range(1, N):
            num += mi * shifted[j - 1] * min(i, j) * (N - max(i, j))
    return Fraction(num, 2 * N * (k + N))


def conjugate(N: int, weight: Weight) -> Weight:
    """Charge conjugate of a weight: Dynkin labels reversed."""
    _check_weight(N, tuple(weight))
    return tuple(reversed(weight))
