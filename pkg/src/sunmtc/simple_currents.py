"""Invertible objects of the su(N) level-k categories and their action.

The invertible simple objects form a cyclic group of order N generated by
J = (k, 0, ..., 0); J^p is the weight with label k in position p. The
effective center collects the powers whose twist is a root of unity of order
dividing the element order, i.e. order(J^p) * Delta(J^p) integral; those are
the admissible supports of the cyclic Frobenius algebras built downstream.

The effective center is computed both from the exact rational test and from
its closed form (full group when N is odd or N, k are both even; the even
powers when N is even and k is odd), and the two must agree.

Pure functions throughout; safe for concurrent use.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import numpy as np

from .liealg import Weight, conformal_weight, enumerate_alcove
from .modular import InternalCheckError

__all__ = [
    "SimpleCurrent",
    "EffectiveCenter",
    "current_weight",
    "simple_current",
    "act",
    "order",
    "current_conformal_weight",
    "effective_center",
    "is_valid_support",
    "act_permutation",
]


@dataclass(frozen=True)
class SimpleCurrent:
    """The invertible object J^p of su(N) level k."""

    N: int
    k: int
    p: int
    weight: Weight


@dataclass(frozen=True)
class EffectiveCenter:
    """Exponents p with J^p in the effective center, with a generator.

    ``generator`` is the smallest positive member (None when only p=0
    qualifies); the exponent set is closed under addition mod N.
    """

    N: int
    k: int
    exponents: tuple[int, ...]
    generator: int | None

    @property
    def size(self) -> int:
        return len(self.exponents)


def current_weight(N: int, k: int, p: int) -> Weight:
    """Weight of J^p: label k in position p (1-based), zero weight for p=0."""
    p %= N
    labels = [0] * (N - 1)
    if p:
        labels[p - 1] = k
    return tuple(labels)


def simple_current(N: int, k: int, p: int) -> SimpleCurrent:
    return SimpleCurrent(N, k, p % N, current_weight(N, k, p))


def _act_once(N: int, k: int, weight: Weight) -> Weight:
    return (k - sum(weight),) + weight[: N - 2]


def act(N: int, k: int, p: int, weight: Weight) -> Weight:
    """p-fold action of J on an alcove weight; period N in p."""
    w = tuple(weight)
    if sum(w) > k or any(a < 0 for a in w) or len(w) != N - 1:
        raise ValueError(f"{weight!r} is not in the level-{k} alcove of su({N})")
    for _ in range(p % N):
        w = _act_once(N, k, w)
    return w


def order(N: int, p: int) -> int:
    """Order of J^p in the cyclic group of invertibles: N / gcd(p, N)."""
    return N // gcd(p % N, N)


def current_conformal_weight(N: int, k: int, p: int) -> Fraction:
    """Exact conformal weight of J^p; equals p(N-p)k / (2N)."""
    return conformal_weight(N, k, current_weight(N, k, p))


def _center_first_principles(N: int, k: int) -> tuple[int, ...]:
    out = []
    for p in range(N):
        if (order(N, p) * current_conformal_weight(N, k, p)).denominator == 1:
            out.append(p)
    return tuple(out)


def _center_closed_form(N: int, k: int) -> tuple[int, ...]:
    if N % 2 == 1 or k % 2 == 0:
        return tuple(range(N))
    return tuple(range(0, N, 2))


def effective_center(N: int, k: int) -> EffectiveCenter:
    """Exponents of the effective center, cross-checked against the closed form."""
    exps = _center_first_principles(N, k)
    if exps != _center_closed_form(N, k):
        raise InternalCheckError(
            f"effective center mismatch for N={N}, k={k}: "
            f"rational test gives {exps}, closed form {_center_closed_form(N, k)}")
    gen = min((p for p in exps if p), default=None)
    return EffectiveCenter(N, k, exps, gen)


def is_valid_support(N: int, k: int, p: int) -> bool:
    """Whether the cyclic group generated by J^p lies in the effective center."""
    exps = set(effective_center(N, k).exponents)
    q = p % N
    return all((a * q) % N in exps for a in range(order(N, p)))


def act_permutation(N: int, k: int, p: int) -> np.ndarray:
    """The action of J^p on the alcove as a permutation of alcove indices."""
    alcove = enumerate_alcove(N, k)
    index = {w: i for i, w in enumerate(alcove)}
    return np.array([index[act(N, k, p, w)] for w in alcove], dtype=np.int64)
