"""Commutants, exhaustive integer modular-invariant search, eigenspaces.

The search looks for all non-negative-integer matrices Z with Z[0,0] = 1 that
commute with S and T. Commutation with T is imposed exactly: Z may only be
supported on pairs (i, j) whose twists are equal as rational phases (the
global zeta factor cancels). The S-commutation constraints are solved as a
real linear system on the masked entries; integer points of the resulting
affine solution lattice are enumerated by depth-first search with interval
pruning, and every candidate is re-verified numerically.

commutant() and decompose() are pure; enumerate_integer_invariants() checks
its budget before any work and returns a deduplicated, deterministically
ordered list.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .modular import InternalCheckError, ModularDatum, RELATION_TOL

__all__ = [
    "BudgetExceeded",
    "NonSymmetricError",
    "CommutantReport",
    "InvariantMatrix",
    "commutant",
    "enumerate_integer_invariants",
    "decompose",
    "commutation_residuals",
]

#: relative singular-value threshold for nullspace extraction
_NULLSPACE_RTOL = 1e-9

#: default cap on the alcove size accepted by the search
DEFAULT_ALCOVE_GUARD = 36

#: default cap on the dimension of the affine solution lattice
DEFAULT_BUDGET = 24


class BudgetExceeded(RuntimeError):
    """Search space larger than the configured guard or lattice budget."""


class NonSymmetricError(ValueError):
    """decompose() requires a symmetric integer matrix."""


@dataclass(frozen=True, eq=False)
class CommutantReport:
    """Joint commutant of {S, T}: complex dimension and an orthonormal basis
    (Frobenius inner product)."""

    dimension: int
    basis: tuple[np.ndarray, ...]


@dataclass(frozen=True, eq=False)
class InvariantMatrix:
    """An integer matrix commuting with S and T, with its residuals and (for
    symmetric Z) the eigenvalue/multiplicity decomposition."""

    Z: np.ndarray
    residual_s: float
    residual_t: float
    eigen_decomposition: tuple[tuple[float, int], ...] | None

    def __post_init__(self) -> None:
        self.Z.setflags(write=False)


def commutant(S: np.ndarray, T: np.ndarray, max_size: int = 64) -> CommutantReport:
    """Orthonormal basis of {X : XS = SX, XT = TX} via an SVD nullspace.

    T may be passed as a diagonal matrix or as its diagonal. The nullspace
    cut uses singular values below 1e-9 times the largest one. The identity
    is always in the commutant, so the dimension is at least 1.
    """
    S = np.asarray(S, dtype=np.complex128)
    n = S.shape[0]
    if S.shape != (n, n):
        raise ValueError("S must be square")
    if n > max_size:
        raise BudgetExceeded(f"commutant solve capped at size {max_size}, got {n}")
    T = np.asarray(T, dtype=np.complex128)
    Tm = np.diag(T) if T.ndim == 1 else T
    eye = np.eye(n)
    rows = [
        np.kron(eye, S.T) - np.kron(S, eye),     # vec(XS - SX), C order
        np.kron(eye, Tm.T) - np.kron(Tm, eye),   # vec(XT - TX)
    ]
    L = np.vstack(rows)
    _, sing, vh = np.linalg.svd(L, full_matrices=True)
    cut = _NULLSPACE_RTOL * (sing[0] if sing.size else 1.0)
    null_dim = n * n - int(np.sum(sing > cut))
    basis = tuple(vh[n * n - null_dim + r].conj().reshape(n, n)
                  for r in range(null_dim))
    return CommutantReport(null_dim, basis)


def commutation_residuals(Z: np.ndarray, datum: ModularDatum) -> tuple[float, float]:
    """(||ZS - SZ||_max, ||ZT - TZ||_max) using the sparsity of Z.

    Z T - T Z is diagonal-scaled Z, so its residual is exact and cheap; the S
    products are evaluated in row chunks through the sparse structure of Z
    (a handful of nonzeros per row), never materializing a full product.
    """
    S = datum.S
    m = S.shape[0]
    Zd = np.asarray(Z)
    rows, cols = np.nonzero(Zd)
    vals = Zd[rows, cols].astype(np.float64)
    # W = Z^T S by row accumulation; S Z = W^T since S is symmetric
    W = np.zeros_like(S)
    for r, c, v in zip(rows, cols, vals):
        W[c] += v * S[r]
    res_s = 0.0
    band = max(1, (1 << 22) // max(m, 1))
    for i0 in range(0, m, band):
        i1 = min(m, i0 + band)
        P = np.zeros((i1 - i0, m), dtype=S.dtype)
        sel = (rows >= i0) & (rows < i1)
        for r, c, v in zip(rows[sel], cols[sel], vals[sel]):
            P[r - i0] += v * S[c]
        P -= W[:, i0:i1].T
        res_s = max(res_s, float(np.abs(P).max()))
    t = datum.t_diag
    res_t = float(np.max(np.abs(vals * (t[cols] - t[rows])))) if rows.size else 0.0
    return res_s, res_t


# ---------------------------------------------------------------------------
# Masked integer-invariant search
# ---------------------------------------------------------------------------


def _twist_mask(datum: ModularDatum) -> list[tuple[int, int]]:
    """Coordinates (i, j) with theta_i = theta_j as exact phases, the exact
    support allowed by T-commutation; (0, 0) is placed first."""
    classes: dict[Fraction, list[int]] = {}
    for i, phase in enumerate(datum.theta):
        classes.setdefault(phase.q, []).append(i)
    coords = [(0, 0)]
    for members in classes.values():
        for i in members:
            for j in members:
                if (i, j) != (0, 0):
                    coords.append((i, j))
    return coords


def _masked_nullspace(S: np.ndarray, coords: list[tuple[int, int]]) -> np.ndarray:
    """Real basis (|coords| x d) of masked X with XS = SX."""
    n = S.shape[0]
    ncoord = len(coords)
    cols = np.zeros((n * n, ncoord), dtype=np.complex128)
    for c, (i, j) in enumerate(coords):
        contrib = np.zeros((n, n), dtype=np.complex128)
        contrib[i, :] += S[j, :]
        contrib[:, j] -= S[:, i]
        cols[:, c] = contrib.ravel()
    L = np.vstack([cols.real, cols.imag])
    _, sing, vh = np.linalg.svd(L, full_matrices=True)
    cut = _NULLSPACE_RTOL * (sing[0] if sing.size else 1.0)
    rank = int(np.sum(sing > cut))
    null = vh[rank:].T  # (ncoord, d)
    return np.ascontiguousarray(null)


def _pivot_rows(B: np.ndarray) -> np.ndarray:
    """Greedy choice of d coordinate rows of B spanning its row space, row 0
    (the (0,0) coordinate) forced first."""
    ncoord, d = B.shape
    chosen: list[int] = []
    residual = B.copy()
    for step in range(d):
        if step == 0:
            pick = 0
            if np.linalg.norm(residual[0]) < 1e-12:
                raise RuntimeError("(0,0) coordinate degenerate on the solution space")
        else:
            norms = np.linalg.norm(residual, axis=1)
            norms[chosen] = -1.0
            pick = int(np.argmax(norms))
            if norms[pick] < 1e-12:
                raise RuntimeError("solution space rank deficient during pivoting")
        chosen.append(pick)
        v = residual[pick] / np.linalg.norm(residual[pick])
        residual = residual - np.outer(residual @ v, v)
    return np.array(chosen, dtype=np.int64)


def _enumerate_lattice(B: np.ndarray, pivots: np.ndarray, max_entry: int
                       ) -> list[np.ndarray]:
    """Integer points x in span(B) with x[pivots[0]] = 1 and all coordinates
    in [0, max_entry]; DFS over pivot values with interval pruning."""
    ncoord, d = B.shape
    Bp = B[pivots]  # (d, d)
    rest = np.array([r for r in range(ncoord) if r not in set(pivots.tolist())],
                    dtype=np.int64)
    R = B[rest] @ np.linalg.inv(Bp) if rest.size else np.zeros((0, d))
    # suffix bounds of sum_{t >= s} R[:, t] * v_t over v_t in [0, max_entry]
    lo = np.zeros((d + 1, rest.size))
    hi = np.zeros((d + 1, rest.size))
    for s in range(d - 1, -1, -1):
        col = R[:, s]
        lo[s] = lo[s + 1] + np.minimum(col, 0.0) * max_entry
        hi[s] = hi[s + 1] + np.maximum(col, 0.0) * max_entry
    slack = 0.25
    sols: list[np.ndarray] = []
    values = np.zeros(d)
    partial = [np.zeros(rest.size)]

    def dfs(s: int) -> None:
        cur = partial[0]
        if s == d:
            rounded = np.rint(cur)
            if np.max(np.abs(cur - rounded)) > 1e-6:
                return
            if np.any(rounded < 0) or np.any(rounded > max_entry):
                return
            x = np.zeros(ncoord, dtype=np.int64)
            x[pivots] = np.rint(values).astype(np.int64)
            x[rest] = rounded.astype(np.int64)
            sols.append(x)
            return
        choices = (1,) if s == 0 else tuple(range(max_entry + 1))
        for v in choices:
            nxt = cur + R[:, s] * v
            if np.any(nxt + hi[s + 1] < -slack) or np.any(nxt + lo[s + 1] > max_entry + slack):
                continue
            values[s] = v
            partial[0] = nxt
            dfs(s + 1)
        partial[0] = cur

    dfs(0)
    return sols


def enumerate_integer_invariants(datum: ModularDatum, max_entry: int = 3,
                                 budget: int = DEFAULT_BUDGET,
                                 alcove_guard: int = DEFAULT_ALCOVE_GUARD
                                 ) -> list[InvariantMatrix]:
    """All integer matrices with entries in {0..max_entry}, Z[0,0] = 1,
    supported on the exact twist-equality mask and commuting with S and T.

    Raises BudgetExceeded when the alcove exceeds ``alcove_guard`` or the
    affine solution lattice has more than ``budget`` free directions; raise
    these caps (or lower k) to search larger cells. Results are deduplicated
    and ordered by matrix entries.
    """
    n = datum.size
    if n > alcove_guard:
        raise BudgetExceeded(
            f"alcove size {n} exceeds the guard {alcove_guard} for the search")
    coords = _twist_mask(datum)
    B = _masked_nullspace(datum.S, coords)
    d = B.shape[1]
    if d == 0:
        return []
    if d > budget:
        raise BudgetExceeded(
            f"masked solution lattice has {d} free directions, budget is {budget}")
    pivots = _pivot_rows(B)
    seen: set[bytes] = set()
    out: list[InvariantMatrix] = []
    for x in _enumerate_lattice(B, pivots, max_entry):
        Z = np.zeros((n, n), dtype=np.int64)
        for value, (i, j) in zip(x, coords):
            Z[i, j] = value
        key = Z.tobytes()
        if key in seen:
            continue
        seen.add(key)
        res_s, res_t = commutation_residuals(Z, datum)
        if res_s >= RELATION_TOL or res_t >= RELATION_TOL or Z[0, 0] != 1:
            continue
        eig = None
        if np.array_equal(Z, Z.T):
            eig = decompose(Z, require_integer=False)
        out.append(InvariantMatrix(Z, res_s, res_t, eig))
    out.sort(key=lambda inv: inv.Z.tolist())
    return out


# ---------------------------------------------------------------------------
# Eigen-decomposition
# ---------------------------------------------------------------------------


def decompose(Z: np.ndarray, require_integer: bool = True,
              cluster_tol: float = 1e-6) -> tuple[tuple[float, int], ...]:
    """Eigenvalues of a symmetric integer matrix with multiplicities, sorted
    by descending eigenvalue.

    With ``require_integer`` (the case for every cyclic-algebra Z here) each
    eigenvalue must round to an integer within 1e-6 and clusters are formed
    by the rounded value; otherwise clusters are maximal runs separated by
    gaps larger than ``cluster_tol``.
    """
    M = np.asarray(Z)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise NonSymmetricError("decompose expects a square matrix")
    if not np.array_equal(M, M.T):
        raise NonSymmetricError(
            "decompose expects a symmetric matrix (orthogonal eigenspaces)")
    eig = np.linalg.eigvalsh(M.astype(np.float64))
    if require_integer:
        rounded = np.rint(eig)
        err = float(np.max(np.abs(eig - rounded)))
        if err > cluster_tol:
            raise InternalCheckError(
                f"eigenvalues fail the integer-rounding check (max error {err:.2e})")
        values, counts = np.unique(rounded.astype(np.int64), return_counts=True)
        pairs = [(float(v), int(c)) for v, c in zip(values, counts)]
    else:
        pairs = []
        run_start = 0
        for t in range(1, eig.size + 1):
            if t == eig.size or eig[t] - eig[t - 1] > cluster_tol:
                block = eig[run_start:t]
                pairs.append((float(block.mean()), int(block.size)))
                run_start = t
    pairs.sort(key=lambda vc: -vc[0])
    return tuple(pairs)
