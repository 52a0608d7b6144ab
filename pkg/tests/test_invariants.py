import numpy as np
import pytest

from sunmtc import invariants as inv
from sunmtc import schellekens as sk
from sunmtc.modular import modular_datum


class TestCommutant:
    def test_size_one(self):
        rep = inv.commutant(np.ones((1, 1)), np.ones((1, 1)))
        assert rep.dimension == 1

    def test_su2_k3_irreducible(self):
        d = modular_datum(2, 3)
        assert inv.commutant(d.S, d.t_diag).dimension == 1

    def test_su2_k4(self):
        # oracle run recorded dimension 2 (identity and the block invariant)
        d = modular_datum(2, 4)
        rep = inv.commutant(d.S, d.t_diag)
        assert rep.dimension == 2

    def test_basis_orthonormal_and_commuting(self):
        d = modular_datum(2, 6)
        rep = inv.commutant(d.S, d.t_diag)
        T = np.diag(d.t_diag)
        for a, X in enumerate(rep.basis):
            assert np.abs(X @ d.S - d.S @ X).max() < 1e-8
            assert np.abs(X @ T - T @ X).max() < 1e-8
            for b, Y in enumerate(rep.basis):
                ip = np.vdot(X, Y)
                assert abs(ip - (1.0 if a == b else 0.0)) < 1e-9

    def test_accepts_diagonal_or_matrix_t(self):
        d = modular_datum(2, 5)
        a = inv.commutant(d.S, d.t_diag).dimension
        b = inv.commutant(d.S, np.diag(d.t_diag)).dimension
        assert a == b == 1

    def test_size_guard(self):
        d = modular_datum(2, 8)
        with pytest.raises(inv.BudgetExceeded):
            inv.commutant(d.S, d.t_diag, max_size=4)


class TestEnumerate:
    def test_su2_k4_finds_identity_and_block(self):
        d = modular_datum(2, 4)
        found = inv.enumerate_integer_invariants(d)
        assert len(found) == 2
        mats = [f.Z for f in found]
        assert any(np.array_equal(M, np.eye(5, dtype=np.int64)) for M in mats)
        D = sk.torus_partition_function(sk.build_algebra(2, 4, 1)).Z
        assert any(np.array_equal(M, D) for M in mats)

    def test_su2_k5_only_identity(self):
        d = modular_datum(2, 5)
        found = inv.enumerate_integer_invariants(d)
        assert len(found) == 1
        assert np.array_equal(found[0].Z, np.eye(6, dtype=np.int64))

    def test_su3_k1_identity_and_conjugation(self):
        d = modular_datum(3, 1)
        found = inv.enumerate_integer_invariants(d)
        assert len(found) == 2
        C = d.c_matrix().astype(np.int64)
        assert any(np.array_equal(f.Z, C) for f in found)

    def test_all_results_are_invariants(self):
        d = modular_datum(2, 10)
        for f in inv.enumerate_integer_invariants(d):
            assert f.Z[0, 0] == 1
            assert f.Z.min() >= 0
            assert f.residual_s < 1e-9
            assert f.residual_t < 1e-9

    def test_alcove_guard(self):
        d = modular_datum(2, 6)
        with pytest.raises(inv.BudgetExceeded):
            inv.enumerate_integer_invariants(d, alcove_guard=3)

    def test_lattice_budget(self):
        d = modular_datum(2, 4)
        with pytest.raises(inv.BudgetExceeded):
            inv.enumerate_integer_invariants(d, budget=1)

    def test_deterministic_order(self):
        d = modular_datum(2, 10)
        a = [f.Z.tolist() for f in inv.enumerate_integer_invariants(d)]
        b = [f.Z.tolist() for f in inv.enumerate_integer_invariants(d)]
        assert a == b == sorted(a)

    def test_residual_t_exactly_zero_on_mask(self):
        d = modular_datum(2, 8)
        for f in inv.enumerate_integer_invariants(d):
            assert f.residual_t == 0.0


class TestDecompose:
    def test_identity(self):
        assert inv.decompose(np.eye(7, dtype=np.int64)) == ((1.0, 7),)

    def test_su2_k4_block_invariant(self):
        Z = sk.torus_partition_function(sk.build_algebra(2, 4, 1)).Z
        assert inv.decompose(Z) == ((2.0, 2), (0.0, 3))

    def test_su2_k6_automorphism_invariant(self):
        # true spectrum of the parity automorphism invariant at k = 4n+2:
        # +1 with multiplicity 3n+3, -1 with multiplicity n
        Z = sk.torus_partition_function(sk.build_algebra(2, 6, 1)).Z
        assert inv.decompose(Z) == ((1.0, 6), (-1.0, 1))

    def test_multiplicities_sum_to_size(self):
        for N, k, p in [(3, 3, 1), (4, 4, 1), (5, 5, 1), (6, 3, 2)]:
            Z = sk.torus_partition_function(sk.build_algebra(N, k, p)).Z
            dec = inv.decompose(Z)
            assert sum(mult for _, mult in dec) == Z.shape[0]

    def test_eigenvector_clusters_orthogonal(self):
        Z = sk.torus_partition_function(sk.build_algebra(2, 8, 1)).Z
        vals, vecs = np.linalg.eigh(Z.astype(float))
        two = vecs[:, np.abs(vals - 2) < 1e-6]
        zero = vecs[:, np.abs(vals) < 1e-6]
        assert np.abs(two.T @ zero).max() < 1e-8

    def test_rejects_non_symmetric(self):
        with pytest.raises(inv.NonSymmetricError):
            inv.decompose(np.array([[1, 1], [0, 1]]))

    def test_rejects_non_square(self):
        with pytest.raises(inv.NonSymmetricError):
            inv.decompose(np.ones((2, 3), dtype=np.int64))

    def test_integer_rounding_guard(self):
        from sunmtc.modular import InternalCheckError

        M = np.array([[0, 1], [1, 1]], dtype=np.int64)  # golden-ratio spectrum
        with pytest.raises(InternalCheckError):
            inv.decompose(M)
        dec = inv.decompose(M, require_integer=False)
        assert sum(mult for _, mult in dec) == 2
        assert abs(dec[0][0] - (1 + 5**0.5) / 2) < 1e-9

    def test_schellekens_appears_in_search(self):
        d = modular_datum(2, 8)
        found = inv.enumerate_integer_invariants(d)
        Z = sk.torus_partition_function(sk.build_algebra(2, 8, 1)).Z
        assert any(np.array_equal(f.Z, Z) for f in found)


class TestCommutationResiduals:
    def test_schellekens_z_commutes(self):
        d = modular_datum(4, 4)
        Z = sk.torus_partition_function(sk.build_algebra(4, 4, 1)).Z
        rs, rt = inv.commutation_residuals(Z, d)
        assert rs < 1e-9
        assert rt < 1e-9

    def test_non_invariant_detected(self):
        d = modular_datum(2, 4)
        Z = np.zeros((5, 5), dtype=np.int64)
        Z[0, 0] = 1
        Z[0, 1] = 1  # breaks T-commutation
        rs, rt = inv.commutation_residuals(Z, d)
        assert rt > 1e-3
