import cmath
import math
from fractions import Fraction

import numpy as np
import pytest

from sunmtc import modular
from sunmtc.liealg import conjugate, enumerate_alcove
from sunmtc.modular import RationalPhase


def naive_residuals(datum):
    """Direct dense evaluation of all four relations (oracle for the
    sector-based verify_relations)."""
    S = datum.S
    T = np.diag(datum.t_diag)
    C = datum.c_matrix()
    eye = np.eye(S.shape[0])
    ST = S @ T
    return {
        "unit": np.abs(S @ S.conj().T - eye).max(),
        "s2c": np.abs(S @ S - C).max(),
        "st": np.abs(ST @ ST @ ST - S @ S).max(),
        "s4": np.abs(S @ S @ S @ S - eye).max(),
    }


class TestRationalPhase:
    def test_normalized_mod_one(self):
        assert RationalPhase(Fraction(7, 3)).q == Fraction(1, 3)
        assert RationalPhase(Fraction(-1, 4)).q == Fraction(3, 4)

    def test_group_law(self):
        a = RationalPhase(Fraction(2, 3))
        b = RationalPhase(Fraction(1, 2))
        assert (a * b).q == Fraction(1, 6)
        assert (a ** 3).is_one
        assert (a * a.inverse()).is_one

    def test_value(self):
        assert abs(RationalPhase(Fraction(1, 2)).value + 1) < 1e-15
        assert abs(RationalPhase(Fraction(1, 4)).value - 1j) < 1e-15


class TestTwist:
    def test_zero_weight(self):
        assert modular.twist(3, 2, (0, 0)).is_one

    def test_su2_k4_top(self):
        # Delta = 1, so the twist phase is 0
        assert modular.twist(2, 4, (4,)).is_one

    def test_su2_k2_top(self):
        assert modular.twist(2, 2, (2,)).q == Fraction(1, 2)


class TestSMatrix:
    def test_su2_k1_hand_value(self):
        S = modular.s_matrix(2, 1)
        ref = np.array([[1, 1], [1, -1]]) / math.sqrt(2)
        assert np.abs(S - ref).max() < 1e-14

    @pytest.mark.parametrize("k", range(1, 9))
    def test_su2_sine_formula_oracle(self, k):
        # independent closed form for N=2
        S = modular.s_matrix(2, k)
        n = k + 2
        mm = np.arange(k + 1)
        ref = np.sqrt(2 / n) * np.sin(np.pi * np.outer(mm + 1, mm + 1) / n)
        assert np.abs(S - ref).max() < 1e-13

    def test_su2_k4_qdim_of_middle(self):
        S = modular.s_matrix(2, 4)
        assert abs(S[0, 2] / S[0, 0] - 2.0) < 1e-12

    def test_su3_k1(self):
        S = modular.s_matrix(3, 1)
        assert abs(S[0, 0] - 1 / math.sqrt(3)) < 1e-14
        assert np.abs(S[0] / S[0, 0] - 1).max() < 1e-12  # all invertible

    @pytest.mark.parametrize("N,k", [(3, 2), (4, 3), (5, 2)])
    def test_exact_symmetries(self, N, k):
        S = modular.s_matrix(N, k)
        alcove = enumerate_alcove(N, k)
        index = {w: i for i, w in enumerate(alcove)}
        conj = [index[conjugate(N, w)] for w in alcove]
        assert np.array_equal(S, S.T)
        assert np.array_equal(S[conj, :], np.conj(S))
        assert np.all(S[0].real > 0)
        assert np.all(S[0].imag == 0)

    def test_row0_unitarity(self):
        S = modular.s_matrix(4, 3)
        qdim = S[0].real / S[0, 0].real
        assert abs(S[0, 0].real - (qdim**2).sum() ** -0.5) < 1e-12


class TestZeta:
    def test_trivial_category(self):
        d = modular.modular_datum(3, 0)
        assert d.zeta == 1.0
        assert d.t_diag[0] == 1.0
        rep = modular.verify_relations(d)
        assert rep.max_residual == 0.0

    @pytest.mark.parametrize("N,k", [(2, 1), (3, 1), (3, 2)])
    def test_three_branches_pass(self, N, k):
        # scaling T by a cube root of unity preserves the SL(2,Z) relations,
        # so exactly three of the six sixth-root branches are admissible
        d = modular.modular_datum(N, k)
        assert len(d.zeta_passing) == 3
        ratios = sorted(
            cmath.phase(z / d.zeta_passing[0]) % (2 * math.pi)
            for z in d.zeta_passing)
        expected = [0.0, 2 * math.pi / 3, 4 * math.pi / 3]
        assert all(abs(a - b) < 1e-9 for a, b in zip(ratios, expected))

    def test_zeta_reconstruction(self):
        d = modular.modular_datum(3, 2)
        assert abs(modular.zeta(d) - d.zeta) < 1e-12

    def test_gauss_quotient_has_modulus_one(self):
        d = modular.modular_datum(2, 1)
        theta_c = np.array([p.value for p in d.theta])
        p_plus = np.sum(theta_c * d.qdim**2)
        p_minus = np.sum(np.conj(theta_c) * d.qdim**2)
        assert abs(abs(p_plus / p_minus) - 1.0) < 1e-12
        assert abs(abs(d.zeta) - 1.0) < 1e-12

    def test_wrong_sign_convention_rejected(self):
        # with theta = exp(-2*pi*i*Delta), the conjugate S matrix fails
        # (ST)^3 = S^2 for every zeta branch; this pins the exponent sign
        d = modular.modular_datum(3, 1)
        theta_c = np.array([p.value for p in d.theta])
        Sc = np.conj(d.S)
        best = np.inf
        for cand in modular._zeta_candidates(theta_c, d.qdim):
            T = np.diag(theta_c / cand)
            ST = Sc @ T
            best = min(best, np.abs(ST @ ST @ ST - Sc @ Sc).max())
        assert best > 0.1


class TestVerifyRelations:
    @pytest.mark.parametrize("N,k", [(2, 4), (2, 7), (3, 2), (4, 3), (5, 2), (6, 1)])
    def test_sector_checks_against_naive_oracle(self, N, k):
        d = modular.modular_datum(N, k)
        rep = modular.verify_relations(d)
        nav = naive_residuals(d)
        assert rep.ok()
        assert all(v < 1e-9 for v in nav.values())
        # reported values certify the dense residuals
        assert nav["unit"] <= rep.unitarity + 1e-13
        assert nav["s2c"] <= rep.s2c + 1e-13
        assert nav["st"] <= rep.st + 1e-13
        assert nav["s4"] <= rep.s4 + 1e-13

    def test_nonidentity_conjugation(self):
        d = modular.modular_datum(3, 2)
        assert not np.array_equal(d.conj_perm, np.arange(d.size))
        assert modular.verify_relations(d).s2c < 1e-9

    def test_tampered_s_detected(self):
        d = modular.modular_datum(3, 2)
        S = d.S.copy()
        S[0, 1] += 1e-3
        bad = modular.ModularDatum(d.N, d.k, d.alcove, d.theta, S, d.t_diag.copy(),
                                   d.conj_perm, d.zeta, d.zeta_passing,
                                   d.qdim.copy())
        with pytest.raises(modular.InternalCheckError):
            modular.verify_relations(bad)


class TestDatum:
    def test_theta_matches_t_up_to_zeta(self):
        d = modular.modular_datum(4, 2)
        for i, p in enumerate(d.theta):
            assert abs(d.t_diag[i] * d.zeta - p.value) < 1e-12

    def test_qdim_positive_and_invertibles_one(self):
        d = modular.modular_datum(4, 3)
        assert np.all(d.qdim > 0)
        for p in range(4):
            w = [0, 0, 0]
            if p:
                w[p - 1] = 3
            assert abs(d.qdim[d.index(tuple(w))] - 1.0) < 1e-10

    def test_conjugation_permutation(self):
        d = modular.modular_datum(3, 3)
        for i, w in enumerate(d.alcove):
            assert d.conj_perm[i] == d.index(conjugate(3, w))

    def test_index_lookup(self):
        d = modular.modular_datum(3, 1)
        assert d.index((1, 0)) == 2


class TestJson:
    def test_round_trip(self):
        d = modular.modular_datum(3, 2)
        data = modular.datum_to_json(d)
        back = modular.datum_from_json(data)
        assert back.N == d.N and back.k == d.k
        assert back.alcove == d.alcove
        assert back.theta == d.theta
        assert np.array_equal(back.S, d.S)
        assert np.array_equal(back.t_diag, d.t_diag)
        assert back.zeta == d.zeta
        assert modular.verify_relations(back).ok()

    def test_round_trip_through_text(self):
        import json

        d = modular.modular_datum(2, 3)
        text = json.dumps(modular.datum_to_json(d))
        back = modular.datum_from_json(json.loads(text))
        assert np.abs(back.S - d.S).max() == 0.0

    def test_bad_format_rejected(self):
        with pytest.raises(ValueError):
            modular.datum_from_json({"format": "something-else"})

    def test_wrong_alcove_rejected(self):
        d = modular.modular_datum(2, 2)
        data = modular.datum_to_json(d)
        data["alcove"] = data["alcove"][::-1]
        with pytest.raises(ValueError):
            modular.datum_from_json(data)
