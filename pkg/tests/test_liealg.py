"""Classical Lie algebra layer: dimensions, Casimir closed forms, and
the finite-dimensional verification reports."""

from fractions import Fraction

import numpy as np
import pytest

from yangkit.liealg import (
    InvalidAlgebra,
    build_lie,
    casimir,
    permutation_matrix,
    q_matrix,
    vector_rep,
    verify_classical_presentation,
    verify_current_presentation,
    verify_extension_split,
    verify_yangian_module,
)

F = Fraction

ALL_CASES = ([("sl", n) for n in range(2, 7)]
             + [("so", n) for n in range(3, 7)]
             + [("sp", n) for n in (2, 4, 6)])


def frac_eye(n):
    return np.array([[F(1) if i == j else F(0) for j in range(n)]
                     for i in range(n)], dtype=object)


class TestBuild:
    @pytest.mark.parametrize("family,N", ALL_CASES)
    def test_dimension(self, family, N):
        data = build_lie(family, N)
        n = N // 2
        expected = {"sl": N * N - 1,
                    "so": N * (N - 1) // 2,
                    "sp": n * (2 * n + 1)}[family]
        assert data.dim == expected

    @pytest.mark.parametrize("family,N", [("sl", 1), ("so", 2), ("sp", 3),
                                          ("xx", 3)])
    def test_invalid(self, family, N):
        with pytest.raises(InvalidAlgebra):
            build_lie(family, N)

    @pytest.mark.parametrize("family,N", ALL_CASES)
    def test_kappa(self, family, N):
        data = build_lie(family, N)
        if family == "sl":
            assert data.kappa is None
        elif family == "so":
            assert data.kappa == F(N, 2) - 1
        else:
            assert data.kappa == F(N, 2) + 1


class TestCasimir:
    @pytest.mark.parametrize("N", range(2, 7))
    def test_sl_closed_form(self, N):
        data = build_lie("sl", N)
        cas = casimir(data)
        P = permutation_matrix(N)
        target = P - F(1, N) * frac_eye(N * N)
        assert (np.array(cas.omega_rho) == target).all()
        assert cas.c_g == 2 * N

    @pytest.mark.parametrize("family,N",
                             [("so", n) for n in range(3, 7)]
                             + [("sp", n) for n in (2, 4, 6)])
    def test_sosp_closed_form(self, family, N):
        data = build_lie(family, N)
        cas = casimir(data)
        P = permutation_matrix(N)
        Q = q_matrix(data)
        assert (np.array(cas.omega_rho) == P - Q).all()
        assert cas.c_g == 4 * data.kappa


class TestVerification:
    @pytest.mark.parametrize("family,N", [("sl", 2), ("so", 3), ("sp", 4)])
    def test_all_reports_pass(self, family, N):
        data = build_lie(family, N)
        rep = vector_rep(data)
        for fn in (verify_classical_presentation,
                   verify_extension_split,
                   verify_yangian_module):
            assert fn(data, rep)["status"] == "pass"
        assert verify_current_presentation(data, rep, 3)["status"] == "pass"
