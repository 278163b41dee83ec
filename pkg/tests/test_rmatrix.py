"""R-matrix layer: QYBE certification, unitarity scalars, and the
order-by-order intertwiner solver."""

from fractions import Fraction

import pytest

from yangkit.exact import RationalFunction
from yangkit.liealg import build_lie, vector_rep
from yangkit.rmatrix import (
    RMat,
    check_qybe,
    check_unitarity,
    expansion_check,
    proportional_to,
    solve_intertwiner,
    sosp_r,
    yang_r,
)

F = Fraction


class TestQYBE:
    @pytest.mark.parametrize("N", [2, 3])
    def test_yang(self, N):
        assert check_qybe(yang_r(N))

    @pytest.mark.parametrize("family,N", [("so", 3), ("sp", 2)])
    def test_sosp(self, family, N):
        assert check_qybe(sosp_r(family, N))

    def test_genuine_non_solution_fails(self):
        R = yang_r(2)
        ent = R.entries.copy()
        # adding u^{-2} to one diagonal entry breaks the ternary identity
        ent[0, 0] = ent[0, 0] + RationalFunction((F(1),),
                                                 (F(0), F(0), F(1)))
        assert not check_qybe(RMat(ent, 2))


class TestUnitarity:
    @pytest.mark.parametrize("N", [2, 3, 4])
    def test_yang_scalar(self, N):
        f = check_unitarity(yang_r(N))
        # 1 - u^{-2} = (u^2 - 1)/u^2
        assert f == RationalFunction((F(-1), F(0), F(1)),
                                     (F(0), F(0), F(1)))

    @pytest.mark.parametrize("family,N", [("so", 3), ("sp", 4)])
    def test_sosp_scalar(self, family, N):
        f = check_unitarity(sosp_r(family, N))
        for u in (F(5), F(7, 2)):
            assert f(u) == f(-u)   # the scalar is even in u
        assert f(F(10 ** 6)) != 0


class TestSolver:
    @pytest.mark.parametrize("family,N", [("sl", 2), ("so", 3)])
    def test_reproduces_closed_form(self, family, N):
        data = build_lie(family, N)
        rep = vector_rep(data)
        series = solve_intertwiner(data, rep, 4)
        closed = yang_r(N) if family == "sl" else sosp_r(family, N)
        g = proportional_to(series, closed.expand(4))
        assert g.coeffs[0] == F(1)

    @pytest.mark.parametrize("family,N", [("sl", 3), ("sp", 2)])
    def test_expansion_check(self, family, N):
        data = build_lie(family, N)
        R = yang_r(N) if family == "sl" else sosp_r(family, N)
        assert expansion_check(R, data, vector_rep(data))["status"] == "pass"
