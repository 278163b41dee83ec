"""Yangian layer: relation generation, bounded ideal closures, PBW slice
dimensions, central series, quantum determinant, Hopf and fixed-point
verification, and evaluation modules."""

from fractions import Fraction

import pytest

from yangkit.exact import TruncSeries, series_mul
from yangkit.freealg import NCPoly, mat_shift, t_matrix
from yangkit.liealg import build_lie, vector_rep
from yangkit.yangian import (
    BoundsTooLarge,
    OutOfBounds,
    WrongFamily,
    central_monomial_certificate,
    closure,
    closure_for_query,
    evaluation_module,
    is_in_ideal,
    normal_form,
    pbw_count,
    qdet,
    rtt_relations,
    slice_dimension,
    symmetry_series,
    verify_fixed_point,
    verify_hopf,
    verify_low_order_structure,
    y_from_z,
    z_series,
)

F = Fraction


@pytest.fixture(scope="module")
def sl2():
    return rtt_relations("sl", 2, 3)


@pytest.fixture(scope="module")
def sl2_cl(sl2):
    return closure(sl2, 3, 4)


@pytest.fixture(scope="module")
def sl2_cs(sl2, sl2_cl):
    return z_series(sl2, sl2_cl)


@pytest.fixture(scope="module")
def so3():
    return rtt_relations("so", 3, 3)


@pytest.fixture(scope="module")
def so3_cl(so3):
    return closure(so3, 4, 4)


class TestRelations:
    def test_counts_deterministic(self, sl2):
        assert len(sl2.relations) == 282
        again = rtt_relations("sl", 2, 3)
        assert [sorted(p.terms.items()) for p in again.relations] == \
            [sorted(p.terms.items()) for p in sl2.relations]

    def test_bracket_oracle(self, sl2, sl2_cl):
        # [t_11^(1), t_12^(1)] = t_12^(1) in the algebra
        a = NCPoly.gen(1, 1, 1)
        b = NCPoly.gen(1, 2, 1)
        assert is_in_ideal(sl2_cl, a * b - b * a - b)

    def test_generator_not_in_ideal(self, sl2_cl):
        assert not is_in_ideal(sl2_cl, NCPoly.gen(1, 2, 1))

    def test_out_of_bounds_raises(self, sl2_cl):
        with pytest.raises(OutOfBounds):
            normal_form(sl2_cl, NCPoly.gen(1, 1, 5))

    def test_size_guard(self, sl2):
        with pytest.raises(BoundsTooLarge):
            closure(sl2, 12, 12)


class TestPBW:
    @pytest.mark.parametrize("L,R,expected", [(2, 2, 19), (2, 3, 39)])
    def test_sl2_extended(self, sl2, L, R, expected):
        lie, rep = sl2.lie, vector_rep(sl2.lie)
        cl = closure_for_query(sl2, L, R)
        assert pbw_count(lie, rep, L, R) == expected
        assert slice_dimension(cl, L, R) == expected

    @pytest.mark.parametrize("L,R,expected", [(2, 2, 13), (2, 3, 25)])
    def test_sl2_quotient(self, sl2, L, R, expected):
        lie, rep = sl2.lie, vector_rep(sl2.lie)
        cl = closure_for_query(sl2, L, R, quotient=True)
        assert pbw_count(lie, rep, L, R, quotient=True) == expected
        assert slice_dimension(cl, L, R) == expected

    def test_count_formula(self, sl2):
        # L=1: 1 + D * R_ord multisets of size <= 1
        lie, rep = sl2.lie, vector_rep(sl2.lie)
        assert pbw_count(lie, rep, 1, 3) == 1 + 3 * 4
        assert pbw_count(lie, rep, 1, 3, quotient=True) == 1 + 3 * 3


class TestCentralSeries:
    def test_z1_zero_and_centrality(self, sl2_cs):
        assert sl2_cs.report["status"] == "pass"
        assert sl2_cs.report["details"]["z1_zero_free_algebra"]
        assert sl2_cs.z[1] == NCPoly.zero()

    def test_y_recursion(self, sl2_cs):
        cs = y_from_z(sl2_cs, 5)
        assert cs.report["details"]["y_recursion_verified_to"] == 5
        # y_1 = (2/c_g) z_2 with c_g = 4
        assert cs.y[1].terms == {(2,): F(1, 2)}

    def test_monomial_certificate(self, sl2, sl2_cs):
        rep = central_monomial_certificate(sl2, sl2_cs)
        assert rep["status"] == "pass"
        assert rep["details"]["rank"] == 6


class TestQdet:
    def test_formula_n2(self, sl2, sl2_cl, sl2_cs):
        qd, report = qdet(sl2, sl2_cl, sl2_cs)
        assert report["status"] == "pass"
        T = t_matrix(2, 3)
        Tm = mat_shift(T, F(-1))
        oracle = (series_mul(T.entry(0, 0), Tm.entry(1, 1))
                  - series_mul(T.entry(1, 0), Tm.entry(0, 1)))
        for r in range(4):
            assert qd.coeffs[r] == oracle.coeffs[r]
        assert qd.coeffs[1] == NCPoly.gen(1, 1, 1) + NCPoly.gen(2, 2, 1)

    def test_wrong_family(self, so3, so3_cl):
        with pytest.raises(WrongFamily):
            qdet(so3, so3_cl)


class TestSymmetry:
    def test_so3(self, so3, so3_cl):
        _, report = symmetry_series(so3, so3_cl)
        assert report["status"] == "pass"
        assert not report["details"]["scalar_failures"]
        assert not report["details"]["two_sided_failures"]

    def test_wrong_family(self, sl2, sl2_cl):
        with pytest.raises(WrongFamily):
            symmetry_series(sl2, sl2_cl)


class TestHopfAndFixedPoint:
    def test_hopf(self, sl2, sl2_cl, sl2_cs):
        report = verify_hopf(sl2, sl2_cl, sl2_cs, orders=3,
                             max_relations=20)
        assert report["status"] == "pass"
        assert report["details"]["grouplike_orders"] == [1, 2, 3]

    def test_fixed_point(self, sl2, sl2_cl, sl2_cs):
        f = TruncSeries([F(1), F(1)])
        report = verify_fixed_point(sl2, sl2_cl, sl2_cs, f, orders=2)
        assert report["status"] == "pass"
        assert report["details"]["fixed_orders"] == [1, 2]
        assert report["details"]["shift_compatible"]

    def test_fixed_point_requires_unit_constant(self, sl2, sl2_cl, sl2_cs):
        with pytest.raises(ValueError):
            verify_fixed_point(sl2, sl2_cl, sl2_cs,
                               TruncSeries([F(2), F(1)]))


class TestLowOrder:
    def test_sl2(self, sl2, sl2_cl, sl2_cs):
        qcl = closure_for_query(sl2, 3, 3, quotient=True)
        report = verify_low_order_structure(sl2, sl2_cl, sl2_cs,
                                            quotient_cl=qcl)
        assert report["status"] == "pass"
        assert not report["details"]["embedding_bracket_failures"]
        assert report["details"]["b_table_all_zero"]
        gen3 = report["details"]["order3_generated_by_low_orders"]
        assert gen3 and all(flag for _, _, flag in gen3)


class TestEvaluation:
    def test_z_scalar_on_vector_module(self, sl2, sl2_cl, sl2_cs):
        # z(u) acts on the vector evaluation module as 1 - u^{-2}
        ev = evaluation_module(sl2, 1, [F(0)], order=3)
        vals = [ev.eval_scalar(sl2_cs.z[r]) for r in range(4)]
        assert vals == [F(1), F(0), F(-1), F(0)]

    def test_relations_die(self, sl2):
        ev = evaluation_module(sl2, 2, [F(0), F(1)], order=3)
        for p in sl2.relations[:20]:
            assert not any(x for x in ev.eval(p).flat)

    def test_generator_image_nonzero(self, sl2):
        ev = evaluation_module(sl2, 1, [F(0)], order=3)
        assert any(x for x in ev.eval(NCPoly.gen(1, 1, 1)).flat)
