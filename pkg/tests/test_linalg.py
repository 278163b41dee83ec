"""Exact linear algebra: dense RREF helpers and the sparse reducer."""

from fractions import Fraction

import pytest

from yangkit import linalg

F = Fraction


class TestDense:
    def test_rank(self):
        rows = [[F(1), F(2)], [F(2), F(4)], [F(0), F(1)]]
        assert linalg.rank(rows, 2) == 2

    def test_nullspace(self):
        rows = [[F(1), F(1), F(0)], [F(0), F(1), F(1)]]
        (v,) = linalg.nullspace(rows, 3)
        for row in rows:
            assert sum(a * b for a, b in zip(row, v)) == 0

    def test_solve(self):
        rows = [[F(2), F(1)], [F(1), F(3)]]
        x = linalg.solve(rows, [F(5), F(10)], 2)
        assert [sum(a * b for a, b in zip(r, x)) for r in rows] == \
            [F(5), F(10)]
        assert linalg.solve([[F(1), F(1)], [F(1), F(1)]],
                            [F(0), F(1)], 2) is None

    def test_invert(self):
        m = [[F(1), F(2)], [F(3), F(4)]]
        inv = linalg.invert(m)
        prod = [[sum(m[i][k] * inv[k][j] for k in range(2))
                 for j in range(2)] for i in range(2)]
        assert prod == [[F(1), F(0)], [F(0), F(1)]]
        with pytest.raises(ValueError):
            linalg.invert([[F(1), F(2)], [F(2), F(4)]])


class TestSparseReducer:
    def test_rank_and_membership(self):
        red = linalg.SparseReducer()
        assert red.add({0: F(1), 1: F(2)})
        assert red.add({1: F(1), 2: F(1)})
        # dependent row does not enlarge the span
        assert not red.add({0: F(2), 1: F(6), 2: F(2)})
        assert red.rank == 2
        # residual of a member is empty
        assert not red.reduce({0: F(1), 1: F(3), 2: F(1)})
        assert red.reduce({2: F(1)})

    def test_basis_stays_reduced(self):
        red = linalg.SparseReducer()
        red.add({0: F(1), 1: F(1)})
        red.add({1: F(1), 2: F(1)})
        for piv, row in red.basis.items():
            assert row[piv] == F(1)
            for other in red.basis:
                if other != piv:
                    assert other not in row

    def test_add_return_pivot(self):
        red = linalg.SparseReducer()
        piv = red.add_return_pivot({3: F(2), 5: F(4)})
        assert piv == 3
        assert red.basis[3] == {3: F(1), 5: F(2)}
        assert red.add_return_pivot({3: F(1), 5: F(2)}) is None
