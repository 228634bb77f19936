import math
import random
from fractions import Fraction

import pytest

from conftest import det_cofactor
from zhat.errors import NotNegativeDefinite, SingularMatrix
from zhat.exact import (
    DefinitenessClass,
    ExactMatrix,
    classify_definiteness,
    enumerate_coset_under_bound,
    is_negative_definite,
    smith_normal_form,
)


def random_tree_matrix(rng: random.Random, n: int) -> ExactMatrix:
    """Random negative definite tree linking matrix (diagonally dominant)."""
    rows = [[0] * n for _ in range(n)]
    for v in range(1, n):
        u = rng.randrange(v)
        rows[u][v] = rows[v][u] = 1
    for v in range(n):
        rows[v][v] = -(sum(rows[v]) + rng.randint(1, 4))
    return ExactMatrix(rows)


class TestDeterminant:
    def test_1x1(self):
        assert ExactMatrix([[-1]]).determinant() == -1

    def test_sigma_2_9_11_leg_minor(self, m_2_9_11):
        m1 = m_2_9_11.delete_row_col(1)
        assert abs(m1.determinant()) == 50

    def test_sigma_2_9_11_full(self, m_2_9_11):
        expected = det_cofactor([[int(x) for x in row] for row in m_2_9_11.rows])
        assert expected == 1  # frozen from the cofactor oracle
        assert m_2_9_11.determinant() == 1

    def test_matches_cofactor_oracle_dense(self):
        rng = random.Random(7)
        for _ in range(60):
            n = rng.randint(1, 5)
            rows = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)]
            assert ExactMatrix(rows).determinant() == det_cofactor(rows)

    def test_rational_entries(self):
        m = ExactMatrix([[Fraction(1, 2), Fraction(1, 3)], [Fraction(1, 5), Fraction(1, 7)]])
        assert m.determinant() == Fraction(1, 14) - Fraction(1, 15)

    def test_tree_path_agrees_with_bareiss(self):
        from zhat.exact import _det_bareiss, _det_symmetric_forest

        rng = random.Random(11)
        for _ in range(40):
            m = random_tree_matrix(rng, rng.randint(2, 9))
            fast = _det_symmetric_forest(m.rows)
            assert fast is not None
            assert fast == _det_bareiss(m.rows)


class TestInverse:
    def test_scalar(self):
        assert ExactMatrix([[-1]]).inverse() == ExactMatrix([[-1]])
        assert ExactMatrix([[-7]]).inverse() == ExactMatrix([[Fraction(-1, 7)]])

    def test_sigma_2_9_11_product_identity(self, m_2_9_11):
        inv = m_2_9_11.inverse()
        assert m_2_9_11.matmul(inv) == ExactMatrix.identity(6)
        # the center diagonal entry of M^{-1} carries the full leg product
        assert inv.entry(0, 0) == -198

    def test_involution_and_det_product(self):
        rng = random.Random(23)
        for _ in range(30):
            n = rng.randint(1, 5)
            rows = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)]
            m = ExactMatrix(rows)
            if m.determinant() == 0:
                continue
            inv = m.inverse()
            assert inv.inverse() == m
            assert m.determinant() * inv.determinant() == 1

    def test_singular(self):
        with pytest.raises(SingularMatrix):
            ExactMatrix([[1, 1], [1, 1]]).inverse()


class TestSignature:
    def test_scalar(self):
        assert ExactMatrix([[-1]]).signature_and_positive_count() == (-1, 0)

    def test_negative_definite_trees(self):
        rng = random.Random(3)
        for _ in range(25):
            n = rng.randint(1, 8)
            m = random_tree_matrix(rng, n)
            assert m.signature_and_positive_count() == (-n, 0)

    def test_indefinite(self):
        assert ExactMatrix([[1, 0], [0, -1]]).signature_and_positive_count() == (0, 1)

    def test_zero_diagonal_block(self):
        # hyperbolic plane: eigenvalues +1, -1
        assert ExactMatrix([[0, 1], [1, 0]]).signature_and_positive_count() == (0, 1)

    def test_singular_detected(self):
        with pytest.raises(SingularMatrix):
            ExactMatrix([[1, 1], [1, 1]]).signature_and_positive_count()


class TestNegativeDefiniteStructure:
    def test_plumbing_matrices(self):
        # negative definite linking matrices have negative diagonals and
        # negative definite inverses
        rng = random.Random(29)
        for _ in range(30):
            m = random_tree_matrix(rng, rng.randint(1, 7))
            assert is_negative_definite(m)
            assert all(m.rows[i][i] < 0 for i in range(m.size))
            assert is_negative_definite(m.inverse())

    def test_inverse_not_integral_in_general(self):
        # the [-2] inverse is -1/2: rational inverses are the rule
        assert ExactMatrix([[-2]]).inverse() == ExactMatrix([[Fraction(-1, 2)]])


class TestClassify:
    def test_sigma_2_9_11(self, m_2_9_11):
        assert classify_definiteness(m_2_9_11, {0}) is DefinitenessClass.NEGATIVE_DEFINITE

    def test_scalar_negative(self):
        assert classify_definiteness(ExactMatrix([[-1]]), set()) is DefinitenessClass.NEGATIVE_DEFINITE

    def test_positive_definite_is_other(self):
        assert (
            classify_definiteness(ExactMatrix([[1, 0], [0, 1]]), {0})
            is DefinitenessClass.INDEFINITE_OR_OTHER
        )

    def test_weakly_chain(self):
        # chain with weights (0, -1): invertible, not negative definite,
        # vacuously weak (no degree >= 3 vertex)
        m = ExactMatrix([[0, 1], [1, -1]])
        assert classify_definiteness(m, set()) is DefinitenessClass.WEAKLY_NEGATIVE_DEFINITE

    def test_singular(self):
        with pytest.raises(SingularMatrix):
            classify_definiteness(ExactMatrix([[0, 0], [0, 0]]), set())


class TestSmithNormalForm:
    def check(self, m: ExactMatrix):
        u, d, v = smith_normal_form(m)
        assert u.matmul(m).matmul(v) == d
        assert abs(u.determinant()) == 1
        assert abs(v.determinant()) == 1
        diag = [int(d.rows[i][i]) for i in range(d.size)]
        assert all(x == 0 for i, row in enumerate(d.rows) for j, x in enumerate(row) if i != j)
        assert all(x >= 0 for x in diag)
        for a, b in zip(diag, diag[1:]):
            if a != 0:
                assert b % a == 0
        return diag

    def test_units_normalized(self):
        diag = self.check(ExactMatrix([[-1]]))
        assert diag == [1]

    def test_scalar(self):
        assert self.check(ExactMatrix([[-7]])) == [7]

    def test_sigma_2_9_11_unimodular(self, m_2_9_11):
        assert self.check(m_2_9_11) == [1, 1, 1, 1, 1, 1]

    def test_random(self):
        rng = random.Random(5)
        for _ in range(60):
            n = rng.randint(1, 4)
            m = ExactMatrix([[rng.randint(-5, 5) for _ in range(n)] for _ in range(n)])
            diag = self.check(m)
            prod = 1
            for x in diag:
                prod *= x
            assert prod == abs(m.determinant())


def brute_force_coset(m: ExactMatrix, rep, bound) -> set:
    """Box-scan oracle: solve the coset condition directly per point."""
    n = m.size
    minv = m.inverse()
    radii = [math.isqrt(int(Fraction(bound) * (-m.rows[i][i]))) + 1 for i in range(n)]
    found = set()

    def points(i, acc):
        if i == n:
            yield tuple(acc)
            return
        for x in range(-radii[i], radii[i] + 1):
            yield from points(i + 1, acc + [x])

    for l in points(0, []):
        q = -sum(minv.rows[i][j] * l[i] * l[j] for i in range(n) for j in range(n))
        if q > Fraction(bound):
            continue
        t = minv.matvec([a - b for a, b in zip(l, rep)])
        if all(x.denominator == 1 and int(x) % 2 == 0 for x in t):
            found.add(l)
    return found


class TestEnumeration:
    def test_unit_matrix(self):
        got = list(enumerate_coset_under_bound(ExactMatrix([[-1]]), (0,), 4))
        assert set(got) == {(-2,), (0,), (2,)}
        assert len(got) == 3

    def test_coset_membership(self):
        got = set(enumerate_coset_under_bound(ExactMatrix([[-5]]), (2,), 1))
        assert got == {(2,)}  # -2 is not in 10Z + 2

    def test_lexicographic_in_n(self):
        # l = rep + 2*M*n with M = [-1] means l = -2n: n ascending
        got = list(enumerate_coset_under_bound(ExactMatrix([[-1]]), (0,), 16))
        assert got == [(4,), (2,), (0,), (-2,), (-4,)]

    def test_rejects_indefinite(self):
        with pytest.raises(NotNegativeDefinite):
            list(enumerate_coset_under_bound(ExactMatrix([[1]]), (0,), 4))

    def test_against_box_scan(self):
        rng = random.Random(17)
        cases = 0
        while cases < 500:
            n = rng.choice((1, 1, 2, 2))
            if n == 1:
                m = ExactMatrix([[-rng.randint(1, 6)]])
            else:
                b = rng.randint(0, 1)
                d1, d2 = rng.randint(1, 5), rng.randint(1, 5)
                m = ExactMatrix([[-d1, b], [b, -d2]])
                if not is_negative_definite(m):
                    continue
            rep = tuple(rng.randint(-3, 3) * 2 for _ in range(n))
            bound = Fraction(rng.randint(0, 40))
            got = list(enumerate_coset_under_bound(m, rep, bound))
            assert len(set(got)) == len(got)
            assert set(got) == brute_force_coset(m, rep, bound)
            cases += 1

    def test_sigma_2_9_11_minimal_vector_reaches_delta(self, m_2_9_11, g_2_9_11):
        # the smallest exponent over the coset reproduces delta0 = 9/2
        minv = m_2_9_11.inverse()
        delta_vec = g_2_9_11.degree_vector()
        e0 = Fraction(3 * (-6) - (-17), 4)
        best = None
        for l in enumerate_coset_under_bound(m_2_9_11, delta_vec, 40):
            from zhat.engine import vertex_factor_coefficient

            c = Fraction(1)
            for v, lv in enumerate(l):
                c *= vertex_factor_coefficient(delta_vec[v], -lv)
            if c == 0:
                continue
            q = -sum(minv.rows[i][j] * l[i] * l[j] for i in range(6) for j in range(6))
            best = q if best is None else min(best, q)
        assert best is not None
        assert e0 + best / 4 == Fraction(9, 2)
