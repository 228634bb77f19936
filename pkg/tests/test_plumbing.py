import random

import pytest

from conftest import SIGMA_2_9_11_ROWS, det_cofactor
from zhat.errors import FormatError, NotALeaf, NotATree
from zhat.exact import ExactMatrix
from zhat.plumbing import PlumbingGraph, format_plumb, parse_plumb

SIGMA_2_9_11_FILE = """\
# Sigma(2, 9, 11)
6
-1 -2 -5 -2 -4 -3
1 2
1 3
3 4
1 5
5 6
"""


def random_tree(rng: random.Random, n: int) -> PlumbingGraph:
    edges = tuple((rng.randrange(v), v) for v in range(1, n))
    weights = tuple(-rng.randint(1, 9) for _ in range(n))
    return PlumbingGraph(weights, edges)


class TestParse:
    def test_single_vertex(self):
        g = parse_plumb("1\n-1\n")
        assert g.weights == (-1,)
        assert g.edges == ()

    def test_sigma_2_9_11(self, g_2_9_11):
        assert parse_plumb(SIGMA_2_9_11_FILE) == g_2_9_11

    def test_two_vertices_no_edge(self):
        with pytest.raises(NotATree):
            parse_plumb("2\n-1 -2\n")

    def test_malformed(self):
        with pytest.raises(FormatError):
            parse_plumb("x\n-1\n")
        with pytest.raises(FormatError):
            parse_plumb("2\n-1\n1 2\n")  # wrong weight count
        with pytest.raises(FormatError):
            parse_plumb("2\n-1 -2\n1 5\n")  # edge out of range

    def test_cycle(self):
        with pytest.raises(NotATree):
            PlumbingGraph((-1, -1, -1), ((0, 1), (1, 2), (0, 2)))

    def test_self_loop_and_duplicate(self):
        with pytest.raises(NotATree):
            PlumbingGraph((-1, -1), ((0, 0), (0, 1)))
        with pytest.raises(NotATree):
            PlumbingGraph((-1, -1, -2), ((0, 1), (1, 0)))

    def test_round_trip(self, g_2_9_11):
        rng = random.Random(2)
        for g in [g_2_9_11] + [random_tree(rng, rng.randint(1, 10)) for _ in range(50)]:
            assert parse_plumb(format_plumb(g)) == g


class TestLinkingMatrix:
    def test_sigma_2_9_11(self, g_2_9_11):
        m = g_2_9_11.linking_matrix()
        assert m == ExactMatrix(SIGMA_2_9_11_ROWS)
        assert m.trace() == -17

    def test_single_vertex(self):
        assert PlumbingGraph((-7,), ()).linking_matrix() == ExactMatrix([[-7]])

    def test_two_vertices(self):
        g = PlumbingGraph((-2, -3), ((0, 1),))
        assert g.linking_matrix() == ExactMatrix([[-2, 1], [1, -3]])

    def test_symmetric_with_unit_edges(self):
        rng = random.Random(6)
        for _ in range(25):
            g = random_tree(rng, rng.randint(2, 9))
            m = g.linking_matrix()
            assert m.is_symmetric()
            for i in range(g.vertex_count):
                for j in range(i + 1, g.vertex_count):
                    expected = 1 if (i, j) in g.edges else 0
                    assert m.entry(i, j) == expected


class TestDegrees:
    def test_single_vertex(self):
        assert PlumbingGraph((-1,), ()).degree_vector() == (0,)

    def test_sigma_2_9_11(self, g_2_9_11):
        assert g_2_9_11.degree_vector() == (3, 1, 2, 1, 2, 1)

    def test_star(self):
        g = PlumbingGraph((-1, -2, -2, -2), ((0, 1), (0, 2), (0, 3)))
        assert g.degree_vector() == (3, 1, 1, 1)


class TestDeleteVertex:
    def test_leg_one_terminal(self, g_2_9_11):
        g1 = g_2_9_11.delete_vertex(1)
        assert g1.weights == (-1, -5, -2, -4, -3)
        assert abs(g1.linking_matrix().determinant()) == 50

    def test_leg_three_terminal(self, g_2_9_11):
        g3 = g_2_9_11.delete_vertex(5)
        assert abs(g3.linking_matrix().determinant()) == 2

    def test_not_a_leaf(self, g_2_9_11):
        with pytest.raises(NotALeaf):
            g_2_9_11.delete_vertex(0)  # center, degree 3
        with pytest.raises(NotALeaf):
            PlumbingGraph((-1,), ()).delete_vertex(0)  # degree 0

    def test_cofactor_identity(self):
        # deleting a leaf takes the determinant to the matching minor
        rng = random.Random(13)
        for _ in range(40):
            g = random_tree(rng, rng.randint(2, 6))
            m = g.linking_matrix()
            leaves = [v for v, d in enumerate(g.degree_vector()) if d == 1]
            v = rng.choice(leaves)
            minor_rows = [
                [int(x) for j, x in enumerate(row) if j != v]
                for i, row in enumerate(m.rows)
                if i != v
            ]
            assert g.delete_vertex(v).linking_matrix().determinant() == det_cofactor(minor_rows)
