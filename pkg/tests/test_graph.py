import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import complete, cycle, dense_laplacian, random_connected, star
from quadcut.errors import GraphBoundsError, GraphParseError, GraphValidationError, ShapeError
from quadcut.graph import (Graph, connected_components, degree_stats, generate_er,
                           laplacian_apply, parse_edge_list, serialize)


class TestParse:
    def test_single_edge(self):
        g = parse_edge_list("2 1\n1 2")
        assert (g.n, g.m) == (2, 1)
        assert g.edges.tolist() == [[0, 1]]

    def test_triangle(self):
        g = parse_edge_list("3 3\n1 2\n2 3\n1 3")
        assert g == complete(3)

    def test_self_loop_rejected(self):
        with pytest.raises(GraphValidationError):
            parse_edge_list("3 2\n1 2\n1 1")

    def test_out_of_range(self):
        with pytest.raises(GraphBoundsError) as exc:
            parse_edge_list("3 1\n1 4")
        assert exc.value.lineno == 2

    @pytest.mark.parametrize("text, lineno", [
        ("3\n1 2", 1),
        ("3 1\n1 2 3 4", 2),
        ("3 1\n# c\n1 x", 3),
        ("a b\n", 1),
    ])
    def test_malformed_reports_line(self, text, lineno):
        with pytest.raises(GraphParseError) as exc:
            parse_edge_list(text)
        assert exc.value.lineno == lineno
        assert f"line {lineno}" in str(exc.value)

    def test_comments_weights_duplicates(self):
        text = "% gset\n# more\n4 3\n1 2 1\n2 1 -1\n\n3 4 2\n"
        with pytest.warns(UserWarning) as rec:
            g = parse_edge_list(text)
        messages = [str(w.message) for w in rec]
        assert any("weights ignored" in m for m in messages)
        assert any("header declares m=3" in m for m in messages)
        assert g.m == 2
        assert g.edges.tolist() == [[0, 1], [2, 3]]

    def test_missing_header(self):
        with pytest.raises(GraphParseError):
            parse_edge_list("% only comments\n")

    def test_round_trip_canonical(self):
        text = "5 4\n5 1\n2 3\n3 2\n4 2\n1 2\n"
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            g = parse_edge_list(text)
        out = serialize(g)
        assert out == "5 4\n1 2\n1 5\n2 3\n2 4\n"
        assert serialize(parse_edge_list(out)) == out


@given(st.integers(1, 30), st.floats(0, 1), st.integers(0, 2**32))
@settings(max_examples=40, deadline=None)
def test_round_trip_property(n, p, seed):
    g = generate_er(n, p, seed)
    text = serialize(g)
    assert parse_edge_list(text) == g
    assert serialize(parse_edge_list(text)) == text


class TestGraphInvariants:
    def test_symmetric_sorted_no_loops(self):
        g = generate_er(60, 0.2, 11)
        for v in range(g.n):
            nb = g.neighbors(v)
            assert np.all(np.diff(nb) > 0)
            assert v not in nb
            for u in nb:
                assert v in g.neighbors(u)
        assert g.degrees.sum() == 2 * g.m
        assert g.max_degree == g.degrees.max()

    def test_immutable(self):
        g = cycle(4)
        with pytest.raises(AttributeError):
            g.n = 5
        with pytest.raises(ValueError):
            g.degrees[0] = 7

    def test_constructor_validation(self):
        with pytest.raises(GraphValidationError):
            Graph(3, [(1, 1)])
        with pytest.raises(GraphBoundsError):
            Graph(3, [(0, 3)])
        with pytest.raises(GraphValidationError):
            Graph(0, [])
        assert Graph(3, [(0, 1), (1, 0), (0, 1)]).m == 1


class TestGenerateER:
    def test_p_zero(self):
        g = generate_er(5, 0.0, 123)
        assert (g.n, g.m) == (5, 0)

    def test_p_one(self):
        assert generate_er(5, 1.0, 9) == complete(5)

    def test_deterministic(self):
        a = generate_er(100, 0.5, 7)
        b = generate_er(100, 0.5, 7)
        assert np.array_equal(a.edges, b.edges)
        assert not np.array_equal(a.edges, generate_er(100, 0.5, 8).edges)

    def test_chunking_does_not_change_edges(self):
        a = generate_er(80, 0.3, 5)
        b = generate_er(80, 0.3, 5, chunk=97)
        assert a == b

    @pytest.mark.parametrize("p", [-0.1, 1.5])
    def test_bad_p(self, p):
        with pytest.raises(GraphValidationError):
            generate_er(5, p, 0)


class TestComponents:
    def test_k3(self):
        comps = connected_components(complete(3))
        assert [c.tolist() for c in comps] == [[0, 1, 2]]

    def test_two_edges(self):
        comps = connected_components(Graph(4, [(0, 2), (1, 3)]))
        assert [c.tolist() for c in comps] == [[0, 2], [1, 3]]

    def test_edgeless(self):
        comps = connected_components(Graph(3, []))
        assert [c.tolist() for c in comps] == [[0], [1], [2]]

    def test_partition(self):
        g = generate_er(200, 0.006, 1)
        comps = connected_components(g)
        allnodes = np.concatenate(comps)
        assert sorted(allnodes.tolist()) == list(range(g.n))


class TestLaplacian:
    def test_edge(self, backend, edge):
        assert laplacian_apply(edge, [1.0, -1.0]).tolist() == [2.0, -2.0]

    def test_k3(self, backend):
        assert laplacian_apply(complete(3), [1.0, 0.0, 0.0]).tolist() == [2.0, -1.0, -1.0]

    def test_matches_dense(self, backend):
        rng = np.random.default_rng(0)
        g = generate_er(40, 0.2, 3)
        L = dense_laplacian(g)
        Y = rng.standard_normal((40, 5))
        np.testing.assert_allclose(laplacian_apply(g, Y), L @ Y, rtol=0, atol=1e-12)
        S = rng.standard_normal((3, 40, 2))
        np.testing.assert_allclose(laplacian_apply(g, S), np.einsum("ij,bjl->bil", L, S), atol=1e-12)

    def test_ones_in_null_space(self, backend):
        g = generate_er(30, 0.3, 2)
        for c in (-3, 0, 1, 5):
            assert not np.any(laplacian_apply(g, np.full(g.n, float(c))))

    def test_shape_error(self, edge):
        with pytest.raises(ShapeError):
            laplacian_apply(edge, np.zeros(3))

    def test_worker_count_is_bitwise_irrelevant(self, backend):
        g = generate_er(300, 0.05, 4)
        Y = np.random.default_rng(1).standard_normal((g.n, 16))
        ref = laplacian_apply(g, Y, workers=1)
        for w in (2, 4, 8):
            assert np.array_equal(laplacian_apply(g, Y, workers=w), ref)


class TestLaplacianProperties:
    def test_quadratic_form(self):
        rng = np.random.default_rng(5)
        for _ in range(5):
            g = random_connected(rng)
            X = rng.uniform(-1, 1, (1000, g.n))
            quad = np.einsum("ij,ij->i", X, laplacian_apply(g, X.T).T)
            edge_sum = ((X[:, g.edges[:, 0]] - X[:, g.edges[:, 1]]) ** 2).sum(axis=1)
            assert np.all(quad >= -1e-12)
            np.testing.assert_allclose(quad, edge_sum, rtol=1e-9)

    def test_symmetry(self):
        rng = np.random.default_rng(6)
        g = random_connected(rng)
        x, y = rng.standard_normal((2, g.n))
        assert abs(x @ laplacian_apply(g, y) - y @ laplacian_apply(g, x)) < 1e-9


class TestDegreeStats:
    def test_star(self):
        s = degree_stats(star(3))
        assert s.mean == 1.5
        assert s.variance == 0.75

    def test_regular(self):
        s = degree_stats(cycle(7))
        assert s.variance == 0.0 and s.mean == 2.0

    def test_edge(self, edge):
        s = degree_stats(edge)
        assert (s.mean, s.variance, s.std_dev) == (1.0, 0.0, 0.0)
