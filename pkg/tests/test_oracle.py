import itertools

import numpy as np
import pytest

from conftest import brute_maxcut, complete, complete_bipartite, cycle, petersen, random_connected
from quadcut.errors import OracleSizeError
from quadcut.graph import Graph, generate_er
from quadcut.objectives import cut_value
from quadcut.oracle import brute_force_maxcut, enumerate_lifted_fixed_points


def disjoint_union(a, b):
    return Graph(a.n + b.n, np.vstack([a.edges, b.edges + a.n]))


class TestBruteForce:
    def test_k3(self, backend):
        r = brute_force_maxcut(complete(3))
        assert r.optimum == 2
        assert r.witness[0] == 0 and cut_value(complete(3), r.witness) == 2
        assert r.count_optimal == 6

    def test_k23(self, backend):
        g = complete_bipartite(2, 3)
        r = brute_force_maxcut(g)
        assert r.optimum == 6 == g.m
        assert r.count_optimal == 2

    def test_petersen(self, backend):
        assert brute_force_maxcut(petersen()).optimum == 12

    def test_single_node(self, backend):
        r = brute_force_maxcut(Graph(1, []))
        assert r.optimum == 0 and r.witness.tolist() == [0]

    def test_matches_plain_enumeration(self, backend):
        rng = np.random.default_rng(0)
        for _ in range(15):
            g = generate_er(int(rng.integers(2, 11)), float(rng.uniform(0.1, 0.9)), int(rng.integers(1 << 30)))
            r = brute_force_maxcut(g)
            assert r.optimum == brute_maxcut(g)
            assert cut_value(g, r.witness) == r.optimum

    def test_witness_is_smallest_code(self, backend):
        g = cycle(6)
        r = brute_force_maxcut(g)
        codes = [c for c in range(1 << 6) if c % 2 == 0
                 and cut_value(g, (c >> np.arange(6)) & 1) == r.optimum]
        assert int((r.witness.astype(int) << np.arange(6)).sum()) == min(codes)
        assert r.count_optimal == 2 * len(codes)

    def test_workers_agree(self, backend):
        g = generate_er(16, 0.4, 3)
        ref = brute_force_maxcut(g)
        for w in (2, 4):
            r = brute_force_maxcut(g, workers=w)
            assert (r.optimum, r.count_optimal) == (ref.optimum, ref.count_optimal)
            assert np.array_equal(r.witness, ref.witness)

    def test_size_guard(self):
        with pytest.raises(OracleSizeError):
            brute_force_maxcut(Graph(27, [(0, 1)]))


class TestOracleProperties:
    def test_disjoint_union_additive(self, backend):
        rng = np.random.default_rng(1)
        for _ in range(5):
            a = random_connected(rng, 2, 8)
            b = random_connected(rng, 2, 8)
            u = disjoint_union(a, b)
            assert brute_force_maxcut(u).optimum == brute_force_maxcut(a).optimum + brute_force_maxcut(b).optimum

    def test_complement_symmetry(self, backend):
        rng = np.random.default_rng(2)
        for _ in range(5):
            g = random_connected(rng, 2, 12)
            r = brute_force_maxcut(g)
            assert cut_value(g, 1 - r.witness) == r.optimum

    @pytest.mark.parametrize("a,b", [(1, 1), (2, 3), (3, 3), (4, 5)])
    def test_bipartite(self, backend, a, b):
        g = complete_bipartite(a, b)
        assert brute_force_maxcut(g).optimum == g.m

    def test_even_cycle_bipartite(self, backend):
        assert brute_force_maxcut(cycle(10)).optimum == 10


class TestLiftedFixedPoints:
    def test_edge_l1(self, edge):
        P = enumerate_lifted_fixed_points(edge, 1)
        assert sorted(map(tuple, P[:, :, 0].tolist())) == [(-1, 1), (1, -1)]

    def test_edge_l2(self, edge):
        P = enumerate_lifted_fixed_points(edge, 2)
        assert P.shape == (12, 2, 2)
        assert len({p.tobytes() for p in P}) == 12

    def test_constant_rows_never_listed(self):
        g = complete(4)
        for l in (1, 2, 3):
            P = enumerate_lifted_fixed_points(g, l)
            assert len(P) == 2 ** (4 * l) - 2 ** l
            assert not (P == P[:, :1, :]).all(axis=(1, 2)).any()

    def test_connected_small_graphs(self):
        for n in (2, 3, 4):
            for edges in ([(i, i + 1) for i in range(n - 1)], list(itertools.combinations(range(n), 2))):
                P = enumerate_lifted_fixed_points(Graph(n, edges), 2)
                assert len(P) == 2 ** (2 * n) - 4

    def test_size_guard(self):
        with pytest.raises(OracleSizeError):
            enumerate_lifted_fixed_points(complete(7), 3)
        with pytest.raises(ValueError):
            enumerate_lifted_fixed_points(complete(3), 0)
