#!/usr/bin/env python3
"""
Unit tests for Eulerian circuits, line graphs and Hamiltonian paths
"""
import random
import unittest

import networkx as nx
from hypothesis import given, settings, strategies as st

from imatch.errors import PathRepairError, PreconditionError
from imatch.graph import (
    Graph, S1, S2, gen_complete, gen_complete_bipartite, gen_empty, gen_path,
    gen_petersen, validate_cycle, validate_path
)
from imatch.paths import (
    EdgeSequence, balanced_kb_ham_path, dense_bipartite_ham_path,
    eulerian_circuit, line_graph, line_graph_ham_cycle, walk_vertices
)
from tests import SLOW
from tests.strategies import to_nx


class EulerianUnitTests(unittest.TestCase):

    def test_triangle_circuit_is_fixed(self):
        seq = eulerian_circuit(gen_complete(3))
        self.assertEqual(seq, EdgeSequence(0, ((0, 1), (1, 2), (0, 2))))
        self.assertEqual(walk_vertices(seq), [0, 1, 2, 0])

    def test_odd_complete_graphs(self):
        for l in range(3, 15, 2):
            g = gen_complete(l)
            seq = eulerian_circuit(g)
            self.assertEqual(len(seq.edges), g.m)
            self.assertEqual(set(seq.edges), g.edges)
            walk = walk_vertices(seq)
            self.assertEqual(walk[0], walk[-1])
            self.assertEqual(len(walk), g.m + 1)

    def test_preconditions(self):
        with self.assertRaises(PreconditionError) as ctx:
            eulerian_circuit(gen_path(3))
        self.assertIn('vertex 0', str(ctx.exception))
        two_triangles = Graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5),
                                  (3, 5)])
        with self.assertRaises(PreconditionError) as ctx:
            eulerian_circuit(two_triangles)
        self.assertIn('vertex 3', str(ctx.exception))

    def test_edgeless_graph(self):
        seq = eulerian_circuit(gen_empty(4))
        self.assertEqual(seq, EdgeSequence(None, ()))
        self.assertEqual(walk_vertices(seq), [])

    def test_isolated_vertices_are_ignored(self):
        g = Graph(5, [(1, 2), (2, 3), (1, 3)])
        self.assertEqual(eulerian_circuit(g).start, 1)

    def test_broken_walk(self):
        with self.assertRaises(PreconditionError):
            walk_vertices(EdgeSequence(0, ((0, 1), (2, 3))))


class LineGraphUnitTests(unittest.TestCase):

    def test_path_line_graph(self):
        lmap = line_graph(gen_path(4))
        self.assertEqual(lmap.edge_of, ((0, 1), (1, 2), (2, 3)))
        self.assertEqual(lmap.graph, gen_path(3))
        self.assertEqual(lmap.vertex_of[(1, 2)], 1)

    def test_matches_networkx(self):
        lmap = line_graph(gen_petersen())
        self.assertTrue(nx.is_isomorphic(
            to_nx(lmap.graph), nx.line_graph(nx.petersen_graph())))

    def test_ham_cycle_of_complete_line_graph(self):
        for l in range(3, 15, 2):
            lmap, cycle = line_graph_ham_cycle(l)
            self.assertEqual(len(cycle), l * (l - 1) // 2)
            self.assertTrue(validate_cycle(lmap.graph, cycle))

    def test_ham_cycle_needs_odd_l(self):
        for l in (1, 2, 4, 3.0):
            with self.assertRaises(PreconditionError):
                line_graph_ham_cycle(l)


class BalancedPathUnitTests(unittest.TestCase):

    def test_default_pairing(self):
        path = balanced_kb_ham_path(3, 0, 3)
        self.assertEqual(path, [0, 4, 1, 5, 2, 3])
        self.assertTrue(validate_path(gen_complete_bipartite(3, 3), path))

    def test_start_on_second_side(self):
        path = balanced_kb_ham_path(2, 3, 1)
        self.assertEqual(path, [3, 0, 2, 1])

    def test_explicit_pairing(self):
        path = balanced_kb_ham_path(3, 0, 3, [(5, 2), (4, 1)])
        self.assertEqual(path, [0, 5, 2, 4, 1, 3])
        with self.assertRaises(PreconditionError):
            balanced_kb_ham_path(3, 0, 3, [(5, 2), (5, 1)])

    def test_single_pair(self):
        self.assertEqual(balanced_kb_ham_path(1, 0, 1), [0, 1])

    def test_preconditions(self):
        with self.assertRaises(PreconditionError):
            balanced_kb_ham_path(3, 0, 1)
        with self.assertRaises(PreconditionError):
            balanced_kb_ham_path(0, 0, 1)
        with self.assertRaises(PreconditionError):
            balanced_kb_ham_path(2, 0, 4)

    def assertAlternatingPath(self, n, path, u, v):
        self.assertEqual(sorted(path), list(range(2 * n)))
        self.assertEqual((path[0], path[-1]), (u, v))
        for a, b in zip(path, path[1:]):
            self.assertNotEqual(a < n, b < n)

    def test_every_side_size(self):
        for n in range(1, 51):
            for u, v in ((0, n), (n - 1, 2 * n - 1), (2 * n - 1, 0)):
                path = balanced_kb_ham_path(n, u, v)
                self.assertAlternatingPath(n, path, u, v)

    def test_every_endpoint_pair(self):
        for n in range(1, 9):
            g = gen_complete_bipartite(n, n)
            for u in range(2 * n):
                others = range(n, 2 * n) if u < n else range(n)
                for v in others:
                    path = balanced_kb_ham_path(n, u, v)
                    self.assertAlternatingPath(n, path, u, v)
                    self.assertTrue(validate_path(g, path))


@st.composite
def dense_bipartite(draw):
    """
    K_{n,n} minus two permutations' worth of edges, so every vertex misses at
    most two neighbors, with random endpoints.
    """
    n = draw(st.integers(min_value=8, max_value=12))
    first = draw(st.permutations(range(n)))
    second = draw(st.permutations(range(n)))
    missing = {(i, n + first[i]) for i in range(n)} | \
        {(i, n + second[i]) for i in range(n)}
    edges = [(i, n + j) for i in range(n) for j in range(n)
             if (i, n + j) not in missing]
    g = Graph(2 * n, edges, [S1] * n + [S2] * n)
    u = draw(st.integers(min_value=0, max_value=n - 1))
    v = draw(st.integers(min_value=n, max_value=2 * n - 1))
    return g, u, v


class DensePathUnitTests(unittest.TestCase):

    def test_complete_bipartite(self):
        g = gen_complete_bipartite(4, 4)
        path = dense_bipartite_ham_path(g, 2, 5)
        self.assertTrue(validate_path(g, path))
        self.assertEqual((path[0], path[-1]), (2, 5))

    def test_minus_perfect_matching(self):
        n = 5
        g = Graph(2 * n, [(i, n + j) for i in range(n) for j in range(n)
                          if i != j], [S1] * n + [S2] * n)
        path = dense_bipartite_ham_path(g, 0, n + 1)
        self.assertTrue(validate_path(g, path))

    @settings(max_examples=40, deadline=None)
    @given(dense_bipartite())
    def test_dense_graphs(self, case):
        g, u, v = case
        path = dense_bipartite_ham_path(g, u, v)
        self.assertTrue(validate_path(g, path))
        self.assertEqual((path[0], path[-1]), (u, v))

    def test_forbidden_pairs_are_avoided(self):
        g = gen_complete_bipartite(4, 4)

        def forbidden(x, y):
            return {x, y} in ({0, 4}, {1, 5})

        path = dense_bipartite_ham_path(g, 0, 4, forbidden)
        self.assertTrue(validate_path(g, path))
        for a, b in zip(path, path[1:]):
            self.assertFalse(forbidden(a, b))

    def test_preconditions(self):
        g = gen_complete_bipartite(2, 3)
        with self.assertRaises(PreconditionError):
            dense_bipartite_ham_path(g, 0, 2)
        g = gen_complete_bipartite(3, 3)
        with self.assertRaises(PreconditionError):
            dense_bipartite_ham_path(g, 3, 0)
        with self.assertRaises(PreconditionError):
            dense_bipartite_ham_path(gen_path(2), 0, 1)

    def test_impossible_path_reports_partial(self):
        # vertex 1 has no neighbors at all
        g = Graph(4, [(0, 2), (0, 3)], [S1, S1, S2, S2])
        with self.assertRaises(PathRepairError) as ctx:
            dense_bipartite_ham_path(g, 0, 2)
        self.assertEqual(ctx.exception.partial[0], 0)


def forbidden_pattern(seed):
    """
    K_{n,n} with 7 <= n <= 14 where every vertex misses at most three
    partners: up to two random permutations are left out of the graph and
    one more is only forbidden, so ``dense_bipartite_ham_path`` has to
    route around both kinds.
    """
    rnd = random.Random(seed)
    n = rnd.randint(7, 14)
    layers = []
    for _ in range(rnd.randint(1, 3)):
        perm = list(range(n))
        rnd.shuffle(perm)
        layers.append({(i, n + perm[i]) for i in range(n)})
    banned = layers.pop() if len(layers) == 3 else set()
    missing = set().union(*layers) if layers else set()
    edges = [(i, n + j) for i in range(n) for j in range(n)
             if (i, n + j) not in missing]
    g = Graph(2 * n, edges, [S1] * n + [S2] * n)
    u = rnd.randrange(n)
    v = rnd.randrange(n, 2 * n)

    def forbidden(x, y):
        return (min(x, y), max(x, y)) in banned

    return g, u, v, forbidden


class DensePathCampaignUnitTests(unittest.TestCase):

    def check_patterns(self, seeds):
        for seed in seeds:
            g, u, v, forbidden = forbidden_pattern(seed)
            path = dense_bipartite_ham_path(g, u, v, forbidden)
            self.assertTrue(validate_path(g, path), 'seed %d' % seed)
            self.assertEqual((path[0], path[-1]), (u, v))
            for a, b in zip(path, path[1:]):
                self.assertFalse(forbidden(a, b), 'seed %d' % seed)

    def test_seeded_patterns(self):
        self.check_patterns(range(100))

    @unittest.skipUnless(SLOW, 'set IMATCH_SLOW_TESTS=1')
    def test_thousand_seeded_patterns(self):
        self.check_patterns(range(1000))


if __name__ == '__main__':
    unittest.main()
