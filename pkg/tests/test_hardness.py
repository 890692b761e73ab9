#!/usr/bin/env python3
"""
Unit tests for the induced matching hardness construction
"""
import unittest
from collections import defaultdict
from itertools import count

from imatch.errors import PreconditionError, ReductionSoundnessError
from imatch.formats import dump_sidecar, load_sidecar
from imatch.graph import (
    Graph, S1, S2, gen_complete, gen_cycle, gen_petersen, gen_random,
    is_bipartite, is_clique, is_induced_matching, remove_edge,
    remove_vertices, validate_cycle
)
from imatch.hardness import (
    BAD_ONE_SIDE, COMPLETELY_BAD, EMPTY, FOR_K1, FOR_K2, GOOD, OCCUPIED,
    SYMMETRIC, UNOCCUPIED, Connector, ConnectorUnit, GadgetUnit, VertexTag,
    build_gadget_cycle, build_h, extract_clique_from_matching, gadget_pairs,
    h_vertex_count, lift_clique_to_matching, matching_census, target_size,
    to_sidecar
)
from imatch.solvers import NO, YES, has_induced_matching, max_clique
from tests import SLOW


def star(leaves):
    return Graph(leaves + 1, [(0, j) for j in range(1, leaves + 1)])


def uniform_matching(out, edge_rep, vertex_rep):
    """ One same-representative edge per unit, the same choice everywhere """
    matching = []
    for unit in out.units:
        rep = edge_rep if isinstance(unit, GadgetUnit) else vertex_rep
        matching.append((out.index[VertexTag(unit, S1, rep)],
                         out.index[VertexTag(unit, S2, rep)]))
    return matching


def unit_members(out, unit, side):
    """ Vertex of ``unit`` on ``side`` for each representative, in order """
    if isinstance(unit, GadgetUnit):
        reps = out.source_edges
    else:
        reps = range(out.source.n)
    return [out.index[VertexTag(unit, side, rep)] for rep in reps]


def unit_groups(out):
    """ Units of each gadget, then units of each connector group """
    groups = defaultdict(list)
    for unit in out.units:
        if isinstance(unit, GadgetUnit):
            groups['gadget', unit.pair].append(unit)
        else:
            groups['group', unit.for_integer].append(unit)
    return list(groups.values())


class StructureAssertions:

    def assertUnitsComplete(self, out):
        h = out.graph
        for unit in out.units:
            s1 = unit_members(out, unit, S1)
            s2 = unit_members(out, unit, S2)
            self.assertTrue(all(h.has_edge(x, y) for x in s1 for y in s2),
                            unit)

    def assertSameRepresentativeNeverAdjacent(self, out):
        h = out.graph
        for units in unit_groups(out):
            self.assertGreaterEqual(len(units), 3)
            for a in units:
                s1 = unit_members(out, a, S1)
                for b in units:
                    if a == b:
                        continue
                    s2 = unit_members(out, b, S2)
                    for i, x in enumerate(s1):
                        self.assertFalse(h.has_edge(x, s2[i]), (a, b, i))
                        # differing representatives are joined
                        self.assertTrue(h.has_edge(x, s2[i - 1]), (a, b, i))

    def assertStructure(self, g, k):
        out = build_h(g, k)
        h = out.graph
        gadgets = k * (2 * k + 1)
        self.assertEqual(len(out.gadget_cycle.pairs), gadgets)
        self.assertEqual(len(out.connectors), gadgets)
        self.assertEqual(len(out.units), 6 * gadgets)
        self.assertEqual(h.n, h_vertex_count(g.n, g.m, k))
        self.assertEqual(h.n, 6 * gadgets * (g.n + g.m))
        self.assertIsNotNone(is_bipartite(h))
        self.assertTrue(all(h.side_of(u) is not h.side_of(v)
                            for u, v in h.edges))
        self.assertEqual(len(h.vertices_on(S1)), h.n // 2)
        self.assertTrue(validate_cycle(h, out.ham_cycle))
        self.assertUnitsComplete(out)
        self.assertSameRepresentativeNeverAdjacent(out)
        return out


class SizesUnitTests(unittest.TestCase):

    def test_sizes(self):
        self.assertEqual(target_size(1), 18)
        self.assertEqual(target_size(2), 60)
        self.assertEqual(h_vertex_count(7, 21, 1), 504)
        self.assertEqual(gadget_pairs(3), [(1, 2), (1, 3), (2, 3)])

    def test_gadget_cycle_of_three(self):
        gcycle = build_gadget_cycle(3)
        self.assertEqual(gcycle.pairs, ((1, 2), (2, 3), (1, 3)))
        self.assertEqual(gcycle.shared, (2, 3, 1))

    def test_gadget_cycle_shares_integers(self):
        for l in (5, 7):
            gcycle = build_gadget_cycle(l)
            self.assertEqual(sorted(gcycle.pairs), gadget_pairs(l))
            count = len(gcycle.pairs)
            for i, t in enumerate(gcycle.shared):
                self.assertIn(t, gcycle.pairs[i])
                self.assertIn(t, gcycle.pairs[(i + 1) % count])

    def test_preconditions(self):
        with self.assertRaises(PreconditionError):
            build_h(gen_complete(7), 0)
        with self.assertRaises(PreconditionError):
            build_h(gen_complete(6), 1)
        with self.assertRaises(PreconditionError):
            build_h(Graph(8, [(0, 1), (2, 3)]), 1)


class StructureUnitTests(StructureAssertions, unittest.TestCase):
    """
    Layout, bipartition, cycle and unit wiring for k in {1, 2}
    """

    def test_complete_minus_an_edge(self):
        g = remove_edge(gen_complete(7), 0, 1)
        self.assertEqual(self.assertStructure(g, 1).graph.n, 486)
        self.assertEqual(self.assertStructure(g, 2).graph.n, 1620)

    def test_cycle(self):
        self.assertEqual(self.assertStructure(gen_cycle(7), 1).graph.n, 252)
        self.assertEqual(self.assertStructure(gen_cycle(7), 2).graph.n, 840)

    def test_petersen_minus_three_vertices(self):
        g = remove_vertices(gen_petersen(), [0, 1, 7])
        self.assertEqual((g.n, g.m), (7, 7))
        self.assertEqual(self.assertStructure(g, 1).graph.n, 252)
        self.assertEqual(self.assertStructure(g, 2).graph.n, 840)

    def test_complete_with_k2(self):
        out = self.assertStructure(gen_complete(7), 2)
        self.assertEqual((out.graph.n, out.target), (1680, 60))


class CompleteSourceUnitTests(StructureAssertions, unittest.TestCase):
    """
    H for K_7 and k = 1: a yes-instance, 504 vertices.
    """

    @classmethod
    def setUpClass(cls):
        cls.out = build_h(gen_complete(7), 1)

    def test_layout(self):
        out = self.out
        h = out.graph
        self.assertEqual(h.n, 504)
        self.assertEqual((out.k, out.l, out.target), (1, 3, 18))
        self.assertEqual(out.prov[0],
                         VertexTag(GadgetUnit((1, 2), FOR_K1), S1, (0, 1)))
        self.assertEqual(out.prov[21].side, S2)
        self.assertEqual(out.prov[378],
                         VertexTag(ConnectorUnit(0, 2, 0), S1, 0))
        self.assertEqual(out.connectors[0], Connector(0, 2, 2))
        for v in (0, 200, 503):
            self.assertEqual(out.index[out.prov[v]], v)

    def test_bipartite_equally_sided_hamiltonian(self):
        h = self.out.graph
        self.assertIsNotNone(is_bipartite(h))
        self.assertEqual(len(h.vertices_on(S1)), 252)
        self.assertTrue(validate_cycle(h, self.out.ham_cycle))

    def test_units_are_complete_bipartite(self):
        self.assertUnitsComplete(self.out)

    def test_same_representative_never_adjacent(self):
        self.assertSameRepresentativeNeverAdjacent(self.out)

    def test_decision_finds_the_target(self):
        h = self.out.graph
        decision = has_induced_matching(h, 18, budget=2000)
        self.assertIs(decision.verdict, YES)
        self.assertEqual(len(decision.witness), 18)
        self.assertTrue(is_induced_matching(h, decision.witness))
        clique = extract_clique_from_matching(self.out, decision.witness)
        self.assertEqual(len(clique), 3)
        self.assertTrue(is_clique(self.out.source, clique))

    def test_lift_then_extract(self):
        matching = lift_clique_to_matching(self.out, [4, 1, 6])
        self.assertEqual(len(matching), 18)
        self.assertTrue(is_induced_matching(self.out.graph, matching))
        self.assertEqual(extract_clique_from_matching(self.out, matching),
                         [1, 4, 6])

    def test_lift_census(self):
        census = matching_census(self.out,
                                 lift_clique_to_matching(self.out, [0, 1, 2]))
        self.assertEqual((census.inner, census.boundary, census.dangling),
                         (18, 0, 0))
        self.assertEqual(census.per_gadget, (3, 3, 3))
        self.assertEqual(census.per_group, (3, 3, 3))
        self.assertEqual(set(census.gadget_status), {GOOD})
        self.assertEqual(set(census.unit_status.values()), {UNOCCUPIED})

    def test_lift_preconditions(self):
        with self.assertRaises(PreconditionError):
            lift_clique_to_matching(self.out, [0, 1])

    def test_extract_preconditions(self):
        matching = lift_clique_to_matching(self.out, [0, 1, 2])
        with self.assertRaises(PreconditionError):
            extract_clique_from_matching(self.out, matching[:-1])
        # two edges in one complete unit
        crowded = matching[:-1] + [(0, 22)]
        with self.assertRaises(PreconditionError):
            extract_clique_from_matching(self.out, crowded)

    def test_boundary_census(self):
        out = self.out
        # gadget (1, 2) meets connector 0 (integer 2) with its k2 unit and
        # connector 2 (integer 1) with its k1 unit
        g1 = out.index[VertexTag(GadgetUnit((1, 2), FOR_K2), S1, (2, 3))]
        c1 = out.index[VertexTag(ConnectorUnit(0, 2, 0), S2, 0)]
        g2 = out.index[VertexTag(GadgetUnit((1, 2), FOR_K1), S1, (4, 5))]
        c2 = out.index[VertexTag(ConnectorUnit(2, 1, 0), S2, 6)]
        self.assertTrue(out.graph.has_edge(g1, c1))
        self.assertTrue(out.graph.has_edge(g2, c2))

        census = matching_census(out, [(g1, c1)])
        self.assertEqual((census.inner, census.boundary), (0, 1))
        self.assertEqual(census.gadget_status[0], BAD_ONE_SIDE)
        self.assertEqual(census.gadget_status[1], GOOD)
        self.assertEqual(census.boundary_per_group, (0, 1, 0))
        self.assertEqual(census.unit_status[ConnectorUnit(0, 2, 0)],
                         OCCUPIED)
        self.assertEqual(census.unit_status[ConnectorUnit(0, 2, 1)], EMPTY)

        both = [(g1, c1), (g2, c2)]
        self.assertTrue(is_induced_matching(out.graph, both))
        census = matching_census(out, both)
        self.assertEqual(census.gadget_status[0], COMPLETELY_BAD)

    def test_oriented_exclusions(self):
        out = self.out
        # k2 unit of (1, 2) representing (2, 3) skips connector vertex 3
        g = out.index[VertexTag(GadgetUnit((1, 2), FOR_K2), S1, (2, 3))]
        skipped = out.index[VertexTag(ConnectorUnit(0, 2, 1), S2, 3)]
        joined = out.index[VertexTag(ConnectorUnit(0, 2, 1), S2, 2)]
        self.assertFalse(out.graph.has_edge(g, skipped))
        self.assertTrue(out.graph.has_edge(g, joined))

    def test_sidecar(self):
        doc = to_sidecar(self.out)
        self.assertEqual(len(doc['provenance']), 504)
        self.assertEqual(doc['provenance'][0],
                         {'unit': {'gadget': [1, 2], 'role': 'k1'},
                          'side': 1, 'represents': [0, 1]})
        self.assertEqual(doc['boundary_rule'], 'oriented')
        self.assertEqual(doc['shared'], [2, 3, 1])
        text = dump_sidecar('im-hard', self.out.graph, doc)
        self.assertEqual(load_sidecar(text, self.out.graph)['target'], 18)


class BoundaryRuleUnitTests(unittest.TestCase):
    """
    The star K_{1,6} has no triangle, so no H built from it may hold an
    induced matching of 18 edges that reads back as a clique.
    """

    def test_symmetric_rule_admits_a_false_matching(self):
        out = build_h(star(6), 1, SYMMETRIC)
        matching = uniform_matching(out, (0, 1), 0)
        self.assertEqual(len(matching), 18)
        self.assertTrue(is_induced_matching(out.graph, matching))
        with self.assertRaises(ReductionSoundnessError):
            extract_clique_from_matching(out, matching)

    def test_oriented_rule_rejects_it(self):
        out = build_h(star(6), 1)
        self.assertTrue(validate_cycle(out.graph, out.ham_cycle))
        matching = uniform_matching(out, (0, 1), 0)
        self.assertFalse(is_induced_matching(out.graph, matching))


@unittest.skipUnless(SLOW, 'set IMATCH_SLOW_TESTS=1')
class DecisionSlowTests(unittest.TestCase):

    def test_triangle_free_source_is_a_no_instance(self):
        out = build_h(gen_cycle(7), 1)
        self.assertIs(has_induced_matching(out.graph, 18).verdict, NO)

    def test_triangle_source_is_a_yes_instance(self):
        out = build_h(Graph(7, [(0, 1), (1, 2), (0, 2)]), 1)
        decision = has_induced_matching(out.graph, 18)
        self.assertIs(decision.verdict, YES)
        self.assertEqual(extract_clique_from_matching(out, decision.witness),
                         [0, 1, 2])

    def test_random_source_with_a_triangle(self):
        sources = (gen_random(7, 0.35, seed) for seed in count(1))
        g = next(g for g in sources
                 if g.m >= 3 and max_clique(g).value == 3)
        out = build_h(g, 1)
        decision = has_induced_matching(out.graph, 18, budget=10 ** 6)
        self.assertIs(decision.verdict, YES)
        clique = extract_clique_from_matching(out, decision.witness)
        self.assertTrue(is_clique(g, clique))

    def test_k2_lift_then_extract(self):
        out = build_h(gen_complete(7), 2)
        self.assertTrue(validate_cycle(out.graph, out.ham_cycle))
        matching = lift_clique_to_matching(out, [0, 1, 2, 3, 4])
        self.assertEqual(len(matching), 60)
        self.assertTrue(is_induced_matching(out.graph, matching))
        self.assertEqual(extract_clique_from_matching(out, matching),
                         [0, 1, 2, 3, 4])


if __name__ == '__main__':
    unittest.main()
