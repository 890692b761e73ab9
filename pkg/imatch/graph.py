"""
Simple undirected graphs, witness validators and seeded generators

Vertices are dense integer ids ``0..n-1``. Everything a reduction knows about a
vertex lives in side tables owned by the reduction, never in the id.
"""
import logging
import random
from collections import deque
from enum import Enum
from itertools import combinations

from imatch.errors import PreconditionError

LOG = logging.getLogger(__name__)


class Side(Enum):
    """
    Bipartition label of a vertex:

    ``Side.S1``: first side
    ``Side.S2``: second side
    """
    S1 = 1
    S2 = 2

    @property
    def opposite(self):
        return Side.S2 if self is Side.S1 else Side.S1


S1 = Side.S1
S2 = Side.S2


def norm_edge(u, v):
    """ Canonical (low, high) form of an undirected edge """
    return (u, v) if u < v else (v, u)


class Graph:
    """
    Immutable simple undirected graph with optional side labels.

    :param n: number of vertices
    :param edges: iterable of vertex pairs, any orientation; repeated pairs
                  collapse into one edge
    :param sides: optional sequence of ``Side`` per vertex; when given, every
                  edge has to join an ``S1`` vertex to an ``S2`` vertex
    """
    __slots__ = ('n', 'edges', 'sides', '_adj', '_rows')

    def __init__(self, n, edges=(), sides=None):
        if n < 0:
            raise PreconditionError('vertex count must be >= 0, got %d' % n)
        normed = set()
        adj = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise PreconditionError('self-loop on vertex %d' % u)
            if not (0 <= u < n and 0 <= v < n):
                raise PreconditionError('edge (%d, %d) out of range for n=%d'
                                        % (u, v, n))
            normed.add(norm_edge(u, v))
            adj[u].add(v)
            adj[v].add(u)

        if sides is not None:
            sides = tuple(sides)
            if len(sides) != n:
                raise PreconditionError('%d side labels for %d vertices'
                                        % (len(sides), n))
            for u, v in normed:
                if sides[u] is sides[v]:
                    raise PreconditionError(
                        'edge (%d, %d) joins two %s vertices'
                        % (u, v, sides[u].name))

        self.n = n
        self.edges = frozenset(normed)
        self.sides = sides
        self._adj = tuple(frozenset(a) for a in adj)
        self._rows = None

    @property
    def m(self):
        return len(self.edges)

    def has_edge(self, u, v):
        if not (0 <= u < self.n and 0 <= v < self.n):
            return False
        return v in self._adj[u]

    def neighbors(self, v):
        return self._adj[v]

    def degree(self, v):
        return len(self._adj[v])

    def edge_list(self):
        """ Edges in lexicographic order """
        return sorted(self.edges)

    def bit_rows(self):
        """
        Adjacency as one int bitmask per vertex, bit ``w`` of row ``v`` set iff
        ``(v, w)`` is an edge. Computed once and cached.
        """
        if self._rows is None:
            rows = []
            for nbrs in self._adj:
                row = 0
                for w in nbrs:
                    row |= 1 << w
                rows.append(row)
            self._rows = tuple(rows)
        return self._rows

    def side_of(self, v):
        return None if self.sides is None else self.sides[v]

    def vertices_on(self, side):
        if self.sides is None:
            return []
        return [v for v in range(self.n) if self.sides[v] is side]

    def with_sides(self, sides):
        return Graph(self.n, self.edges, sides)

    def subgraph(self, vertices):
        """
        Induced subgraph on ``vertices``, relabelled ``0..len-1`` in ascending
        order of the original ids. Side labels carry over.

        :param vertices: iterable of vertex ids
        :returns: tuple of (``Graph``, tuple of original ids per new id)
        """
        ids = tuple(sorted(set(vertices)))
        local = {v: i for i, v in enumerate(ids)}
        edges = []
        for v in ids:
            for w in self._adj[v]:
                if w > v and w in local:
                    edges.append((local[v], local[w]))
        sides = None
        if self.sides is not None:
            sides = [self.sides[v] for v in ids]
        return Graph(len(ids), edges, sides), ids

    def complement(self):
        edges = [(u, v) for u, v in combinations(range(self.n), 2)
                 if v not in self._adj[u]]
        return Graph(self.n, edges)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (self.n, self.edges, self.sides) == \
            (other.n, other.edges, other.sides)

    def __hash__(self):
        return hash((self.n, self.edges, self.sides))

    def __repr__(self):
        return 'Graph(n=%d, m=%d%s)' % (
            self.n, self.m, ', sided' if self.sides is not None else '')


# Validators. None of these raise; malformed witnesses are simply invalid.

def is_bipartite(g):
    """
    2-color ``g`` by BFS, starting each component at its lowest id vertex,
    which is labelled ``S1``.

    :param g: ``Graph``
    :returns: tuple of ``Side`` per vertex, or None if ``g`` has an odd cycle
    """
    labels = [None] * g.n
    for root in range(g.n):
        if labels[root] is not None:
            continue
        labels[root] = S1
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for w in sorted(g.neighbors(v)):
                if labels[w] is None:
                    labels[w] = labels[v].opposite
                    queue.append(w)
                elif labels[w] is labels[v]:
                    return None
    return tuple(labels)


def is_induced_matching(g, m):
    """
    True iff every pair in ``m`` is an edge of ``g``, the pairs are vertex
    disjoint and no edge of ``g`` joins endpoints of two different pairs.
    Quadratic in ``len(m)``.
    """
    pairs = []
    seen = set()
    for u, v in m:
        if not g.has_edge(u, v):
            return False
        if u in seen or v in seen:
            return False
        seen.update((u, v))
        pairs.append((u, v))
    for (a, b), (c, d) in combinations(pairs, 2):
        if g.has_edge(a, c) or g.has_edge(a, d) or \
                g.has_edge(b, c) or g.has_edge(b, d):
            return False
    return True


def _in_range(g, s):
    return all(0 <= v < g.n for v in s)


def is_clique(g, s):
    s = set(s)
    if not _in_range(g, s):
        return False
    return all(g.has_edge(u, v) for u, v in combinations(s, 2))


def is_independent_set(g, s):
    s = set(s)
    if not _in_range(g, s):
        return False
    return not any(g.has_edge(u, v) for u, v in combinations(s, 2))


def validate_path(g, p):
    """
    True iff ``p`` visits every vertex of ``g`` exactly once and consecutive
    vertices are adjacent.
    """
    p = list(p)
    if len(p) != g.n or len(set(p)) != g.n or not _in_range(g, p):
        return False
    return all(g.has_edge(a, b) for a, b in zip(p, p[1:]))


def validate_cycle(g, c):
    """
    True iff ``c`` is a Hamiltonian cycle of ``g``: a sequence of all ``n``
    vertices, no repeats, every consecutive pair including last to first an
    edge. A simple graph needs at least 3 vertices to have one.
    """
    c = list(c)
    if g.n < 3:
        return False
    return validate_path(g, c) and g.has_edge(c[-1], c[0])


# Generators. All randomness comes from ``random.Random(seed)`` (Mersenne
# Twister), drawing once per vertex pair in lexicographic pair order, so a seed
# names the same graph on every run and platform.

def gen_empty(n):
    return Graph(n)


def gen_complete(n):
    return Graph(n, combinations(range(n), 2))


def gen_complete_bipartite(a, b):
    """
    K_{a,b} with ids ``0..a-1`` on ``S1`` and ``a..a+b-1`` on ``S2``.
    """
    edges = [(u, a + v) for u in range(a) for v in range(b)]
    return Graph(a + b, edges, [S1] * a + [S2] * b)


def gen_path(n):
    return Graph(n, [(v, v + 1) for v in range(n - 1)])


def gen_cycle(n):
    if n < 3:
        raise PreconditionError('a cycle needs at least 3 vertices')
    return Graph(n, [(v, (v + 1) % n) for v in range(n)])


def gen_petersen():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(i + 5, (i + 2) % 5 + 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


def _check_probability(prob):
    if not 0.0 <= prob <= 1.0:
        raise PreconditionError('edge probability %r not in [0, 1]' % prob)


def gen_random(n, edge_probability, seed):
    """
    G(n, p) random graph.

    :param n: vertex count
    :param edge_probability: chance of each pair becoming an edge
    :param seed: seed for ``random.Random``
    :returns: ``Graph``
    """
    _check_probability(edge_probability)
    rng = random.Random(seed)
    edges = [(u, v) for u, v in combinations(range(n), 2)
             if rng.random() < edge_probability]
    return Graph(n, edges)


def gen_random_bipartite(p, q, edge_probability, seed):
    """
    Random bipartite graph with ``S1 = 0..p-1`` and ``S2 = p..p+q-1``;
    equally sided when ``p == q``.
    """
    _check_probability(edge_probability)
    rng = random.Random(seed)
    edges = [(u, p + v) for u in range(p) for v in range(q)
             if rng.random() < edge_probability]
    return Graph(p + q, edges, [S1] * p + [S2] * q)


def gen_triangle_free(n, edge_probability, seed):
    """
    Random triangle-free graph: pairs are drawn like ``gen_random`` but a
    pair is skipped whenever its endpoints already share a neighbor.
    """
    _check_probability(edge_probability)
    rng = random.Random(seed)
    adj = [set() for _ in range(n)]
    edges = []
    for u, v in combinations(range(n), 2):
        if rng.random() < edge_probability and not adj[u] & adj[v]:
            adj[u].add(v)
            adj[v].add(u)
            edges.append((u, v))
    return Graph(n, edges)


def remove_edge(g, u, v):
    if not g.has_edge(u, v):
        raise PreconditionError('(%d, %d) is not an edge' % (u, v))
    return Graph(g.n, g.edges - {norm_edge(u, v)}, g.sides)


def remove_vertices(g, vertices):
    """ Induced subgraph on every vertex not in ``vertices``, relabelled """
    gone = set(vertices)
    return g.subgraph(v for v in range(g.n) if v not in gone)[0]
