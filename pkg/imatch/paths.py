"""
Constructive paths and circuits

Eulerian circuits (Hierholzer), line graphs, the Hamiltonian cycle of the line
graph of an odd complete graph, and endpoint-prescribed Hamiltonian paths in
balanced complete bipartite graphs and in their dense relatives used by the
hardness gadgets.
"""
import logging
from collections import namedtuple, deque
from itertools import combinations

from imatch.errors import PathRepairError, PreconditionError
from imatch.graph import (
    Graph, S1, S2, gen_complete, norm_edge, validate_cycle, validate_path
)

LOG = logging.getLogger(__name__)

# node limit for the backtracking fallback of dense_bipartite_ham_path
SEARCH_STEPS = 200000

EdgeSequence = namedtuple('EdgeSequence', ['start', 'edges'])
LineGraphMap = namedtuple('LineGraphMap', ['graph', 'edge_of', 'vertex_of'])


def walk_vertices(seq):
    """
    Vertex sequence of an ``EdgeSequence`` read from its start vertex.

    :param seq: ``EdgeSequence``
    :returns: list of vertex ids, one longer than the edge list
    :raises PreconditionError: if an edge does not continue the walk
    """
    if seq.start is None:
        return []
    walk = [seq.start]
    for u, v in seq.edges:
        here = walk[-1]
        if here == u:
            walk.append(v)
        elif here == v:
            walk.append(u)
        else:
            raise PreconditionError('edge (%d, %d) does not continue the walk '
                                    'at vertex %d' % (u, v, here))
    return walk


def _reachable(g, root):
    seen = {root}
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for w in g.neighbors(v):
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return seen


def eulerian_circuit(g):
    """
    Eulerian circuit by Hierholzer's algorithm. The walk starts at the lowest
    id non-isolated vertex and always leaves a vertex along its lowest id
    unused edge, so the result is fixed for a given graph.

    :param g: ``Graph`` whose non-isolated vertices are connected and of even
              degree
    :returns: ``EdgeSequence``; empty with ``start=None`` for an edgeless graph
    :raises PreconditionError: naming an odd-degree or unreachable vertex
    """
    for v in range(g.n):
        if g.degree(v) % 2:
            raise PreconditionError('vertex %d has odd degree %d'
                                    % (v, g.degree(v)))
    active = [v for v in range(g.n) if g.degree(v)]
    if not active:
        return EdgeSequence(None, ())
    start = active[0]
    reached = _reachable(g, start)
    for v in active:
        if v not in reached:
            raise PreconditionError('vertex %d is not connected to vertex %d'
                                    % (v, start))

    nbrs = [sorted(g.neighbors(v)) for v in range(g.n)]
    ptr = [0] * g.n
    used = set()
    stack = [start]
    circuit = []
    while stack:
        v = stack[-1]
        row = nbrs[v]
        while ptr[v] < len(row) and norm_edge(v, row[ptr[v]]) in used:
            ptr[v] += 1
        if ptr[v] < len(row):
            w = row[ptr[v]]
            used.add(norm_edge(v, w))
            stack.append(w)
        else:
            circuit.append(stack.pop())
    circuit.reverse()

    edges = tuple(norm_edge(a, b) for a, b in zip(circuit, circuit[1:]))
    LOG.debug('eulerian circuit of %r from %d: %d edges' % (g, start,
                                                            len(edges)))
    return EdgeSequence(start, edges)


def line_graph(g):
    """
    Line graph of ``g``: one vertex per edge, numbered in lexicographic edge
    order, adjacent iff the edges share an endpoint.

    :returns: ``LineGraphMap`` with ``edge_of[i]`` the source edge of vertex
              ``i`` and ``vertex_of`` its inverse
    """
    edge_of = tuple(g.edge_list())
    vertex_of = {e: i for i, e in enumerate(edge_of)}
    incident = [[] for _ in range(g.n)]
    for i, (u, v) in enumerate(edge_of):
        incident[u].append(i)
        incident[v].append(i)
    edges = set()
    for ids in incident:
        edges.update(combinations(ids, 2))
    return LineGraphMap(Graph(len(edge_of), edges), edge_of, vertex_of)


def line_graph_ham_cycle(l):
    """
    Hamiltonian cycle in the line graph of K_l for odd ``l``: the Eulerian
    circuit of K_l read as a sequence of line graph vertices.

    :param l: odd integer >= 3
    :returns: tuple of (``LineGraphMap`` of K_l, list of vertex ids)
    """
    if not isinstance(l, int) or l < 3 or l % 2 == 0:
        raise PreconditionError('l must be an odd integer >= 3, got %r' % l)
    complete = gen_complete(l)
    circuit = eulerian_circuit(complete)
    lmap = line_graph(complete)
    cycle = [lmap.vertex_of[e] for e in circuit.edges]
    if not validate_cycle(lmap.graph, cycle):
        raise PathRepairError('line graph cycle of K_%d failed validation'
                              % l, cycle)
    return lmap, cycle


def balanced_kb_ham_path(n, u, v, pairing=None):
    """
    Hamiltonian path from ``u`` to ``v`` in K_{n,n}, laid out like
    ``gen_complete_bipartite(n, n)`` (``0..n-1`` on ``S1``).

    The remaining vertices are paired ``(x_i, y_i)`` with ``x_i`` on ``v``'s
    side and ``y_i`` on ``u``'s side and the path is
    ``u, x_1, y_1, ..., x_{n-1}, y_{n-1}, v``.

    :param n: side size, >= 1
    :param u: start vertex
    :param v: end vertex, on the other side
    :param pairing: optional ordered list of ``(x_i, y_i)``; default pairs both
                    sides in ascending id order
    :returns: list of 2n vertex ids
    """
    if n < 1:
        raise PreconditionError('side size must be >= 1, got %d' % n)
    for x in (u, v):
        if not 0 <= x < 2 * n:
            raise PreconditionError('vertex %d not in K_{%d,%d}' % (x, n, n))

    def side_members(x):
        return range(n) if x < n else range(n, 2 * n)

    if (u < n) == (v < n):
        raise PreconditionError('u=%d and v=%d are on the same side' % (u, v))
    own = [x for x in side_members(u) if x != u]
    other = [x for x in side_members(v) if x != v]

    if pairing is None:
        pairing = list(zip(other, own))
    else:
        pairing = [tuple(p) for p in pairing]
        if sorted(x for x, _ in pairing) != other or \
                sorted(y for _, y in pairing) != own:
            raise PreconditionError('pairing does not cover the remaining '
                                    'vertices of each side exactly once')

    path = [u]
    for x, y in pairing:
        path.extend((x, y))
    path.append(v)
    return path


def _swap_repair(path, joined):
    """
    Swap interior vertices of the same side as long as a swap strictly
    reduces the number of consecutive pairs that are not joined.
    """
    last = len(path) - 1

    def gaps(positions):
        ks = {k for p in positions for k in (p - 1, p) if 0 <= k < last}
        return sum(1 for k in ks if not joined(path[k], path[k + 1]))

    improved = True
    while improved:
        improved = False
        for i in range(last):
            if joined(path[i], path[i + 1]):
                continue
            for p in (i, i + 1):
                if p in (0, last):
                    continue
                for q in range(1, last):
                    if q == p or q % 2 != p % 2:
                        continue
                    before = gaps((p, q))
                    path[p], path[q] = path[q], path[p]
                    if gaps((p, q)) < before:
                        LOG.debug('repair: swapped positions %d and %d'
                                  % (p, q))
                        improved = True
                        break
                    path[p], path[q] = path[q], path[p]
                if improved:
                    break
            if improved:
                break
    return path


def _first_gap(path, joined):
    for i in range(len(path) - 1):
        if not joined(path[i], path[i + 1]):
            return i
    return None


def _search(g, u, v, joined, max_steps):
    """
    Depth-first extension from ``u``, trying the candidate with the fewest
    free neighbors first (ties by id). Returns the path or raises with the
    longest prefix reached.
    """
    remaining = set(range(g.n)) - {u, v}

    def free_degree(x):
        return sum(1 for y in g.neighbors(x)
                   if (y in remaining or y == v) and joined(x, y))

    def candidates(x):
        cands = [y for y in g.neighbors(x)
                 if y in remaining and joined(x, y)]
        return iter(sorted(cands, key=lambda y: (free_degree(y), y)))

    path = [u]
    best = [u]
    frames = [candidates(u)]
    steps = 0
    while frames:
        if not remaining and joined(path[-1], v):
            return path + [v]
        nxt = next(frames[-1], None) if remaining else None
        if nxt is None:
            frames.pop()
            dead = path.pop()
            if frames:
                remaining.add(dead)
            continue
        if nxt not in remaining:
            continue
        steps += 1
        if steps > max_steps:
            break
        path.append(nxt)
        remaining.discard(nxt)
        if len(path) > len(best):
            best = list(path)
        frames.append(candidates(nxt))
    raise PathRepairError('no Hamiltonian path from %d to %d found (%d steps)'
                          % (u, v, steps), best)


def dense_bipartite_ham_path(g, u, v, forbidden=None,
                             max_steps=SEARCH_STEPS):
    """
    Hamiltonian path from ``u`` to ``v`` in a balanced bipartite graph that
    is complete bipartite minus a sparse set of non-edges.

    Starts from the pairing path of ``balanced_kb_ham_path`` (both sides in
    ascending order), repairs non-adjacent consecutive pairs by swapping
    same-side vertices, and falls back to a bounded depth-first search if
    swaps stall. The result is validated edge by edge before it is returned.

    :param g: ``Graph`` with side labels
    :param u: start vertex on ``S1``
    :param v: end vertex on ``S2``
    :param forbidden: optional symmetric predicate ``f(x, y)``; pairs for
                      which it holds are never used consecutively even if
                      ``g`` has the edge
    :param max_steps: node limit of the fallback search
    :returns: list of vertex ids
    :raises PathRepairError: carrying the longest valid partial path
    """
    if g.sides is None:
        raise PreconditionError('graph has no side labels')
    if g.sides[u] is not S1 or g.sides[v] is not S2:
        raise PreconditionError('need u on S1 and v on S2, got %s and %s'
                                % (g.sides[u].name, g.sides[v].name))
    ones = [x for x in g.vertices_on(S1) if x != u]
    twos = [x for x in g.vertices_on(S2) if x != v]
    if len(ones) != len(twos):
        raise PreconditionError('sides are unbalanced: %d vs %d'
                                % (len(ones) + 1, len(twos) + 1))

    def joined(x, y):
        if not g.has_edge(x, y):
            return False
        return not (forbidden is not None and forbidden(x, y))

    path = [u]
    for x, y in zip(twos, ones):
        path.extend((x, y))
    path.append(v)

    path = _swap_repair(path, joined)
    gap = _first_gap(path, joined)
    if gap is not None:
        LOG.debug('swap repair stalled at position %d of %d, searching'
                  % (gap, len(path)))
        path = _search(g, u, v, joined, max_steps)

    if not validate_path(g, path) or _first_gap(path, joined) is not None:
        gap = _first_gap(path, joined)
        raise PathRepairError('constructed path failed validation',
                              path[:gap + 1] if gap is not None else path)
    return path
