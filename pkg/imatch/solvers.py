"""
Exact solvers for desk-scale instances

One branch-and-bound maximum clique core over int bitmasks, bounded by a
greedy coloring of the candidate set. Independent sets are cliques of the
complement; induced matchings are independent sets of the conflict graph,
whose vertices are the edges of G and whose edges join two edges that share
an endpoint or are joined by an edge of G.

Vertices are relabelled before the search so that labels follow degree
descending, ties by id. Coloring always takes the lowest label first and
branching takes the highest color first, which fixes the result for a given
graph and budget. The budget counts branch nodes.

The induced matching decision works on the graph itself instead: a
depth-first search over the vertices that may still be matched, which
reaches the matchings of structured graphs such as the hardness
construction far sooner than the clique core does.
"""
import logging
import time
from collections import namedtuple
from enum import Enum
from itertools import combinations

from imatch.errors import PreconditionError
from imatch.graph import (
    Graph, is_clique, is_independent_set, is_induced_matching, norm_edge
)

LOG = logging.getLogger(__name__)

# refuse subset enumeration over more edges than this
MAX_EXHAUSTIVE_EDGES = 24


class Status(Enum):
    optimal = 'optimal'
    budget_exhausted = 'budget-exhausted'


OPTIMAL = Status.optimal
BUDGET_EXHAUSTED = Status.budget_exhausted


class Verdict(Enum):
    yes = 'yes'
    no = 'no'
    unknown = 'unknown'


YES = Verdict.yes
NO = Verdict.no
UNKNOWN = Verdict.unknown

SolveResult = namedtuple('SolveResult', ['value', 'witness', 'status',
                                         'nodes_explored', 'elapsed'])
DecisionResult = namedtuple('DecisionResult', ['verdict', 'witness',
                                               'nodes_explored', 'elapsed'])
ConflictGraph = namedtuple('ConflictGraph', ['graph', 'edge_of'])


def _bits(mask):
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _color_classes(candidates, rows):
    """
    Greedy sequential coloring of ``candidates``. Returns the vertices in
    color order with the color (an upper bound on any clique among the
    vertices up to that position) of each.
    """
    order, colors = [], []
    color = 0
    while candidates:
        color += 1
        free = candidates
        while free:
            low = free & -free
            v = low.bit_length() - 1
            order.append(v)
            colors.append(color)
            candidates ^= low
            free &= ~low
            free &= ~rows[v]
    return order, colors


class _CliqueSearch:
    """
    Maximum clique over ``rows`` (labels already in branching order).

    Runs on an explicit stack of frames ``[size, chosen, candidates, order,
    colors, i]``, one per open branch, so the depth is bounded by memory
    only.

    :param rows: adjacency bitmask per vertex, no self bits
    :param budget: branch node limit or None
    """

    def __init__(self, rows, budget=None):
        self.rows = rows
        self.budget = budget
        self.best = 0
        self.best_bits = 0
        self.nodes = 0
        self.exhausted = False

    def _frame(self, size, chosen, candidates):
        order, colors = _color_classes(candidates, self.rows)
        return [size, chosen, candidates, order, colors, len(order) - 1]

    def run(self):
        stack = [self._frame(0, 0, (1 << len(self.rows)) - 1)]
        while stack:
            frame = stack[-1]
            size, chosen, candidates, order, colors, i = frame
            if i < 0 or size + colors[i] <= self.best:
                stack.pop()
                continue
            v = order[i]
            bit = 1 << v
            frame[2] = candidates & ~bit
            frame[5] = i - 1
            self.nodes += 1
            if self.budget is not None and self.nodes > self.budget:
                self.exhausted = True
                break
            grown = chosen | bit
            rest = candidates & self.rows[v]
            if rest:
                stack.append(self._frame(size + 1, grown, rest))
            elif size + 1 > self.best:
                self.best = size + 1
                self.best_bits = grown
        return _bits(self.best_bits)


def _permute(order, adjacency):
    """
    Rows relabelled so that ``order[i]`` becomes label ``i``.

    :param adjacency: sequence of neighbor iterables in the old labels
    """
    label = [0] * len(order)
    for i, v in enumerate(order):
        label[v] = i
    rows = []
    for v in order:
        row = 0
        for w in adjacency[v]:
            row |= 1 << label[w]
        rows.append(row)
    return rows


def _complement_rows(rows):
    full = (1 << len(rows)) - 1
    return [full ^ row ^ (1 << i) for i, row in enumerate(rows)]


def _solve(rows, labels, budget, what):
    started = time.perf_counter()
    search = _CliqueSearch(rows, budget)
    found = sorted(labels[i] for i in search.run())
    elapsed = time.perf_counter() - started
    status = BUDGET_EXHAUSTED if search.exhausted else OPTIMAL
    if search.exhausted:
        LOG.warning('%s: budget of %d nodes exhausted, best %d'
                    % (what, budget, len(found)))
    else:
        LOG.debug('%s: %d after %d nodes in %.3fs'
                  % (what, len(found), search.nodes, elapsed))
    return found, status, search.nodes, elapsed


def _clique_rows(g):
    order = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    return _permute(order, [g.neighbors(v) for v in range(g.n)]), order


def _independent_rows(g):
    # complement degree descending is degree ascending
    order = sorted(range(g.n), key=lambda v: (g.degree(v), v))
    rows = _permute(order, [g.neighbors(v) for v in range(g.n)])
    return _complement_rows(rows), order


def max_clique(g, budget=None):
    """
    :param g: ``Graph``
    :param budget: branch node limit, None for unbounded
    :returns: ``SolveResult`` with a sorted vertex list as witness
    """
    rows, order = _clique_rows(g)
    found, status, nodes, elapsed = _solve(rows, order, budget, 'clique')
    return SolveResult(len(found), found, status, nodes, elapsed)


def max_independent_set(g, budget=None):
    """ Maximum clique of the complement of ``g`` """
    rows, order = _independent_rows(g)
    found, status, nodes, elapsed = _solve(rows, order, budget, 'mis')
    return SolveResult(len(found), found, status, nodes, elapsed)


def _conflict_rows(g, edge_of):
    """ Conflict rows over edge ids ``0..m-1`` as numbered by ``edge_of`` """
    incident = [0] * g.n
    for i, (u, v) in enumerate(edge_of):
        incident[u] |= 1 << i
        incident[v] |= 1 << i
    closed = [incident[v] for v in range(g.n)]
    for v in range(g.n):
        for w in g.neighbors(v):
            closed[v] |= incident[w]
    rows = []
    for i, (u, v) in enumerate(edge_of):
        rows.append((closed[u] | closed[v]) & ~(1 << i))
    return rows


def conflict_graph(g):
    """
    The square of the line graph of ``g``: its independent sets are exactly
    the induced matchings of ``g``.

    :returns: ``ConflictGraph``; vertex ``i`` stands for ``edge_of[i]``, in
              lexicographic edge order
    """
    edge_of = tuple(g.edge_list())
    rows = _conflict_rows(g, edge_of)
    edges = [(i, j) for i, row in enumerate(rows) for j in _bits(row)
             if j > i]
    return ConflictGraph(Graph(len(edge_of), edges), edge_of)


def _matching_rows(g):
    """
    Complemented conflict rows labelled in branching order: conflict degree
    ascending, ties by lexicographic edge order.
    """
    lex = g.edge_list()
    degree = [row.bit_count() for row in _conflict_rows(g, lex)]
    order = sorted(range(len(lex)), key=lambda i: (degree[i], i))
    edge_of = [lex[i] for i in order]
    return _complement_rows(_conflict_rows(g, edge_of)), edge_of


def max_induced_matching(g, budget=None):
    """
    Maximum induced matching as a maximum independent set of the conflict
    graph.

    :returns: ``SolveResult`` with a sorted edge list as witness
    """
    rows, edge_of = _matching_rows(g)
    found, status, nodes, elapsed = _solve(rows, edge_of, budget, 'mim')
    return SolveResult(len(found), found, status, nodes, elapsed)


# alive edge count up to which a node also pays for the clique cover bound
COVER_BOUND_EDGES = 4000

_Settled = namedtuple('_Settled', ['alive', 'forced', 'edges', 'pivot'])
_Move = namedtuple('_Move', ['edges', 'settled'])


class _MatchingSearch:
    """
    Depth-first search for an induced matching of ``target`` edges, over
    masks of the vertices that may still be matched ("alive").

    A node takes its alive vertex of least alive degree and either matches
    it to one of its alive neighbors, which kills the closed neighborhoods
    of both endpoints, or leaves it unmatched. Vertices left without an
    alive neighbor are dropped, and an alive edge whose endpoints have no
    other alive neighbor is taken at once. Matches that force the most such
    edges are tried first, then those that kill the fewest vertices, then
    by neighbor id. Leaving the vertex unmatched comes last.

    Nodes are pruned when the alive vertices cannot hold enough edges: half
    their number, the number of alive edges, and once few enough edges are
    alive, a greedy clique cover of their conflict graph.

    :param g: ``Graph``
    :param target: edges wanted, >= 1
    :param budget: branch node limit or None
    """

    def __init__(self, g, target, budget=None):
        self.adj = g.bit_rows()
        self.closed = [row | (1 << v) for v, row in enumerate(self.adj)]
        self.n = g.n
        self.target = target
        self.budget = budget
        self.nodes = 0
        self.exhausted = False
        self.path = []
        self.best = []

    def _settle(self, alive):
        adj = self.adj
        keep = alive
        forced = []
        degrees = 0
        pivot, low = None, None
        for v in _bits(alive):
            row = adj[v] & alive
            d = row.bit_count()
            if d == 0:
                keep ^= 1 << v
                continue
            if d == 1:
                w = row.bit_length() - 1
                if (adj[w] & alive).bit_count() == 1:
                    keep ^= 1 << v
                    if v < w:
                        forced.append((v, w))
                    continue
            degrees += d
            if low is None or d < low:
                pivot, low = v, d
        return _Settled(keep, tuple(forced), degrees // 2, pivot)

    def _cover(self, alive):
        """ Greedy clique cover size of the conflicts among alive edges """
        adj = self.adj
        edges = [(u, w) for u in _bits(alive) for w in _bits(adj[u] & alive)
                 if w > u]
        incident = {}
        for i, (u, w) in enumerate(edges):
            incident[u] = incident.get(u, 0) | 1 << i
            incident[w] = incident.get(w, 0) | 1 << i
        reach = {}
        for v, own in incident.items():
            for x in _bits(adj[v] & alive):
                own |= incident[x]
            reach[v] = own
        rows = [reach[u] | reach[w] for u, w in edges]
        remaining = (1 << len(edges)) - 1
        classes = 0
        while remaining:
            classes += 1
            free = remaining
            while free:
                low = free & -free
                remaining ^= low
                free &= rows[low.bit_length() - 1] & ~low
        return classes

    def _capacity(self, settled):
        cap = min(settled.alive.bit_count() // 2, settled.edges)
        if cap and settled.edges <= COVER_BOUND_EDGES:
            cap = min(cap, self._cover(settled.alive))
        return cap

    def _open(self, settled):
        """ Frame ``[depth, moves, next]`` for a node, None if pruned """
        depth = len(self.path)
        if settled.pivot is None or \
                depth + self._capacity(settled) < self.target:
            return None
        v = settled.pivot
        alive = settled.alive
        ranked = []
        for w in _bits(self.adj[v] & alive):
            killed = (self.closed[v] | self.closed[w]) & alive
            child = self._settle(alive ^ killed)
            ranked.append((-len(child.forced), killed.bit_count(), w, child))
        ranked.sort(key=lambda r: r[:3])
        moves = [_Move((norm_edge(v, w),) + child.forced, child)
                 for _, _, w, child in ranked]
        unmatched = self._settle(alive ^ (1 << v))
        moves.append(_Move(unmatched.forced, unmatched))
        moves = [move for move in moves
                 if depth + len(move.edges) + move.settled.edges
                 >= self.target]
        return [depth, moves, 0]

    def run(self):
        root = self._settle((1 << self.n) - 1)
        self.path = list(root.forced)
        self.best = list(self.path)
        frame = self._open(root) if len(self.best) < self.target else None
        stack = [frame] if frame else []
        while stack:
            frame = stack[-1]
            depth, moves, i = frame
            if i == len(moves):
                stack.pop()
                continue
            frame[2] = i + 1
            self.nodes += 1
            if self.budget is not None and self.nodes > self.budget:
                self.exhausted = True
                break
            move = moves[i]
            del self.path[depth:]
            self.path.extend(move.edges)
            if len(self.path) > len(self.best):
                self.best = list(self.path)
                if len(self.best) >= self.target:
                    break
            child = self._open(move.settled)
            if child is not None:
                stack.append(child)
        return sorted(self.best)


def has_induced_matching(g, target, budget=None):
    """
    Decide whether ``g`` has an induced matching of ``target`` edges.

    The search stops at the first matching of that size, see
    ``_MatchingSearch`` for the order it tries things in.

    :returns: ``DecisionResult``; ``UNKNOWN`` only when the budget runs out
              first, with the largest matching seen as witness
    """
    if target <= 0:
        return DecisionResult(YES, [], 0, 0.0)
    started = time.perf_counter()
    search = _MatchingSearch(g, target, budget)
    found = search.run()
    elapsed = time.perf_counter() - started
    LOG.debug('mim >= %d: best %d after %d nodes in %.3fs'
              % (target, len(found), search.nodes, elapsed))
    if len(found) >= target:
        return DecisionResult(YES, found, search.nodes, elapsed)
    if search.exhausted:
        LOG.warning('mim >= %d: budget of %d nodes exhausted, best %d'
                    % (target, budget, len(found)))
        return DecisionResult(UNKNOWN, found, search.nodes, elapsed)
    return DecisionResult(NO, [], search.nodes, elapsed)


# Exhaustive oracles, largest subsets first.

def exhaustive_clique(g):
    for size in range(g.n, 0, -1):
        for subset in combinations(range(g.n), size):
            if is_clique(g, subset):
                return list(subset)
    return []


def exhaustive_independent_set(g):
    for size in range(g.n, 0, -1):
        for subset in combinations(range(g.n), size):
            if is_independent_set(g, subset):
                return list(subset)
    return []


def exhaustive_induced_matching(g):
    """
    :raises PreconditionError: if ``g`` has more than
                               ``MAX_EXHAUSTIVE_EDGES`` edges
    """
    if g.m > MAX_EXHAUSTIVE_EDGES:
        raise PreconditionError('%d edges is too many to enumerate (max %d)'
                                % (g.m, MAX_EXHAUSTIVE_EDGES))
    edges = g.edge_list()
    for size in range(min(g.m, g.n // 2), 0, -1):
        for subset in combinations(edges, size):
            if is_induced_matching(g, subset):
                return list(subset)
    return []
