"""
Approximation-preserving reductions for induced matching

* image: Max Independent Set to induced matching by attaching a pendant
  image vertex to every vertex
* ham-closure: induced matching to induced matching in a Hamiltonian graph
* blowup: Max Independent Set to induced matching in bipartite graphs
* hambip-closure: bipartite induced matching to induced matching in a
  Hamiltonian, equally sided bipartite graph

Every construction comes with the witness maps its optimum argument uses.
"""
import logging
from collections import namedtuple, defaultdict

from imatch.errors import PreconditionError
from imatch.graph import (
    Graph, S1, S2, is_bipartite, is_independent_set, is_induced_matching,
    norm_edge, validate_cycle
)

LOG = logging.getLogger(__name__)

ImageReductionOutput = namedtuple('ImageReductionOutput',
                                  ['graph', 'source', 'image_map'])
HamClosureOutput = namedtuple('HamClosureOutput',
                              ['graph', 'source', 'b_map', 'ham_cycle'])
BlowupOutput = namedtuple('BlowupOutput',
                          ['graph', 'source', 'group_size', 's_groups',
                           't_groups'])
HamBipClosureOutput = namedtuple('HamBipClosureOutput',
                                 ['graph', 'source', 'v1', 'v2', 'l_map',
                                  'm_map', 'ham_cycle'])
BlowupCensus = namedtuple('BlowupCensus', ['homogeneous', 'heterogeneous'])


def _normed(edges):
    return sorted(norm_edge(u, v) for u, v in edges)


def _require_induced(out, matching):
    if not is_induced_matching(out.graph, matching):
        raise PreconditionError('witness is not an induced matching of the '
                                'reduced graph')


def _require_independent(out, vertices):
    if not is_independent_set(out.source, vertices):
        raise PreconditionError('witness is not an independent set of the '
                                'source graph')


# image vertices

def image_reduce(g):
    """
    Add an image vertex ``n + u`` for every vertex ``u``, joined to ``u``
    only.

    :returns: ``ImageReductionOutput``
    """
    n = g.n
    edges = list(g.edges) + [(u, n + u) for u in range(n)]
    h = Graph(2 * n, edges)
    LOG.info('image: %r -> %r' % (g, h))
    return ImageReductionOutput(h, g, tuple(n + u for u in range(n)))


def matching_to_mis(out, matching):
    """
    One source vertex per matching edge: the source end of a pendant edge,
    otherwise the lower id endpoint.

    :returns: sorted list of source vertices, as many as ``matching`` edges
    """
    _require_induced(out, matching)
    n = out.source.n
    chosen = []
    for u, v in _normed(matching):
        chosen.append(u if v >= n else min(u, v))
    return sorted(chosen)


def mis_to_matching(out, vertices):
    """ The pendant edge of every vertex of an independent set """
    _require_independent(out, vertices)
    return sorted((u, out.image_map[u]) for u in set(vertices))


# Hamiltonian closure

def ham_closure_reduce(g):
    """
    Add a clique ``b_0..b_{p-1}`` (ids ``p..2p-1``) joined to every source
    vertex. The cycle ``b_0, 0, b_1, 1, ...`` is Hamiltonian.

    :param g: source ``Graph`` with p >= 2 vertices
    :returns: ``HamClosureOutput``
    """
    p = g.n
    if p < 2:
        raise PreconditionError('need at least 2 vertices, got %d' % p)
    b = tuple(range(p, 2 * p))
    edges = list(g.edges)
    edges.extend((b[i], b[j]) for i in range(p) for j in range(i + 1, p))
    edges.extend((u, x) for u in range(p) for x in b)
    h = Graph(2 * p, edges)

    cycle = []
    for u in range(p):
        cycle.extend((b[u], u))
    if not validate_cycle(h, cycle):
        raise PreconditionError('closure cycle failed validation')
    LOG.info('ham-closure: %r -> %r' % (g, h))
    return HamClosureOutput(h, g, b, tuple(cycle))


def _lowest_edge(g):
    if not g.m:
        raise PreconditionError('source graph has no edge to fall back on')
    return [g.edge_list()[0]]


def ham_closure_recover(out, matching):
    """
    Keep ``matching`` if it has at least two edges, all of them source edges,
    otherwise answer with the lowest source edge.

    :returns: sorted induced matching of the source graph
    """
    _require_induced(out, matching)
    edges = _normed(matching)
    if len(edges) >= 2 and all(out.source.has_edge(u, v) for u, v in edges):
        return edges
    return _lowest_edge(out.source)


def closure_lift(out, matching):
    """
    An induced matching of the source is one of either closure's output,
    under the same ids.
    """
    edges = _normed(matching)
    if not is_induced_matching(out.source, edges):
        raise PreconditionError('witness is not an induced matching of the '
                                'source graph')
    return edges


# blow-up

def blowup_reduce(g):
    """
    Replace vertex ``i`` by groups ``s_i`` (ids ``i*n^3 .. (i+1)*n^3 - 1`` on
    ``S1``) and ``t_i`` (the same ids shifted by ``n^4``, on ``S2``). The
    k-th vertices of ``s_i`` and ``t_i`` form a homogeneous edge; ``s_i``
    and ``t_j`` are completely joined whenever ``(i, j)`` is a source edge.

    :returns: ``BlowupOutput``
    """
    n = g.n
    size = n ** 3
    half = n * size
    s_groups = tuple(tuple(range(i * size, (i + 1) * size))
                     for i in range(n))
    t_groups = tuple(tuple(half + v for v in group) for group in s_groups)

    edges = []
    for i in range(n):
        edges.extend(zip(s_groups[i], t_groups[i]))
    for i, j in g.edges:
        for a, b in ((i, j), (j, i)):
            edges.extend((x, y) for x in s_groups[a] for y in t_groups[b])
    h = Graph(2 * half, edges, [S1] * half + [S2] * half)
    LOG.info('blowup: %r -> %r' % (g, h))
    return BlowupOutput(h, g, size, s_groups, t_groups)


def _group_of(out, v):
    half = out.source.n * out.group_size
    return (v % half) // out.group_size


def _is_homogeneous(out, u, v):
    half = out.source.n * out.group_size
    return abs(u - v) == half


def blowup_to_mis(out, matching):
    """
    Source vertices whose homogeneous edges appear in ``matching``.

    :returns: sorted list, independent in the source graph
    """
    _require_induced(out, matching)
    return sorted({_group_of(out, u) for u, v in matching
                   if _is_homogeneous(out, u, v)})


def mis_to_blowup_matching(out, vertices):
    """ All homogeneous edges of every chosen group: n^3 per vertex """
    _require_independent(out, vertices)
    edges = []
    for i in sorted(set(vertices)):
        edges.extend(zip(out.s_groups[i], out.t_groups[i]))
    return edges


def blowup_census(out, matching):
    """
    :returns: ``BlowupCensus``; ``homogeneous[i]`` counts the homogeneous
              edges of group ``i``, ``heterogeneous`` maps ``(i, j)`` to the
              number of edges between ``s_i`` and ``t_j``
    """
    homogeneous = [0] * out.source.n
    heterogeneous = defaultdict(int)
    half = out.source.n * out.group_size
    for u, v in _normed(matching):
        if _is_homogeneous(out, u, v):
            homogeneous[_group_of(out, u)] += 1
        else:
            s, t = (u, v) if u < half else (v, u)
            heterogeneous[(_group_of(out, s), _group_of(out, t))] += 1
    return BlowupCensus(tuple(homogeneous), dict(heterogeneous))


def saturate_homogeneous(out, matching):
    """
    Add every homogeneous edge of each group that already contributes one.
    The result is still an induced matching whenever ``matching`` is.
    """
    edges = set(_normed(matching))
    for u, v in list(edges):
        if _is_homogeneous(out, u, v):
            i = _group_of(out, u)
            edges.update(zip(out.s_groups[i], out.t_groups[i]))
    return sorted(edges)


# Hamiltonian bipartite closure

def hambip_closure_reduce(g):
    """
    Add ``l_0..l_p`` on ``S1`` (ids ``n..n+p``) and ``m_0..m_p`` on ``S2``
    (ids ``n+p+1..n+2p+1``). The added vertices form a K_{p+1,p+1}; every
    ``l`` is joined to all of ``V2`` and every ``m`` to all of ``V1``.

    Uses the graph's side labels, or the ``is_bipartite`` labelling if it has
    none.

    :param g: bipartite ``Graph`` with p >= 1 vertices on each side
    :returns: ``HamBipClosureOutput``
    """
    sides = g.sides if g.sides is not None else is_bipartite(g)
    if sides is None:
        raise PreconditionError('source graph is not bipartite')
    v1 = tuple(v for v in range(g.n) if sides[v] is S1)
    v2 = tuple(v for v in range(g.n) if sides[v] is S2)
    if len(v1) != len(v2) or not v1:
        raise PreconditionError('need two equal non-empty sides, got %d and '
                                '%d' % (len(v1), len(v2)))
    n, p = g.n, len(v1)
    l_map = tuple(range(n, n + p + 1))
    m_map = tuple(range(n + p + 1, n + 2 * p + 2))

    edges = list(g.edges)
    edges.extend((a, b) for a in l_map for b in m_map)
    edges.extend((u, b) for u in v1 for b in m_map)
    edges.extend((v, a) for v in v2 for a in l_map)
    h = Graph(n + 2 * p + 2, edges,
              list(sides) + [S1] * (p + 1) + [S2] * (p + 1))

    cycle = []
    for j in range(p):
        cycle.extend((m_map[j], v1[j]))
    cycle.append(m_map[p])
    for j in range(p):
        cycle.extend((l_map[j], v2[j]))
    cycle.append(l_map[p])
    if not validate_cycle(h, cycle):
        raise PreconditionError('closure cycle failed validation')
    LOG.info('hambip-closure: %r -> %r' % (g, h))
    return HamBipClosureOutput(h, g, v1, v2, l_map, m_map, tuple(cycle))


def hambip_recover(out, matching):
    """
    Keep ``matching`` if it is non-empty and made of source edges only,
    otherwise answer with the lowest source edge.
    """
    _require_induced(out, matching)
    edges = _normed(matching)
    if edges and all(out.source.has_edge(u, v) for u, v in edges):
        return edges
    return _lowest_edge(out.source)


def is_equally_sided(g):
    if g.sides is None:
        return False
    return len(g.vertices_on(S1)) == len(g.vertices_on(S2))


# sidecars

def image_sidecar(out):
    return {'image': list(out.image_map)}


def ham_closure_sidecar(out):
    return {'b': list(out.b_map), 'ham_cycle': list(out.ham_cycle)}


def blowup_sidecar(out):
    return {'group_size': out.group_size,
            's_groups': [[g[0], g[-1]] for g in out.s_groups],
            't_groups': [[g[0], g[-1]] for g in out.t_groups]}


def hambip_sidecar(out):
    return {'v1': list(out.v1), 'v2': list(out.v2), 'l': list(out.l_map),
            'm': list(out.m_map), 'ham_cycle': list(out.ham_cycle)}
