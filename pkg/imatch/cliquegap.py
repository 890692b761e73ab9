"""
k-Clique to (2k+1)-Clique

Two copies of G, every cross-copy pair joined, plus one apex vertex adjacent
to everything. A k-clique of G gives a (2k+1)-clique of H and any clique of H
projects back onto the larger of its two halves.
"""
import logging
from collections import namedtuple

from imatch.errors import PreconditionError
from imatch.graph import Graph, is_clique

LOG = logging.getLogger(__name__)

CliqueGapOutput = namedtuple('CliqueGapOutput',
                             ['graph', 'copy1', 'copy2', 'apex', 'k',
                              'target'])


def clique_gap_reduce(g, k):
    """
    :param g: source ``Graph``
    :param k: clique size asked of ``g``, >= 1
    :returns: ``CliqueGapOutput``; copy1 ids ``0..n-1``, copy2 ids
              ``n..2n-1``, apex ``2n``, target ``2k+1``
    """
    if k < 1:
        raise PreconditionError('k must be >= 1, got %d' % k)
    n = g.n
    edges = []
    for u, v in g.edges:
        edges.append((u, v))
        edges.append((n + u, n + v))
    edges.extend((u, n + v) for u in range(n) for v in range(n))
    apex = 2 * n
    edges.extend((x, apex) for x in range(2 * n))

    h = Graph(2 * n + 1, edges)
    LOG.info('clique-gap: %r, k=%d -> %r' % (g, k, h))
    return CliqueGapOutput(h, tuple(range(n)), tuple(range(n, 2 * n)),
                           apex, k, 2 * k + 1)


def _source_of(out):
    n = len(out.copy1)
    return Graph(n, ((u, v) for u, v in out.graph.edges if v < n))


def lift_clique(out, clique):
    """
    copy1(c) + copy2(c) + apex.

    :param clique: k vertices of the source graph forming a clique
    :returns: sorted list of 2k+1 vertex ids of H
    """
    clique = sorted(set(clique))
    if len(clique) != out.k:
        raise PreconditionError('need a clique of size %d, got %d vertices'
                                % (out.k, len(clique)))
    if not is_clique(_source_of(out), clique):
        raise PreconditionError('%r is not a clique of the source graph'
                                % clique)
    lifted = [out.copy1[v] for v in clique] + \
        [out.copy2[v] for v in clique] + [out.apex]
    return sorted(lifted)


def project_clique(out, clique):
    """
    Preimage of the larger of ``clique`` intersected with each copy. Ties go
    to copy1.

    :param clique: clique of H with at least ``target`` vertices
    :returns: sorted list of source vertex ids, a clique of size >= k
    """
    clique = set(clique)
    if len(clique) < out.target:
        raise PreconditionError('clique has %d vertices, need at least %d'
                                % (len(clique), out.target))
    if not is_clique(out.graph, clique):
        raise PreconditionError('witness is not a clique of H')
    n = len(out.copy1)
    first = sorted(v for v in clique if v < n)
    second = sorted(v - n for v in clique if n <= v < 2 * n)
    return first if len(first) >= len(second) else second


def to_sidecar(out):
    return {'copy1': list(out.copy1), 'copy2': list(out.copy2),
            'apex': out.apex, 'k': out.k, 'target': out.target}
