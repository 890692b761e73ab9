"""
Induced matching hardness construction

Builds the Hamiltonian bipartite graph H for a source graph G and parameter
k. G has a clique of size l = 2k+1 iff H has an induced matching of size
6k(2k+1).

Layout of H:

* one gadget per integer pair (k1, k2), 1 <= k1 < k2 <= l, in lexicographic
  order; each gadget is three bipartite units (the k1 unit, the k2 unit and an
  auxiliary unit), each unit holding one S1 and one S2 vertex per edge of G
* one connector per position of the gadget cycle, after all gadgets; each
  connector is three bipartite units holding one S1 and one S2 vertex per
  vertex of G

Inside a unit the layout is the S1 representatives followed by the S2
representatives, both in the source's id (or lexicographic edge) order.
"""
import logging
from collections import namedtuple, defaultdict
from enum import Enum
from itertools import combinations

from imatch.errors import PreconditionError, ReductionSoundnessError
from imatch.graph import (
    Graph, S1, S2, is_clique, is_induced_matching, norm_edge, validate_cycle
)
from imatch.paths import dense_bipartite_ham_path, line_graph_ham_cycle

LOG = logging.getLogger(__name__)

MIN_VERTICES = 7
MIN_EDGES = 3


class UnitKind(Enum):
    """
    Role of a bipartite unit inside a gadget:

    ``UnitKind.k1``: selects the vertex for the smaller integer of the pair
    ``UnitKind.k2``: selects the vertex for the larger integer
    ``UnitKind.auxiliary``: forces both selections onto the same edge
    """
    k1 = 0
    k2 = 1
    auxiliary = 2


FOR_K1 = UnitKind.k1
FOR_K2 = UnitKind.k2
AUXILIARY = UnitKind.auxiliary

GADGET_KINDS = (FOR_K1, FOR_K2, AUXILIARY)


class BoundaryRule(Enum):
    """
    Which connector vertices a shared-integer gadget vertex representing the
    edge (a, b), a < b, is NOT joined to:

    ``BoundaryRule.oriented``: those representing a in a k1 unit and those
    representing b in a k2 unit
    ``BoundaryRule.symmetric``: those representing a or b, in either unit.
    This lets every gadget select an edge through one common vertex, so H can
    hold a full size induced matching while G is triangle free. Kept to
    demonstrate that.
    """
    oriented = 'oriented'
    symmetric = 'symmetric'


ORIENTED = BoundaryRule.oriented
SYMMETRIC = BoundaryRule.symmetric


class GadgetStatus(Enum):
    good = 'good'
    bad_one_side = 'bad-one-side'
    completely_bad = 'completely-bad'


GOOD = GadgetStatus.good
BAD_ONE_SIDE = GadgetStatus.bad_one_side
COMPLETELY_BAD = GadgetStatus.completely_bad


class UnitStatus(Enum):
    """
    Status of a connector unit under an induced matching ``M``:

    ``UnitStatus.full``: two endpoints of boundary edges of ``M``
    ``UnitStatus.occupied``: lonely, one boundary endpoint
    ``UnitStatus.unoccupied``: lonely, endpoints of ``M`` but none boundary
    ``UnitStatus.empty``: no vertex of ``M``
    """
    full = 'full'
    occupied = 'occupied'
    unoccupied = 'unoccupied'
    empty = 'empty'


FULL = UnitStatus.full
OCCUPIED = UnitStatus.occupied
UNOCCUPIED = UnitStatus.unoccupied
EMPTY = UnitStatus.empty

GadgetUnit = namedtuple('GadgetUnit', ['pair', 'kind'])
ConnectorUnit = namedtuple('ConnectorUnit',
                           ['connector_id', 'for_integer', 'unit_index'])
VertexTag = namedtuple('VertexTag', ['unit', 'side', 'represents'])
GadgetCycle = namedtuple('GadgetCycle', ['pairs', 'shared'])
Connector = namedtuple('Connector', ['gadget_a', 'gadget_b', 'shared'])

ImReductionOutput = namedtuple('ImReductionOutput', [
    'graph', 'source', 'prov', 'index', 'units', 'ham_cycle',
    'gadget_cycle', 'connectors', 'k', 'l', 'target', 'source_edges',
    'boundary_rule',
])

MatchingCensus = namedtuple('MatchingCensus', [
    'inner', 'boundary', 'dangling', 'per_gadget', 'per_group',
    'boundary_per_group', 'gadget_status', 'unit_status',
])


def target_size(k):
    return 6 * k * (2 * k + 1)


def h_vertex_count(n, m, k):
    """ |V(H)| for a source with n vertices and m edges """
    return 6 * k * (2 * k + 1) * (n + m)


def gadget_pairs(l):
    """ Integer pairs of the gadgets in gadget id order """
    return list(combinations(range(1, l + 1), 2))


def build_gadget_cycle(l):
    """
    Cyclic order of the gadgets in which consecutive pairs share an integer:
    the Hamiltonian cycle of the line graph of K_l.

    :param l: odd integer >= 3
    :returns: ``GadgetCycle``; ``pairs[i]`` uses integers ``1..l`` and
              ``shared[i]`` is the integer common to ``pairs[i]`` and
              ``pairs[i + 1]`` (cyclically)
    """
    lmap, cycle = line_graph_ham_cycle(l)
    pairs = [(lmap.edge_of[v][0] + 1, lmap.edge_of[v][1] + 1) for v in cycle]
    shared = []
    for i, pair in enumerate(pairs):
        common = set(pair) & set(pairs[(i + 1) % len(pairs)])
        if len(common) != 1:
            raise PreconditionError('gadget cycle positions %d and %d share '
                                    '%d integers' % (i, i + 1, len(common)))
        shared.append(common.pop())
    return GadgetCycle(tuple(pairs), tuple(shared))


class _Layout:
    """ Vertex id arithmetic for one H """

    def __init__(self, n, m, k):
        self.n = n
        self.m = m
        self.l = 2 * k + 1
        self.pairs = gadget_pairs(self.l)
        self.gadget_id = {p: i for i, p in enumerate(self.pairs)}
        self.gadget_area = len(self.pairs) * 3 * 2 * m
        self.total = self.gadget_area + len(self.pairs) * 3 * 2 * n

    def gadget_unit_base(self, gid, kind):
        return (gid * 3 + kind.value) * 2 * self.m

    def connector_unit_base(self, cid, unit_index):
        return self.gadget_area + (cid * 3 + unit_index) * 2 * self.n

    def unit_for(self, pair, t):
        return FOR_K1 if t == pair[0] else FOR_K2


def _complete_unit(base, size, edges):
    edges.extend((base + x, base + size + y)
                 for x in range(size) for y in range(size))


def _cross_units(bases, size, edges):
    """ S1 of one unit to S2 of another wherever the representatives differ """
    for a in bases:
        for b in bases:
            if a == b:
                continue
            edges.extend((a + x, b + size + y)
                         for x in range(size) for y in range(size) if x != y)


def _excluded(rule, kind, edge):
    if rule is SYMMETRIC:
        return set(edge)
    return {edge[0]} if kind is FOR_K1 else {edge[1]}


def build_h(g, k, boundary_rule=ORIENTED):
    """
    Build H from ``g`` and ``k`` together with its provenance and a
    Hamiltonian cycle.

    :param g: source ``Graph`` with at least 7 vertices and 3 edges
    :param k: >= 1; the clique size asked of ``g`` is 2k+1
    :param boundary_rule: ``BoundaryRule``, default: ``ORIENTED``
    :returns: ``ImReductionOutput``
    :raises PreconditionError: on a source that is too small or ``k < 1``
    :raises PathRepairError: if the cycle cannot be assembled
    """
    if k < 1:
        raise PreconditionError('k must be >= 1, got %d' % k)
    if g.n < MIN_VERTICES or g.m < MIN_EDGES:
        raise PreconditionError('source needs at least %d vertices and %d '
                                'edges, got n=%d m=%d'
                                % (MIN_VERTICES, MIN_EDGES, g.n, g.m))
    boundary_rule = BoundaryRule(boundary_rule)
    n, m = g.n, g.m
    source_edges = tuple(g.edge_list())
    lay = _Layout(n, m, k)
    gcycle = build_gadget_cycle(lay.l)
    count = len(gcycle.pairs)

    units = []
    prov = [None] * lay.total
    for gid, pair in enumerate(lay.pairs):
        for kind in GADGET_KINDS:
            unit = GadgetUnit(pair, kind)
            units.append(unit)
            base = lay.gadget_unit_base(gid, kind)
            for j, e in enumerate(source_edges):
                prov[base + j] = VertexTag(unit, S1, e)
                prov[base + m + j] = VertexTag(unit, S2, e)

    connectors = []
    for cid in range(count):
        t = gcycle.shared[cid]
        connectors.append(Connector(lay.gadget_id[gcycle.pairs[cid]],
                                    lay.gadget_id[gcycle.pairs[(cid + 1)
                                                               % count]],
                                    t))
        for u in range(3):
            unit = ConnectorUnit(cid, t, u)
            units.append(unit)
            base = lay.connector_unit_base(cid, u)
            for x in range(n):
                prov[base + x] = VertexTag(unit, S1, x)
                prov[base + n + x] = VertexTag(unit, S2, x)

    edges = []
    for gid in range(len(lay.pairs)):
        bases = [lay.gadget_unit_base(gid, kind) for kind in GADGET_KINDS]
        for base in bases:
            _complete_unit(base, m, edges)
        _cross_units(bases, m, edges)

    groups = defaultdict(list)
    for cid, conn in enumerate(connectors):
        for u in range(3):
            base = lay.connector_unit_base(cid, u)
            _complete_unit(base, n, edges)
            groups[conn.shared].append(base)
    for t in sorted(groups):
        _cross_units(groups[t], n, edges)

    for cid, conn in enumerate(connectors):
        t = conn.shared
        cbases = [lay.connector_unit_base(cid, u) for u in range(3)]
        for gid in (conn.gadget_a, conn.gadget_b):
            kind = lay.unit_for(lay.pairs[gid], t)
            gbase = lay.gadget_unit_base(gid, kind)
            for j, e in enumerate(source_edges):
                skip = _excluded(boundary_rule, kind, e)
                for cbase in cbases:
                    for x in range(n):
                        if x in skip:
                            continue
                        edges.append((gbase + j, cbase + n + x))
                        edges.append((gbase + m + j, cbase + x))

    h = Graph(lay.total, edges, [tag.side for tag in prov])
    LOG.info('im-hard: %r, k=%d -> %r (%d gadgets, %d connectors, %s '
             'boundary rule)' % (g, k, h, len(lay.pairs), count,
                                 boundary_rule.value))

    index = {tag: v for v, tag in enumerate(prov)}
    cycle = _assemble_cycle(h, lay, gcycle)
    return ImReductionOutput(h, g, tuple(prov), index, tuple(units),
                             tuple(cycle), gcycle, tuple(connectors), k,
                             lay.l, target_size(k), source_edges,
                             boundary_rule)


def _sub_path(h, vertices, u, v):
    sub, ids = h.subgraph(vertices)
    local = {x: i for i, x in enumerate(ids)}
    path = dense_bipartite_ham_path(sub, local[u], local[v])
    return [ids[x] for x in path]


def _assemble_cycle(h, lay, gcycle):
    """
    Gadget path p_i from the unit shared with the previous gadget to the unit
    shared with the next one, then the connector path q_i back to the start
    of p_{i+1}.
    """
    count = len(gcycle.pairs)
    span = 6 * lay.m

    def gadget_vertices(gid):
        start = lay.gadget_unit_base(gid, FOR_K1)
        return range(start, start + span)

    starts, ends = [], []
    for i, pair in enumerate(gcycle.pairs):
        gid = lay.gadget_id[pair]
        before = lay.unit_for(pair, gcycle.shared[i - 1])
        after = lay.unit_for(pair, gcycle.shared[i])
        starts.append(lay.gadget_unit_base(gid, before))
        ends.append(lay.gadget_unit_base(gid, after) + lay.m)

    cycle = []
    for i, pair in enumerate(gcycle.pairs):
        gid = lay.gadget_id[pair]
        cycle.extend(_sub_path(h, gadget_vertices(gid), starts[i], ends[i]))

        nxt = starts[(i + 1) % count]
        cbase = lay.connector_unit_base(i, 0)
        connector = list(range(cbase, cbase + 6 * lay.n))
        q = _sub_path(h, connector + [ends[i], nxt], nxt, ends[i])
        cycle.extend(reversed(q[1:-1]))
        LOG.debug('cycle: gadget %s and connector %d placed' % (pair, i))

    if not validate_cycle(h, cycle):
        raise ReductionSoundnessError('assembled Hamiltonian cycle does not '
                                      'validate')
    return cycle


def lift_clique_to_matching(out, clique):
    """
    Induced matching of size 6k(2k+1) from a clique of size 2k+1.

    The clique's vertices are assigned to the integers ``1..l`` in ascending
    id order. Every gadget (k1, k2) contributes the three same-edge unit edges
    for (a_k1, a_k2) and every connector for t the three same-vertex unit
    edges for a_t.

    :returns: sorted list of edges of H
    """
    clique = sorted(set(clique))
    if len(clique) != out.l:
        raise PreconditionError('need %d clique vertices, got %d'
                                % (out.l, len(clique)))
    if not is_clique(out.source, clique):
        raise PreconditionError('%r is not a clique of the source graph'
                                % clique)
    a = {t: v for t, v in enumerate(clique, 1)}
    matching = []
    for unit in out.units:
        if isinstance(unit, GadgetUnit):
            k1, k2 = unit.pair
            rep = norm_edge(a[k1], a[k2])
        else:
            rep = a[unit.for_integer]
        matching.append(norm_edge(out.index[VertexTag(unit, S1, rep)],
                                  out.index[VertexTag(unit, S2, rep)]))
    return sorted(matching)


def _region(tag):
    if isinstance(tag.unit, GadgetUnit):
        return ('gadget', tag.unit.pair)
    return ('group', tag.unit.for_integer)


def matching_census(out, matching):
    """
    Classify the edges of an induced matching of H.

    An edge is inner if both endpoints lie in one gadget or one connector
    group and boundary otherwise. Gadgets are good, bad in one side or
    completely bad by the boundary edges touching their k1 and k2 units.
    Connector units are full, occupied, unoccupied or empty and an inner
    group edge touching an occupied unit is dangling.

    :returns: ``MatchingCensus``; ``per_gadget`` is indexed by gadget id,
              ``per_group`` and ``boundary_per_group`` by ``t - 1``,
              ``unit_status`` maps each ``ConnectorUnit`` to its status
    """
    pairs = gadget_pairs(out.l)
    gadget_id = {p: i for i, p in enumerate(pairs)}
    per_gadget = [0] * len(pairs)
    per_group = [0] * out.l
    boundary_per_group = [0] * out.l
    bad = [set() for _ in pairs]
    boundary_hits = defaultdict(int)
    touched = set()
    inner_group_edges = []
    inner = boundary = 0

    for u, v in matching:
        tu, tv = out.prov[u], out.prov[v]
        touched.update((tu.unit, tv.unit))
        ru, rv = _region(tu), _region(tv)
        if ru == rv:
            inner += 1
            if ru[0] == 'gadget':
                per_gadget[gadget_id[ru[1]]] += 1
            else:
                per_group[ru[1] - 1] += 1
                inner_group_edges.append((tu.unit, tv.unit))
            continue
        boundary += 1
        for tag, region in ((tu, ru), (tv, rv)):
            if region[0] == 'gadget':
                if tag.unit.kind is not AUXILIARY:
                    bad[gadget_id[region[1]]].add(tag.unit.kind)
            else:
                boundary_per_group[region[1] - 1] += 1
                boundary_hits[tag.unit] += 1

    statuses = []
    for kinds in bad:
        if len(kinds) == 2:
            statuses.append(COMPLETELY_BAD)
        elif kinds:
            statuses.append(BAD_ONE_SIDE)
        else:
            statuses.append(GOOD)

    unit_status = {}
    for unit in out.units:
        if not isinstance(unit, ConnectorUnit):
            continue
        hits = boundary_hits.get(unit, 0)
        if hits >= 2:
            unit_status[unit] = FULL
        elif hits == 1:
            unit_status[unit] = OCCUPIED
        elif unit in touched:
            unit_status[unit] = UNOCCUPIED
        else:
            unit_status[unit] = EMPTY

    dangling = sum(1 for a, b in inner_group_edges
                   if OCCUPIED in (unit_status[a], unit_status[b]))

    return MatchingCensus(inner, boundary, dangling, tuple(per_gadget),
                          tuple(per_group), tuple(boundary_per_group),
                          tuple(statuses), unit_status)


def _common_representative(out, edges, what):
    reps = set()
    for u, v in edges:
        tu, tv = out.prov[u], out.prov[v]
        if tu.unit != tv.unit:
            raise ReductionSoundnessError(
                '%s: edge (%d, %d) crosses two units' % (what, u, v))
        if tu.represents != tv.represents:
            raise ReductionSoundnessError(
                '%s: edge (%d, %d) joins representatives of %s and %s'
                % (what, u, v, tu.represents, tv.represents))
        reps.add(tu.represents)
    if len(reps) != 1:
        raise ReductionSoundnessError('%s: edges represent %d different '
                                      'elements' % (what, len(reps)))
    return reps.pop()


def extract_clique_from_matching(out, matching):
    """
    Read a (2k+1)-clique of the source graph off an induced matching of H
    with at least 6k(2k+1) edges.

    The structure every such matching must have is checked along the way:
    no boundary edges, three same-edge unit edges per gadget and 3k
    same-vertex unit edges per connector group, with each gadget's edge
    joining the vertices its two integers select.

    :returns: sorted list of 2k+1 source vertices
    :raises PreconditionError: if ``matching`` is too small or not induced
    :raises ReductionSoundnessError: if any of the structural facts fails
    """
    matching = [norm_edge(u, v) for u, v in matching]
    if len(matching) < out.target:
        raise PreconditionError('matching has %d edges, need at least %d'
                                % (len(matching), out.target))
    if not is_induced_matching(out.graph, matching):
        raise PreconditionError('not an induced matching of H')

    census = matching_census(out, matching)
    if census.boundary:
        raise ReductionSoundnessError('matching of full size holds %d '
                                      'boundary edges' % census.boundary)

    by_region = defaultdict(list)
    for u, v in matching:
        by_region[_region(out.prov[u])].append((u, v))

    per_group = 3 * out.k
    selected = {}
    for t in range(1, out.l + 1):
        edges = by_region.get(('group', t), [])
        if len(edges) != per_group:
            raise ReductionSoundnessError(
                'connector group %d holds %d edges, expected %d'
                % (t, len(edges), per_group))
        selected[t] = _common_representative(out, edges,
                                             'connector group %d' % t)

    for pair in gadget_pairs(out.l):
        edges = by_region.get(('gadget', pair), [])
        if len(edges) != 3:
            raise ReductionSoundnessError('gadget %s holds %d edges, '
                                          'expected 3' % (pair, len(edges)))
        rep = _common_representative(out, edges, 'gadget %s' % (pair,))
        want = (selected[pair[0]], selected[pair[1]])
        if rep != want:
            raise ReductionSoundnessError(
                'gadget %s selects edge %s but its integers select %s'
                % (pair, rep, want))

    clique = sorted(selected.values())
    if len(set(clique)) != out.l or not is_clique(out.source, clique):
        raise ReductionSoundnessError('selected vertices %r are not a clique'
                                      % clique)
    return clique


def _tag_doc(tag):
    unit = tag.unit
    if isinstance(unit, GadgetUnit):
        udoc = {'gadget': list(unit.pair), 'role': unit.kind.name}
        rep = list(tag.represents)
    else:
        udoc = {'connector': unit.connector_id, 'for': unit.for_integer,
                'index': unit.unit_index}
        rep = tag.represents
    return {'unit': udoc, 'side': tag.side.value, 'represents': rep}


def to_sidecar(out):
    return {
        'k': out.k,
        'l': out.l,
        'target': out.target,
        'boundary_rule': out.boundary_rule.value,
        'gadget_cycle': [list(p) for p in out.gadget_cycle.pairs],
        'shared': list(out.gadget_cycle.shared),
        'connectors': [list(c) for c in out.connectors],
        'ham_cycle': list(out.ham_cycle),
        'provenance': [_tag_doc(tag) for tag in out.prov],
    }
