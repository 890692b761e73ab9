"""
Graph and witness file formats

DIMACS-like graphs::

    c imatch-format imatch/1
    p edge <n> <m>
    e <u> <v>          (1-indexed, one line per edge)
    s <u> <1|2>        (optional side label, all vertices or none)

Witnesses, sidecars, bundles and reports are JSON documents that all carry a
``version`` tag.
"""
import json
import logging
from collections import namedtuple
from enum import Enum

from imatch.config import FORMAT_VERSION
from imatch.errors import GraphParseError, VersionMismatchError
from imatch.graph import Graph, S1, S2, norm_edge

LOG = logging.getLogger(__name__)

TAG_PREFIX = 'c imatch-format '


class WitnessKind(Enum):
    """
    Kinds of solution witnesses:

    ``WitnessKind.clique``: vertex set
    ``WitnessKind.mis``: vertex set (independent)
    ``WitnessKind.mim``: edge set (induced matching)
    ``WitnessKind.cycle``: full vertex sequence of a Hamiltonian cycle
    """
    clique = 'clique'
    mis = 'mis'
    mim = 'mim'
    cycle = 'cycle'


CLIQUE = WitnessKind.clique
MIS = WitnessKind.mis
MIM = WitnessKind.mim
CYCLE = WitnessKind.cycle

Witness = namedtuple('Witness', ['kind', 'items'])


def _int(token, lineno, what):
    try:
        return int(token)
    except ValueError:
        raise GraphParseError('%s %r is not an integer' % (what, token),
                              lineno)


def parse_graph(text):
    """
    Parse the DIMACS-like format into a ``Graph``.

    :param text: file contents
    :returns: ``Graph``
    :raises GraphParseError: naming the offending line
    """
    header = None
    header_line = 0
    edges = []
    seen = set()
    sides = {}

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith('c'):
            continue
        parts = line.split()
        tag = parts[0]

        if tag == 'p':
            if header is not None:
                raise GraphParseError('second header', lineno)
            if len(parts) != 4 or parts[1] != 'edge':
                raise GraphParseError('malformed header %r' % line, lineno)
            n = _int(parts[2], lineno, 'vertex count')
            m = _int(parts[3], lineno, 'edge count')
            if n < 0 or m < 0:
                raise GraphParseError('negative count in header', lineno)
            header = (n, m)
            header_line = lineno
            continue

        if header is None:
            raise GraphParseError('%r line before the header' % tag, lineno)
        n = header[0]

        if tag == 'e':
            if len(parts) != 3:
                raise GraphParseError('malformed edge %r' % line, lineno)
            u = _int(parts[1], lineno, 'vertex id')
            v = _int(parts[2], lineno, 'vertex id')
            for x in (u, v):
                if not 1 <= x <= n:
                    raise GraphParseError(
                        'vertex id %d out of range 1..%d' % (x, n), lineno)
            if u == v:
                raise GraphParseError('self-loop on vertex %d' % u, lineno)
            edge = norm_edge(u - 1, v - 1)
            if edge in seen:
                raise GraphParseError('duplicate edge %d %d' % (u, v), lineno)
            seen.add(edge)
            edges.append(edge)
        elif tag == 's':
            if len(parts) != 3 or parts[2] not in ('1', '2'):
                raise GraphParseError('malformed side label %r' % line,
                                      lineno)
            u = _int(parts[1], lineno, 'vertex id')
            if not 1 <= u <= n:
                raise GraphParseError(
                    'vertex id %d out of range 1..%d' % (u, n), lineno)
            if u - 1 in sides:
                raise GraphParseError('second side label for %d' % u, lineno)
            sides[u - 1] = S1 if parts[2] == '1' else S2
        else:
            raise GraphParseError('unknown line type %r' % tag, lineno)

    if header is None:
        raise GraphParseError('missing "p edge" header')
    n, m = header
    if len(edges) != m:
        raise GraphParseError('header declares %d edges, found %d'
                              % (m, len(edges)), header_line)

    labels = None
    if sides:
        if len(sides) != n:
            raise GraphParseError('side labels given for %d of %d vertices'
                                  % (len(sides), n), header_line)
        labels = [sides[v] for v in range(n)]
        for u, v in edges:
            if labels[u] is labels[v]:
                raise GraphParseError('edge %d %d joins two side %s vertices'
                                      % (u + 1, v + 1, labels[u].value),
                                      header_line)
    return Graph(n, edges, labels)


def emit_graph(g, version=FORMAT_VERSION):
    """
    Canonical text of ``g``: format tag, header, edges in lexicographic order,
    then side labels.
    """
    lines = [TAG_PREFIX + version, 'p edge %d %d' % (g.n, g.m)]
    lines.extend('e %d %d' % (u + 1, v + 1) for u, v in g.edge_list())
    if g.sides is not None:
        lines.extend('s %d %d' % (v + 1, side.value)
                     for v, side in enumerate(g.sides))
    return '\n'.join(lines) + '\n'


def read_format_tag(text):
    """ Format tag of a DIMACS text, or None if it has none """
    for line in text.splitlines():
        if line.startswith(TAG_PREFIX):
            return line[len(TAG_PREFIX):].strip()
    return None


def check_version(found, expected=FORMAT_VERSION):
    if found != expected:
        raise VersionMismatchError(found, expected)


# Witness JSON: {"kind": "clique|mis|mim|cycle", "items": [...]}

def dump_witness(witness, version=FORMAT_VERSION, **extra):
    """
    Serialize a ``Witness``. ``mim`` items become ``[u, v]`` pairs.

    :param witness: ``Witness``
    :param version: format tag to embed
    :param extra: additional top level fields (e.g. ``status``)
    :returns: str
    """
    kind = WitnessKind(witness.kind)
    if kind is MIM:
        items = [list(norm_edge(u, v)) for u, v in witness.items]
        items.sort()
    elif kind is CYCLE:
        items = list(witness.items)
    else:
        items = sorted(witness.items)
    doc = dict(extra)
    doc.update(version=version, kind=kind.value, items=items)
    return json.dumps(doc, sort_keys=True)


def load_witness(text):
    """
    Parse witness JSON.

    :returns: ``Witness`` with a tuple of ints (or of pairs for ``mim``)
    :raises GraphParseError: malformed document
    :raises VersionMismatchError: foreign format tag
    """
    doc = _load_json(text)
    if 'version' in doc:
        check_version(doc['version'])
    try:
        kind = WitnessKind(doc['kind'])
        raw = doc['items']
    except (KeyError, ValueError) as err:
        raise GraphParseError('bad witness document: %s' % err)
    try:
        if kind is MIM:
            items = tuple(norm_edge(int(u), int(v)) for u, v in raw)
        else:
            items = tuple(int(v) for v in raw)
    except (TypeError, ValueError):
        raise GraphParseError('bad %s witness items' % kind.value)
    return Witness(kind, items)


# Generic versioned documents: sidecars, bundles, reports, replay bundles

def _load_json(text):
    try:
        doc = json.loads(text)
    except ValueError as err:
        raise GraphParseError('invalid JSON: %s' % err)
    if not isinstance(doc, dict):
        raise GraphParseError('expected a JSON object')
    return doc


def dump_document(doc, version=FORMAT_VERSION):
    doc = dict(doc)
    doc['version'] = version
    return json.dumps(doc, sort_keys=True, indent=1)


def load_document(text, expected_kind=None):
    """
    Parse a versioned JSON document, rejecting foreign format tags.

    :param expected_kind: if given, the document's ``kind`` must match
    :returns: dict
    """
    doc = _load_json(text)
    check_version(doc.get('version'))
    if expected_kind is not None and doc.get('kind') != expected_kind:
        raise GraphParseError('expected a %r document, got %r'
                              % (expected_kind, doc.get('kind')))
    return doc


def dump_sidecar(kind, graph, payload, version=FORMAT_VERSION):
    """
    Provenance sidecar for a reduction output graph. Records the output's
    vertex and edge counts so a sidecar cannot be paired with the wrong graph.
    """
    doc = dict(payload)
    doc.update(kind=kind, n=graph.n, m=graph.m)
    return dump_document(doc, version)


def load_sidecar(text, graph=None, graph_tag=None):
    """
    Parse a sidecar and check it against its graph.

    :param graph: output ``Graph`` the sidecar should describe, default: None
    :param graph_tag: format tag read from the graph text, default: None
    :returns: dict
    """
    doc = load_document(text)
    if graph_tag is not None:
        check_version(graph_tag, doc['version'])
    if graph is not None and (doc.get('n'), doc.get('m')) != (graph.n,
                                                               graph.m):
        raise GraphParseError('sidecar describes n=%s m=%s, graph has n=%d '
                              'm=%d' % (doc.get('n'), doc.get('m'),
                                        graph.n, graph.m))
    return doc


def dump_bundle(graph, sidecar_text, version=FORMAT_VERSION):
    """ Graph and its sidecar in one JSON document """
    return dump_document({'kind': 'bundle',
                          'graph': emit_graph(graph, version),
                          'sidecar': json.loads(sidecar_text)}, version)


def read_graph_input(text):
    """
    Read either a DIMACS graph or a bundle.

    :returns: tuple of (``Graph``, sidecar dict or None)
    """
    if text.lstrip().startswith('{'):
        doc = load_document(text, 'bundle')
        graph_text = doc['graph']
        graph = parse_graph(graph_text)
        sidecar = load_sidecar(json.dumps(doc['sidecar']), graph,
                               read_format_tag(graph_text))
        return graph, sidecar
    return parse_graph(text), None
