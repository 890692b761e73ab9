"""
Seeded verification campaigns

A campaign draws one instance per trial from ``random.Random(seed + index)``,
builds the reduction, and checks its optimum relation and structure against
the exact solvers. Every trial that fails or ends ``unknown`` carries a
replay bundle with the serialized instance, so it can be re-run on its own.
"""
import logging
import os
import random
import time
from collections import namedtuple
from enum import Enum
from multiprocessing import Process, Queue

from imatch import approx, cliquegap, hardness
from imatch.config import DEFAULT_BUDGET, FORMAT_VERSION
from imatch.errors import ImatchError, PreconditionError
from imatch.formats import check_version, dump_document, emit_graph, \
    load_document, parse_graph
from imatch.graph import (
    gen_random, gen_random_bipartite, gen_triangle_free, is_bipartite,
    is_clique, is_independent_set, is_induced_matching, validate_cycle
)
from imatch.solvers import (
    BUDGET_EXHAUSTED, NO, UNKNOWN, conflict_graph, exhaustive_clique,
    exhaustive_independent_set, exhaustive_induced_matching,
    has_induced_matching, max_clique, max_independent_set,
    max_induced_matching
)

LOG = logging.getLogger(__name__)

# largest edge count for which the solvers campaign enumerates edge subsets
EXHAUSTIVE_MIM_EDGES = 12
# regeneration attempts for instances that need a minimum edge count
REGENERATE_ATTEMPTS = 1000


class ReductionKind(Enum):
    clique_gap = 'clique-gap'
    im_hard = 'im-hard'
    image = 'image'
    ham_closure = 'ham-closure'
    blowup = 'blowup'
    hambip_closure = 'hambip-closure'
    solvers = 'solvers'


CLIQUE_GAP = ReductionKind.clique_gap
IM_HARD = ReductionKind.im_hard
IMAGE = ReductionKind.image
HAM_CLOSURE = ReductionKind.ham_closure
BLOWUP = ReductionKind.blowup
HAMBIP_CLOSURE = ReductionKind.hambip_closure
SOLVERS = ReductionKind.solvers


class Outcome(Enum):
    passed = 'pass'
    failed = 'fail'
    unknown = 'unknown'


PASS = Outcome.passed
FAIL = Outcome.failed
UNKNOWN_OUTCOME = Outcome.unknown


class Control(Enum):
    """ Messages on a worker's task queue besides trial indexes """
    shutdown = 0


SHUTDOWN = Control.shutdown

CampaignSpec = namedtuple('CampaignSpec', [
    'kind', 'trials', 'seed', 'n_min', 'n_max', 'p_min', 'p_max', 'k_min',
    'k_max', 'budget', 'workers',
])

Instance = namedtuple('Instance', ['index', 'seed', 'graph', 'k'])

TrialResult = namedtuple('TrialResult', [
    'index', 'seed', 'outcome', 'values', 'census', 'message', 'witness',
    'elapsed', 'bundle',
])


class VerificationReport(namedtuple('VerificationReport', [
        'kind', 'spec', 'trials', 'passed', 'failed', 'unknown',
        'first_failure', 'elapsed'])):
    __slots__ = ()

    @property
    def ok(self):
        return self.failed == 0


# n is the side size for hambip-closure, the vertex count everywhere else
_DEFAULTS = {
    CLIQUE_GAP: dict(trials=500, n_min=1, n_max=9, p_min=0.2, p_max=0.8,
                     k_min=1, k_max=3),
    IM_HARD: dict(trials=20, n_min=7, n_max=7, p_min=0.3, p_max=0.7),
    IMAGE: dict(trials=500, n_min=1, n_max=9, p_min=0.0, p_max=0.8),
    HAM_CLOSURE: dict(trials=500, n_min=2, n_max=8, p_min=0.1, p_max=0.8),
    BLOWUP: dict(trials=4, n_min=2, n_max=2, p_min=0.5, p_max=0.5),
    HAMBIP_CLOSURE: dict(trials=200, n_min=1, n_max=4, p_min=0.2,
                         p_max=0.9),
    SOLVERS: dict(trials=1000, n_min=1, n_max=12, p_min=0.1, p_max=0.9),
}

_MIN_N = {IM_HARD: hardness.MIN_VERTICES, HAM_CLOSURE: 2,
          HAMBIP_CLOSURE: 1}
_MIN_EDGES = {IM_HARD: hardness.MIN_EDGES, HAM_CLOSURE: 1,
              HAMBIP_CLOSURE: 1}


def make_spec(kind, **overrides):
    """
    Campaign spec for ``kind`` from its defaults, ``overrides`` winning.
    None values in ``overrides`` are ignored.
    """
    kind = ReductionKind(kind)
    values = dict(trials=1, seed=1, n_min=1, n_max=1, p_min=0.5, p_max=0.5,
                  k_min=1, k_max=1, budget=DEFAULT_BUDGET, workers=1)
    values.update(_DEFAULTS[kind])
    values.update((key, value) for key, value in overrides.items()
                  if value is not None)
    spec = CampaignSpec(kind=kind, **values)
    check_spec(spec)
    return spec


def check_spec(spec):
    """ :raises PreconditionError: on an empty range or a bad count """
    if spec.trials < 1:
        raise PreconditionError('trials must be >= 1, got %d' % spec.trials)
    if spec.workers < 1:
        raise PreconditionError('workers must be >= 1, got %d'
                                % spec.workers)
    if not 0 <= spec.n_min <= spec.n_max:
        raise PreconditionError('empty vertex range %d..%d'
                                % (spec.n_min, spec.n_max))
    if not 0.0 <= spec.p_min <= spec.p_max <= 1.0:
        raise PreconditionError('bad edge probability range %r..%r'
                                % (spec.p_min, spec.p_max))
    if not 1 <= spec.k_min <= spec.k_max:
        raise PreconditionError('empty k range %d..%d'
                                % (spec.k_min, spec.k_max))
    if spec.n_min < _MIN_N.get(spec.kind, 0):
        raise PreconditionError('%s needs n >= %d'
                                % (spec.kind.value, _MIN_N[spec.kind]))
    if spec.kind in _MIN_EDGES and spec.p_max == 0.0:
        raise PreconditionError('%s needs instances with edges'
                                % spec.kind.value)


def spec_to_doc(spec):
    doc = spec._asdict()
    doc['kind'] = spec.kind.value
    return doc


def spec_from_doc(doc):
    try:
        values = dict(doc)
        values['kind'] = ReductionKind(values['kind'])
        spec = CampaignSpec(**values)
    except (KeyError, TypeError, ValueError) as err:
        raise PreconditionError('bad campaign spec: %s' % err)
    check_spec(spec)
    return spec


def make_instance(spec, index):
    """
    Instance of trial ``index``, drawn from ``random.Random(seed + index)``.
    im-hard campaigns alternate plain random graphs with triangle-free ones.
    """
    seed = spec.seed + index
    rng = random.Random(seed)
    n = rng.randint(spec.n_min, spec.n_max)
    prob = rng.uniform(spec.p_min, spec.p_max)
    k = rng.randint(spec.k_min, spec.k_max)
    graph_seed = rng.getrandbits(32)
    min_edges = _MIN_EDGES.get(spec.kind, 0)

    for attempt in range(REGENERATE_ATTEMPTS):
        gseed = graph_seed + attempt
        if spec.kind is HAMBIP_CLOSURE:
            g = gen_random_bipartite(n, n, prob, gseed)
        elif spec.kind is IM_HARD and index % 2:
            g = gen_triangle_free(n, prob, gseed)
        else:
            g = gen_random(n, prob, gseed)
        if g.m >= min_edges:
            return Instance(index, seed, g, k)
    raise PreconditionError('no instance with %d edges after %d attempts '
                            '(seed %d)' % (min_edges, REGENERATE_ATTEMPTS,
                                           seed))


def instance_to_doc(instance):
    return {'index': instance.index, 'seed': instance.seed,
            'graph': emit_graph(instance.graph), 'k': instance.k}


def instance_from_doc(doc):
    try:
        return Instance(int(doc['index']), int(doc['seed']),
                        parse_graph(doc['graph']), int(doc['k']))
    except (KeyError, TypeError, ValueError) as err:
        if isinstance(err, ImatchError):
            raise
        raise PreconditionError('bad instance document: %s' % err)


class _Checker:
    """ Collects values and failed expectations of one trial """

    def __init__(self, budget):
        self.budget = budget
        self.stage = 'setup'
        self.values = {}
        self.census = None
        self.witness = None
        self.unknown = False
        self.failures = []

    def expect(self, condition, message):
        if not condition:
            self.failures.append('%s: %s' % (self.stage, message))

    def solve(self, solver, g, name):
        result = solver(g, self.budget)
        self.values[name] = result.value
        if result.status is BUDGET_EXHAUSTED:
            self.unknown = True
        return result


def _check_clique_gap(c, spec, g, k):
    c.stage = 'cliquegap'
    out = cliquegap.clique_gap_reduce(g, k)
    c.values['target'] = out.target
    c.expect(out.graph.n == 2 * g.n + 1, 'H has %d vertices' % out.graph.n)
    c.stage = 'solvers'
    wg = c.solve(max_clique, g, 'omega_g')
    wh = c.solve(max_clique, out.graph, 'omega_h')
    c.witness = wh.witness
    if c.unknown:
        return
    c.stage = 'cliquegap'
    c.expect(wh.value == 2 * wg.value + 1,
             'omega(H)=%d but omega(G)=%d' % (wh.value, wg.value))
    if wg.value >= k:
        lifted = cliquegap.lift_clique(out, wg.witness[:k])
        c.expect(len(lifted) == out.target and is_clique(out.graph, lifted),
                 'lifted clique is invalid')
        projected = cliquegap.project_clique(out, wh.witness)
        c.expect(len(projected) >= k and is_clique(g, projected),
                 'projected clique is invalid')


def _check_image(c, spec, g, k):
    c.stage = 'approx'
    out = approx.image_reduce(g)
    c.stage = 'solvers'
    mis = c.solve(max_independent_set, g, 'opt_g')
    mim = c.solve(max_induced_matching, out.graph, 'opt_h')
    c.witness = mim.witness
    if c.unknown:
        return
    c.stage = 'approx'
    c.expect(mis.value == mim.value,
             'OPT(G)=%d but OPT(H)=%d' % (mis.value, mim.value))
    back = approx.matching_to_mis(out, mim.witness)
    c.expect(len(back) == mim.value and is_independent_set(g, back),
             'matching_to_mis lost size or independence')
    forth = approx.mis_to_matching(out, mis.witness)
    c.expect(len(forth) == mis.value and
             is_induced_matching(out.graph, forth),
             'mis_to_matching is not an induced matching of size OPT(G)')


def _check_ham_closure(c, spec, g, k):
    c.stage = 'approx'
    out = approx.ham_closure_reduce(g)
    c.expect(out.graph.n == 2 * g.n, 'H has %d vertices' % out.graph.n)
    c.expect(validate_cycle(out.graph, out.ham_cycle), 'cycle invalid')
    c.stage = 'solvers'
    mg = c.solve(max_induced_matching, g, 'opt_g')
    mh = c.solve(max_induced_matching, out.graph, 'opt_h')
    c.witness = mh.witness
    if c.unknown:
        return
    c.stage = 'approx'
    c.expect(mg.value == mh.value,
             'OPT(G)=%d but OPT(H)=%d' % (mg.value, mh.value))
    recovered = approx.ham_closure_recover(out, mh.witness)
    c.expect(is_induced_matching(g, recovered) and
             len(recovered) >= min(mh.value, 1),
             'recovered matching invalid')
    lifted = approx.closure_lift(out, mg.witness)
    c.expect(is_induced_matching(out.graph, lifted), 'lift not induced')


def _check_blowup(c, spec, g, k):
    c.stage = 'approx'
    out = approx.blowup_reduce(g)
    n = g.n
    c.expect(out.graph.n == 2 * n ** 4, 'H has %d vertices' % out.graph.n)
    c.stage = 'solvers'
    mis = c.solve(max_independent_set, g, 'opt_g')
    mim = c.solve(max_induced_matching, out.graph, 'opt_h')
    c.witness = mim.witness
    if c.unknown:
        return
    c.stage = 'approx'
    low = n ** 3 * mis.value
    high = low + n * (n - 1)
    c.expect(low <= mim.value <= high,
             'OPT(H)=%d outside %d..%d' % (mim.value, low, high))
    census = approx.blowup_census(out, mim.witness)
    c.census = {'homogeneous': list(census.homogeneous),
                'heterogeneous': sum(census.heterogeneous.values())}
    c.expect(all(v <= 1 for v in census.heterogeneous.values()),
             'two heterogeneous edges share a block')
    chosen = approx.blowup_to_mis(out, mim.witness)
    c.expect(is_independent_set(g, chosen), 'blowup_to_mis not independent')
    c.expect(len(chosen) * n ** 3 >= mim.value - n * (n - 1),
             'blowup_to_mis kept %d vertices of a matching of %d'
             % (len(chosen), mim.value))
    saturated = approx.saturate_homogeneous(out, mim.witness)
    c.expect(len(saturated) == mim.value and
             is_induced_matching(out.graph, saturated),
             'saturating a maximum matching changed it')
    lifted = approx.mis_to_blowup_matching(out, mis.witness)
    c.expect(len(lifted) == low and is_induced_matching(out.graph, lifted),
             'lifted independent set is not an induced matching')


def _check_hambip(c, spec, g, k):
    c.stage = 'approx'
    out = approx.hambip_closure_reduce(g)
    p = len(out.v1)
    h = out.graph
    c.expect(h.n == 4 * p + 2, 'H has %d vertices' % h.n)
    c.expect(approx.is_equally_sided(h), 'H is not equally sided')
    c.expect(is_bipartite(h) is not None, 'H is not bipartite')
    c.expect(validate_cycle(h, out.ham_cycle), 'cycle invalid')
    c.stage = 'solvers'
    mg = c.solve(max_induced_matching, g, 'opt_g')
    mh = c.solve(max_induced_matching, h, 'opt_h')
    c.witness = mh.witness
    if c.unknown:
        return
    c.stage = 'approx'
    c.expect(mg.value == mh.value,
             'OPT(G)=%d but OPT(H)=%d' % (mg.value, mh.value))
    recovered = approx.hambip_recover(out, mh.witness)
    c.expect(is_induced_matching(g, recovered) and len(recovered) >= 1,
             'recovered matching invalid')
    lifted = approx.closure_lift(out, mg.witness)
    c.expect(is_induced_matching(h, lifted), 'lift not induced')


def _census_summary(census):
    return {'inner': census.inner, 'boundary': census.boundary,
            'dangling': census.dangling,
            'max_per_gadget': max(census.per_gadget),
            'max_per_group': max(census.per_group),
            'bad_gadgets': sum(1 for s in census.gadget_status
                               if s is not hardness.GOOD)}


def _check_im_hard(c, spec, g, k):
    c.stage = 'hardness'
    out = hardness.build_h(g, k)
    h = out.graph
    c.values['target'] = out.target
    c.expect(h.n == hardness.h_vertex_count(g.n, g.m, k),
             'H has %d vertices' % h.n)
    c.expect(validate_cycle(h, out.ham_cycle), 'cycle invalid')

    c.stage = 'solvers'
    omega = c.solve(max_clique, g, 'omega_g')
    if c.unknown:
        return
    yes = omega.value >= out.l
    c.values['yes_instance'] = yes

    c.stage = 'hardness'
    if yes:
        clique = sorted(omega.witness[:out.l])
        lifted = hardness.lift_clique_to_matching(out, clique)
        c.expect(len(lifted) == out.target and
                 is_induced_matching(h, lifted), 'lifted matching invalid')
        census = hardness.matching_census(out, lifted)
        c.census = _census_summary(census)
        c.expect(census.boundary == 0 and
                 set(census.per_gadget) == {3} and
                 set(census.per_group) == {3 * k},
                 'lifted matching census %r' % c.census)
        c.expect(hardness.extract_clique_from_matching(out, lifted) ==
                 clique, 'extract does not invert lift')
        c.witness = lifted

    c.stage = 'solvers'
    decision = has_induced_matching(h, out.target, c.budget)
    c.values['verdict'] = decision.verdict.value
    c.values['nodes'] = decision.nodes_explored
    if decision.verdict is UNKNOWN:
        c.unknown = True
        return
    c.stage = 'hardness'
    if decision.verdict is NO:
        c.expect(not yes, 'no induced matching of size %d on a yes-instance'
                 % out.target)
        return
    c.witness = decision.witness
    census = hardness.matching_census(out, decision.witness)
    c.census = _census_summary(census)
    c.expect(max(census.per_gadget) <= 3 and
             max(census.per_group) <= 3 * k,
             'counting bounds violated: %r' % c.census)
    clique = hardness.extract_clique_from_matching(out, decision.witness)
    c.expect(yes and is_clique(g, clique),
             'extracted %r on a graph with omega=%d'
             % (clique, omega.value))


def _check_solvers(c, spec, g, k):
    c.stage = 'solvers'
    mc = c.solve(max_clique, g, 'omega')
    mi = c.solve(max_independent_set, g, 'alpha')
    mm = c.solve(max_induced_matching, g, 'mim')
    c.witness = mm.witness
    if c.unknown:
        return
    c.expect(mc.value == len(exhaustive_clique(g)) and
             is_clique(g, mc.witness), 'clique disagrees with enumeration')
    c.expect(mi.value == len(exhaustive_independent_set(g)) and
             is_independent_set(g, mi.witness),
             'independent set disagrees with enumeration')
    c.expect(len(mm.witness) == mm.value and
             is_induced_matching(g, mm.witness), 'matching witness invalid')
    dual = c.solve(max_independent_set, conflict_graph(g).graph,
                   'mis_conflict')
    if c.unknown:
        return
    c.expect(dual.value == mm.value,
             'MIM=%d but MIS(conflict)=%d' % (mm.value, dual.value))
    if g.m <= EXHAUSTIVE_MIM_EDGES:
        c.expect(mm.value == len(exhaustive_induced_matching(g)),
                 'matching disagrees with enumeration')


_CHECKS = {
    CLIQUE_GAP: _check_clique_gap,
    IM_HARD: _check_im_hard,
    IMAGE: _check_image,
    HAM_CLOSURE: _check_ham_closure,
    BLOWUP: _check_blowup,
    HAMBIP_CLOSURE: _check_hambip,
    SOLVERS: _check_solvers,
}


def make_bundle(spec, instance):
    """ Replay bundle for one trial """
    return {'version': FORMAT_VERSION, 'kind': spec.kind.value,
            'seed': instance.seed, 'spec': spec_to_doc(spec),
            'instance': instance_to_doc(instance)}


def _witness_doc(witness):
    if witness is None:
        return None
    return [list(x) if isinstance(x, tuple) else x for x in witness]


def run_instance(spec, instance):
    """
    Check one instance. Anything raised by the reduction, the witness maps or
    the solvers fails the trial, naming the stage that raised.

    :returns: ``TrialResult``
    """
    started = time.perf_counter()
    c = _Checker(spec.budget)
    try:
        _CHECKS[spec.kind](c, spec, instance.graph, instance.k)
    except Exception as err:
        if not isinstance(err, ImatchError):
            LOG.exception('trial %d (seed %d) raised in %s'
                          % (instance.index, instance.seed, c.stage))
        c.failures.append('%s: %s: %s' % (c.stage, type(err).__name__, err))

    if c.failures:
        outcome = FAIL
    elif c.unknown:
        outcome = UNKNOWN_OUTCOME
    else:
        outcome = PASS
    bundle = None if outcome is PASS else make_bundle(spec, instance)
    message = '; '.join(c.failures)
    elapsed = time.perf_counter() - started

    if outcome is FAIL:
        LOG.error('trial %d (seed %d) failed: %s'
                  % (instance.index, instance.seed, message))
    elif outcome is UNKNOWN_OUTCOME:
        LOG.warning('trial %d (seed %d) unknown: budget exhausted'
                    % (instance.index, instance.seed))
    else:
        LOG.debug('trial %d (seed %d) passed %r'
                  % (instance.index, instance.seed, c.values))
    return TrialResult(instance.index, instance.seed, outcome, c.values,
                       c.census, message, _witness_doc(c.witness), elapsed,
                       bundle)


def run_trial(spec, index):
    return run_instance(spec, make_instance(spec, index))


class TrialWorker(Process):
    """
    Runs trial indexes read from ``tasks`` and puts each ``TrialResult`` on
    ``results`` until it reads ``SHUTDOWN``.
    """

    def __init__(self, spec, tasks, results, daemon=True):
        super().__init__(daemon=daemon)
        self.spec = spec
        self.tasks = tasks
        self.results = results

    def run(self):
        LOG.info('Worker[%s] starting' % os.getpid())
        while True:
            task = self.tasks.get()
            if task == SHUTDOWN:
                break
            try:
                result = run_trial(self.spec, task)
            except Exception as err:
                seed = self.spec.seed + task
                result = TrialResult(task, seed, FAIL, {}, None,
                                     'worker: %s: %s'
                                     % (type(err).__name__, err),
                                     None, 0.0, None)
            self.results.put(result)
        LOG.info('Worker[%s] stopping' % os.getpid())


def _run_pool(spec):
    tasks, results = Queue(), Queue()
    count = min(spec.workers, spec.trials)
    workers = [TrialWorker(spec, tasks, results) for _ in range(count)]
    for worker in workers:
        worker.start()
        LOG.info('>>> worker started with pid %s' % worker.pid)
    for index in range(spec.trials):
        tasks.put(index)
    for _ in workers:
        tasks.put(SHUTDOWN)
    collected = [results.get() for _ in range(spec.trials)]
    for worker in workers:
        worker.join()
    return collected


def _report(spec, trials, elapsed):
    trials = tuple(sorted(trials, key=lambda t: t.index))
    failed = [t for t in trials if t.outcome is FAIL]
    return VerificationReport(
        spec.kind, spec, trials,
        sum(1 for t in trials if t.outcome is PASS), len(failed),
        sum(1 for t in trials if t.outcome is UNKNOWN_OUTCOME),
        failed[0].index if failed else None, elapsed)


def verify(spec):
    """
    Run a campaign, inline for one worker and on a ``TrialWorker`` pool
    otherwise. Unknown trials are counted, never failed.

    :param spec: ``CampaignSpec``
    :returns: ``VerificationReport`` with trials in index order
    """
    check_spec(spec)
    LOG.info('campaign %s: %d trials from seed %d on %d worker(s)'
             % (spec.kind.value, spec.trials, spec.seed, spec.workers))
    started = time.perf_counter()
    if spec.workers <= 1:
        trials = [run_trial(spec, i) for i in range(spec.trials)]
    else:
        trials = _run_pool(spec)
    report = _report(spec, trials, time.perf_counter() - started)
    LOG.info('campaign %s finished: %d passed, %d failed, %d unknown'
             % (spec.kind.value, report.passed, report.failed,
                report.unknown))
    return report


def replay(bundle):
    """
    Re-run the single trial a bundle describes.

    :param bundle: bundle dict or its JSON text
    :returns: ``VerificationReport`` with one trial
    :raises VersionMismatchError: on a foreign format tag
    """
    if isinstance(bundle, str):
        bundle = load_document(bundle)
    else:
        check_version(bundle.get('version'))
    try:
        spec = spec_from_doc(bundle['spec'])
        instance = instance_from_doc(bundle['instance'])
    except KeyError as err:
        raise PreconditionError('bundle lacks %s' % err)
    LOG.info('replaying %s trial %d (seed %d)'
             % (spec.kind.value, instance.index, instance.seed))
    started = time.perf_counter()
    result = run_instance(spec, instance)
    return _report(spec, [result], time.perf_counter() - started)


def trial_to_doc(trial):
    return {'index': trial.index, 'seed': trial.seed,
            'outcome': trial.outcome.value, 'values': trial.values,
            'census': trial.census, 'message': trial.message,
            'witness': trial.witness, 'elapsed': round(trial.elapsed, 6),
            'bundle': trial.bundle}


def dump_report(report, version=FORMAT_VERSION):
    return dump_document({
        'kind': 'report',
        'reduction': report.kind.value,
        'spec': spec_to_doc(report.spec),
        'passed': report.passed,
        'failed': report.failed,
        'unknown': report.unknown,
        'first_failure': report.first_failure,
        'elapsed': round(report.elapsed, 6),
        'trials': [trial_to_doc(t) for t in report.trials],
    }, version)
