"""
imatch command line

Graphs travel as DIMACS text on stdin/stdout (or ``-i``/``-o`` files),
everything else as versioned JSON. Logs go to stderr.

Exit codes: 0 success, 1 usage, 2 bad input or precondition, 3 budget
exhausted or unknown verdict, 4 verification failure or soundness error.
"""
import argparse
import logging
import os
import sys

from imatch import approx, cliquegap, hardness
from imatch.config import load_config, parse_budget
from imatch.errors import (
    ImatchError, PathRepairError, PreconditionError, ReductionSoundnessError
)
from imatch.formats import (
    CLIQUE, CYCLE, MIM, MIS, Witness, dump_bundle, dump_sidecar, dump_witness,
    emit_graph, load_witness, read_graph_input
)
from imatch.graph import (
    gen_complete, gen_complete_bipartite, gen_cycle, gen_path, gen_petersen,
    gen_random, gen_random_bipartite, gen_triangle_free
)
from imatch.harness import (
    ReductionKind, dump_report, make_spec, replay, verify
)
from imatch.solvers import (
    BUDGET_EXHAUSTED, UNKNOWN, has_induced_matching, max_clique,
    max_independent_set, max_induced_matching
)

LOG = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3
EXIT_FAILED = 4

REDUCTIONS = ('clique-gap', 'im-hard', 'image', 'ham-closure', 'blowup',
              'hambip-closure')


class _Parser(argparse.ArgumentParser):
    """ Usage errors exit with ``EXIT_USAGE`` """

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, '%s: error: %s\n' % (self.prog, message))


def setup_logging(level=logging.INFO):
    root = logging.getLogger()
    root.setLevel(level)
    ch = logging.StreamHandler(sys.stderr)
    ch.setLevel(level)
    formatter = logging.Formatter(
        '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    )
    ch.setFormatter(formatter)
    root.addHandler(ch)
    return ch


def _resolve(path, config):
    if path in (None, '-') or os.path.isabs(path):
        return path
    return os.path.join(config.output_dir, path)


def _read(path):
    if path in (None, '-'):
        return sys.stdin.read()
    with open(path) as f:
        return f.read()


def _write(text, path):
    if path in (None, '-'):
        sys.stdout.write(text)
        if not text.endswith('\n'):
            sys.stdout.write('\n')
        return
    with open(path, 'w') as f:
        f.write(text)
    LOG.info('wrote %s' % path)


def _budget(args, config):
    if args.budget is not None:
        return parse_budget(args.budget)
    return config.budget


# gen

def cmd_gen(args, config):
    family = args.family
    params = args.params
    seed = config.seed if args.seed is None else args.seed
    try:
        if family == 'complete':
            g = gen_complete(int(params[0]))
        elif family == 'complete-bipartite':
            g = gen_complete_bipartite(int(params[0]), int(params[1]))
        elif family == 'random':
            g = gen_random(int(params[0]), float(params[1]), seed)
        elif family == 'random-bipartite':
            g = gen_random_bipartite(int(params[0]), int(params[1]),
                                     float(params[2]), seed)
        elif family == 'triangle-free':
            g = gen_triangle_free(int(params[0]), float(params[1]), seed)
        elif family == 'path':
            g = gen_path(int(params[0]))
        elif family == 'cycle':
            g = gen_cycle(int(params[0]))
        else:
            g = gen_petersen()
    except (IndexError, ValueError) as err:
        if isinstance(err, ImatchError):
            raise
        raise PreconditionError('bad parameters %r for %s: %s'
                                % (params, family, err))
    LOG.info('generated %s %r (seed %d)' % (family, g, seed))
    _write(emit_graph(g), _resolve(args.output, config))
    return EXIT_OK


# reduce / lift / extract

def _need_k(args):
    if args.k is None:
        raise PreconditionError('%s needs -k' % args.reduction)
    return args.k


def _build(reduction, g, args):
    """ Output object and sidecar payload of one reduction """
    if reduction == 'clique-gap':
        out = cliquegap.clique_gap_reduce(g, _need_k(args))
        return out, cliquegap.to_sidecar(out)
    if reduction == 'im-hard':
        out = hardness.build_h(g, _need_k(args), args.boundary_rule)
        return out, hardness.to_sidecar(out)
    if reduction == 'image':
        out = approx.image_reduce(g)
        return out, approx.image_sidecar(out)
    if reduction == 'ham-closure':
        out = approx.ham_closure_reduce(g)
        return out, approx.ham_closure_sidecar(out)
    if reduction == 'blowup':
        out = approx.blowup_reduce(g)
        return out, approx.blowup_sidecar(out)
    out = approx.hambip_closure_reduce(g)
    return out, approx.hambip_sidecar(out)


def cmd_reduce(args, config):
    g, _ = read_graph_input(_read(args.input))
    out, payload = _build(args.reduction, g, args)
    cycle = getattr(out, 'ham_cycle', None)
    if args.cycle is not None and cycle is None:
        raise PreconditionError('%s output has no Hamiltonian cycle'
                                % args.reduction)
    sidecar = dump_sidecar(args.reduction, out.graph, payload)

    output = _resolve(args.output, config)
    sidecar_path = args.sidecar
    if sidecar_path is None and args.output not in (None, '-'):
        sidecar_path = args.output + '.json'
    sidecar_path = _resolve(sidecar_path, config)
    cycle_path = _resolve(args.cycle, config)

    if args.bundle:
        _write(dump_bundle(out.graph, sidecar), output)
    else:
        _write(emit_graph(out.graph), output)
        if sidecar_path is not None:
            _write(sidecar, sidecar_path)
        else:
            LOG.info('no sidecar path given, provenance not written')
    if cycle_path is not None:
        _write(dump_witness(Witness(CYCLE, list(cycle))), cycle_path)
    return EXIT_OK


def _source_and_witness(args):
    g, _ = read_graph_input(_read(args.graph))
    witness = load_witness(_read(args.witness))
    return g, witness


def _expect_kind(witness, *kinds):
    if witness.kind not in kinds:
        raise PreconditionError('expected a %s witness, got %s'
                                % (' or '.join(k.value for k in kinds),
                                   witness.kind.value))
    return witness.items


def cmd_lift(args, config):
    """ Source witness to a witness of the reduced graph """
    g, witness = _source_and_witness(args)
    out, _ = _build(args.reduction, g, args)
    r = args.reduction
    if r == 'clique-gap':
        lifted = Witness(CLIQUE, cliquegap.lift_clique(
            out, _expect_kind(witness, CLIQUE)))
    elif r == 'im-hard':
        lifted = Witness(MIM, hardness.lift_clique_to_matching(
            out, _expect_kind(witness, CLIQUE)))
    elif r == 'image':
        lifted = Witness(MIM, approx.mis_to_matching(
            out, _expect_kind(witness, MIS)))
    elif r == 'blowup':
        lifted = Witness(MIM, approx.mis_to_blowup_matching(
            out, _expect_kind(witness, MIS)))
    else:
        lifted = Witness(MIM, approx.closure_lift(
            out, _expect_kind(witness, MIM)))
    _write(dump_witness(lifted),
           _resolve(args.output, config))
    return EXIT_OK


def cmd_extract(args, config):
    """ Witness of the reduced graph back to a source witness """
    g, witness = _source_and_witness(args)
    out, _ = _build(args.reduction, g, args)
    r = args.reduction
    if r == 'clique-gap':
        mapped = Witness(CLIQUE, cliquegap.project_clique(
            out, _expect_kind(witness, CLIQUE)))
    elif r == 'im-hard':
        mapped = Witness(CLIQUE, hardness.extract_clique_from_matching(
            out, _expect_kind(witness, MIM)))
    elif r == 'image':
        mapped = Witness(MIS, approx.matching_to_mis(
            out, _expect_kind(witness, MIM)))
    elif r == 'blowup':
        mapped = Witness(MIS, approx.blowup_to_mis(
            out, _expect_kind(witness, MIM)))
    elif r == 'ham-closure':
        mapped = Witness(MIM, approx.ham_closure_recover(
            out, _expect_kind(witness, MIM)))
    else:
        mapped = Witness(MIM, approx.hambip_recover(
            out, _expect_kind(witness, MIM)))
    _write(dump_witness(mapped),
           _resolve(args.output, config))
    return EXIT_OK


# solve

_SOLVERS = {
    'clique': (max_clique, CLIQUE),
    'mis': (max_independent_set, MIS),
    'mim': (max_induced_matching, MIM),
}


def cmd_solve(args, config):
    g, _ = read_graph_input(_read(args.input))
    budget = _budget(args, config)
    output = _resolve(args.output, config)

    if args.target is not None:
        if args.problem != 'mim':
            raise PreconditionError('--target is only supported for mim')
        result = has_induced_matching(g, args.target, budget)
        _write(dump_witness(Witness(MIM, result.witness),
                            verdict=result.verdict.value,
                            target=args.target,
                            nodes=result.nodes_explored), output)
        return EXIT_BUDGET if result.verdict is UNKNOWN else EXIT_OK

    solver, kind = _SOLVERS[args.problem]
    result = solver(g, budget)
    _write(dump_witness(Witness(kind, result.witness),
                        value=result.value, status=result.status.value,
                        nodes=result.nodes_explored), output)
    return EXIT_BUDGET if result.status is BUDGET_EXHAUSTED else EXIT_OK


# verify / replay

def cmd_verify(args, config):
    spec = make_spec(args.reduction, trials=args.trials,
                     seed=config.seed if args.seed is None else args.seed,
                     n_min=args.n_min, n_max=args.n_max, p_min=args.p_min,
                     p_max=args.p_max, k_min=args.k_min, k_max=args.k_max,
                     workers=args.workers)
    # an unbounded budget is a None the overrides would skip
    spec = spec._replace(budget=_budget(args, config))
    report = verify(spec)
    _write(dump_report(report),
           _resolve(args.output, config))
    return EXIT_FAILED if report.failed else EXIT_OK


def cmd_replay(args, config):
    report = replay(_read(args.bundle))
    _write(dump_report(report),
           _resolve(args.output, config))
    if report.failed:
        return EXIT_FAILED
    if report.unknown:
        return EXIT_BUDGET
    return EXIT_OK


def build_parser():
    parser = _Parser(prog='imatch',
                     description='Induced matching reduction workbench')
    parser.add_argument('--config', help='INI file with an [imatch] section')
    parser.add_argument('-v', '--verbose', action='store_true',
                        help='debug logging')
    parser.add_argument('-q', '--quiet', action='store_true',
                        help='warnings and errors only')
    sub = parser.add_subparsers(dest='command', required=True,
                                parser_class=_Parser)

    def output_arg(p):
        p.add_argument('-o', '--output', help='output file, default stdout')

    p = sub.add_parser('gen', help='generate a graph')
    p.add_argument('family', choices=['complete', 'complete-bipartite',
                                      'random', 'random-bipartite',
                                      'triangle-free', 'path', 'cycle',
                                      'petersen'])
    p.add_argument('params', nargs='*',
                   help='sizes and edge probability of the family')
    p.add_argument('--seed', type=int)
    output_arg(p)
    p.set_defaults(func=cmd_gen)

    def reduction_args(p):
        p.add_argument('reduction', choices=REDUCTIONS)
        p.add_argument('-k', type=int, help='clique parameter')
        p.add_argument('--boundary-rule', default=hardness.ORIENTED.value,
                       choices=[r.value for r in hardness.BoundaryRule],
                       help='im-hard gadget to connector rule')

    p = sub.add_parser('reduce', help='build a reduction output graph')
    reduction_args(p)
    p.add_argument('-i', '--input', help='source graph, default stdin')
    p.add_argument('--sidecar', help='provenance JSON path, default '
                   '<output>.json when -o is given')
    p.add_argument('--bundle', action='store_true',
                   help='write graph and provenance as one JSON bundle')
    p.add_argument('--cycle', help='write the Hamiltonian cycle of the '
                   'output as a cycle witness (im-hard, ham-closure, '
                   'hambip-closure)')
    output_arg(p)
    p.set_defaults(func=cmd_reduce)

    for name, func, what in (('lift', cmd_lift, 'source'),
                             ('extract', cmd_extract, 'reduced graph')):
        p = sub.add_parser(name, help='map a %s witness across a reduction'
                           % what)
        reduction_args(p)
        p.add_argument('-g', '--graph', required=True, help='source graph')
        p.add_argument('-w', '--witness', required=True,
                       help='witness JSON of the %s' % what)
        output_arg(p)
        p.set_defaults(func=func)

    p = sub.add_parser('solve', help='solve exactly')
    p.add_argument('problem', choices=sorted(_SOLVERS))
    p.add_argument('-i', '--input', help='graph, default stdin')
    p.add_argument('--target', type=int,
                   help='decide whether a matching of this size exists')
    p.add_argument('--budget', help='branch node limit, e.g. 1e8')
    output_arg(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser('verify', help='run a seeded campaign')
    p.add_argument('reduction', choices=[k.value for k in ReductionKind])
    p.add_argument('--trials', type=int)
    p.add_argument('--seed', type=int)
    p.add_argument('--n-min', type=int)
    p.add_argument('--n-max', type=int)
    p.add_argument('--p-min', type=float)
    p.add_argument('--p-max', type=float)
    p.add_argument('--k-min', type=int)
    p.add_argument('--k-max', type=int)
    p.add_argument('--budget')
    p.add_argument('--workers', type=int)
    output_arg(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser('replay', help='re-run one trial from a bundle')
    p.add_argument('bundle', help='replay bundle JSON')
    output_arg(p)
    p.set_defaults(func=cmd_replay)
    return parser


def dispatch(argv):
    """
    Parse ``argv`` and run the subcommand.

    :returns: exit code
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as stop:
        return stop.code if isinstance(stop.code, int) else EXIT_USAGE

    level = logging.INFO
    if args.verbose:
        level = logging.DEBUG
    elif args.quiet:
        level = logging.WARNING
    handler = setup_logging(level)
    log = logging.getLogger('imatch-cli')

    try:
        config = load_config(args.config)
        return args.func(args, config)
    except (ReductionSoundnessError, PathRepairError) as err:
        log.error('%s: %s' % (type(err).__name__, err))
        return EXIT_FAILED
    except (ImatchError, OSError) as err:
        log.error('%s: %s' % (type(err).__name__, err))
        return EXIT_INPUT
    finally:
        logging.getLogger().removeHandler(handler)
