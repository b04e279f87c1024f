"""
Command line interface of the moreau package.

    moreau eval GLQ --x 1 2
    moreau envelope GLQ --r 2
    moreau invert-envelope QUADRATIC --r 3
    moreau sample --family fk --k 1 --xmin -3 --xmax 3 --step 0.5

Every subcommand reads its input from a JSON file, from "-" (standard
input) or from inline JSON text, and writes JSON to standard output,
except sample, which writes CSV.  Exit status is 0 on success, 2 for
invalid input and 3 for well formed but infeasible requests.
"""
import argparse
import csv
import logging
import sys

import numpy as np

from moreau import MoreauError, \
                   __version__
from moreau import jsonio
from moreau.apps import LeastSquaresProblem
from moreau.calcerror import InfeasibleError, \
                             ValidationError
from moreau.envinv import invert_envelope, \
                          invert_envelope_1d
from moreau.epiconv import classify_1d, \
                           classify_sequence, \
                           envelope_coeffs_1d, \
                           aw_distance, \
                           builtin_family, \
                           CLASSIFY_TOL, \
                           FAMILIES
from moreau.linrel import firm_nonexpansiveness_defect
from moreau.moreau_config import DEFAULT_I_MAX, \
                                 DEFAULT_PROX_PARAMETER, \
                                 LOG_FORMAT, \
                                 LOG_LEVEL

MODULE = 'cli.py'

# slack of the sampled firm nonexpansiveness test
FIRM_SLACK = 1e-10

# error messages
SEED_REQUIRED = 'Sampling needs an explicit --seed'
BAD_SAMPLE_RANGE = 'Sample range needs xmin <= xmax and step > 0'

logger = logging.getLogger(__name__)


def _emit(document):
    sys.stdout.write(jsonio.dumps(document) + '\n')


def _relation_document(document):
    if isinstance(document, dict) and 'relation' in document:
        return document['relation']
    return document


def run_eval(args):
    f = jsonio.decode_glq(jsonio.load_document(args.input))
    _emit({'value': jsonio.encode_value(f.evaluate(args.x))})
    return jsonio.OK


def run_envelope(args):
    f = jsonio.decode_glq(jsonio.load_document(args.input))
    _emit({'r': args.r, 'envelope': jsonio.encode_quadratic(f.envelope(args.r))})
    return jsonio.OK


def run_prox(args):
    f = jsonio.decode_glq(jsonio.load_document(args.input))
    _emit({
        'prox': jsonio.encode_value(f.prox(args.r, args.x)),
        'envelope_gradient': jsonio.encode_value(f.envelope_gradient(args.r, args.x))
    })
    return jsonio.OK


def run_conjugate(args):
    f = jsonio.decode_glq(jsonio.load_document(args.input))
    conjugate = f.conjugate()
    document = {'conjugate': jsonio.encode_glq(conjugate)}
    if args.y is not None:
        document['value'] = jsonio.encode_value(conjugate.evaluate(args.y))
    _emit(document)
    return jsonio.OK


def run_invert_envelope(args):
    """
    Inverts either a quadratic {"Q", "b", "c"} or a 1-D envelope
    {"alpha", "beta", "gamma"}.  An infeasible inversion still prints its
    report, then exits with status 3.
    """
    document = jsonio.load_document(args.input)
    if isinstance(document, dict) and 'alpha' in document:
        alpha, beta, gamma = jsonio.decode_envelope_1d(document)
        report = invert_envelope_1d(alpha, beta, gamma, args.r)
    else:
        report = invert_envelope(jsonio.decode_quadratic(document), args.r)
    result = {
        'feasible': report.feasible,
        'reason': report.reason,
        'lipschitz_bound': report.lipschitz_bound
    }
    if report.case is not None:
        result['case'] = report.case
    if report.feasible:
        result['g'] = jsonio.encode_glq(report.g)
    _emit(result)
    return jsonio.OK if report.feasible else jsonio.INFEASIBLE


def run_check(args):
    relation = jsonio.decode_relation(
        _relation_document(jsonio.load_document(args.input))
                                     )
    maximal = relation.is_maximal_monotone()
    result = {
        'n': relation.n,
        'monotone': relation.is_monotone(),
        'symmetric': relation.is_symmetric(),
        'maximal_monotone': maximal,
        'dim_dom': relation.dom().dim,
        'dim_ran': relation.ran().dim,
        'dim_multivalued_part': relation.multivalued_part().dim
    }
    if args.pairs > 0 and maximal:
        if args.seed is None:
            raise ValidationError(
                MODULE, 'check', SEED_REQUIRED, '--seed N', 'None', ''
                                 )
        rng = np.random.default_rng(args.seed)
        xs = rng.standard_normal((args.pairs, relation.n))
        ys = rng.standard_normal((args.pairs, relation.n))
        defect = firm_nonexpansiveness_defect(relation.resolvent(), xs, ys)
        result['pairs'] = args.pairs
        result['firmly_nonexpansive'] = defect <= FIRM_SLACK
        result['defect'] = defect
    _emit(result)
    return jsonio.OK


def run_distance(args):
    document = jsonio.load_document(args.input)
    f = jsonio.decode_glq(jsonio._require(document, 'f', 'distance'))
    g = jsonio.decode_glq(jsonio._require(document, 'g', 'distance'))
    result = aw_distance(f, g, args.r, args.i_max)
    _emit({
        'value': result.value,
        'truncation_index': result.truncation_index,
        'tail_bound': result.tail_bound,
        'per_ball_sup': [[i, s] for i, s in result.per_ball_sup]
    })
    return jsonio.OK


def run_classify_1d(args):
    seq, k_list = jsonio.decode_sequence_1d(jsonio.load_document(args.input),
                                            args.r)
    verdict = classify_1d(seq, k_list, args.tol)
    _emit({
        'kind': verdict.kind,
        'params': {k: float(v) for k, v in sorted(verdict.params.items())},
        'envelope': jsonio.encode_value(verdict.envelope),
        'evidence': verdict.evidence
    })
    return jsonio.OK


def run_classify_seq(args):
    functions = jsonio.decode_sequence(jsonio.load_document(args.input))
    verdict = classify_sequence(functions, args.tol)
    _emit({
        'converged': verdict.converged,
        'residual': jsonio.encode_value(verdict.residual),
        'limit': None if verdict.limit is None else jsonio.encode_glq(verdict.limit)
    })
    return jsonio.OK


def run_lstsq(args):
    M, b = jsonio.decode_lstsq(jsonio.load_document(args.input))
    problem = LeastSquaresProblem(M, b)
    _emit({
        'domain': jsonio.encode_subspace(problem.lstsq_domain()),
        'min_norm_solution': jsonio.encode_value(problem.lstsq_min_norm_solution()),
        'conjugate': jsonio.encode_glq(problem.lstsq_conjugate())
    })
    return jsonio.OK


def run_sample(args):
    """
    Writes x, f_k(x) and e_1 f_k(x) for one of the built-in families.
    """
    if not (args.step > 0.0 and args.xmin <= args.xmax):
        raise ValidationError(
            MODULE, 'sample', BAD_SAMPLE_RANGE,
            'xmin <= xmax, step > 0',
            '%s, %s, %s' % (args.xmin, args.xmax, args.step), ''
                             )
    (a, b, c), _ = builtin_family(args.family, args.k)
    alpha, beta, gamma = envelope_coeffs_1d(a, b, c, 1.0)
    count = int(np.floor((args.xmax - args.xmin) / args.step + 1e-9)) + 1
    writer = csv.writer(sys.stdout, lineterminator='\n')
    writer.writerow(['x', 'f_k', 'e1_f_k'])
    for x in args.xmin + args.step * np.arange(count):
        writer.writerow(['%.12g' % x,
                         '%.12g' % (a * x * x + b * x + c),
                         '%.12g' % (alpha * x * x + beta * x + gamma)])
    return jsonio.OK


def build_parser():
    """
    Returns the argparse parser with one subparser per command.
    """
    parser = argparse.ArgumentParser(
        prog='moreau',
        description='Generalized linear-quadratic functions and their Moreau envelopes.'
                                    )
    parser.add_argument('--version', action='version', version=__version__)
    parser.add_argument('--verbose', action='store_true',
                        help='log at DEBUG level on standard error')
    parser.add_argument('--seed', type=int, default=None,
                        help='seed for every sampled check')
    # subcommands that sample also take --seed after their name; SUPPRESS
    # keeps a missing one from overwriting the global value
    seeded = argparse.ArgumentParser(add_help=False)
    seeded.add_argument('--seed', type=int, default=argparse.SUPPRESS,
                        help='seed for the sampled checks of this command')
    commands = parser.add_subparsers(dest='command', required=True)

    def command(name, handler, help_text, needs_input=True, parents=()):
        sub = commands.add_parser(name, help=help_text, parents=list(parents))
        if needs_input:
            sub.add_argument('input', help='JSON file, "-" or inline JSON')
        sub.set_defaults(handler=handler)
        return sub

    sub = command('eval', run_eval, 'evaluate a GLQ function')
    sub.add_argument('--x', type=float, nargs='+', required=True)

    sub = command('envelope', run_envelope, 'Moreau envelope of a GLQ function')
    sub.add_argument('--r', type=float, default=DEFAULT_PROX_PARAMETER)

    sub = command('prox', run_prox, 'proximal point and envelope gradient')
    sub.add_argument('--r', type=float, default=DEFAULT_PROX_PARAMETER)
    sub.add_argument('--x', type=float, nargs='+', required=True)

    sub = command('conjugate', run_conjugate, 'Fenchel conjugate of a GLQ function')
    sub.add_argument('--y', type=float, nargs='+', default=None)

    sub = command('invert-envelope', run_invert_envelope,
                  'recover g from a quadratic f = e_r g')
    sub.add_argument('--r', type=float, default=DEFAULT_PROX_PARAMETER)

    sub = command('check', run_check, 'monotonicity report of a linear relation',
                  parents=[seeded])
    sub.add_argument('--pairs', type=int, default=0,
                     help='sample pairs for the resolvent firmness test')

    sub = command('distance', run_distance,
                  'Attouch-Wets distance between {"f": GLQ, "g": GLQ}')
    sub.add_argument('--r', type=float, default=DEFAULT_PROX_PARAMETER)
    sub.add_argument('--i-max', dest='i_max', type=int, default=DEFAULT_I_MAX)

    sub = command('classify-1d', run_classify_1d, 'epi-limit of a 1-D sequence')
    sub.add_argument('--r', type=float, default=DEFAULT_PROX_PARAMETER)
    sub.add_argument('--tol', type=float, default=CLASSIFY_TOL)

    sub = command('classify-seq', run_classify_seq, 'epi-limit of a GLQ sequence')
    sub.add_argument('--tol', type=float, default=CLASSIFY_TOL)

    command('lstsq', run_lstsq, 'least squares conjugate and minimum-norm solution')

    sub = command('sample', run_sample, 'CSV samples of a built-in family',
                  needs_input=False)
    sub.add_argument('--family', choices=FAMILIES, required=True)
    sub.add_argument('--k', type=int, default=1)
    sub.add_argument('--xmin', type=float, default=-3.0)
    sub.add_argument('--xmax', type=float, default=3.0)
    sub.add_argument('--step', type=float, default=0.01)

    return parser

# end build_parser()


def main(argv=None):
    """
    Entry point of the moreau console script.  Returns the exit status.
    """
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else LOG_LEVEL,
                        format=LOG_FORMAT, stream=sys.stderr)
    try:
        return args.handler(args)
    except InfeasibleError as error:
        logger.debug('%s failed: %s', args.command, error)
        _emit({'error': str(error), 'reason': error.error})
        return jsonio.INFEASIBLE
    except MoreauError as error:
        sys.stderr.write('moreau %s: %s\n' % (args.command, error))
        return jsonio.INVALID_INPUT
    except np.linalg.LinAlgError as error:
        # e.g. NaN entries that make an SVD or eigensolver fail
        sys.stderr.write('moreau %s: numerically unusable input: %s\n' %
                         (args.command, error))
        return jsonio.INVALID_INPUT

# end main()


if __name__ == '__main__':
    raise SystemExit(main())
