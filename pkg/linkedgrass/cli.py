"""Command line front door

Every run prints one JSON document holding the result and the provenance of
the run (digest of the input document, seed and prime). Exit codes: 0 on
success, 1 for malformed input or unmet hypotheses, 2 when a computed
identity fails to hold and 3 when an enumeration exceeds its budget.
"""
import argparse
import json
import logging
import os
import sys
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from linkedgrass import exc
from linkedgrass.curves import DEFAULT_PRIME, curve_example_report
from linkedgrass.dvr import LatticeConfiguration
from linkedgrass.ingest import hull_points, load_configuration, read_document, tropical_input
from linkedgrass.plucker import counterexample, counterexample_fixture, linked_witness, pluecker_check
from linkedgrass.quiver import build_quiver, double_tree
from linkedgrass.rep import (ambient_multiplicities, build_M, is_projective, local_linear_independence, relation_report,
                             require_lli)
from linkedgrass.strata import component_strata, components, oracle_report, realize_stratum, strata_summary
from linkedgrass.tropical import apply_twists, integral_tropical_hull, normalize, tropical_report
from linkedgrass.util import input_digest

_log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_MISMATCH = 2
EXIT_BUDGET = 3

Report = Dict[str, Any]


class _ArgumentParser(argparse.ArgumentParser):
    """Usage errors exit with status 1 like every other input problem
    """
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, '{}: error: {}\n'.format(self.prog, message))


def _split(path):
    # type: (str) -> Tuple[str, str]
    path = os.path.abspath(path)
    return os.path.dirname(path), os.path.basename(path)


def _load(args):
    # type: (argparse.Namespace) -> Tuple[LatticeConfiguration, str]
    configuration, text = load_configuration(*_split(args.document), close=args.close)
    if args.p is not None and args.p != configuration.p:
        configuration = configuration.rebase(args.p)
    return configuration, text


def _provenance(args, text=None, p=None):
    # type: (argparse.Namespace, Optional[str], Optional[int]) -> Dict[str, Any]
    return {'input_digest': input_digest(text) if text is not None else None,
            'seed': args.seed,
            'p': p if p is not None else args.p}


def _ranks(args, configuration):
    # type: (argparse.Namespace, LatticeConfiguration) -> List[int]
    if args.r:
        return list(args.r)
    return list(range(1, configuration.d))


def _analyze_command(args):
    # type: (argparse.Namespace) -> Report
    configuration, text = _load(args)
    quiver = build_quiver(configuration)
    rep = build_M(configuration)
    verdicts, lli = local_linear_independence(rep)
    result = {
        'classes': configuration.labels,
        'd': configuration.d,
        'quiver': quiver.to_dict(),
        'double_tree': double_tree(quiver) is not None,
        'relations': relation_report(rep),
        'locally_linearly_independent': {
            'vertices': {configuration.labels[v]: ok for v, ok in sorted(verdicts.items())},
            'overall': lli,
        },
    }  # type: Report
    if lli:
        d_v = ambient_multiplicities(rep)
        result['ambient_multiplicities'] = {configuration.labels[v]: m for v, m in sorted(d_v.items())}
        result['strata'] = {str(r): strata_summary(rep, r) for r in _ranks(args, configuration)}
    return {'result': result, 'provenance': _provenance(args, text, configuration.p)}


def _strata_command(args):
    # type: (argparse.Namespace) -> Report
    configuration, text = _load(args)
    rep = build_M(configuration)
    result = {}  # type: Report
    for r in _ranks(args, configuration):
        entry = {'strata': strata_summary(rep, r)}  # type: Dict[str, Any]
        geometry = require_lli(rep)
        labels = components(r, geometry, ambient_multiplicities(rep))
        entry['components'] = [label.to_dict() for label in labels]
        if args.realize:
            witnesses = []
            for label in labels:
                point = realize_stratum(component_strata(label, geometry), r, configuration, seed=args.seed)
                witnesses.append({'component': label.to_dict(),
                                  'p': point.rep.p,
                                  'spaces': [space.basis.tolist() for space in point.spaces],
                                  'projective': is_projective(point.rep, point)})
            if not all(w['projective'] for w in witnesses):
                raise exc.VerificationMismatch("A component witness at r={} is not projective".format(r))
            entry['witnesses'] = witnesses
        if args.oracle:
            entry['oracle'] = oracle_report(configuration, r, q=args.oracle, budget=args.budget)
            if not (entry['oracle']['image_matches'] and entry['oracle']['components_match']):
                raise exc.VerificationMismatch("Exhaustive count over F_{} disagrees at r={}".format(args.oracle, r))
        result[str(r)] = entry
    return {'result': result, 'provenance': _provenance(args, text, configuration.p)}


def _bruteforce_command(args):
    # type: (argparse.Namespace) -> Report
    configuration, text = _load(args)
    result = {str(r): oracle_report(configuration, r, q=args.q, budget=args.budget)
              for r in _ranks(args, configuration)}
    agreement = all(entry['image_matches'] and entry['components_match'] for entry in result.values())
    return {'result': {'ranks': result, 'agreement': agreement},
            'provenance': _provenance(args, text, configuration.p)}


def _tropical_command(args):
    # type: (argparse.Namespace) -> Report
    document, text = read_document(*_split(args.document))
    graph, w0, concentrated = tropical_input(document)
    result = tropical_report(graph, w0, concentrated, extra_twists=args.auto_concentrate)
    result['graph'] = graph.to_dict()
    result['w0'] = w0
    return {'result': result, 'provenance': _provenance(args, text)}


def _hull_command(args):
    # type: (argparse.Namespace) -> Report
    document, text = read_document(*_split(args.document))
    points = hull_points(document)
    hull = integral_tropical_hull(points)
    result = {'points': [list(normalize(point)) for point in points], 'hull': [list(x) for x in hull]}
    if 'graph' in document and 'w0' in document:
        graph, w0, _ = tropical_input(dict(document, concentrated=[]))
        result['multidegrees'] = [list(apply_twists(graph, w0, x)) for x in hull]
    return {'result': result, 'provenance': _provenance(args, text)}


def _curve_example_command(args):
    # type: (argparse.Namespace) -> Report
    p = args.p if args.p is not None else DEFAULT_PRIME
    report = curve_example_report(args.n01, args.n02, args.n12, w0=args.w0, p=p)
    failures = []
    if any(h != report['expected_h0'] for h in report['h0']):
        failures.append('h0')
    if not report['h1_vanishes']:
        failures.append('h1')
    if not all(report['boundary_isomorphisms']):
        failures.append('boundary isomorphisms')
    if report['image_dims'] != report['expected_image_dims']:
        failures.append('image dimensions')
    if not report['kernel_images_independent']:
        failures.append('kernel images')
    if failures:
        raise exc.VerificationMismatch("Curve example checks failed: {}".format(', '.join(failures)))
    parameters = json.dumps({'n': [args.n01, args.n02, args.n12], 'w0': list(args.w0)}, sort_keys=True)
    return {'result': report, 'provenance': _provenance(args, parameters, p)}


def _counterexample_command(args):
    # type: (argparse.Namespace) -> Report
    p = args.p if args.p is not None else 2
    check = counterexample(p)
    if not (check.minors_vanish and not check.linked):
        raise exc.VerificationMismatch("Expected a point on the minor locus outside the linked Grassmannian")
    configuration, points = counterexample_fixture(p)
    linked_point = linked_witness(configuration, points[0].dim, seed=args.seed)
    control = pluecker_check(configuration, linked_point, reference=1)
    if not (control.minors_vanish and control.linked):
        raise exc.VerificationMismatch("A linked point must satisfy the minor equations")
    return {'result': {'point': check.to_dict(), 'linked_point': control.to_dict()},
            'provenance': _provenance(args, 'counterexample', p)}


def _add_configuration_args(parser):
    # type: (argparse.ArgumentParser) -> None
    parser.add_argument('document', help="Path of a configuration document (JSON)")
    parser.add_argument('--close', action='store_true', help="Replace the configuration by its convex closure")
    parser.add_argument('--r', type=int, action='append', help="Subspace dimension; repeat for several")


def build_parser():
    # type: () -> argparse.ArgumentParser
    parser = _ArgumentParser(prog='linkedgrass', description="Linked Grassmannians of lattice configurations")
    parser.add_argument('--p', type=int, default=None, help="Prime characteristic of the residue field")
    parser.add_argument('--seed', type=int, default=0, help="Seed for every random choice")
    parser.add_argument('--budget', type=int, default=None, help="Cap on exhaustive enumeration steps")
    parser.add_argument('--pretty', action='store_true', help="Indent the output document")
    parser.add_argument('--verbose', '-v', action='count', default=0, help="Log progress to stderr")
    commands = parser.add_subparsers(dest='command', parser_class=_ArgumentParser)
    commands.required = True

    analyze = commands.add_parser('analyze', help="Quiver, local linear independence and strata")
    _add_configuration_args(analyze)
    analyze.set_defaults(func=_analyze_command)

    strata = commands.add_parser('strata', help="Strata, components and their witnesses")
    _add_configuration_args(strata)
    strata.add_argument('--realize', action='store_true', help="Produce a projective point of every component")
    strata.add_argument('--oracle', type=int, metavar='Q', help="Cross-check by exhaustive count over F_Q")
    strata.set_defaults(func=_strata_command)

    bruteforce = commands.add_parser('bruteforce', help="Exhaustive count compared with the predicted strata")
    _add_configuration_args(bruteforce)
    bruteforce.add_argument('--oracle', '--q', dest='q', type=int, default=None, metavar='Q',
                            help="Size of the prime field to count over")
    bruteforce.set_defaults(func=_bruteforce_command)

    tropical = commands.add_parser('tropical', help="Twist closure and tropical hull of concentrated multidegrees")
    tropical.add_argument('document', help="Path of a tropical document (JSON)")
    tropical.add_argument('--auto-concentrate', type=int, default=0, metavar='K',
                          help="Apply K extra negative twists at v to every w_v")
    tropical.set_defaults(func=_tropical_command)

    hull = commands.add_parser('hull', help="Integral tropical hull of a finite set of points")
    hull.add_argument('document', help="Path of a hull document (JSON)")
    hull.set_defaults(func=_hull_command)

    curve = commands.add_parser('curve-example', help="Sections on a curve of three rational components")
    curve.add_argument('n01', type=int)
    curve.add_argument('n02', type=int)
    curve.add_argument('n12', type=int)
    curve.add_argument('--w0', type=int, nargs=3, default=[1, 1, 1], metavar='A')
    curve.set_defaults(func=_curve_example_command)

    counter = commands.add_parser('counterexample', help="A point cut out by the minors that is not linked")
    counter.set_defaults(func=_counterexample_command)
    return parser


_EXIT_CODES = [(exc.BudgetExceeded, EXIT_BUDGET),
               (exc.VerificationMismatch, EXIT_MISMATCH),
               (ValueError, EXIT_USAGE),
               (exc.LinkedGrassError, EXIT_USAGE)]  # type: List[tuple]


def exit_code(error):
    # type: (BaseException) -> int
    for error_class, code in _EXIT_CODES:
        if isinstance(error, error_class):
            return code
    raise error


def _json_default(value):
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, (set, frozenset, tuple)):
        return sorted(value)
    raise TypeError("Cannot serialise {!r}".format(value))


def main(argv=None, stdout=None):
    # type: (Optional[Sequence[str]], Any) -> int
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose > 1 else logging.INFO if args.verbose else logging.WARNING,
                        format='%(levelname)s %(name)s: %(message)s', stream=sys.stderr)
    command = args.func  # type: Callable[[argparse.Namespace], Report]
    try:
        report = command(args)
    except (exc.LinkedGrassError, ValueError) as e:
        _log.error("%s: %s", e.__class__.__name__, e)
        return exit_code(e)
    report['command'] = args.command
    out = stdout or sys.stdout
    out.write(json.dumps(report, indent=2 if args.pretty else None, sort_keys=True, default=_json_default))
    out.write('\n')
    return EXIT_OK


def run():
    sys.exit(main())
