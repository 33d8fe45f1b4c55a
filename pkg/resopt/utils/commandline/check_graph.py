#!/usr/bin/env python
# License: BSD 3 clause
"""
Runs the exact robustness checks and the maximum r-local set search on a
graph file and prints the results as JSON.
"""

import json
import logging
import sys
from argparse import ArgumentDefaultsHelpFormatter, ArgumentParser

from resopt.analysis import max_r_local_set
from resopt.experiments import NumpyTypeEncoder, robustness_section
from resopt.graph import SizeGuardError, read_graph, to_dot
from resopt.version import __version__


def check_graph(graph, r_values=(), rs_pairs=(), max_local=(), force=False):
    """
    Build the JSON report printed by ``check_graph``.

    Raises
    ------
    SizeGuardError
        If an exact robustness check exceeds the size guard.
    """
    report = {'nodes': graph.n, 'directed': graph.directed,
              'edges': len(graph.edges)}
    if r_values or rs_pairs:
        robustness, witnesses, r_max = robustness_section(graph, r_values, rs_pairs,
                                                          force=force)
        report.update(robustness=robustness, robustness_witnesses=witnesses,
                      r_max=r_max)
    if max_local:
        report['max_local'] = {}
        for r in max_local:
            result = max_r_local_set(graph, r)
            report['max_local'][str(r)] = {'size': result.size,
                                           'nodes': [graph.name(v)
                                                     for v in sorted(result.nodes)],
                                           'certificate': result.certificate,
                                           'exhaustive': result.exhaustive,
                                           'explored': result.explored}
    return report


def main(argv=None):
    """
    Handles command line arguments and gets things started.

    Parameters
    ----------
    argv : list of str
        List of arguments, as if specified on the command-line.
        If None, ``sys.argv[1:]`` is used instead.

    Returns
    -------
    exit_code : int
        0 on success and 2 if the graph cannot be read or is too large for
        the exact checks.
    """

    # Get command line arguments
    parser = ArgumentParser(description='Checks r-robustness, (r,s)-robustness '
                                        'and maximum r-local sets of a graph.',
                            formatter_class=ArgumentDefaultsHelpFormatter,
                            conflict_handler='resolve')
    parser.add_argument('graph_file', help='JSON graph file.')
    parser.add_argument('--r',
                        help='Check r-robustness; may be repeated.',
                        type=int,
                        action='append',
                        default=[],
                        dest='r_values',
                        metavar='R')
    parser.add_argument('--rs',
                        help='Check (r,s)-robustness; may be repeated.',
                        type=int,
                        nargs=2,
                        action='append',
                        default=[],
                        dest='rs_pairs',
                        metavar=('R', 'S'))
    parser.add_argument('--max-local',
                        help='Find a maximum r-local set; may be repeated.',
                        type=int,
                        action='append',
                        default=[],
                        dest='max_local',
                        metavar='R')
    parser.add_argument('--force',
                        help='Run exact checks beyond the size guard.',
                        action='store_true')
    parser.add_argument('--dot',
                        help='Print the graph in DOT format instead.',
                        action='store_true')
    parser.add_argument('--version', action='version',
                        version='%(prog)s {0}'.format(__version__))
    args = parser.parse_args(argv)

    # Make warnings from built-in warnings module get formatted more nicely
    logging.captureWarnings(True)
    logging.basicConfig(format=('%(asctime)s - %(name)s - %(levelname)s - ' +
                                '%(message)s'))
    logger = logging.getLogger(__name__)

    if not (args.dot or args.r_values or args.rs_pairs or args.max_local):
        parser.error('give at least one of --r, --rs, --max-local or --dot')

    try:
        graph = read_graph(args.graph_file)
    except (IOError, KeyError, ValueError) as e:
        logger.error('Could not read %s: %s', args.graph_file, e)
        return 2

    if args.dot:
        print(to_dot(graph))
        return 0

    try:
        report = check_graph(graph, args.r_values, args.rs_pairs, args.max_local,
                             force=args.force)
    except SizeGuardError as e:
        logger.error('%s', e)
        return 2
    report['graph'] = args.graph_file
    print(json.dumps(report, cls=NumpyTypeEncoder, indent=2, sort_keys=True))
    return 0


if __name__ == '__main__':
    sys.exit(main())
