#!/usr/bin/env python
# License: BSD 3 clause
"""
Checks the reduction from Set Packing to the maximum 1-local set problem
on instance files or on random instances. The graph built for each
instance is written as graph JSON, next to the instance file by default.

The exit code is 1 if any instance with a packing number of at least 2
disagrees with the local set size, 2 if an instance cannot be read and 0
otherwise.
"""

import json
import logging
import sys
from argparse import ArgumentDefaultsHelpFormatter, ArgumentParser
from os.path import basename, dirname, join, splitext

from tabulate import tabulate

from resopt.analysis import (random_set_packing_instance, read_set_packing,
                             reduction_check, set_packing_to_graph)
from resopt.experiments import NumpyTypeEncoder
from resopt.graph import SizeGuardError, write_graph
from resopt.version import __version__


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
    """

    # Get command line arguments
    parser = ArgumentParser(description='Compares the maximum packing of Set '
                                        'Packing instances with the maximum '
                                        '1-local set of the constructed graph.',
                            formatter_class=ArgumentDefaultsHelpFormatter,
                            conflict_handler='resolve')
    parser.add_argument('instance_file',
                        help='JSON instance file {"n": ..., "subsets": [...]}.',
                        nargs='*')
    parser.add_argument('--random',
                        help='Also check this many random instances.',
                        type=int,
                        default=0,
                        metavar='N')
    parser.add_argument('--seed',
                        help='Seed of the random instances; instance k uses '
                             '[seed, k].',
                        type=int,
                        default=0)
    parser.add_argument('--graph-dir',
                        help='Directory for the constructed graphs. Defaults to '
                             'the directory of each instance file, and to the '
                             'current directory for random instances.',
                        metavar='DIR')
    parser.add_argument('--json',
                        help='Print the results as JSON instead of a table.',
                        action='store_true')
    parser.add_argument('--version', action='version',
                        version='%(prog)s {0}'.format(__version__))
    args = parser.parse_args(argv)

    # Make warnings from built-in warnings module get formatted more nicely
    logging.captureWarnings(True)
    logging.basicConfig(format=('%(asctime)s - %(name)s - %(levelname)s - ' +
                                '%(message)s'))
    logger = logging.getLogger(__name__)

    if not args.instance_file and not args.random:
        parser.error('give at least one instance file or --random N')

    instances = []
    for path in args.instance_file:
        graph_dir = dirname(path) if args.graph_dir is None else args.graph_dir
        graph_path = join(graph_dir, '{}_graph.json'.format(splitext(basename(path))[0]))
        try:
            instances.append((path, read_set_packing(path), graph_path))
        except (IOError, KeyError, ValueError) as e:
            logger.error('Could not read %s: %s', path, e)
            return 2
    instances.extend(('random[{}]'.format(k),
                      random_set_packing_instance(seed=[args.seed, k]),
                      join(args.graph_dir or '.', 'random_{}_graph.json'.format(k)))
                     for k in range(args.random))

    results = []
    for label, instance, graph_path in instances:
        write_graph(set_packing_to_graph(instance), graph_path)
        try:
            check = reduction_check(instance)
        except SizeGuardError as e:
            logger.error('%s: %s', label, e)
            return 2
        if not check['exhaustive']:
            logger.warning('%s: the local set search hit its budget', label)
        results.append(dict(check, instance=label, n=instance.n, m=instance.m,
                            graph=graph_path))

    if args.json:
        print(json.dumps(results, cls=NumpyTypeEncoder, indent=2, sort_keys=True))
    else:
        rows = [[r['instance'], r['n'], r['m'], r['packing'], r['local_set'],
                 r['verdict']] for r in results]
        print(tabulate(rows, headers=['instance', 'n', 'm', 'packing', '1-local',
                                      'verdict'], tablefmt='psql'))
    return 1 if any(r['verdict'] == 'not equal' for r in results) else 0


if __name__ == '__main__':
    sys.exit(main())
