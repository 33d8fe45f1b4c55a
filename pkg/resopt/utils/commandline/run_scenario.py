#!/usr/bin/env python
# License: BSD 3 clause
"""
Runs one or more scenario files and writes their traces, reports and plots.

The exit code is 0 when every requested check passed, 1 when a check failed
and 2 when a scenario could not be parsed.
"""

import logging
import sys
from argparse import ArgumentDefaultsHelpFormatter, ArgumentParser

from resopt.experiments import report_table, run_scenario, run_scenarios
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
    parser = ArgumentParser(description='Runs the simulations described in the '
                                        'given scenario files.',
                            formatter_class=ArgumentDefaultsHelpFormatter,
                            conflict_handler='resolve')
    parser.add_argument('scenario_file',
                        help='Scenario file (.cfg or .json) to run.',
                        nargs='+')
    parser.add_argument('-o',
                        '--out',
                        help='Directory for the outputs. With several scenario '
                             'files, each one gets a subdirectory. Defaults to '
                             'the output directory named in the scenario.',
                        default=None,
                        metavar='DIR')
    parser.add_argument('-s',
                        '--seed',
                        help='Overrides the seed given in the scenario file.',
                        type=int,
                        default=None)
    parser.add_argument('-j',
                        '--jobs',
                        help='Number of scenarios to run in parallel.',
                        type=int,
                        default=1)
    parser.add_argument('-v',
                        '--verbose',
                        help='Include debug information in the logging output.',
                        default=False,
                        action='store_true')
    parser.add_argument('--version',
                        action='version',
                        version='%(prog)s {0}'.format(__version__))
    args = parser.parse_args(argv)

    # Default logging level is INFO unless we are being verbose
    log_level = logging.DEBUG if args.verbose else logging.INFO

    # Make warnings from built-in warnings module get formatted more nicely
    logging.captureWarnings(True)
    logging.basicConfig(format=('%(asctime)s - %(name)s - %(levelname)s - ' +
                                '%(message)s'), level=log_level)

    if len(args.scenario_file) == 1:
        results = [run_scenario(args.scenario_file[0], output_dir=args.out,
                                seed=args.seed, log_level=log_level)]
    else:
        if args.seed is not None:
            logging.getLogger(__name__).warning('--seed is ignored for batches; '
                                                'each scenario uses its own seed')
        results = run_scenarios(args.scenario_file, output_dir=args.out,
                                n_jobs=args.jobs, log_level=log_level)

    for _, report in results:
        if 'checks' in report:
            print(report_table(report))
    return max(exit_code for exit_code, _ in results)


if __name__ == '__main__':
    sys.exit(main())
