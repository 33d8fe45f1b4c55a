#!/usr/bin/env python
# License: BSD 3 clause
"""
Runs named reproductions and checks their acceptance criteria. The exit
code is 0 when all of them pass and 1 otherwise.
"""

import logging
import sys
from argparse import ArgumentDefaultsHelpFormatter, ArgumentParser

from resopt.experiments.reproductions import ReproductionFailure, reproduce
from resopt.utils.constants import VALID_REPRODUCTIONS
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
    parser = ArgumentParser(description='Runs bundled reproductions and checks '
                                        'their acceptance criteria.',
                            formatter_class=ArgumentDefaultsHelpFormatter,
                            conflict_handler='resolve')
    parser.add_argument('name',
                        help='Reproduction to run, or "all".',
                        nargs='+',
                        choices=list(VALID_REPRODUCTIONS) + ['all'])
    parser.add_argument('-o',
                        '--out',
                        help='Directory where a JSON report per reproduction '
                             'is written.',
                        default=None,
                        metavar='DIR')
    parser.add_argument('-v',
                        '--verbose',
                        help='Include debug information in the logging output.',
                        default=False,
                        action='store_true')
    parser.add_argument('--version', action='version',
                        version='%(prog)s {0}'.format(__version__))
    args = parser.parse_args(argv)

    log_level = logging.DEBUG if args.verbose else logging.INFO

    # Make warnings from built-in warnings module get formatted more nicely
    logging.captureWarnings(True)
    logging.basicConfig(format=('%(asctime)s - %(name)s - %(levelname)s - ' +
                                '%(message)s'), level=log_level)
    logger = logging.getLogger(__name__)

    names = list(VALID_REPRODUCTIONS) if 'all' in args.name else args.name
    failed = []
    for name in names:
        try:
            reproduce(name, output_dir=args.out, logger=logger)
        except ReproductionFailure as e:
            logger.error('Reproduction %s failed: %s', name, e)
            failed.append(name)
    if failed:
        logger.error('Failed reproductions: %s', ', '.join(failed))
        return 1
    return 0


if __name__ == '__main__':
    sys.exit(main())
