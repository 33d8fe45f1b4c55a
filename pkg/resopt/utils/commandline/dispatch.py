#!/usr/bin/env python
# License: BSD 3 clause
"""
The ``resopt`` command: dispatches its subcommands to the individual
command-line scripts.
"""

import argparse
import sys

from resopt.version import __version__

from . import (check_graph,
               reduce_set_packing,
               reproduce_result,
               run_scenario,
               summarize_reports)

COMMANDS = {'run': run_scenario,
            'check-graph': check_graph,
            'reproduce': reproduce_result,
            'reduce': reduce_set_packing,
            'summarize': summarize_reports}


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
        The exit code of the subcommand.
    """
    parser = argparse.ArgumentParser(
        prog='resopt',
        description='Resilient distributed optimization simulator. Run '
                    '"resopt COMMAND --help" for the options of a command.',
        formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    parser.add_argument('command', choices=sorted(COMMANDS),
                        help='The command to run.')
    parser.add_argument('arguments', nargs=argparse.REMAINDER,
                        help='Arguments passed on to the command.')
    parser.add_argument('--version', action='version',
                        version='%(prog)s {0}'.format(__version__))
    args = parser.parse_args(argv)
    return COMMANDS[args.command].main(args.arguments)


if __name__ == '__main__':
    sys.exit(main())
