# License: BSD 3 clause
"""
Functions for running scenarios: parse, simulate, analyse, and write the
trace, the report and the plot.
"""

import logging
import os
from os.path import basename, join, splitext

import joblib

from resopt.config import parse_scenario_file
from resopt.dynamics import run
from resopt.graph import SizeGuardError
from resopt.utils.constants import MAX_CONCURRENT_PROCESSES
from resopt.utils.logging import close_and_remove_logger_handlers, get_resopt_logger

from .output import OUTPUT_FILES, plot_trace, summarize_reports, write_outputs, write_trace
from .utils import (NumpyTypeEncoder,
                    build_report,
                    evaluate_checks,
                    report_table,
                    robustness_key,
                    robustness_section,
                    write_json)

__all__ = ['EXIT_CHECK_FAILED', 'EXIT_OK', 'EXIT_SCENARIO_ERROR',
           'NumpyTypeEncoder', 'OUTPUT_FILES', 'build_report', 'evaluate_checks',
           'plot_trace', 'report_table', 'robustness_key', 'robustness_section',
           'run_scenario', 'run_scenarios', 'summarize_reports', 'write_json',
           'write_outputs', 'write_trace']

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_SCENARIO_ERROR = 2

#: Exceptions that mean the scenario itself is broken
SCENARIO_ERRORS = (IOError, KeyError, TypeError, ValueError)


def scenario_report(scenario, trace, outputs=None, force=False):
    """
    Build the report of a parsed scenario and its trace, including the
    requested robustness checks.
    """
    robustness = witnesses = r_max = None
    if scenario.robustness_r or scenario.robustness_rs:
        robustness, witnesses, r_max = robustness_section(scenario.graph,
                                                          scenario.robustness_r,
                                                          scenario.robustness_rs,
                                                          force=force)
    return build_report(trace, scenario.checks,
                        robustness=robustness,
                        witnesses=witnesses,
                        r_max=r_max,
                        outputs=outputs,
                        tolerance=scenario.tolerance,
                        tail_fraction=scenario.tail_fraction,
                        safety_eps=scenario.safety_eps,
                        contraction_tol=scenario.contraction_tol,
                        eta=scenario.eta)


def run_scenario(scenario_path, output_dir=None, seed=None, log_level=logging.INFO):
    """
    Run one scenario file and write its outputs.

    Parameters
    ----------
    scenario_path : str
        Path to a ``.cfg`` or ``.json`` scenario.
    output_dir : str, optional
        Overrides the output directory named in the scenario.
        Defaults to ``None``.
    seed : int, optional
        Overrides the seed named in the scenario.
        Defaults to ``None``.
    log_level : int, optional
        Defaults to ``logging.INFO``.

    Returns
    -------
    exit_code : int
        ``EXIT_OK`` if every requested check passed, ``EXIT_CHECK_FAILED``
        if one failed and ``EXIT_SCENARIO_ERROR`` if the scenario could not
        be parsed or simulated.
    report : dict
        The run report; for broken scenarios only the path and the error.
    """
    logger = logging.getLogger(__name__)
    try:
        scenario = parse_scenario_file(scenario_path, seed=seed, log_level=log_level)
    except SCENARIO_ERRORS as e:
        logger.error('Invalid scenario %s: %s', scenario_path, e)
        return EXIT_SCENARIO_ERROR, {'scenario': scenario_path, 'error': str(e)}

    output_dir = output_dir if output_dir is not None else scenario.output_dir
    output_dir = output_dir or os.getcwd()
    os.makedirs(output_dir, exist_ok=True)
    log_path = scenario.log_path or join(output_dir, '{}.log'.format(scenario.name))

    logger = get_resopt_logger('scenario', filepath=log_path, log_level=log_level)
    try:
        logger.info('Running scenario %s (%d nodes, %d rounds, seed %d)',
                    scenario.name, scenario.graph.n, scenario.sim_config.rounds,
                    scenario.sim_config.seed)
        trace = run(scenario.sim_config, logger=logger)
        try:
            report = scenario_report(scenario, trace)
        except (SizeGuardError, ValueError) as e:
            logger.error('Analysis of %s failed: %s', scenario.name, e)
            return EXIT_SCENARIO_ERROR, {'scenario': scenario_path, 'error': str(e)}
        report['outputs'] = write_outputs(trace, report, output_dir, plot=scenario.plot)
        logger.info('\n%s', report_table(report))
        if report['passed']:
            return EXIT_OK, report
        failed = sorted(name for name, result in report['checks'].items()
                        if not result['passed'])
        logger.warning('Scenario %s failed the checks %s', scenario.name, failed)
        return EXIT_CHECK_FAILED, report
    finally:
        close_and_remove_logger_handlers(logger)


def _batch_output_dir(output_dir, scenario_path):
    if output_dir is None:
        return None
    return join(output_dir, splitext(basename(scenario_path))[0])


def run_scenarios(scenario_paths, output_dir=None, n_jobs=1, log_level=logging.INFO):
    """
    Run independent scenarios, in parallel when ``n_jobs > 1``.

    Each scenario writes into its own subdirectory of ``output_dir``
    (named after the scenario file) when ``output_dir`` is given.

    Parameters
    ----------
    scenario_paths : list of str
    output_dir : str, optional
        Defaults to ``None``, meaning each scenario's own output directory.
    n_jobs : int, optional
        Number of worker processes, capped at ``MAX_CONCURRENT_PROCESSES``.
        Defaults to ``1``.
    log_level : int, optional
        Defaults to ``logging.INFO``.

    Returns
    -------
    results : list of (int, dict)
        The ``run_scenario`` result of every scenario, in input order.
    """
    n_jobs = max(1, min(n_jobs, MAX_CONCURRENT_PROCESSES))
    parallel = joblib.Parallel(n_jobs=n_jobs, pre_dispatch=n_jobs)
    return parallel(joblib.delayed(run_scenario)(path,
                                                 output_dir=_batch_output_dir(output_dir,
                                                                              path),
                                                 log_level=log_level)
                    for path in scenario_paths)
