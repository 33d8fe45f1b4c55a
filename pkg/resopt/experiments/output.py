# License: BSD 3 clause
"""
Functions that write the outputs of a scenario run: the trace as CSV and
JSON, the report, the trajectory plot and summaries over many reports.
"""

import json
import logging
from os.path import exists, join

import matplotlib.pyplot as plt
import numpy as np
import pandas as pd
import seaborn as sns

from resopt.analysis import diameter_series
from resopt.utils.io import atomic_path

from .utils import write_json

__all__ = ['OUTPUT_FILES', 'plot_trace', 'summarize_reports', 'write_outputs',
           'write_trace']

# Turn off interactive plotting for matplotlib
plt.ioff()

#: Largest number of rounds drawn in a trajectory plot
MAX_PLOTTED_ROUNDS = 2000

OUTPUT_FILES = ('trace.csv', 'trace.json', 'report.json', 'plot.svg')


def _plotted_rounds(num_states):
    stride = max(1, int(np.ceil(num_states / MAX_PLOTTED_ROUNDS)))
    rounds = np.arange(0, num_states, stride)
    if rounds[-1] != num_states - 1:
        rounds = np.append(rounds, num_states - 1)
    return rounds


def plot_trace(trace, path, title=None):
    """
    Draw the state trajectories and the consensus diameter ``D(t)`` of a
    trace into an SVG file.

    Parameters
    ----------
    trace : resopt.dynamics.Trace
    path : str
        The SVG file to write.
    title : str, optional
        Defaults to ``None``, meaning the scenario name.
    """
    rounds = _plotted_rounds(trace.states.shape[0])
    frame = trace.to_frame()
    frame = frame[frame['round'].isin(rounds)]
    frame = frame.assign(node=frame['node'].astype(str))
    _, _, D = diameter_series(trace)

    with sns.axes_style('whitegrid', {'grid.linestyle': ':'}):
        fig, (ax_states, ax_width) = plt.subplots(2, 1, figsize=(7, 6), sharex=True)
        sns.lineplot(data=frame, x='round', y='state', hue='node', style='role',
                     palette='Set1', legend='brief', ax=ax_states)
        ax_states.set_ylabel('x(t)')
        ax_states.legend(fontsize='x-small', ncol=2, frameon=True)
        widths = np.maximum(D[rounds], np.finfo(float).tiny)
        ax_width.plot(rounds, widths, color=sns.color_palette('Set1')[1])
        ax_width.set_yscale('log')
        ax_width.set(xlabel='round', ylabel='D(t)')
        fig.suptitle(title or trace.metadata.get('name', ''))
        fig.tight_layout()
        with atomic_path(path) as temp_path:
            fig.savefig(temp_path, format='svg')
        # explicitly close figure to save memory
        plt.close(fig)


def write_trace(trace, output_dir):
    """
    Write ``trace.csv`` and ``trace.json`` into ``output_dir``.
    """
    csv_path = join(output_dir, 'trace.csv')
    with atomic_path(csv_path) as temp_path:
        trace.to_csv(temp_path)
    write_json(trace.to_dict(), join(output_dir, 'trace.json'))


def write_outputs(trace, report, output_dir, plot=True):
    """
    Write every output of a run. Each file is written to a temporary
    sibling and moved into place.

    Returns
    -------
    paths : dict
        Maps the output names to the written files.
    """
    write_trace(trace, output_dir)
    paths = {'trace_csv': join(output_dir, 'trace.csv'),
             'trace_json': join(output_dir, 'trace.json'),
             'report': join(output_dir, 'report.json')}
    if plot:
        paths['plot'] = join(output_dir, 'plot.svg')
        plot_trace(trace, paths['plot'])
    report = dict(report, outputs=paths)
    write_json(report, paths['report'])
    return paths


def _flatten_report(report):
    row = {'name': report.get('name'),
           'seed': report.get('seed'),
           'rounds': report.get('rounds'),
           'nodes': report.get('nodes'),
           'F': report.get('F'),
           'dynamics': report.get('dynamics'),
           'eta': report.get('eta'),
           'passed': report.get('passed')}
    for check, result in sorted(report.get('checks', {}).items()):
        for key, value in sorted(result.items()):
            if not isinstance(value, (list, dict)):
                row['{}_{}'.format(check, key)] = value
    for key, holds in sorted(report.get('robustness', {}).items()):
        row['robustness_{}'.format(key)] = holds
    return row


def summarize_reports(report_paths, output_file, logger=None):
    """
    Collect the main fields of several ``report.json`` files into one TSV
    file with a row per report.

    Parameters
    ----------
    report_paths : list of str
    output_file : str or file-like
        Where to write the TSV table.
    logger : logging.Logger, optional
        Defaults to ``None``, meaning the module logger.

    Returns
    -------
    summary : pandas.DataFrame
        ``None`` if a report file is missing.
    """
    logger = logger if logger else logging.getLogger(__name__)
    rows = []
    for report_path in report_paths:
        if not exists(report_path):
            logger.error('Report file %s not found. Skipping summary creation.',
                         report_path)
            return None
        with open(report_path) as report_file:
            row = _flatten_report(json.load(report_file))
        row['report'] = report_path
        rows.append(row)
    summary = pd.DataFrame(rows)
    summary.to_csv(output_file, sep='\t', index=False)
    return summary
