# License: BSD 3 clause
"""
Run loggers for scenario runs.

A scenario run logs to its own file (``<output_dir>/<name>.log``) and to
STDERR. Warnings raised by ``resopt`` modules during the run, such as the
warning for a step-size schedule that does not vanish, are written to the
run log instead of STDERR so that the log records every caveat of the run.
"""
import logging
from functools import partial
from os.path import abspath, sep
import re
import warnings

orig_showwarning = warnings.showwarning
RESOPT_WARNINGS_RE = re.compile(re.escape("{0}resopt{0}".format(sep)))
RUN_LOG_FORMAT = '%(asctime)s - %(levelname)s - %(message)s'


def send_resopt_warnings_to_logger(logger, message, category, filename,
                                   lineno, file=None, line=None):
    """
    ``warnings.showwarning`` replacement installed by ``get_resopt_logger``.

    A warning whose source file lives in the ``resopt`` package becomes a
    ``WARNING`` record ``<file>:<line>: <Category>:<message>`` of the run
    logger. Warnings from numpy, pandas or user code keep the interpreter's
    default display.
    """

    if not RESOPT_WARNINGS_RE.search(filename):
        orig_showwarning(message, category, filename, lineno,
                         file=file, line=line)
        return
    logger.warning('{}:{}: {}:{}'.format(filename, lineno,
                                         category.__name__, message))


def _has_file_handler(logger, filepath):
    return any(isinstance(handler, logging.FileHandler) and
               handler.baseFilename == abspath(filepath)
               for handler in logger.handlers)


def get_resopt_logger(name, filepath=None, log_level=logging.INFO):
    """
    Logger for one scenario run.

    Running several scenarios in one process reuses the logger of the same
    name; a log file is attached at most once, and it is truncated when
    attached so that a rerun does not append to the previous run's log.
    From this call on, ``resopt`` warnings go to this logger.

    Parameters
    ----------
    name : str
        Logger name; ``run_scenario`` uses ``'scenario'``.
    filepath : str, optional
        Run log file.
        Defaults to ``None``, meaning no file handler.
    log_level : int, optional
        Defaults to ``logging.INFO``.

    Returns
    -------
    logger : logging.Logger
    """

    logger = logging.getLogger(name)
    logger.setLevel(log_level)

    if filepath and not _has_file_handler(logger, filepath):
        file_handler = logging.FileHandler(filepath, mode='w')
        file_handler.setFormatter(logging.Formatter(RUN_LOG_FORMAT))
        file_handler.setLevel(log_level)
        logger.addHandler(file_handler)

    warnings.showwarning = partial(send_resopt_warnings_to_logger, logger)

    return logger


def close_and_remove_logger_handlers(logger):
    """
    Detach and close every handler of a run logger once the run is over,
    releasing its log file.
    """

    for handler in logger.handlers[:]:
        handler.close()
        logger.removeHandler(handler)
