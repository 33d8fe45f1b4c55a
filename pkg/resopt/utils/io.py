# License: BSD 3 clause
"""
File helpers: every output file is written to a temporary sibling and then
moved into place so readers never see a partial file.
"""

import os
from contextlib import contextmanager
from os.path import abspath, dirname
from tempfile import mkstemp


@contextmanager
def atomic_path(path):
    """
    Yield a temporary path next to ``path``; on success the temporary
    file replaces ``path``, on failure it is removed.
    """
    directory = dirname(abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, temp_path = mkstemp(dir=directory, prefix='.tmp-')
    os.close(fd)
    try:
        yield temp_path
        os.replace(temp_path, path)
    except BaseException:
        if os.path.exists(temp_path):
            os.unlink(temp_path)
        raise


def atomic_write(path, text):
    with atomic_path(path) as temp_path:
        with open(temp_path, 'w', newline='') as output_file:
            output_file.write(text)
