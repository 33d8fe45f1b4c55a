# License: BSD 3 clause
"""
Package version, kept here so ``setup.py`` can read it without importing
the package.
"""

__version__ = '1.0'
VERSION = tuple(int(x) for x in __version__.split('.'))
