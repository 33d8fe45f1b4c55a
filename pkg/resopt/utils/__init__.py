# License: BSD 3 clause
"""
Various utilities for resopt: constants, logging and command-line scripts.
"""
