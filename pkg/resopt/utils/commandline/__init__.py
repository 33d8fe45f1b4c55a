# License: BSD 3 clause
"""
Command-line scripts shipped with resopt. Each module exposes ``main(argv=None)``.
"""
