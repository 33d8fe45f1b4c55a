#!/usr/bin/env python
# License: BSD 3 clause
from setuptools import find_packages, setup

# Get version without importing, which avoids dependency issues
exec(compile(open('resopt/version.py').read(), 'resopt/version.py', 'exec'))
# (we use the above instead of execfile for Python 3.x compatibility)


def readme():
    with open('README.rst') as f:
        return f.read()


def requirements():
    req_path = 'requirements.txt'
    with open(req_path) as f:
        reqs = f.read().splitlines()
    return reqs


setup(name='resopt',
      version=__version__,
      description=('Simulator for resilient distributed optimization with local '
                   'filtering, exact graph robustness checks and trace analysis.'),
      long_description=readme(),
      keywords='distributed optimization consensus resilience adversarial networks',
      license='BSD 3 clause',
      packages=find_packages(exclude=['tests']),
      package_data={'resopt': ['scenarios/*.cfg', 'scenarios/*.json']},
      entry_points={'console_scripts':
                    ['resopt = resopt.utils.commandline.dispatch:main',
                     'run_scenario = resopt.utils.commandline.run_scenario:main',
                     'check_graph = resopt.utils.commandline.check_graph:main',
                     'reproduce_result = resopt.utils.commandline.reproduce_result:main',
                     'reduce_set_packing = resopt.utils.commandline.reduce_set_packing:main',
                     'summarize_reports = resopt.utils.commandline.summarize_reports:main']},
      install_requires=requirements(),
      classifiers=['Intended Audience :: Science/Research',
                   'Intended Audience :: Developers',
                   'License :: OSI Approved :: BSD License',
                   'Programming Language :: Python',
                   'Topic :: Scientific/Engineering',
                   'Topic :: Scientific/Engineering :: Mathematics',
                   'Operating System :: POSIX',
                   'Operating System :: Unix',
                   'Operating System :: MacOS',
                   'Programming Language :: Python :: 3',
                   'Programming Language :: Python :: 3.8',
                   'Programming Language :: Python :: 3.9',
                   'Programming Language :: Python :: 3.10',
                   ],
      zip_safe=False)
