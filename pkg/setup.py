# -*- coding: utf-8 -*-
#
# Copyright © 2024 eqsuccinct developers
# Licensed under the terms of the MIT License
# (see eqsuccinct/__init__.py for details)

"""
eqsuccinct
==========

Succinct equivalence class structures: implicit labelings, static
"same class?" structures of O(sqrt(n)) bits and a dynamic union-find
with periodic relabeling.
"""

import setuptools  # analysis:ignore
from setuptools import setup

from eqsuccinct.utils import get_subpackages


LIBNAME = "eqsuccinct"
from eqsuccinct import __version__ as version

DESCRIPTION = "Succinct representations of equivalence classes"
LONG_DESCRIPTION = """\
eqsuccinct: succinct representations of equivalence classes
===========================================================

When the elements of a partition may be relabeled, answering "are x and y
in the same class?" no longer needs a class table: the canonical labeling
groups classes of equal size, and a few hundred bits describing the group
sequence are enough.

Overview
--------

- range and bit labeling schemes (labels of length lg n + lg lg n + O(1))
- three static structures: O(sqrt(n)) bits with O(lg n) probes,
  O(lg lg n) probes, and a constant number of probes
- table driven ceiling square root
- dynamic union-find of O(sqrt(n) lg n) bits with periodic relabeling
- command line harness: ``eqsuccinct build|query|stats|bench``

See the `README`_ for more details.

.. _README: README.md"""

KEYWORDS = "partition equivalence union-find succinct data structures"
CLASSIFIERS = ["Topic :: Scientific/Engineering"]
if "beta" in version or "b" in version:
    CLASSIFIERS += ["Development Status :: 4 - Beta"]
elif "alpha" in version or "a" in version:
    CLASSIFIERS += ["Development Status :: 3 - Alpha"]
else:
    CLASSIFIERS += ["Development Status :: 5 - Production/Stable"]


setup(
    name=LIBNAME,
    version=version,
    description=DESCRIPTION,
    long_description=LONG_DESCRIPTION,
    keywords=KEYWORDS,
    packages=get_subpackages(LIBNAME),
    python_requires=">=3.8",
    install_requires=["numpy>=1.17", "bitarray>=2.3,<3.4", "sympy>=1.5"],
    entry_points={
        "console_scripts": [
            "eqsuccinct = eqsuccinct.cli:main",
            "eqsuccinct-tests = eqsuccinct.tests:run",
        ]
    },
    extras_require={
        "Doc": ["Sphinx>=1.1"],
        "Test": ["pytest"],
    },
    author="eqsuccinct developers",
    license="MIT",
    classifiers=CLASSIFIERS
    + [
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        "Programming Language :: Python :: 3",
    ],
)
