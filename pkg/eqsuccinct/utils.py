# -*- coding: utf-8 -*-
#
# Copyright © 2024 eqsuccinct developers
# Licensed under the terms of the MIT License
# (see eqsuccinct/__init__.py for details)

# pylint: disable=C0103

"""
utils
-----

The ``eqsuccinct.utils`` module provides exceptions, integer bit helpers,
dataset helpers and setup.py utilities (pure python).
"""

import math
import os
import os.path as osp
import time


# ==============================================================================
# Exceptions
# ==============================================================================
class InvalidInputError(ValueError):
    """Argument outside of the domain of an operation (label out of range,
    malformed class sizes, unsorted keys, ...)"""


class ParseError(InvalidInputError):
    """Syntax error in an input file"""

    def __init__(self, message, filename=None, lineno=None):
        self.message = message
        self.filename = filename
        self.lineno = lineno
        super().__init__(str(self))

    def __str__(self):
        location = ""
        if self.filename is not None:
            location = "%s:" % self.filename
        if self.lineno is not None:
            location += "%d:" % self.lineno
        if location:
            return "%s %s" % (location, self.message)
        return self.message


class CorruptFileError(RuntimeError):
    """Binary container with a bad header or a truncated field"""


# ==============================================================================
# Integer bit helpers
# ==============================================================================
def ceil_lg(value):
    """Return ceil(log2(value)) for value >= 1 (0 for value == 1)"""
    if value < 1:
        raise InvalidInputError("ceil_lg is defined for positive integers")
    return (value - 1).bit_length()


def bit_width(value):
    """Return the number of bits needed to store integers in [0, value],
    that is ceil(log2(value + 1))"""
    if value < 0:
        raise InvalidInputError("bit_width is defined for nonnegative integers")
    return value.bit_length()


def ceil_isqrt(value):
    """Return ceil(sqrt(value)) for a nonnegative integer"""
    if value <= 0:
        return 0
    return math.isqrt(value - 1) + 1


def check_label(label, n):
    """Raise InvalidInputError unless 1 <= label <= n"""
    if not 1 <= label <= n:
        raise InvalidInputError("label %r outside of [1, %d]" % (label, n))


# ==============================================================================
# Updating, restoring datasets
# ==============================================================================
def update_dataset(dest, source):
    """
    Update `dest` dataset items from `source` dataset

    dest should inherit from DataSet, whereas source can be:
        * any Python object containing matching attribute names
          (e.g. an argparse namespace)
        * or a dictionary with matching key names

    For each DataSet item, the function will try to get the attribute
    of the same name from the source. Attributes set to None in the source
    are skipped so that dataset defaults survive missing options.
    """
    for item in dest._items:
        key = item._name
        if hasattr(source, key):
            value = getattr(source, key)
        elif isinstance(source, dict) and key in source:
            value = source[key]
        else:
            continue
        if value is not None:
            setattr(dest, key, value)


# ==============================================================================
# Timer
# ==============================================================================
class Timer(object):
    """Wall-clock stopwatch: tic, toc (seconds, as float)"""

    def __init__(self):
        self.t0_dict = {}

    def tic(self, cat):
        """Starting timer"""
        self.t0_dict[cat] = time.perf_counter()

    def toc(self, cat):
        """Return elapsed time since `tic(cat)`"""
        return time.perf_counter() - self.t0_dict[cat]


# ==============================================================================
# Utilities for setup.py scripts
# ==============================================================================
def get_subpackages(name):
    """Return subpackages of package *name*"""
    splist = []
    for dirpath, _dirnames, _filenames in os.walk(name):
        if osp.isfile(osp.join(dirpath, "__init__.py")):
            splist.append(".".join(dirpath.split(os.sep)))
    return splist
