# -*- coding: utf-8 -*-
#
# Copyright © 2024 eqsuccinct developers
# Licensed under the terms of the MIT License
# (see eqsuccinct/__init__.py for details)

"""
instrument
----------

The ``eqsuccinct.instrument`` module provides word-probe counters.

Query paths call :py:meth:`ProbeCounter.hit` once per memory word (or table
entry) they read; tests and the benchmark command use the counts to check
the query-cost contracts of each structure independently of wall-clock
time.
"""

import collections
import contextlib

import numpy as np


class ProbeCounter(object):
    """Running count of word probes"""

    __slots__ = ("count",)

    def __init__(self):
        self.count = 0

    def hit(self, probes=1):
        self.count += probes

    def reset(self):
        self.count = 0

    @contextlib.contextmanager
    def measure(self):
        """Context manager yielding a one-item list filled, on exit, with the
        number of probes made inside the block"""
        start = self.count
        result = [0]
        try:
            yield result
        finally:
            result[0] = self.count - start


class ProbeHistogram(object):
    """Distribution of per-query probe counts"""

    def __init__(self):
        self.counts = collections.Counter()

    def add(self, probes):
        self.counts[probes] += 1

    @property
    def total(self):
        return sum(self.counts.values())

    @property
    def max(self):
        return max(self.counts) if self.counts else 0

    @property
    def mean(self):
        if not self.counts:
            return 0.0
        values = np.fromiter(self.counts.keys(), dtype=np.float64)
        weights = np.fromiter(self.counts.values(), dtype=np.float64)
        return float(np.average(values, weights=weights))

    def percentile(self, q):
        """Return the q-th percentile (0 <= q <= 100) of probe counts"""
        if not self.counts:
            return 0
        keys = sorted(self.counts)
        cumulative = np.cumsum([self.counts[key] for key in keys])
        rank = q / 100.0 * cumulative[-1]
        index = int(np.searchsorted(cumulative, rank, side="left"))
        return keys[min(index, len(keys) - 1)]

    def as_dict(self):
        """Return {probes: queries} with string keys, sorted by probes"""
        return {str(key): self.counts[key] for key in sorted(self.counts)}
