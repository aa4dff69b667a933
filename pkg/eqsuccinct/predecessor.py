# -*- coding: utf-8 -*-
#
# Copyright © 2024 eqsuccinct developers
# Licensed under the terms of the MIT License
# (see eqsuccinct/__init__.py for details)

"""
predecessor
-----------

The ``eqsuccinct.predecessor`` module provides a static predecessor
dictionary over integer keys of a universe ``[1, U]``, laid out as a
y-fast trie: keys are cut into buckets of ``ceil(lg(U + 1))`` consecutive
keys and the bucket minima are indexed by an x-fast trie, that is one hash
table per prefix length mapping every prefix present among the minima to
the first and last minimum below it. A query binary searches the prefix
lengths (``O(lg lg U)`` table lookups), then binary searches one bucket.
"""

import bisect
import collections
import operator

from eqsuccinct.instrument import ProbeCounter
from eqsuccinct.utils import InvalidInputError, bit_width, ceil_lg

Hit = collections.namedtuple("Hit", ("key", "index"))
Hit.__doc__ = """Key found by a predecessor/successor query with its 1-based
rank among the keys"""


class PredecessorDict(object):
    """
    Static predecessor/successor dictionary

    keys: strictly increasing integers of [1, universe]
    """

    def __init__(self, keys, universe, probes=None):
        universe = operator.index(universe)
        if universe < 1:
            raise InvalidInputError("universe must be >= 1 (got %d)" % universe)
        keys = [operator.index(key) for key in keys]
        for previous, key in zip(keys, keys[1:]):
            if key <= previous:
                raise InvalidInputError("keys must be strictly increasing")
        if keys and not (1 <= keys[0] and keys[-1] <= universe):
            raise InvalidInputError("keys must lie in [1, %d]" % universe)
        self.keys = keys
        self.universe = universe
        self.width = bit_width(universe)
        self.bucket_size = max(1, ceil_lg(universe + 1))
        self.probes = ProbeCounter() if probes is None else probes
        self.minima = keys[:: self.bucket_size]
        self.levels = [{} for _level in range(self.width + 1)]
        for index, minimum in enumerate(self.minima):
            for length, level in enumerate(self.levels):
                prefix = minimum >> (self.width - length)
                first, _last = level.get(prefix, (index, index))
                level[prefix] = (first, index)

    def __len__(self):
        return len(self.keys)

    def __repr__(self):
        return "PredecessorDict(keys=%d, universe=%d)" % (len(self), self.universe)

    def __check(self, x):
        if not 1 <= x <= self.universe:
            raise InvalidInputError("query %r outside of [1, %d]" % (x, self.universe))

    def __bucket_of(self, x):
        """Return the index of the last bucket minimum <= x, or -1"""
        low, high = 0, self.width
        node = None
        while low <= high:
            length = (low + high) // 2
            self.probes.hit()
            found = self.levels[length].get(x >> (self.width - length))
            if found is None:
                high = length - 1
            else:
                node, low = found, length + 1
        length = high
        if length == self.width:
            return node[0]
        if (x >> (self.width - length - 1)) & 1:
            return node[1]
        return node[0] - 1

    def predecessor(self, x):
        """Return the Hit of the largest key <= x, or None"""
        self.__check(x)
        if not self.keys:
            return None
        bucket = self.__bucket_of(x)
        if bucket < 0:
            return None
        low = bucket * self.bucket_size
        high = min(low + self.bucket_size, len(self.keys))
        self.probes.hit(ceil_lg(high - low) + 1)
        position = bisect.bisect_right(self.keys, x, low, high)
        return Hit(self.keys[position - 1], position)

    def successor(self, x):
        """Return the Hit of the smallest key >= x, or None"""
        self.__check(x)
        found = self.predecessor(x)
        if found is not None and found.key == x:
            return found
        index = 1 if found is None else found.index + 1
        if index > len(self.keys):
            return None
        self.probes.hit()
        return Hit(self.keys[index - 1], index)

    def space_bits(self):
        """Return keys plus trie entries (prefix and two minimum indices)"""
        index_width = bit_width(len(self.minima))
        entries = sum(len(level) for level in self.levels)
        return len(self.keys) * self.width + entries * (self.width + 2 * index_width)


def build_predecessor(keys, universe, probes=None):
    """Build a PredecessorDict over sorted distinct keys of [1, universe]"""
    return PredecessorDict(keys, universe, probes=probes)
