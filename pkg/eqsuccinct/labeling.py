# -*- coding: utf-8 -*-
#
# Copyright © 2024 eqsuccinct developers
# Licensed under the terms of the MIT License
# (see eqsuccinct/__init__.py for details)

"""
labeling
--------

The ``eqsuccinct.labeling`` module provides labeling schemes answering
equivalence queries from the two labels alone, without any stored
structure.

Classes are ranked by nonincreasing size (ties keep input order), so that
the i-th class holds at most ``n // i`` elements.

*Range labels*: the first class owns the range ``[1, n]``, the i-th class
the next ``n // i`` integers; an element is labelled inside the range of
its class and two labels are equivalent when they fall in the same range.
The largest label never exceeds ``sum(n // i)``.

*Bit labels*: the element of rank ``j`` in the i-th class is labelled by
three fields, most significant bit first: the width ``L = ceil(lg i)``
(on ``ceil(lg(ceil(lg n) + 1))`` bits), ``i - 1`` on ``L`` bits and
``j - 1`` on ``ceil(lg(n // i))`` bits.
"""

import bisect
import itertools

import numpy as np
from bitarray import bitarray
from bitarray.util import ba2int

from eqsuccinct.partition import ClassSizes
from eqsuccinct.utils import InvalidInputError, ceil_lg


def _rank_by_size(sizes):
    """Return the class indices of a ClassSizes sorted by nonincreasing size"""
    return sorted(range(sizes.c), key=lambda index: -sizes.sizes[index])


# ==============================================================================
# Range labels
# ==============================================================================
class RangeLabelAssignment(object):
    """
    Range labels of a partition

    sizes: ClassSizes (or iterable of class sizes); elements are numbered
    class after class in input order
    """

    def __init__(self, sizes):
        if not isinstance(sizes, ClassSizes):
            sizes = ClassSizes(sizes)
        self.sizes = sizes
        self.n = n = sizes.n
        self.order = _rank_by_size(sizes)
        quotas = [n // rank for rank in range(1, sizes.c + 1)]
        quotas[0] = n
        self.highs = list(itertools.accumulate(quotas))
        self.lows = [high - quota + 1 for high, quota in zip(self.highs, quotas)]
        self.ranked_sizes = [sizes.sizes[index] for index in self.order]
        for rank, size in enumerate(self.ranked_sizes, 1):
            if size > quotas[rank - 1]:
                raise RuntimeError(
                    "class %d holds %d elements, more than %d" % (rank, size, quotas[rank - 1])
                )
        rank_of_class = np.empty(sizes.c, dtype=np.int64)
        rank_of_class[self.order] = np.arange(sizes.c)
        starts = np.asarray(self.lows, dtype=np.int64)[rank_of_class]
        class_sizes = np.asarray(sizes.sizes, dtype=np.int64)
        offsets = np.arange(n, dtype=np.int64) - np.repeat(
            np.cumsum(class_sizes) - class_sizes, class_sizes
        )
        self.element_labels = np.repeat(starts, class_sizes) + offsets

    @property
    def max_label(self):
        return self.lows[-1] + self.ranked_sizes[-1] - 1

    def class_range(self, rank):
        """Return the (low, high) label range of the rank-th largest class"""
        return self.lows[rank - 1], self.highs[rank - 1]

    def label(self, element):
        """Return the label of an element (0-based, in input order)"""
        return int(self.element_labels[element])

    def class_of(self, label):
        """Return the size rank of the class owning a label"""
        rank = bisect.bisect_left(self.highs, label) + 1
        if label < 1 or rank > len(self.highs):
            raise InvalidInputError("label %r is not assigned" % (label,))
        if label >= self.lows[rank - 1] + self.ranked_sizes[rank - 1]:
            raise InvalidInputError("label %r is not assigned" % (label,))
        return rank


def assign_range_labels(sizes):
    """Return the RangeLabelAssignment of a partition"""
    return RangeLabelAssignment(sizes)


def range_labels_equivalent(assignment, x, y):
    """True iff range labels x and y belong to the same class"""
    return assignment.class_of(x) == assignment.class_of(y)


# ==============================================================================
# Bit labels
# ==============================================================================
def prefix_width(n):
    """Return the width of the length prefix for n elements"""
    return ceil_lg(n).bit_length()


def _field(value, width):
    return format(value, "0%db" % width) if width else ""


def _read(label, start, width):
    return ba2int(label[start : start + width]) if width else 0


def bit_label_length(n, i):
    """Return the length of every bit label of the i-th class"""
    return prefix_width(n) + ceil_lg(i) + ceil_lg(n // i)


def encode_bit_label(n, i, j):
    """Return the bit label (bitarray) of the j-th element of the i-th class"""
    if not 1 <= i <= n:
        raise InvalidInputError("class index %r outside of [1, %d]" % (i, n))
    if not 1 <= j <= n // i:
        raise InvalidInputError("rank %r outside of [1, %d]" % (j, n // i))
    width = ceil_lg(i)
    return bitarray(
        _field(width, prefix_width(n)) + _field(i - 1, width) + _field(j - 1, ceil_lg(n // i)),
        endian="big",
    )


def decode_bit_label(n, label):
    """Return the (i, j) pair of a bit label"""
    if not isinstance(label, bitarray):
        label = bitarray(label, endian="big")
    head = prefix_width(n)
    if len(label) < head:
        raise InvalidInputError("bit label shorter than its prefix")
    width = _read(label, 0, head)
    if len(label) < head + width:
        raise InvalidInputError("bit label %s: truncated class field" % label.to01())
    i = _read(label, head, width) + 1
    if i > n or ceil_lg(i) != width:
        raise InvalidInputError("bit label %s: invalid class field" % label.to01())
    rank_width = ceil_lg(n // i)
    if len(label) != head + width + rank_width:
        raise InvalidInputError(
            "bit label %s: %d bits instead of %d"
            % (label.to01(), len(label), head + width + rank_width)
        )
    j = _read(label, head + width, rank_width) + 1
    if j > n // i:
        raise InvalidInputError("bit label %s: invalid rank field" % label.to01())
    return i, j


def bit_labels_equivalent(a, b, n):
    """True iff two bit labels hold the same class index"""
    return decode_bit_label(n, a)[0] == decode_bit_label(n, b)[0]


def assign_bit_labels(sizes):
    """Return the bit label of every element (class after class in input
    order)"""
    if not isinstance(sizes, ClassSizes):
        sizes = ClassSizes(sizes)
    rank_of_class = {index: rank for rank, index in enumerate(_rank_by_size(sizes), 1)}
    return [
        encode_bit_label(sizes.n, rank_of_class[index], j)
        for index, size in enumerate(sizes.sizes)
        for j in range(1, size + 1)
    ]


def label_export_lines(labels, ids=None):
    """Yield "id<TAB>bits" lines (ids default to element numbers)"""
    if ids is None:
        ids = range(len(labels))
    for element, label in zip(ids, labels):
        yield "%d\t%s" % (element, label.to01())
