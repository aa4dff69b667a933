# -*- coding: utf-8 -*-
#
# Copyright © 2024 eqsuccinct developers
# Licensed under the terms of the MIT License
# (see eqsuccinct/__init__.py for details)

"""
isqrt
-----

The ``eqsuccinct.isqrt`` module provides a table-driven ceiling square root
for arguments in ``[1, 2n]``.

An argument ``i`` with most significant bit ``r`` is reduced to its high
part ``a = i >> h`` (``h = ceil(r / 2)``), which always lies in the band
``[2**m, 2**(m+1))`` with ``m = floor(r / 2)``. Each band owns the slots
``a + m`` of one of two tables, ``E`` for arguments with an even number of
bits and ``O`` for the others, and the slot holds ``ceil(sqrt(a << h))``;
the slot after the last value of ``a`` of a band is a sentinel. Two
consecutive entries differ by at most one and bracket ``ceil(sqrt(i))``,
so a query reads two entries and squares one of them.
"""

import logging
import math

import numpy as np

from eqsuccinct.config import CONF
from eqsuccinct.instrument import ProbeCounter
from eqsuccinct.utils import InvalidInputError, bit_width, ceil_isqrt

logger = logging.getLogger(__name__)

#: Arguments checked per vectorized validation step
VALIDATION_CHUNK = 1 << 20


def msb_index(i):
    """Return floor(lg i), the index of the highest set bit of i"""
    if i < 1:
        raise InvalidInputError("msb_index is defined for positive integers")
    return i.bit_length() - 1


def _slot(i):
    r = i.bit_length() - 1
    return (i >> ((r + 1) // 2)) + r // 2, r % 2 == 1


def _table(size, odd_msb):
    table = np.zeros(size, dtype=np.int64)
    band = 0
    while (1 << band) + band < size:
        shift = band + 1 if odd_msb else band
        for high in range(1 << band, (2 << band) + 1):
            slot = high + band
            if slot < size:
                table[slot] = ceil_isqrt(high << shift)
        band += 1
    return table


def _last_argument(limit, odd_msb):
    """Return the largest i <= limit whose msb index has the given parity,
    or None"""
    r = limit.bit_length() - 1
    if (r % 2 == 1) == odd_msb:
        return limit
    if r == 0:
        return None
    return (1 << r) - 1


class SqrtTables(object):
    """
    Ceiling square root tables valid on [1, N] with N = 2n
    """

    def __init__(self, n, even=None, odd=None, probes=None):
        if n < 1:
            raise InvalidInputError("square root tables need n >= 1")
        self.n = n
        self.N = 2 * n
        self.probes = ProbeCounter() if probes is None else probes
        if even is None or odd is None:
            self.E = self.__build(odd_msb=True)
            self.O = self.__build(odd_msb=False)
        else:
            self.E = np.asarray(even, dtype=np.int64)
            self.O = np.asarray(odd, dtype=np.int64)

    def __build(self, odd_msb):
        last = _last_argument(self.N, odd_msb)
        size = 0 if last is None else _slot(last)[0] + 2
        return _table(size, odd_msb)

    def validate(self):
        """Check every argument of [1, N] against a reference square root

        Raise RuntimeError on the first chunk holding a mismatch"""
        for first in range(1, self.N + 1, VALIDATION_CHUNK):
            args = np.arange(first, min(first + VALIDATION_CHUNK, self.N + 1), dtype=np.int64)
            _mantissa, lengths = np.frexp(args.astype(np.float64))
            msb = lengths.astype(np.int64) - 1
            slots = (args >> ((msb + 1) // 2)) + msb // 2
            odd = msb % 2 == 1
            low = np.where(odd, self.E[np.where(odd, slots, 0)], self.O[np.where(odd, 0, slots)])
            high = np.where(
                odd, self.E[np.where(odd, slots + 1, 0)], self.O[np.where(odd, 0, slots + 1)]
            )
            result = np.where(low * low >= args, low, high)
            reference = np.ceil(np.sqrt(args.astype(np.float64))).astype(np.int64)
            reference = np.where((reference - 1) ** 2 >= args, reference - 1, reference)
            reference = np.where(reference * reference < args, reference + 1, reference)
            mismatch = (result != reference) | ((reference != low) & (reference != high))
            bad = np.flatnonzero(mismatch)
            if len(bad):
                raise RuntimeError(
                    "square root tables invalid for i=%d (n=%d)" % (args[bad[0]], self.n)
                )
        logger.debug("square root tables validated on [1, %d]", self.N)

    def ceil_sqrt(self, i):
        """Return ceil(sqrt(i)) for 1 <= i <= N"""
        if not 1 <= i <= self.N:
            raise InvalidInputError("argument %r outside of [1, %d]" % (i, self.N))
        slot, odd_msb = _slot(i)
        table = self.E if odd_msb else self.O
        self.probes.hit()
        candidate = int(table[slot])
        if candidate * candidate >= i:
            return candidate
        self.probes.hit()
        return int(table[slot + 1])

    def entry_width(self):
        return bit_width(int(max(self.E.max(initial=0), self.O.max(initial=0))))

    def space_bits(self):
        """Return the table size in bits (entries times entry width)"""
        return (len(self.E) + len(self.O)) * self.entry_width()

    def __repr__(self):
        return "SqrtTables(N=%d, E=%d, O=%d)" % (self.N, len(self.E), len(self.O))


def build_sqrt_tables(n, validate=None, probes=None):
    """Build the square root tables for arguments up to 2n

    validate: check the tables exhaustively (default: option isqrt/validate)"""
    if validate is None:
        validate = CONF.get("isqrt", "validate")
    tables = SqrtTables(n, probes=probes)
    if validate:
        tables.validate()
    return tables


def ceil_sqrt(tables, i):
    """Return ceil(sqrt(i)) from precomputed tables"""
    return tables.ceil_sqrt(i)


def reference_ceil_sqrt(i):
    """Return ceil(sqrt(i)) computed with math.isqrt"""
    if i < 0:
        raise InvalidInputError("square roots need nonnegative arguments")
    return math.isqrt(i - 1) + 1 if i else 0
