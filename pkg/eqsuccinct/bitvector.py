# -*- coding: utf-8 -*-
#
# Copyright © 2024 eqsuccinct developers
# Licensed under the terms of the MIT License
# (see eqsuccinct/__init__.py for details)

"""
bitvector
---------

The ``eqsuccinct.bitvector`` module provides static bit sequences with
rank/select support (:py:class:`BitVector`) and packed streams of
variable-width integers delimited by such a bit sequence
(:py:class:`CodeStream`).

Positions are 1-based. The rank directory stores an absolute count every
``superblock_words`` 64-bit words and, for every word, the count relative
to its superblock; ``rank1`` reads two directory entries and counts one
payload word. The select directory keeps the position of one out of
``select/sample`` ones; a sample block spanning more than
``select/sparse_span`` bits keeps all of its positions, the others are
resolved by a binary search over the words of the block followed by an
in-word select.
"""

import logging

import numpy as np
from bitarray import bitarray
from bitarray.util import ba2int, count_n, zeros

from eqsuccinct.config import CONF
from eqsuccinct.instrument import ProbeCounter
from eqsuccinct.utils import InvalidInputError, bit_width

logger = logging.getLogger(__name__)

WORD_BITS = 64
HEADER_BITS = 64


def as_bitarray(bits):
    """Return a big-endian bitarray copy of a bitarray, a '0'/'1' string or
    an iterable of booleans"""
    if isinstance(bits, bitarray):
        result = bitarray(endian="big")
        result.extend(bits.to01())
        return result
    if isinstance(bits, str):
        try:
            return bitarray(bits, endian="big")
        except ValueError as exc:
            raise InvalidInputError("invalid bit string: %s" % exc)
    return bitarray([bool(bit) for bit in bits], endian="big")


class BitVector(object):
    """
    Static bit sequence with rank/select support

    bits: bitarray, '0'/'1' string or iterable of booleans
    probes: ProbeCounter shared with an enclosing structure (optional)
    """

    def __init__(self, bits, probes=None, superblock_words=None, select_sample=None,
                 sparse_span=None):
        if superblock_words is None:
            superblock_words = CONF.get("bitvector", "superblock_words")
        if select_sample is None:
            select_sample = CONF.get("bitvector", "select/sample")
        if sparse_span is None:
            sparse_span = CONF.get("bitvector", "select/sparse_span")
        self.payload = as_bitarray(bits)
        self.probes = ProbeCounter() if probes is None else probes
        self.superblock_words = superblock_words
        self.select_sample = select_sample
        self.sparse_span = sparse_span
        self.__build_directories()

    def __build_directories(self):
        length = len(self.payload)
        nwords = -(-length // WORD_BITS)
        padded = self.payload + zeros(nwords * WORD_BITS - length, endian="big")
        unpacked = np.frombuffer(padded.unpack(), dtype=np.uint8)
        word_counts = unpacked.reshape(nwords, WORD_BITS).sum(axis=1, dtype=np.int64)
        before = np.zeros(nwords + 1, dtype=np.int64)
        np.cumsum(word_counts, out=before[1:])
        self.super_rank = before[:: self.superblock_words].copy()
        self.word_rank = before - np.repeat(self.super_rank, self.superblock_words)[
            : nwords + 1
        ]
        positions = np.flatnonzero(unpacked[:length])
        self.ones = len(positions)
        self.samples = positions[:: self.select_sample].copy()
        last = positions[
            np.minimum(
                np.arange(1, len(self.samples) + 1) * self.select_sample, self.ones
            )
            - 1
        ]
        spans = last - self.samples + 1
        self.sparse = {
            int(block): positions[
                block * self.select_sample : (block + 1) * self.select_sample
            ].copy()
            for block in np.flatnonzero(spans > self.sparse_span)
        }
        if self.sparse:
            logger.debug(
                "%d of %d select blocks stored explicitly",
                len(self.sparse),
                len(self.samples),
            )

    def __len__(self):
        return len(self.payload)

    def __repr__(self):
        return "BitVector(length=%d, ones=%d)" % (len(self), self.ones)

    def to_bits(self):
        """Return a copy of the payload"""
        return self.payload.copy()

    def __rank_before_word(self, word):
        self.probes.hit(2)
        return int(self.super_rank[word // self.superblock_words]) + int(
            self.word_rank[word]
        )

    def rank1(self, pos):
        """Return the number of ones in positions 1..pos"""
        if not 0 <= pos <= len(self):
            raise InvalidInputError("position %r outside of [0, %d]" % (pos, len(self)))
        word = pos // WORD_BITS
        self.probes.hit()
        return self.__rank_before_word(word) + self.payload.count(1, word * WORD_BITS, pos)

    def select1(self, j):
        """Return the position of the j-th one, or None if there are fewer
        than j ones"""
        if j < 1:
            raise InvalidInputError("select1 rank must be >= 1 (got %r)" % (j,))
        if j > self.ones:
            return None
        block, offset = divmod(j - 1, self.select_sample)
        self.probes.hit()
        explicit = self.sparse.get(block)
        if explicit is not None:
            self.probes.hit()
            return int(explicit[offset]) + 1
        start = int(self.samples[block])
        if offset == 0:
            return start + 1
        # blocks without explicit positions span at most sparse_span bits
        stop = min(start + self.sparse_span - 1, len(self) - 1)
        low, high = start // WORD_BITS, stop // WORD_BITS
        while low < high:
            middle = (low + high + 1) // 2
            if self.__rank_before_word(middle) < j:
                low = middle
            else:
                high = middle - 1
        remaining = j - self.__rank_before_word(low)
        self.probes.hit()
        origin = low * WORD_BITS
        word = self.payload[origin : origin + WORD_BITS]
        return origin + count_n(word, remaining)

    def space_bits(self):
        """Return the exact size of payload, directories and header"""
        length = len(self)
        position_width = bit_width(length)
        rank_bits = len(self.super_rank) * position_width + len(self.word_rank) * bit_width(
            self.superblock_words * WORD_BITS
        )
        select_bits = len(self.samples) * position_width
        for positions in self.sparse.values():
            select_bits += bit_width(len(self.samples)) + len(positions) * position_width
        return length + rank_bits + select_bits + HEADER_BITS


def build_bitvector(bits, probes=None):
    """Build a BitVector from a bitarray, a '0'/'1' string or booleans"""
    return BitVector(bits, probes=probes)


def minimal_binary(value):
    """Return the minimal binary code of a nonnegative integer ('0' for 0)"""
    if value < 0:
        raise InvalidInputError("minimal binary codes need nonnegative values")
    return format(value, "b")


class CodeStream(object):
    """
    Concatenated minimal binary codes of nonnegative integers, delimited by a
    shadow BitVector holding a one at the first bit of every code

    Values are addressed from 1.
    """

    def __init__(self, values, probes=None):
        payload = bitarray(endian="big")
        marks = bitarray(endian="big")
        count = 0
        for value in values:
            code = minimal_binary(int(value))
            payload.extend(code)
            marks.append(1)
            marks.extend(zeros(len(code) - 1, endian="big"))
            count += 1
        self.payload = payload
        self.count = count
        self.shadow = BitVector(marks, probes=probes)

    @classmethod
    def from_bits(cls, payload, shadow_bits, probes=None):
        """Rebuild a stream from its payload and shadow bits"""
        if len(payload) != len(shadow_bits):
            raise InvalidInputError("stream and shadow lengths differ")
        if len(shadow_bits) and not shadow_bits[0]:
            raise InvalidInputError("shadow bits must start with a one")
        stream = cls.__new__(cls)
        stream.payload = as_bitarray(payload)
        stream.shadow = BitVector(shadow_bits, probes=probes)
        stream.count = stream.shadow.ones
        return stream

    @property
    def probes(self):
        return self.shadow.probes

    def __len__(self):
        return self.count

    def __code_bounds(self, j):
        if not 1 <= j <= self.count:
            raise InvalidInputError("stream index %r outside of [1, %d]" % (j, self.count))
        start = self.shadow.select1(j)
        stop = self.shadow.select1(j + 1) if j < self.count else len(self.payload) + 1
        return start, stop

    def __decode(self, start, stop):
        self.probes.hit()
        return ba2int(self.payload[start - 1 : stop - 1])

    def __getitem__(self, j):
        return self.__decode(*self.__code_bounds(j))

    def scan(self, j):
        """Iterate over values j, j+1, ... (one select per value)"""
        if self.count == 0:
            return
        start, stop = self.__code_bounds(j)
        while True:
            yield self.__decode(start, stop)
            j += 1
            if j > self.count:
                return
            start = stop
            stop = self.shadow.select1(j + 1) if j < self.count else len(self.payload) + 1

    def values(self):
        return list(self.scan(1))

    def space_bits(self):
        """Payload bits plus the shadow BitVector"""
        return len(self.payload) + self.shadow.space_bits()
