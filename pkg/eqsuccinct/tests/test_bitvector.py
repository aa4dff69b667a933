# -*- coding: utf-8 -*-
#
# Copyright © 2024 eqsuccinct developers
# Licensed under the terms of the MIT License
# (see eqsuccinct/__init__.py for details)

"""Bit vector test: rank/select against a linear scan, code streams"""

SHOW = False

import unittest

import numpy as np
from bitarray import bitarray

from eqsuccinct.bitvector import (
    HEADER_BITS,
    BitVector,
    CodeStream,
    build_bitvector,
    minimal_binary,
)
from eqsuccinct.instrument import ProbeCounter
from eqsuccinct.utils import InvalidInputError

#: Worst select1 cost with the default directory options
SELECT_PROBES = 18


def random_bits(length, density, seed):
    rng = np.random.default_rng(seed)
    return bitarray((rng.random(length) < density).tolist(), endian="big")


class TestBitVector(unittest.TestCase):
    def test_examples(self):
        vector = build_bitvector("101001")
        self.assertEqual(vector.select1(2), 3)
        self.assertEqual(vector.select1(3), 6)
        self.assertIsNone(vector.select1(4))
        self.assertEqual(vector.rank1(3), 2)
        self.assertEqual(vector.rank1(0), 0)
        self.assertEqual(vector.ones, 3)
        self.assertIsNone(build_bitvector("0" * 8).select1(1))
        ones = build_bitvector("11111")
        self.assertEqual([ones.select1(j) for j in range(1, 6)], [1, 2, 3, 4, 5])
        self.assertEqual(ones.rank1(5), 5)
        self.assertEqual(build_bitvector("1").select1(1), 1)

    def test_errors(self):
        vector = build_bitvector([True, False, True])
        with self.assertRaises(InvalidInputError):
            vector.select1(0)
        with self.assertRaises(InvalidInputError):
            vector.rank1(4)
        with self.assertRaises(InvalidInputError):
            vector.rank1(-1)
        with self.assertRaises(InvalidInputError):
            build_bitvector("10x1")

    def check_against_scan(self, bits, **options):
        vector = BitVector(bits, **options)
        values = np.frombuffer(bits.unpack(), dtype=np.uint8)
        ranks = np.concatenate(([0], np.cumsum(values)))
        positions = np.flatnonzero(values) + 1
        for pos in range(len(bits) + 1):
            self.assertEqual(vector.rank1(pos), ranks[pos])
        for j, position in enumerate(positions.tolist(), 1):
            self.assertEqual(vector.select1(j), position)
        self.assertIsNone(vector.select1(len(positions) + 1))
        self.assertEqual(vector.to_bits(), bits)
        return vector

    def test_random_vectors(self):
        for seed, density in enumerate((0.01, 0.5, 0.99)):
            self.check_against_scan(random_bits(20000, density, seed))

    def test_sparse_blocks(self):
        bits = random_bits(30000, 0.01, 5)
        vector = self.check_against_scan(bits, select_sample=4, sparse_span=64)
        self.assertTrue(vector.sparse)
        mixed = random_bits(3000, 0.9, 6) + bitarray("0" * 10000) + random_bits(3000, 0.05, 7)
        self.check_against_scan(mixed, select_sample=8, sparse_span=256)

    def test_unaligned_lengths(self):
        for length in (1, 63, 64, 65, 511, 512, 513):
            self.check_against_scan(random_bits(length, 0.5, length))

    def test_long_vectors(self):
        rng = np.random.default_rng(10)
        for seed, density in ((11, 0.5), (12, 0.001)):
            bits = random_bits(10**6, density, seed)
            vector = BitVector(bits)
            values = np.frombuffer(bits.unpack(), dtype=np.uint8)
            ranks = np.concatenate(([0], np.cumsum(values)))
            positions = np.flatnonzero(values) + 1
            self.assertEqual(vector.ones, len(positions))
            for pos in rng.integers(0, len(bits) + 1, size=5000).tolist() + [0, len(bits)]:
                self.assertEqual(vector.rank1(pos), ranks[pos])
            for j in rng.integers(1, len(positions) + 1, size=5000).tolist() + [len(positions)]:
                self.assertEqual(vector.select1(j), positions[j - 1])
            self.assertIsNone(vector.select1(len(positions) + 1))

    def test_probes(self):
        probes = ProbeCounter()
        vector = BitVector(random_bits(200000, 0.3, 1), probes=probes)
        rng = np.random.default_rng(2)
        for pos in rng.integers(0, len(vector) + 1, size=2000).tolist():
            with probes.measure() as rank_probes:
                vector.rank1(pos)
            self.assertLessEqual(rank_probes[0], 3)
        for j in rng.integers(1, vector.ones + 1, size=2000).tolist():
            with probes.measure() as select_probes:
                vector.select1(j)
            self.assertLessEqual(select_probes[0], SELECT_PROBES)

    def test_space(self):
        self.assertGreaterEqual(build_bitvector("1" * 64).space_bits(), 64)
        self.assertEqual(build_bitvector("").space_bits(), HEADER_BITS + 10)
        small = build_bitvector(random_bits(1 << 15, 0.5, 3)).space_bits()
        large = build_bitvector(random_bits(1 << 16, 0.5, 4)).space_bits()
        self.assertTrue(1.8 <= large / small <= 2.2)


class TestCodeStream(unittest.TestCase):
    def test_minimal_binary(self):
        self.assertEqual(minimal_binary(0), "0")
        self.assertEqual(minimal_binary(5), "101")
        with self.assertRaises(InvalidInputError):
            minimal_binary(-1)

    def test_stream(self):
        stream = CodeStream([2, 0, 3])
        self.assertEqual(stream.payload.to01(), "10011")
        self.assertEqual(stream.shadow.to_bits().to01(), "10110")
        self.assertEqual(len(stream), 3)
        self.assertEqual(stream.values(), [2, 0, 3])
        self.assertEqual([stream[j] for j in (1, 2, 3)], [2, 0, 3])
        self.assertEqual(list(stream.scan(2)), [0, 3])
        self.assertEqual(stream.space_bits(), 5 + stream.shadow.space_bits())
        with self.assertRaises(InvalidInputError):
            stream[4]

    def test_from_bits(self):
        rng = np.random.default_rng(9)
        values = rng.integers(0, 1000, size=500).tolist()
        stream = CodeStream(values)
        restored = CodeStream.from_bits(stream.payload, stream.shadow.to_bits())
        self.assertEqual(restored.values(), values)
        with self.assertRaises(InvalidInputError):
            CodeStream.from_bits(bitarray("10"), bitarray("1"))
        with self.assertRaises(InvalidInputError):
            CodeStream.from_bits(bitarray("10"), bitarray("01"))

    def test_empty(self):
        stream = CodeStream([])
        self.assertEqual(len(stream), 0)
        self.assertEqual(stream.values(), [])


if __name__ == "__main__":
    unittest.main()
