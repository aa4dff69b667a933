# -*- coding: utf-8 -*-
#
# Copyright © 2024 eqsuccinct developers
# Licensed under the terms of the MIT License
# (see eqsuccinct/__init__.py for details)

"""Labeling schemes test: range labels and bit labels"""

SHOW = False

import math
import unittest

import numpy as np
from bitarray import bitarray

from eqsuccinct.labeling import (
    assign_bit_labels,
    assign_range_labels,
    bit_label_length,
    bit_labels_equivalent,
    decode_bit_label,
    encode_bit_label,
    label_export_lines,
    prefix_width,
    range_labels_equivalent,
)
from eqsuccinct.partition import ClassSizes, iter_partitions, label_space_size, random_partition
from eqsuccinct.utils import InvalidInputError, ceil_lg


def element_classes(sizes):
    """Return the class number of every element (class after class)"""
    return np.repeat(np.arange(len(sizes)), sizes)


class TestRangeLabels(unittest.TestCase):
    def test_examples(self):
        assignment = assign_range_labels([2, 1, 1])
        self.assertEqual(
            [assignment.class_range(rank) for rank in (1, 2, 3)], [(1, 4), (5, 6), (7, 7)]
        )
        self.assertEqual(assignment.element_labels.tolist(), [1, 2, 5, 7])
        self.assertTrue(range_labels_equivalent(assignment, 1, 2))
        self.assertFalse(range_labels_equivalent(assignment, 5, 7))
        self.assertTrue(range_labels_equivalent(assignment, 7, 7))
        self.assertEqual(assign_range_labels([1]).label(0), 1)
        singletons = assign_range_labels([1, 1, 1, 1])
        self.assertEqual(
            [singletons.class_range(rank) for rank in (1, 2, 3, 4)],
            [(1, 4), (5, 6), (7, 7), (8, 8)],
        )
        self.assertEqual(singletons.max_label, label_space_size(4))

    def test_input_order(self):
        assignment = assign_range_labels([1, 3])
        self.assertEqual(assignment.element_labels.tolist(), [5, 1, 2, 3])

    def test_unassigned(self):
        assignment = assign_range_labels([2, 1, 1])
        for label in (0, 3, 4, 8):
            with self.assertRaises(InvalidInputError):
                assignment.class_of(label)

    def test_exhaustive(self):
        for n in range(1, 13):
            for sizes in iter_partitions(n):
                assignment = assign_range_labels(sizes)
                labels = assignment.element_labels.tolist()
                self.assertEqual(len(set(labels)), n)
                self.assertLessEqual(max(labels), label_space_size(n))
                classes = element_classes(sizes)
                for a in range(n):
                    for b in range(n):
                        self.assertEqual(
                            range_labels_equivalent(assignment, labels[a], labels[b]),
                            classes[a] == classes[b],
                        )


class TestBitLabels(unittest.TestCase):
    def test_examples(self):
        self.assertEqual(prefix_width(9), 3)
        self.assertEqual(encode_bit_label(9, 1, 3).to01(), "000" + "0010")
        self.assertEqual(encode_bit_label(9, 2, 1).to01(), "001" + "1" + "00")
        self.assertFalse(encode_bit_label(9, 1, 1).any())
        self.assertEqual(decode_bit_label(9, encode_bit_label(9, 1, 1)), (1, 1))
        self.assertEqual(len(encode_bit_label(1024, 1, 1)), prefix_width(1024) + 10)
        self.assertLessEqual(len(encode_bit_label(1024, 1, 1)), 16)

    def test_equivalence(self):
        a, b = encode_bit_label(9, 2, 1), encode_bit_label(9, 2, 2)
        self.assertTrue(bit_labels_equivalent(a, b, 9))
        self.assertFalse(bit_labels_equivalent(encode_bit_label(9, 1, 1), a, 9))
        self.assertTrue(bit_labels_equivalent(a, a, 9))
        self.assertTrue(bit_labels_equivalent(a.to01(), b.to01(), 9))

    def test_errors(self):
        with self.assertRaises(InvalidInputError):
            encode_bit_label(9, 2, 5)
        with self.assertRaises(InvalidInputError):
            encode_bit_label(9, 10, 1)
        with self.assertRaises(InvalidInputError):
            decode_bit_label(9, bitarray("00"))
        with self.assertRaises(InvalidInputError):
            decode_bit_label(9, bitarray("0001"))
        # class field 0 on 2 bits: i = 1 is not written on 2 bits
        with self.assertRaises(InvalidInputError):
            decode_bit_label(9, bitarray("010" + "00" + "00"))

    def test_truncated(self):
        with self.assertRaises(InvalidInputError):
            decode_bit_label(9, bitarray("001"))
        with self.assertRaises(InvalidInputError):
            decode_bit_label(9, "0100")
        for n in (9, 100, 1024):
            for i in (1, 2, 3, n // 2, n):
                label = encode_bit_label(n, i, n // i)
                for cut in range(len(label)):
                    with self.assertRaises(InvalidInputError):
                        decode_bit_label(n, label[:cut])

    def test_round_trip(self):
        for n in list(range(1, 65)) + [100, 255, 256, 257, 512]:
            for i in range(1, n + 1):
                for j in range(1, n // i + 1):
                    label = encode_bit_label(n, i, j)
                    self.assertEqual(len(label), bit_label_length(n, i))
                    self.assertEqual(decode_bit_label(n, label), (i, j))

    def test_length_bounds(self):
        for n in range(1, 65):
            for i in range(1, n + 1):
                self.assertLessEqual(bit_label_length(n, i), prefix_width(n) + ceil_lg(n) + 1)
        for exponent in (10, 16, 20):
            n = 1 << exponent
            bound = math.floor(exponent + math.log2(exponent) + 2)
            for i in range(1, n + 1, 97):
                self.assertLessEqual(bit_label_length(n, i), bound)
            for i in (3, 5, (n // 3) | 1, n - 1, n):
                self.assertLessEqual(bit_label_length(n, i), bound)

    def test_assignment(self):
        for n in range(1, 13):
            for sizes in iter_partitions(n):
                labels = assign_bit_labels(sizes)
                self.assertEqual(len({label.to01() for label in labels}), n)
                classes = element_classes(sizes)
                for a in range(n):
                    for b in range(a, n):
                        self.assertEqual(
                            bit_labels_equivalent(labels[a], labels[b], n),
                            classes[a] == classes[b],
                        )

    def test_random_assignment(self):
        rng = np.random.default_rng(8)
        sizes = random_partition(3000, rng)
        labels = assign_bit_labels(sizes)
        classes = element_classes(sizes.sizes)
        pairs = rng.integers(0, sizes.n, size=(2000, 2)).tolist()
        for a, b in pairs:
            self.assertEqual(
                bit_labels_equivalent(labels[a], labels[b], sizes.n), classes[a] == classes[b]
            )

    def test_export(self):
        labels = assign_bit_labels(ClassSizes([2, 1]))
        lines = list(label_export_lines(labels))
        self.assertEqual(lines[0], "0\t" + labels[0].to01())
        lines = list(label_export_lines(labels, ids=[7, 8, 9]))
        self.assertEqual([line.split("\t")[0] for line in lines], ["7", "8", "9"])


if __name__ == "__main__":
    unittest.main()
