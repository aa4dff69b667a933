# -*- coding: utf-8 -*-
#
# Copyright © 2024 eqsuccinct developers
# Licensed under the terms of the MIT License
# (see eqsuccinct/__init__.py for details)

"""
partition
---------

The ``eqsuccinct.partition`` module provides the canonical model of a
partition of ``n`` elements into equivalence classes, shared by every
structure of the package.

Classes of equal size ``s`` form a *group*; the group holding ``m`` classes
covers ``gamma = s * m`` elements. Groups are ordered by nondecreasing
``gamma`` (ties broken by increasing ``s``) and elements are labelled
``1..n`` group after group, class after class inside a group: the label of
an element therefore encodes its class implicitly and only the group
sequence has to be stored.

The module also provides the reference tools the structures are checked
against: an explicit label-to-class table (:py:class:`NaiveOracle`), a
plain union-find (:py:class:`OracleUnionFind`), the exact partition count
and the derived information-theoretic space bound.
"""

import bisect
import collections
import functools
import itertools
import logging
import math
import operator

import numpy as np

from eqsuccinct.utils import InvalidInputError, ceil_isqrt, check_label

logger = logging.getLogger(__name__)

#: Above this size, partition counts come from sympy's exact evaluation
RECURRENCE_LIMIT = 20000

RADIX_BITS = 8


class Group(collections.namedtuple("Group", ("size", "count"))):
    """Group of ``count`` classes holding ``size`` elements each"""

    __slots__ = ()

    @property
    def gamma(self):
        return self.size * self.count


ClassId = collections.namedtuple("ClassId", ("group", "index"))
ClassId.__doc__ = """Canonical identity of a class: 1-based group number and
1-based index of the class inside its group"""


def _as_positive_int(value):
    try:
        value = operator.index(value)
    except TypeError:
        raise InvalidInputError("class sizes must be integers (got %r)" % (value,))
    if value < 1:
        raise InvalidInputError("class sizes must be positive (got %d)" % value)
    return value


class ClassSizes(object):
    """Multiset of class sizes (one entry per equivalence class)"""

    def __init__(self, sizes):
        self.sizes = tuple(_as_positive_int(size) for size in sizes)
        if not self.sizes:
            raise InvalidInputError("a partition needs at least one class")
        self.n = sum(self.sizes)

    @classmethod
    def from_multiplicities(cls, multiplicities):
        """Build from a mapping (or array indexed by size - 1) of class counts"""
        if isinstance(multiplicities, dict):
            items = multiplicities.items()
        else:
            items = ((size + 1, count) for size, count in enumerate(multiplicities))
        sizes = []
        for size, count in items:
            sizes.extend([int(size)] * int(count))
        return cls(sizes)

    @property
    def c(self):
        """Number of classes"""
        return len(self.sizes)

    def multiset(self):
        return collections.Counter(self.sizes)

    def __iter__(self):
        return iter(self.sizes)

    def __len__(self):
        return len(self.sizes)

    def __eq__(self, other):
        if not isinstance(other, ClassSizes):
            return NotImplemented
        return sorted(self.sizes) == sorted(other.sizes)

    def __hash__(self):
        return hash(tuple(sorted(self.sizes)))

    def __repr__(self):
        return "ClassSizes(n=%d, c=%d)" % (self.n, self.c)


class GroupSequence(object):
    """
    Canonical group decomposition of a partition

    groups: sequence of (size, count) pairs, already in canonical order
    (use :py:func:`normalize` to build one from raw class sizes)
    """

    def __init__(self, groups):
        self.groups = tuple(
            Group(_as_positive_int(size), _as_positive_int(count))
            for size, count in groups
        )
        if not self.groups:
            raise InvalidInputError("a partition needs at least one group")
        self.prefix = list(itertools.accumulate(group.gamma for group in self.groups))
        self.n = self.prefix[-1]
        self.c = sum(group.count for group in self.groups)
        self.check()

    @property
    def k(self):
        """Number of groups"""
        return len(self.groups)

    def check(self):
        """Verify the invariants of the canonical form"""
        sizes = [group.size for group in self.groups]
        if len(set(sizes)) != len(sizes):
            raise InvalidInputError("group sizes must be pairwise distinct")
        keys = [(group.gamma, group.size) for group in self.groups]
        if any(a >= b for a, b in zip(keys, keys[1:])):
            raise InvalidInputError("groups must be sorted by (gamma, size)")
        # gamma_i >= i follows from distinct sizes and sorted gammas
        assert all(group.gamma >= i for i, group in enumerate(self.groups, 1))
        assert self.k <= self.c and self.k <= ceil_isqrt(2 * self.n)

    def prefix_sum(self, i):
        """Return P_i, the number of labels in groups 1..i (P_0 = 0)"""
        return self.prefix[i - 1] if i > 0 else 0

    def gammas(self):
        return [group.gamma for group in self.groups]

    def deltas(self):
        """Return the first differences of the gamma sequence (gamma_0 = 0)"""
        gammas = self.gammas()
        return [b - a for a, b in zip([0] + gammas, gammas)]

    def class_sizes(self):
        return ClassSizes(
            size for group in self.groups for size in [group.size] * group.count
        )

    def _check_class_id(self, class_id):
        group, index = class_id
        if not 1 <= group <= self.k:
            raise InvalidInputError("group %r outside of [1, %d]" % (group, self.k))
        count = self.groups[group - 1].count
        if not 1 <= index <= count:
            raise InvalidInputError("class index %r outside of [1, %d]" % (index, count))

    def smallest_label(self, class_id):
        """Return the smallest label of a class"""
        self._check_class_id(class_id)
        group, index = class_id
        return self.prefix_sum(group - 1) + (index - 1) * self.groups[group - 1].size + 1

    def label_of(self, class_id, rank):
        """Return the label of the rank-th element (1-based) of a class"""
        self._check_class_id(class_id)
        size = self.groups[class_id.group - 1].size
        if not 1 <= rank <= size:
            raise InvalidInputError("rank %r outside of [1, %d]" % (rank, size))
        return self.smallest_label(class_id) + rank - 1

    def decompose(self, label):
        """Return (ClassId, rank) of a label (inverse of label_of)"""
        check_label(label, self.n)
        group = bisect.bisect_left(self.prefix, label) + 1
        offset = label - self.prefix_sum(group - 1) - 1
        size = self.groups[group - 1].size
        return ClassId(group, offset // size + 1), offset % size + 1

    def iter_classes(self):
        """Iterate over (ClassId, smallest label, size) in label order"""
        start = 1
        for group_index, group in enumerate(self.groups, 1):
            for index in range(1, group.count + 1):
                yield ClassId(group_index, index), start, group.size
                start += group.size

    def __eq__(self, other):
        if not isinstance(other, GroupSequence):
            return NotImplemented
        return self.groups == other.groups

    def __hash__(self):
        return hash(self.groups)

    def __repr__(self):
        return "GroupSequence(%s)" % ", ".join(
            "%dx%d" % (group.count, group.size) for group in self.groups
        )


def normalize(sizes):
    """Return the canonical GroupSequence of a ClassSizes (or of any iterable
    of class sizes)"""
    if not isinstance(sizes, ClassSizes):
        sizes = ClassSizes(sizes)
    groups = [Group(size, count) for size, count in sizes.multiset().items()]
    groups.sort(key=lambda group: (group.gamma, group.size))
    return GroupSequence(groups)


def radix_sort_groups(groups):
    """Sort (size, count) pairs by (gamma, size) with an LSD radix sort

    Each key is processed in RADIX_BITS-bit digits, least significant key
    (size) first; every pass is a stable bucket distribution."""
    items = [Group(size, count) for size, count in groups]
    mask = (1 << RADIX_BITS) - 1
    for key in (operator.attrgetter("size"), operator.attrgetter("gamma")):
        largest = max((key(item) for item in items), default=0)
        shift = 0
        while largest >> shift:
            buckets = [[] for _ in range(mask + 1)]
            for item in items:
                buckets[(key(item) >> shift) & mask].append(item)
            items = [item for bucket in buckets for item in bucket]
            shift += RADIX_BITS
    return items


class NaiveOracle(object):
    """Explicit label -> class table (reference implementation)"""

    def __init__(self, groups):
        self.groups = groups
        self.class_ids = [class_id for class_id, _start, _size in groups.iter_classes()]
        sizes = [size for _class_id, _start, size in groups.iter_classes()]
        self.class_of = np.repeat(np.arange(len(sizes), dtype=np.int64), sizes)

    @property
    def n(self):
        return self.groups.n

    def class_id(self, label):
        check_label(label, self.n)
        return self.class_ids[self.class_of[label - 1]]

    def same_class(self, x, y):
        check_label(x, self.n)
        check_label(y, self.n)
        return bool(self.class_of[x - 1] == self.class_of[y - 1])


def oracle_same_class(oracle, x, y):
    """True iff labels x and y belong to the same class"""
    return oracle.same_class(x, y)


class OracleUnionFind(object):
    """
    Plain disjoint-set forest over elements 0..size-1
    (union by rank, path compression)
    """

    def __init__(self, size):
        assert size >= 0
        self.parent = list(range(size))
        self.rank = [0] * size

    def __len__(self):
        return len(self.parent)

    def find(self, x):
        """Return the root of the set containing x"""
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        """Merge the sets of x and y; return False if they were already merged"""
        x_root = self.find(x)
        y_root = self.find(y)
        if x_root == y_root:
            return False
        if self.rank[x_root] < self.rank[y_root]:
            x_root, y_root = y_root, x_root
        self.parent[y_root] = x_root
        if self.rank[x_root] == self.rank[y_root]:
            self.rank[x_root] += 1
        return True

    def same(self, x, y):
        return self.find(x) == self.find(y)

    def roots(self):
        """Return the numpy array of the root of every element"""
        return np.fromiter(
            (self.find(x) for x in range(len(self))), dtype=np.int64, count=len(self)
        )

    def sizes(self):
        """Return the multiset of set sizes"""
        _roots, counts = np.unique(self.roots(), return_counts=True)
        return ClassSizes(counts.tolist())


# ==============================================================================
# Counting
# ==============================================================================
_PARTITION_COUNTS = [1]


def _extend_partition_counts(n):
    """Extend the cached table of p(0..n) with Euler's pentagonal recurrence"""
    table = _PARTITION_COUNTS
    for m in range(len(table), n + 1):
        total = 0
        k = 1
        while True:
            first = k * (3 * k - 1) // 2
            if first > m:
                break
            sign = 1 if k % 2 else -1
            total += sign * table[m - first]
            second = first + k
            if second <= m:
                total += sign * table[m - second]
            k += 1
        table.append(total)


def partition_count(n):
    """Return p(n), the number of integer partitions of n"""
    if n < 0:
        raise InvalidInputError("partition_count is defined for n >= 0")
    if n <= RECURRENCE_LIMIT:
        if n >= len(_PARTITION_COUNTS):
            _extend_partition_counts(n)
        return _PARTITION_COUNTS[n]
    return _exact_partition_count(n)


@functools.lru_cache(maxsize=64)
def _exact_partition_count(n):
    from sympy.functions.combinatorial.numbers import partition

    logger.debug("p(%d) evaluated by sympy", n)
    return int(partition(n))


def info_lower_bound_bits(n):
    """Return ceil(lg p(n)), the information-theoretic space bound for a
    partition of n elements"""
    if n < 1:
        raise InvalidInputError("info_lower_bound_bits is defined for n >= 1")
    return (partition_count(n) - 1).bit_length()


def label_space_size(n):
    """Return sum(n // i for i in 1..n), summed over blocks of equal quotient"""
    if n < 1:
        raise InvalidInputError("label_space_size is defined for n >= 1")
    total = 0
    i = 1
    while i <= n:
        quotient = n // i
        last = n // quotient
        total += quotient * (last - i + 1)
        i = last + 1
    return total


def iter_partitions(n, largest=None):
    """Generate every partition of n as a nonincreasing tuple"""
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in iter_partitions(n - first, first):
            yield (first,) + rest


def random_partition(n, rng=None):
    """Return a random partition of n as ClassSizes

    Multiplicities of every size s are drawn independently from geometric
    laws of parameter 1 - q**s with q = exp(-pi / sqrt(6 n)); conditioned on
    the total, every partition is equally likely. Draws exceeding n are
    rejected and a shortfall is completed with singleton classes."""
    if n < 1:
        raise InvalidInputError("random_partition is defined for n >= 1")
    if rng is None:
        rng = np.random.default_rng()
    sizes = np.arange(1, n + 1, dtype=np.int64)
    success = -np.expm1(-math.pi / math.sqrt(6 * n) * sizes.astype(np.float64))
    while True:
        multiplicities = rng.geometric(success) - 1
        total = int(np.dot(multiplicities, sizes))
        if total <= n:
            multiplicities[0] += n - total
            return ClassSizes(np.repeat(sizes, multiplicities).tolist())
