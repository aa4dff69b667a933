# -*- coding: utf-8 -*-
#
# Copyright © 2024 eqsuccinct developers
# Licensed under the terms of the MIT License
# (see eqsuccinct/__init__.py for details)

"""
structures
----------

The ``eqsuccinct.structures`` module provides the static equivalence
structures built over the canonical group sequence of a partition (see
:py:mod:`eqsuccinct.partition`).

Every label ``x`` lies in the group ``p(x) + 1`` where ``p(x)`` is the
number of prefix sums ``P_j`` strictly below ``x``; inside that group the
class index follows from the class size ``s``:
``ceil((x - P_p) / s)``. The three structures differ by the way they
locate ``p(x)``:

* :py:class:`CompactEq` stores the gamma differences and the group counts
  as minimal binary codes delimited by shadow bit vectors, plus one
  absolute prefix sum every ``ceil(lg n)`` groups: binary search on the
  samples, then a scan of at most ``ceil(lg n)`` codes.
* :py:class:`FastEq` samples one prefix sum every ``ceil(lg lg n)``
  groups into a :py:class:`~eqsuccinct.predecessor.PredecessorDict`.
* :py:class:`ConstEq` stores all prefix sums and, for every
  ``i <= ceil(sqrt(2n))``, the number ``A[i]`` of prefix sums not above
  ``i (i + 1) / 2``; ``p(x)`` is one of ``A[i] - 1``, ``A[i]``,
  ``A[i] + 1`` with ``i = ceil(sqrt(2x)) - 1``.
"""

import collections
import logging

import numpy as np

from eqsuccinct.bitvector import CodeStream
from eqsuccinct.config import CONF
from eqsuccinct.instrument import ProbeCounter
from eqsuccinct.isqrt import SqrtTables, build_sqrt_tables
from eqsuccinct.jsonio import JSONReader, JSONWriter
from eqsuccinct.partition import Group, GroupSequence
from eqsuccinct.predecessor import PredecessorDict
from eqsuccinct.utils import InvalidInputError, bit_width, ceil_isqrt, ceil_lg, check_label

logger = logging.getLogger(__name__)

GroupLocation = collections.namedtuple("GroupLocation", ("group", "index", "size"))
GroupLocation.__doc__ = """Class of a label: 1-based group, 1-based class index
inside the group and class size"""

#: Registered structure classes, by kind
STRUCTURE_CLASSES = collections.OrderedDict()


def register(klass):
    """Class decorator registering a structure under its kind"""
    STRUCTURE_CLASSES[klass.kind] = klass
    return klass


def get_structure_class(kind):
    try:
        return STRUCTURE_CLASSES[kind]
    except KeyError:
        raise InvalidInputError("unknown structure kind %r" % (kind,))


def _groups_from_counts(gammas, counts):
    groups = []
    for gamma, count in zip(gammas, counts):
        gamma, count = int(gamma), int(count)
        if count < 1 or gamma % count:
            raise InvalidInputError("stored group (%d, %d) is inconsistent" % (gamma, count))
        groups.append(Group(gamma // count, count))
    return GroupSequence(groups)


class EquivalenceStructure(object):
    """
    Base class of static equivalence structures

    Subclasses implement ``_locate(x)``, returning the group of label x
    with the prefix sum before it and its gamma, and ``_count(group)``.
    """

    kind = None
    #: Names of the stored fields, in serialization order
    FIELDS = ()

    def __init__(self, groups, probes=None):
        if not isinstance(groups, GroupSequence):
            raise InvalidInputError("structures are built from a GroupSequence")
        self.n = groups.n
        self.k = groups.k
        self.probes = ProbeCounter() if probes is None else probes

    def __repr__(self):
        return "%s(n=%d, k=%d)" % (self.__class__.__name__, self.n, self.k)

    # ---- Queries
    def _locate(self, x):
        raise NotImplementedError

    def _count(self, group):
        raise NotImplementedError

    def find(self, x):
        """Return the GroupLocation of label x"""
        check_label(x, self.n)
        group, before, gamma = self._locate(x)
        size = gamma // self._count(group)
        return GroupLocation(group, (x - before - 1) // size + 1, size)

    def same_class(self, x, y):
        """True iff labels x and y belong to the same class"""
        check_label(x, self.n)
        check_label(y, self.n)
        if x == y:
            return True
        group, before, gamma = self._locate(x)
        other, other_before, _gamma = self._locate(y)
        if group != other:
            return False
        size = gamma // self._count(group)
        return (x - before - 1) // size == (y - other_before - 1) // size

    def class_minimum(self, location):
        """Return the smallest label of the class of a GroupLocation"""
        before = self.prefix_sum(location.group - 1)
        return before + (location.index - 1) * location.size + 1

    def prefix_sum(self, group):
        """Return P_group (0 for group 0)"""
        return self.groups().prefix_sum(group)

    def groups(self):
        """Return the GroupSequence the structure represents"""
        raise NotImplementedError

    # ---- Space accounting
    def header_bits(self):
        return 2 * bit_width(self.n)

    def _space_fields(self):
        raise NotImplementedError

    def space_fields(self):
        """Return an ordered {field: bits} mapping (header included)"""
        fields = collections.OrderedDict(self._space_fields())
        fields["header"] = self.header_bits()
        return fields

    def space_bits(self):
        """Return the exact size of the structure in bits"""
        return sum(self.space_fields().values())

    # ---- Serialization
    def stored_fields(self):
        """Return the ordered {field: value} mapping to serialize"""
        raise NotImplementedError

    def serialize(self, writer):
        for name, value in self.stored_fields().items():
            writer.write(value, name)

    @classmethod
    def from_fields(cls, n, k, fields):
        """Rebuild a structure from its stored fields"""
        raise NotImplementedError

    @classmethod
    def deserialize(cls, reader, n, k):
        fields = collections.OrderedDict()
        for name in cls.FIELDS:
            try:
                fields[name] = reader.read(name)
            except KeyError:
                raise InvalidInputError("%s: missing field %r" % (cls.kind, name))
        return cls.from_fields(n, k, fields)

    def _init_restored(self, n, k, probes=None):
        self.n = n
        self.k = k
        self.probes = ProbeCounter() if probes is None else probes


def _sampled(values, period):
    """Return the values of groups period, 2 * period, ... (1-based)"""
    return np.asarray(values[period - 1 :: period], dtype=np.int64)


# ==============================================================================
# CompactEq
# ==============================================================================
@register
class CompactEq(EquivalenceStructure):
    """
    Equivalence structure of O(sqrt(n)) bits answering in O(lg n) probes
    """

    kind = "compact"
    FIELDS = ("s_stream", "psi", "m_stream", "rho", "sample_sums", "sample_gammas")

    def __init__(self, groups):
        super().__init__(groups)
        self.period = self.sampling_period(self.n)
        self.s_stream = CodeStream(groups.deltas(), probes=self.probes)
        self.m_stream = CodeStream((group.count for group in groups.groups), probes=self.probes)
        self.sample_sums = _sampled(groups.prefix, self.period)
        self.sample_gammas = _sampled(groups.gammas(), self.period)

    @staticmethod
    def sampling_period(n):
        return max(1, ceil_lg(n))

    def _start(self, x):
        """Return the last sample before x as (group, prefix sum, gamma)"""
        samples = len(self.sample_sums)
        self.probes.hit(ceil_lg(samples + 1) + 1)
        before = int(np.searchsorted(self.sample_sums, x, side="left"))
        if before == 0:
            return 0, 0, 0
        self.probes.hit()
        return (
            before * self.period,
            int(self.sample_sums[before - 1]),
            int(self.sample_gammas[before - 1]),
        )

    def _locate(self, x):
        group, before, gamma = self._start(x)
        for delta in self.s_stream.scan(group + 1):
            group += 1
            gamma += delta
            if before + gamma >= x:
                return group, before, gamma
            before += gamma
        raise RuntimeError("label %d beyond the last group" % x)

    def _count(self, group):
        return self.m_stream[group]

    def gammas(self):
        return list(np.cumsum(self.s_stream.values(), dtype=np.int64))

    def groups(self):
        return _groups_from_counts(self.gammas(), self.m_stream.values())

    def _space_fields(self):
        width = bit_width(self.n)
        return [
            ("s_stream", len(self.s_stream.payload)),
            ("psi", self.s_stream.shadow.space_bits()),
            ("m_stream", len(self.m_stream.payload)),
            ("rho", self.m_stream.shadow.space_bits()),
            ("sample_sums", len(self.sample_sums) * width),
            ("sample_gammas", len(self.sample_gammas) * width),
        ]

    def stored_fields(self):
        return collections.OrderedDict(
            [
                ("s_stream", self.s_stream.payload),
                ("psi", self.s_stream.shadow.to_bits()),
                ("m_stream", self.m_stream.payload),
                ("rho", self.m_stream.shadow.to_bits()),
                ("sample_sums", self.sample_sums),
                ("sample_gammas", self.sample_gammas),
            ]
        )

    @classmethod
    def from_fields(cls, n, k, fields):
        self = cls.__new__(cls)
        self._init_restored(n, k)
        self.period = cls.sampling_period(n)
        self.s_stream = CodeStream.from_bits(fields["s_stream"], fields["psi"], self.probes)
        self.m_stream = CodeStream.from_bits(fields["m_stream"], fields["rho"], self.probes)
        self.sample_sums = np.asarray(fields["sample_sums"], dtype=np.int64)
        self.sample_gammas = np.asarray(fields["sample_gammas"], dtype=np.int64)
        if len(self.s_stream) != k or len(self.m_stream) != k:
            raise InvalidInputError("compact structure: streams do not hold %d groups" % k)
        return self


def build_compact(groups):
    return CompactEq(groups)


# ==============================================================================
# FastEq
# ==============================================================================
@register
class FastEq(EquivalenceStructure):
    """
    Equivalence structure answering in O(lg lg n) probes
    """

    kind = "fast"
    FIELDS = ("sample_sums", "sample_gammas", "s_stream", "psi", "counts")

    def __init__(self, groups):
        super().__init__(groups)
        self.period = self.sampling_period(self.n)
        self.samples = PredecessorDict(
            _sampled(groups.prefix, self.period).tolist(), self.n, probes=self.probes
        )
        self.sample_gammas = _sampled(groups.gammas(), self.period)
        self.s_stream = CodeStream(groups.deltas(), probes=self.probes)
        self.counts = np.asarray([group.count for group in groups.groups], dtype=np.int64)

    @staticmethod
    def sampling_period(n):
        return max(1, ceil_lg(max(1, ceil_lg(n))))

    def _locate(self, x):
        group = before = gamma = 0
        if x > 1 and len(self.samples):
            found = self.samples.predecessor(x - 1)
            if found is not None:
                self.probes.hit()
                group = found.index * self.period
                before = found.key
                gamma = int(self.sample_gammas[found.index - 1])
        for delta in self.s_stream.scan(group + 1):
            group += 1
            gamma += delta
            if before + gamma >= x:
                return group, before, gamma
            before += gamma
        raise RuntimeError("label %d beyond the last group" % x)

    def _count(self, group):
        self.probes.hit()
        return int(self.counts[group - 1])

    def groups(self):
        gammas = np.cumsum(self.s_stream.values(), dtype=np.int64)
        return _groups_from_counts(gammas, self.counts)

    def _space_fields(self):
        width = bit_width(self.n)
        return [
            ("samples", self.samples.space_bits()),
            ("sample_gammas", len(self.sample_gammas) * width),
            ("s_stream", len(self.s_stream.payload)),
            ("psi", self.s_stream.shadow.space_bits()),
            ("counts", len(self.counts) * width),
        ]

    def stored_fields(self):
        return collections.OrderedDict(
            [
                ("sample_sums", np.asarray(self.samples.keys, dtype=np.int64)),
                ("sample_gammas", self.sample_gammas),
                ("s_stream", self.s_stream.payload),
                ("psi", self.s_stream.shadow.to_bits()),
                ("counts", self.counts),
            ]
        )

    @classmethod
    def from_fields(cls, n, k, fields):
        self = cls.__new__(cls)
        self._init_restored(n, k)
        self.period = cls.sampling_period(n)
        self.samples = PredecessorDict(
            np.asarray(fields["sample_sums"], dtype=np.int64).tolist(), n, probes=self.probes
        )
        self.sample_gammas = np.asarray(fields["sample_gammas"], dtype=np.int64)
        self.s_stream = CodeStream.from_bits(fields["s_stream"], fields["psi"], self.probes)
        self.counts = np.asarray(fields["counts"], dtype=np.int64)
        if len(self.s_stream) != k or len(self.counts) != k:
            raise InvalidInputError("fast structure: fields do not hold %d groups" % k)
        return self


def build_fast(groups):
    return FastEq(groups)


# ==============================================================================
# ConstEq
# ==============================================================================
@register
class ConstEq(EquivalenceStructure):
    """
    Equivalence structure answering with a constant number of probes
    """

    kind = "const"
    FIELDS = ("P", "counts", "A", "sqrt_E", "sqrt_O")

    def __init__(self, groups, verify_samples=None, probes=None):
        super().__init__(groups, probes=probes)
        self.P = np.asarray(groups.prefix, dtype=np.int64)
        self.counts = np.asarray([group.count for group in groups.groups], dtype=np.int64)
        self.A = self.pointer_array(self.P, self.n)
        self.sqrt = build_sqrt_tables(self.n, probes=self.probes)
        if verify_samples is None:
            verify_samples = CONF.get("static", "verify_samples")
        self.verify(verify_samples)

    @staticmethod
    def pointer_array(prefix, n):
        """Return A[1..ceil(sqrt(2n))] (stored from index 0), A[i] being the
        number of prefix sums <= i (i + 1) / 2"""
        i = np.arange(1, ceil_isqrt(2 * n) + 1, dtype=np.int64)
        return np.searchsorted(prefix, i * (i + 1) // 2, side="right").astype(np.int64)

    def candidates(self, x):
        """Return the candidate values of p(x)"""
        i = self.sqrt.ceil_sqrt(2 * x) - 1
        self.probes.hit()
        pointer = int(self.A[i - 1])
        return [c for c in (pointer - 1, pointer, pointer + 1) if 0 <= c < self.k]

    def _before(self, group):
        if group == 0:
            return 0
        self.probes.hit()
        return int(self.P[group - 1])

    def _locate(self, x):
        for candidate in self.candidates(x):
            before = self._before(candidate)
            if before < x:
                after = self._before(candidate + 1)
                if x <= after:
                    return candidate + 1, before, after - before
        raise RuntimeError("no candidate group for label %d" % x)

    def verify(self, samples):
        """Check the candidate property on evenly spaced labels"""
        if samples <= 0:
            return
        start = self.probes.count
        labels = np.unique(np.linspace(1, self.n, min(samples, self.n)).astype(np.int64))
        expected = np.searchsorted(self.P, labels, side="left")
        for label, group in zip(labels.tolist(), expected.tolist()):
            if group not in self.candidates(label):
                raise RuntimeError("candidate property broken for label %d" % label)
        self.probes.count = start
        logger.debug("candidate property checked on %d labels", len(labels))

    def _count(self, group):
        self.probes.hit()
        return int(self.counts[group - 1])

    def prefix_sum(self, group):
        return self._before(group)

    def groups(self):
        gammas = np.diff(self.P, prepend=0)
        return _groups_from_counts(gammas, self.counts)

    def _space_fields(self):
        width = bit_width(self.n)
        return [
            ("P", len(self.P) * width),
            ("counts", len(self.counts) * width),
            ("A", len(self.A) * bit_width(self.k)),
            ("sqrt_tables", self.sqrt.space_bits()),
        ]

    def stored_fields(self):
        return collections.OrderedDict(
            [
                ("P", self.P),
                ("counts", self.counts),
                ("A", self.A),
                ("sqrt_E", self.sqrt.E),
                ("sqrt_O", self.sqrt.O),
            ]
        )

    @classmethod
    def from_fields(cls, n, k, fields, probes=None):
        self = cls.__new__(cls)
        self._init_restored(n, k, probes)
        self.P = np.asarray(fields["P"], dtype=np.int64)
        self.counts = np.asarray(fields["counts"], dtype=np.int64)
        self.A = np.asarray(fields["A"], dtype=np.int64)
        self.sqrt = SqrtTables(n, fields["sqrt_E"], fields["sqrt_O"], probes=self.probes)
        if len(self.P) != k or len(self.counts) != k or (k and int(self.P[-1]) != n):
            raise InvalidInputError("const structure: fields do not hold %d groups" % k)
        gammas = np.diff(self.P, prepend=0)
        if np.any(gammas <= 0) or np.any(self.counts <= 0) or np.any(gammas % self.counts):
            raise InvalidInputError("const structure: inconsistent prefix sums or counts")
        expected = cls.pointer_array(self.P, n)
        if len(self.A) != len(expected) or not np.array_equal(self.A, expected):
            raise InvalidInputError("const structure: pointer array does not match P")
        return self


def build_const(groups, verify_samples=None, probes=None):
    return ConstEq(groups, verify_samples=verify_samples, probes=probes)


# ==============================================================================
# Convenience
# ==============================================================================
def build_structure(kind, groups):
    """Build a structure of the given kind over a GroupSequence"""
    return get_structure_class(kind)(groups)


def structure_to_json(structure, indent=None):
    """Return a JSON document holding the kind, size and stored fields"""
    writer = JSONWriter()
    writer.write(structure.kind, "kind")
    writer.write(structure.n, "n")
    writer.write(structure.k, "k")
    with writer.group("fields"):
        structure.serialize(writer)
    return writer.get_json(indent=indent)


def structure_from_json(text):
    """Rebuild a structure from the output of structure_to_json"""
    reader = JSONReader(text)
    klass = get_structure_class(reader.read("kind"))
    n, k = reader.read("n"), reader.read("k")
    with reader.group("fields"):
        return klass.deserialize(reader, n, k)
