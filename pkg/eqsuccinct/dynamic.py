# -*- coding: utf-8 -*-
#
# Copyright © 2024 eqsuccinct developers
# Licensed under the terms of the MIT License
# (see eqsuccinct/__init__.py for details)

"""
dynamic
-------

The ``eqsuccinct.dynamic`` module provides :py:class:`DynEq`, an
equivalence structure supporting class merges on top of a
:py:class:`~eqsuccinct.structures.ConstEq`.

Merged classes are tracked by a small disjoint-set forest stored in a
dictionary keyed by the smallest label of each static class involved in a
merge (union by rank, path compression). After ``ceil(c * sqrt(n))``
effective merges, the partition is rebuilt: merged sizes are accumulated
along the leaf-to-root paths of the forest, the groups are sorted again and
a new ConstEq replaces the old one. Labels change at every rebuild; the
old-to-new mapping is published as a :py:class:`RelabelEvent`.
"""

import collections
import logging
import math

import numpy as np

from eqsuccinct.config import CONF
from eqsuccinct.partition import GroupSequence, radix_sort_groups
from eqsuccinct.structures import ConstEq, EquivalenceStructure, register
from eqsuccinct.utils import InvalidInputError, bit_width, ceil_isqrt, check_label

logger = logging.getLogger(__name__)

Representative = collections.namedtuple("Representative", ("label",))
Representative.__doc__ = """Smallest label of the static class at the root of
a merged set"""

MergeReport = collections.namedtuple("MergeReport", ("merged", "rebuilt", "relabel"))
MergeReport.__doc__ = """Outcome of a union: whether two sets were merged,
whether the merge triggered a rebuild and the RelabelEvent of that rebuild"""


def rebuild_threshold(n, factor=1.0):
    """Return the number of effective merges triggering a rebuild"""
    if factor <= 0:
        raise InvalidInputError("rebuild factor must be positive")
    if factor == 1:
        return max(1, ceil_isqrt(n))
    return max(1, math.ceil(factor * math.sqrt(n)))


class _Node(object):
    """Entry of the merge dictionary"""

    __slots__ = ("parent", "rank", "children", "visited")

    def __init__(self, parent=None, rank=0, children=0):
        self.parent = parent
        self.rank = rank
        self.children = children
        self.visited = False

    @property
    def leaf(self):
        return self.children == 0


class RelabelEvent(object):
    """
    Old-to-new label mapping of a rebuild

    Iterating yields (old, new) pairs, computed on demand, covering every
    label once.

    In every new group, classes left untouched by the merges come first (in
    old label order), then merged sets by increasing root representative;
    a merged set takes the labels of its member classes in old label order.
    """

    def __init__(self, old_groups, new_groups, merged, sizes):
        self.n = old_groups.n
        self.old_groups = old_groups
        self.new_groups = new_groups
        self.merged = merged
        self.sizes = sizes

    def __len__(self):
        return self.n

    def __iter__(self):
        merged_members = {
            member for members in self.merged.values() for member in members
        }
        by_total = collections.defaultdict(list)
        for root in sorted(self.merged):
            total = sum(self.sizes[member] for member in self.merged[root])
            by_total[total].append(root)
        old_classes = collections.defaultdict(list)
        for _class_id, start, size in self.old_groups.iter_classes():
            if start not in merged_members:
                old_classes[size].append(start)
        new = 1
        for group in self.new_groups.groups:
            for start in old_classes.pop(group.size, ()):
                for old in range(start, start + group.size):
                    yield old, new
                    new += 1
            for root in by_total.pop(group.size, ()):
                for member in sorted(self.merged[root]):
                    for old in range(member, member + self.sizes[member]):
                        yield old, new
                        new += 1
        assert new == self.n + 1

    def as_array(self):
        """Return the permutation as an array: new label of old label i at
        index i - 1"""
        permutation = np.zeros(self.n, dtype=np.int64)
        for old, new in self:
            permutation[old - 1] = new
        return permutation

    def lines(self):
        """Yield "old<TAB>new" lines"""
        for old, new in self:
            yield "%d\t%d" % (old, new)


@register
class DynEq(EquivalenceStructure):
    """
    Equivalence structure supporting merges

    rebuild_factor: the constant c of the ceil(c * sqrt(n)) rebuild
    threshold (default: option dynamic/rebuild_factor)
    """

    kind = "dynamic"
    FIELDS = ConstEq.FIELDS + (
        "merge_keys",
        "merge_parents",
        "merge_ranks",
        "merge_children",
        "threshold",
        "counter",
        "rebuilds",
    )

    def __init__(self, groups, rebuild_factor=None):
        super().__init__(groups)
        self.base = ConstEq(groups, probes=self.probes)
        if rebuild_factor is None:
            rebuild_factor = CONF.get("dynamic", "rebuild_factor")
        self.__init_merges(rebuild_threshold(self.n, rebuild_factor))

    def __init_merges(self, threshold):
        self.threshold = threshold
        self.merges = {}
        self.counter = 0
        self.rebuilds = 0

    # ---- Static layer
    def static_find(self, x):
        """Return the GroupLocation of x in the current static partition"""
        return self.base.find(x)

    def static_representative(self, x):
        """Return (smallest label, size) of the static class of x"""
        location = self.base.find(x)
        return self.base.class_minimum(location), location.size

    def groups(self):
        return self.base.groups()

    # ---- Merge forest
    def __node(self, rep):
        self.probes.hit()
        return self.merges.get(rep)

    def __root(self, rep):
        """Return the root of rep's tree, compressing the path"""
        root = rep
        node = self.__node(root)
        while node.parent is not None:
            root = node.parent
            node = self.__node(root)
        while rep != root:
            node = self.merges[rep]
            parent = node.parent
            if parent != root:
                self.merges[parent].children -= 1
                self.merges[root].children += 1
                node.parent = root
            rep = parent
        return root

    def find(self, x):
        """Return the Representative of the current class of x"""
        check_label(x, self.n)
        rep, _size = self.static_representative(x)
        if self.__node(rep) is None:
            return Representative(rep)
        return Representative(self.__root(rep))

    def same_class(self, x, y):
        """True iff x and y belong to the same current class"""
        check_label(x, self.n)
        check_label(y, self.n)
        if self.base.same_class(x, y):
            return True
        x_rep, _size = self.static_representative(x)
        y_rep, _size = self.static_representative(y)
        if self.__node(x_rep) is None or self.__node(y_rep) is None:
            return False
        return self.__root(x_rep) == self.__root(y_rep)

    same = same_class

    def union(self, x, y):
        """Merge the classes of x and y; return a MergeReport"""
        if self.same_class(x, y):
            return MergeReport(False, False, None)
        roots = []
        for label in (x, y):
            rep, _size = self.static_representative(label)
            if self.__node(rep) is None:
                self.merges[rep] = _Node()
            roots.append(self.__root(rep))
        high, low = roots
        if self.merges[high].rank < self.merges[low].rank:
            high, low = low, high
        self.merges[low].parent = high
        self.merges[high].children += 1
        if self.merges[high].rank == self.merges[low].rank:
            self.merges[high].rank += 1
        self.counter += 1
        if self.counter >= self.threshold:
            return MergeReport(True, True, self.rebuild())
        return MergeReport(True, False, None)

    def __merged_sets(self):
        """Return ({root: member representatives}, {member: static size})

        Every node is accounted once: the leaf-to-root walks stop adding
        members at the first node already visited."""
        members = collections.defaultdict(list)
        sizes = {}
        for rep, node in list(self.merges.items()):
            if not node.leaf:
                continue
            path = []
            current = rep
            while current is not None and not self.merges[current].visited:
                self.merges[current].visited = True
                path.append(current)
                current = self.merges[current].parent
            root = path[-1] if current is None else self.__root(current)
            for member in path:
                location = self.base.find(member)
                sizes[member] = location.size
                members[root].append(member)
        for node in self.merges.values():
            node.visited = False
        return dict(members), sizes

    def class_sizes(self):
        """Return the multiset of current class sizes as a Counter"""
        counts = collections.Counter()
        for group in self.base.groups().groups:
            counts[group.size] += group.count
        merged, sizes = self.__merged_sets()
        for root, members in merged.items():
            for member in members:
                counts[sizes[member]] -= 1
            counts[sum(sizes[member] for member in members)] += 1
        return +counts

    def rebuild(self):
        """Rebuild the static layer over the current partition and return
        the RelabelEvent of the new labels"""
        old_groups = self.base.groups()
        merged, sizes = self.__merged_sets()
        counts = collections.Counter()
        for group in old_groups.groups:
            counts[group.size] += group.count
        for members in merged.values():
            for member in members:
                counts[sizes[member]] -= 1
            counts[sum(sizes[member] for member in members)] += 1
        new_groups = GroupSequence(
            radix_sort_groups((size, count) for size, count in counts.items() if count > 0)
        )
        self.base = ConstEq(new_groups, probes=self.probes)
        self.k = new_groups.k
        logger.debug(
            "rebuilt after %d merges: %d groups, %d merged sets",
            self.counter,
            new_groups.k,
            len(merged),
        )
        self.merges = {}
        self.counter = 0
        self.rebuilds += 1
        return RelabelEvent(old_groups, new_groups, merged, sizes)

    # ---- Space accounting
    def merge_entry_bits(self):
        """Return the size of one merge dictionary entry: key, parent and
        children count on lg n bits each, rank on lg lg n bits"""
        return 3 * bit_width(self.n) + bit_width(bit_width(self.n))

    def _space_fields(self):
        return self.base._space_fields() + [
            ("merges", len(self.merges) * self.merge_entry_bits()),
            ("threshold", bit_width(self.threshold)),
            ("counter", bit_width(self.threshold)),
        ]

    # ---- Serialization
    def stored_fields(self):
        fields = self.base.stored_fields()
        keys = sorted(self.merges)
        nodes = [self.merges[key] for key in keys]
        fields["merge_keys"] = np.asarray(keys, dtype=np.int64)
        fields["merge_parents"] = np.asarray(
            [0 if node.parent is None else node.parent for node in nodes], dtype=np.int64
        )
        fields["merge_ranks"] = np.asarray([node.rank for node in nodes], dtype=np.int64)
        fields["merge_children"] = np.asarray([node.children for node in nodes], dtype=np.int64)
        fields["threshold"] = self.threshold
        fields["counter"] = self.counter
        fields["rebuilds"] = self.rebuilds
        return fields

    @classmethod
    def from_fields(cls, n, k, fields):
        self = cls.__new__(cls)
        self._init_restored(n, k)
        self.base = ConstEq.from_fields(n, k, fields, probes=self.probes)
        threshold = int(fields["threshold"])
        if threshold < 1:
            raise InvalidInputError("dynamic structure: rebuild threshold must be positive")
        self.__init_merges(threshold)
        for key, parent, rank, children in zip(
            fields["merge_keys"].tolist(),
            fields["merge_parents"].tolist(),
            fields["merge_ranks"].tolist(),
            fields["merge_children"].tolist(),
        ):
            self.merges[key] = _Node(parent or None, rank, children)
        self.counter = int(fields["counter"])
        self.rebuilds = int(fields["rebuilds"])
        return self


def build_dynamic(groups, rebuild_factor=None):
    return DynEq(groups, rebuild_factor=rebuild_factor)
