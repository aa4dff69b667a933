# -*- coding: utf-8 -*-
#
# Copyright © 2024 eqsuccinct developers
# Licensed under the terms of the MIT License
# (see eqsuccinct/__init__.py for details)

"""
ingest
------

The ``eqsuccinct.ingest`` module reads partitions from text files and keeps
the mapping between user element ids and structure labels.

Two input formats are supported, both whitespace separated, with blank
lines and ``#`` comments ignored:

* class-size files: one positive integer per line; the elements of the
  partition are numbered ``0..n-1`` in canonical label order, so user id
  ``u`` has label ``u + 1``
* edge lists: a ``n m`` header followed by ``m`` lines ``u v`` (vertices
  ``0..n-1``); classes are the connected components. Components of one
  size are laid out by smallest vertex id, vertices of a component by id.
"""

import collections
import logging

import numpy as np

from eqsuccinct.partition import ClassSizes, OracleUnionFind, normalize
from eqsuccinct.utils import InvalidInputError, ParseError

logger = logging.getLogger(__name__)

InputData = collections.namedtuple("InputData", ("sizes", "user_map", "format"))


def _meaningful_lines(filename):
    """Yield (line number, tokens) of non blank, non comment lines"""
    with open(filename, "r", encoding="utf-8") as fdesc:
        for lineno, line in enumerate(fdesc, 1):
            tokens = line.split("#", 1)[0].split()
            if tokens:
                yield lineno, tokens


def _integers(tokens, count, filename, lineno):
    if len(tokens) != count:
        raise ParseError(
            "expected %d integer(s), got %d field(s)" % (count, len(tokens)), filename, lineno
        )
    try:
        return [int(token) for token in tokens]
    except ValueError:
        raise ParseError("invalid integer in %r" % " ".join(tokens), filename, lineno)


def read_class_sizes(filename):
    """Return the ClassSizes of a class-size file"""
    sizes = []
    for lineno, tokens in _meaningful_lines(filename):
        (size,) = _integers(tokens, 1, filename, lineno)
        if size < 1:
            raise ParseError("class sizes must be positive (got %d)" % size, filename, lineno)
        sizes.append(size)
    if not sizes:
        raise ParseError("no class sizes", filename)
    return ClassSizes(sizes)


class EdgeListGraph(object):
    """Undirected graph over vertices 0..n-1 (self loops allowed)"""

    def __init__(self, n, edges=()):
        if n < 1:
            raise InvalidInputError("a graph needs at least one vertex")
        self.n = n
        self.edges = []
        for u, v in edges:
            self.add_edge(u, v)

    def add_edge(self, u, v):
        for vertex in (u, v):
            if not 0 <= vertex < self.n:
                raise InvalidInputError("vertex %r outside of [0, %d)" % (vertex, self.n))
        self.edges.append((u, v))

    def components(self):
        """Return the OracleUnionFind of the connected components"""
        forest = OracleUnionFind(self.n)
        for u, v in self.edges:
            forest.union(u, v)
        return forest


def read_edge_list(filename):
    """Return the EdgeListGraph of an edge list file"""
    lines = _meaningful_lines(filename)
    try:
        lineno, tokens = next(lines)
    except StopIteration:
        raise ParseError("missing 'n m' header", filename, 1)
    n, m = _integers(tokens, 2, filename, lineno)
    if n < 1 or m < 0:
        raise ParseError("invalid header %d %d" % (n, m), filename, lineno)
    graph = EdgeListGraph(n)
    for lineno, tokens in lines:
        if len(graph.edges) == m:
            raise ParseError("more than %d edges" % m, filename, lineno)
        u, v = _integers(tokens, 2, filename, lineno)
        try:
            graph.add_edge(u, v)
        except InvalidInputError as exc:
            raise ParseError(str(exc), filename, lineno)
    if len(graph.edges) != m:
        raise ParseError("expected %d edges, got %d" % (m, len(graph.edges)), filename)
    return graph


def component_layout(graph):
    """Return (ClassSizes in label order, UserLabelMap) of the connected
    components of a graph"""
    roots = graph.components().roots()
    _roots, first, inverse, counts = np.unique(
        roots, return_index=True, return_inverse=True, return_counts=True
    )
    groups = normalize(counts.tolist())
    group_rank = {group.size: rank for rank, group in enumerate(groups.groups)}
    sizes = counts[inverse]
    ranks = np.asarray([group_rank[size] for size in counts.tolist()], dtype=np.int64)[inverse]
    vertices = np.arange(graph.n, dtype=np.int64)
    order = np.lexsort((vertices, first[inverse], ranks))
    to_label = np.empty(graph.n, dtype=np.int64)
    to_label[order] = np.arange(1, graph.n + 1, dtype=np.int64)
    logger.debug(
        "%d vertices, %d edges: %d components, largest %d",
        graph.n,
        len(graph.edges),
        len(counts),
        int(sizes.max()),
    )
    return groups.class_sizes(), UserLabelMap(to_label)


def ingest_edge_list(filename):
    """Return (ClassSizes, UserLabelMap) of the components of an edge list"""
    return component_layout(read_edge_list(filename))


def detect_format(filename):
    """Return "edges" or "sizes" from the first meaningful line"""
    for lineno, tokens in _meaningful_lines(filename):
        if len(tokens) == 2:
            return "edges"
        if len(tokens) == 1:
            return "sizes"
        raise ParseError("cannot detect the input format", filename, lineno)
    raise ParseError("empty input", filename)


def load_input(filename):
    """Read a class-size file or an edge list; return an InputData"""
    kind = detect_format(filename)
    if kind == "edges":
        sizes, user_map = ingest_edge_list(filename)
    else:
        sizes = normalize(read_class_sizes(filename)).class_sizes()
        user_map = UserLabelMap.identity(sizes.n)
    logger.info("%s: %s input, n=%d, %d classes", filename, kind, sizes.n, sizes.c)
    return InputData(sizes, user_map, kind)


class UserLabelMap(object):
    """
    Bijection between user ids 0..n-1 and labels 1..n

    to_label: array holding the label of every user id
    """

    def __init__(self, to_label):
        self.to_label = np.asarray(to_label, dtype=np.int64)
        self.__update_inverse()
        self.check()

    @classmethod
    def identity(cls, n):
        return cls(np.arange(1, n + 1, dtype=np.int64))

    def __update_inverse(self):
        self.to_user = np.zeros(len(self.to_label), dtype=np.int64)
        inside = (self.to_label >= 1) & (self.to_label <= len(self.to_label))
        self.to_user[self.to_label[inside] - 1] = np.flatnonzero(inside)

    @property
    def n(self):
        return len(self.to_label)

    def __len__(self):
        return self.n

    def check(self):
        """Raise InvalidInputError unless the map is a bijection"""
        expected = np.arange(1, self.n + 1, dtype=np.int64)
        if not np.array_equal(np.sort(self.to_label), expected):
            raise InvalidInputError("user map is not a bijection onto [1, %d]" % self.n)
        if not np.array_equal(self.to_label[self.to_user], expected):
            raise InvalidInputError("user map inverse is inconsistent")

    def label(self, user):
        """Return the label of a user id"""
        if not 0 <= user < self.n:
            raise InvalidInputError("unknown id %r" % (user,))
        return int(self.to_label[user])

    def user(self, label):
        """Return the user id of a label"""
        if not 1 <= label <= self.n:
            raise InvalidInputError("unknown label %r" % (label,))
        return int(self.to_user[label - 1])

    def apply(self, relabel):
        """Follow a RelabelEvent (or an old-to-new permutation array)"""
        permutation = relabel.as_array() if hasattr(relabel, "as_array") else relabel
        self.to_label = np.asarray(permutation, dtype=np.int64)[self.to_label - 1]
        self.__update_inverse()

    def space_bits(self):
        """Return the size of both directions (not part of the structure)"""
        return 2 * self.n * int(self.n).bit_length()

    def serialize(self, writer):
        writer.write(self.to_label, "to_label")

    def deserialize(self, reader):
        self.to_label = np.asarray(reader.read("to_label"), dtype=np.int64)
        self.__update_inverse()
        self.check()
