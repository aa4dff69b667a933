# -*- coding: utf-8 -*-
#
# Copyright © 2024 eqsuccinct developers
# Licensed under the terms of the MIT License
# (see eqsuccinct/__init__.py for details)

"""Command line test: build, query, stats and bench subcommands"""

SHOW = False

import collections
import contextlib
import io
import json
import os.path as osp
import tempfile
import unittest
from unittest import mock

import numpy as np

import eqsuccinct
from eqsuccinct.binio import write_structure
from eqsuccinct.cli import (
    EXIT_INPUT,
    EXIT_IO,
    EXIT_OK,
    EXIT_USAGE,
    BUILD_KINDS,
    STRUCTURE_KINDS,
    BenchParameters,
    BuildParameters,
    build_parser,
    item_help,
    main,
    make_parameters,
)
from eqsuccinct.config import CONF, DEFAULTS
from eqsuccinct.partition import info_lower_bound_bits, normalize
from eqsuccinct.structures import build_const


class CommandTestCase(unittest.TestCase):
    def setUp(self):
        self.tmpdir = tempfile.TemporaryDirectory()
        self.sizes = self.write("sizes.txt", "# n = 9\n1\n1\n2\n5\n")
        self.edges = self.write("edges.txt", "5 2\n3 4\n0 2\n")

    def tearDown(self):
        self.tmpdir.cleanup()

    def path(self, name):
        return osp.join(self.tmpdir.name, name)

    def write(self, name, text):
        filename = self.path(name)
        with open(filename, "w", encoding="utf-8") as fdesc:
            fdesc.write(text)
        return filename

    def run_main(self, *argv, stdin=None):
        """Return (exit status, standard output lines)"""
        output = io.StringIO()
        with contextlib.redirect_stdout(output):
            if stdin is None:
                status = main(["-q"] + list(argv))
            else:
                with mock.patch("sys.stdin", io.StringIO(stdin)):
                    status = main(["-q"] + list(argv))
        return status, output.getvalue().splitlines()

    def build(self, source, kind, name="structure.eqs"):
        out = self.path(name)
        status, lines = self.run_main("build", source, "--kind", kind, "--out", out)
        self.assertEqual(status, EXIT_OK)
        return out, json.loads(lines[-1])


class TestBuild(CommandTestCase):
    def test_build_kinds(self):
        for kind in ("compact", "fast", "const", "dynamic"):
            out, summary = self.build(self.sizes, kind)
            self.assertTrue(osp.isfile(out))
            self.assertEqual(summary["kind"], kind)
            self.assertEqual((summary["n"], summary["c"], summary["k"]), (9, 4, 3))
            self.assertEqual(summary["info_lower_bound_bits"], info_lower_bound_bits(9))
            self.assertAlmostEqual(summary["ratio"], summary["bits"] / 5)

    def test_build_labels(self):
        out, summary = self.build(self.edges, "labels", "labels.txt")
        with open(out, encoding="utf-8") as fdesc:
            lines = fdesc.read().splitlines()
        self.assertEqual(len(lines), 5)
        ids = sorted(int(line.split("\t")[0]) for line in lines)
        self.assertEqual(ids, [0, 1, 2, 3, 4])
        labels = dict(line.split("\t") for line in lines)
        self.assertEqual(summary["bits"], sum(len(bits) for bits in labels.values()))
        self.assertEqual(len(set(labels.values())), 5)


class TestQuery(CommandTestCase):
    def test_sizes(self):
        out, _summary = self.build(self.sizes, "const")
        pairs = self.write("pairs.txt", "2 3\n4 8\n\n# comment\n0 1\n")
        status, lines = self.run_main("query", out, pairs)
        self.assertEqual(status, EXIT_OK)
        self.assertEqual(lines, ["2 3 1", "4 8 1", "0 1 0"])

    def test_edges_stdin(self):
        out, _summary = self.build(self.edges, "fast")
        status, lines = self.run_main("query", out, stdin="0 2\n1 3\n3 4\n2 3\n")
        self.assertEqual(status, EXIT_OK)
        self.assertEqual(lines, ["0 2 1", "1 3 0", "3 4 1", "2 3 0"])

    def test_errors(self):
        out, _summary = self.build(self.sizes, "compact")
        status, lines = self.run_main("query", out, stdin="0 9\na b\n1 2 3\n2 3\n")
        self.assertEqual(status, EXIT_INPUT)
        self.assertEqual(len(lines), 4)
        self.assertTrue(lines[0].startswith("0 9 error:"))
        self.assertIn("unknown id", lines[0])
        self.assertTrue(lines[1].startswith("a b error:"))
        self.assertTrue(lines[2].startswith("1 2 3 error:"))
        self.assertEqual(lines[3], "2 3 1")


class TestStats(CommandTestCase):
    def test_stats(self):
        out, built = self.build(self.sizes, "compact")
        status, lines = self.run_main("stats", out)
        self.assertEqual(status, EXIT_OK)
        summary = json.loads(lines[-1])
        self.assertEqual(summary["kind"], "compact")
        self.assertEqual(summary["total"], built["bits"])
        self.assertEqual(summary["total"], sum(summary["fields"].values()))
        self.assertIn("header", summary["fields"])
        self.assertEqual(summary["user_map_bits"], 2 * 9 * 4)
        self.assertAlmostEqual(summary["per_sqrt_n"], summary["total"] / 3.0)

    def test_ratio_every_kind(self):
        for source in (self.sizes, self.edges):
            for kind in STRUCTURE_KINDS:
                out, _built = self.build(source, kind)
                status, lines = self.run_main("stats", out)
                self.assertEqual(status, EXIT_OK)
                summary = json.loads(lines[-1])
                self.assertGreater(summary["ratio"], 1.0, (source, kind))
                self.assertAlmostEqual(
                    summary["ratio"], summary["total"] / summary["info_lower_bound_bits"]
                )


class TestBench(CommandTestCase):
    def bench(self, source, kind, *options):
        status, lines = self.run_main("bench", source, "--kind", kind, *options)
        self.assertEqual(status, EXIT_OK)
        summary = json.loads(lines[-1])
        for name in ("elapsed", "throughput"):
            del summary[name]
        return summary

    def test_static(self):
        summary = self.bench(self.sizes, "const", "--ops", "300", "--seed", "3")
        self.assertEqual((summary["ops"], summary["queries"], summary["unions"]), (300, 300, 0))
        self.assertEqual(summary["rebuilds"], 0)
        self.assertLessEqual(summary["probes_max"], 19)
        self.assertEqual(sum(summary["probe_counts"].values()), 300)
        self.assertEqual(summary, self.bench(self.sizes, "const", "--ops", "300", "--seed", "3"))

    def test_dynamic(self):
        singletons = self.write("singletons.txt", "1\n" * 50)
        summary = self.bench(singletons, "dynamic", "--ops", "400", "--seed", "5")
        self.assertEqual(summary["queries"] + summary["unions"], 400)
        self.assertGreater(summary["unions"], 0)
        self.assertGreaterEqual(summary["rebuilds"], 1)
        self.assertLessEqual(summary["merges"], 49)
        self.assertEqual(summary, self.bench(singletons, "dynamic", "--ops", "400", "--seed", "5"))
        other = self.bench(singletons, "dynamic", "--ops", "400", "--seed", "6")
        self.assertNotEqual(summary["checksum"], other["checksum"])

    def test_union_ratio(self):
        singletons = self.write("singletons.txt", "1\n" * 50)
        summary = self.bench(singletons, "dynamic", "--ops", "200", "--union-ratio", "0")
        self.assertEqual((summary["queries"], summary["unions"]), (200, 0))
        self.assertEqual(summary["rebuilds"], 0)
        summary = self.bench(singletons, "dynamic", "--ops", "200", "--union-ratio", "1")
        self.assertEqual((summary["queries"], summary["unions"]), (0, 200))


class TestEndToEnd(CommandTestCase):
    def components(self, n, edges):
        """Return the component (smallest vertex) of every vertex by BFS"""
        adjacency = collections.defaultdict(list)
        for u, v in edges:
            adjacency[u].append(v)
            adjacency[v].append(u)
        component = {}
        for start in range(n):
            if start in component:
                continue
            component[start] = start
            queue = collections.deque([start])
            while queue:
                for v in adjacency[queue.popleft()]:
                    if v not in component:
                        component[v] = start
                        queue.append(v)
        return component

    def test_edge_list_queries(self):
        rng = np.random.default_rng(40)
        n, m = 60, 45
        edges = rng.integers(0, n, size=(m, 2)).tolist()
        graph = self.write(
            "graph.txt", "%d %d\n" % (n, m) + "".join("%d %d\n" % (u, v) for u, v in edges)
        )
        component = self.components(n, edges)
        pairs = [(u, v) for u in range(n) for v in range(n)]
        pairs_file = self.write("pairs.txt", "".join("%d %d\n" % pair for pair in pairs))
        expected = ["%d %d %d" % (u, v, component[u] == component[v]) for u, v in pairs]
        for kind in STRUCTURE_KINDS:
            out, summary = self.build(graph, kind, "%s.eqs" % kind)
            self.assertEqual(summary["c"], len(set(component.values())))
            status, lines = self.run_main("query", out, pairs_file)
            self.assertEqual(status, EXIT_OK)
            self.assertEqual(lines, expected, kind)


class TestExitStatus(CommandTestCase):
    def test_usage(self):
        self.assertEqual(self.run_main()[0], EXIT_USAGE)
        self.assertEqual(self.run_main("build", self.sizes)[0], EXIT_USAGE)
        status, _lines = self.run_main("build", self.sizes, "--kind", "nope", "--out", "x")
        self.assertEqual(status, EXIT_USAGE)
        status, _lines = self.run_main("bench", self.sizes, "--kind", "fast", "--ops", "-1")
        self.assertEqual(status, EXIT_USAGE)
        status, _lines = self.run_main(
            "bench", self.sizes, "--kind", "dynamic", "--union-ratio", "1.5"
        )
        self.assertEqual(status, EXIT_USAGE)

    def test_help(self):
        self.assertEqual(item_help(BenchParameters, "seed"), "random seed (integer higher than 0)")
        self.assertEqual(
            item_help(BuildParameters, "kind"),
            "structure kind (one of %s)" % ", ".join(BUILD_KINDS),
        )
        self.assertEqual(
            item_help(BuildParameters, "out"), "output file (all file types)"
        )

    def test_version(self):
        status, lines = self.run_main("--version")
        self.assertEqual(status, EXIT_OK)
        self.assertIn(eqsuccinct.__version__, lines[0])

    def test_input_errors(self):
        bad = self.write("bad.txt", "1\n0\n")
        out = self.path("bad.eqs")
        status, _lines = self.run_main("build", bad, "--kind", "fast", "--out", out)
        self.assertEqual(status, EXIT_INPUT)
        corrupt = self.write("corrupt.eqs", "not a structure")
        self.assertEqual(self.run_main("stats", corrupt)[0], EXIT_INPUT)
        const = build_const(normalize([1, 1, 2, 5]))
        const.A = const.A + 1
        tampered = self.path("tampered.eqs")
        write_structure(tampered, const)
        self.assertEqual(self.run_main("query", tampered, stdin="1 2\n")[0], EXIT_INPUT)
        self.assertEqual(self.run_main("stats", tampered)[0], EXIT_INPUT)

    def test_io_errors(self):
        missing = self.path("missing.txt")
        status, _lines = self.run_main("build", missing, "--kind", "fast", "--out", "x.eqs")
        self.assertEqual(status, EXIT_IO)
        out = self.path(osp.join("no", "such", "dir.eqs"))
        status, _lines = self.run_main("build", self.sizes, "--kind", "fast", "--out", out)
        self.assertEqual(status, EXIT_IO)
        self.assertEqual(self.run_main("stats", self.path("missing.eqs"))[0], EXIT_IO)


class TestConfiguration(CommandTestCase):
    def test_bench_section(self):
        CONF.set("bench", "seed", 11)
        self.addCleanup(CONF.set, "bench", "seed", DEFAULTS["bench"]["seed"])
        parser = build_parser()
        args = parser.parse_args(["bench", self.sizes, "--kind", "fast"])
        params = make_parameters(args)
        self.assertEqual((params.seed, params.ops), (11, CONF.get("bench", "ops")))
        self.assertEqual((params.input, params.kind), (self.sizes, "fast"))
        args = parser.parse_args(["bench", self.sizes, "--kind", "fast", "--seed", "3"])
        self.assertEqual(make_parameters(args).seed, 3)

    def test_missing_section(self):
        args = build_parser().parse_args(["stats", self.sizes])
        self.assertEqual(make_parameters(args).structure, self.sizes)


if __name__ == "__main__":
    unittest.main()
