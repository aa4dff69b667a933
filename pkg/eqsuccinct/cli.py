# -*- coding: utf-8 -*-
#
# Copyright © 2024 eqsuccinct developers
# Licensed under the terms of the MIT License
# (see eqsuccinct/__init__.py for details)

"""
cli
---

The ``eqsuccinct.cli`` module provides the ``eqsuccinct`` command::

    eqsuccinct build INPUT --kind KIND --out FILE
    eqsuccinct query STRUCTURE [PAIRS]
    eqsuccinct stats STRUCTURE
    eqsuccinct bench INPUT --kind KIND [--ops N] [--seed S] [--union-ratio R]

INPUT is a class-size file or an edge list (see :py:mod:`eqsuccinct.ingest`).
Machine-readable records are printed on standard output as single-line JSON
documents; log messages go to standard error.

Exit status: 0 on success, 1 on usage errors, 2 on invalid input (parse
errors, corrupt containers, unknown ids) and 3 on I/O errors.
"""

import argparse
import logging
import math
import sys
import zlib

import numpy as np

import eqsuccinct
from eqsuccinct.binio import read_structure, write_structure
from eqsuccinct.config import CONF
from eqsuccinct.dataset.dataitems import (
    ChoiceItem,
    DictItem,
    FileOpenItem,
    FileSaveItem,
    FloatItem,
    IntItem,
    StringItem,
)
from eqsuccinct.dataset.datatypes import DataSet
from eqsuccinct.ingest import UserLabelMap, load_input
from eqsuccinct.instrument import ProbeHistogram
from eqsuccinct.jsonio import dataset_to_json_line
from eqsuccinct.labeling import assign_bit_labels, label_export_lines
from eqsuccinct.partition import info_lower_bound_bits, normalize
from eqsuccinct.structures import STRUCTURE_CLASSES, build_structure
from eqsuccinct.utils import (
    CorruptFileError,
    InvalidInputError,
    Timer,
    update_dataset,
)

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_IO = 0, 1, 2, 3

STRUCTURE_KINDS = list(STRUCTURE_CLASSES)
BUILD_KINDS = STRUCTURE_KINDS + ["labels"]


# ==============================================================================
# Parameter sets
# ==============================================================================
class BuildParameters(DataSet):
    """Build parameters"""

    input = FileOpenItem(
        "Input", formats=["txt"], check=False, help="class-size file or edge list"
    )
    kind = ChoiceItem(
        "Kind", [(kind, kind) for kind in BUILD_KINDS], help="structure kind"
    )
    out = FileSaveItem("Output", help="output file")


class QueryParameters(DataSet):
    """Query parameters"""

    structure = FileOpenItem(
        "Structure", formats=["eqs"], check=False, help="structure file"
    )
    pairs = StringItem(
        "Pairs",
        default="-",
        notempty=True,
        help="file of 'x y' pairs, '-' for standard input",
    )


class StatsParameters(DataSet):
    """Stats parameters"""

    structure = FileOpenItem(
        "Structure", formats=["eqs"], check=False, help="structure file"
    )


class BenchParameters(DataSet):
    """Benchmark parameters"""

    input = FileOpenItem(
        "Input", formats=["txt"], check=False, help="class-size file or edge list"
    )
    kind = ChoiceItem(
        "Kind", [(kind, kind) for kind in STRUCTURE_KINDS], help="structure kind"
    )
    ops = IntItem("Operations", default=100000, min=0, help="number of operations")
    seed = IntItem("Seed", default=0, min=0, help="random seed")
    union_ratio = FloatItem(
        "Union ratio",
        default=0.5,
        min=0.0,
        max=1.0,
        help="fraction of union operations (dynamic kind)",
    )


# ==============================================================================
# Summaries
# ==============================================================================
class BuildSummary(DataSet):
    """Build summary"""

    kind = StringItem("Kind")
    n = IntItem("Elements")
    c = IntItem("Classes")
    k = IntItem("Groups")
    bits = IntItem("Size", unit="bits")
    info_lower_bound_bits = IntItem("Information bound", unit="bits")
    ratio = FloatItem("Ratio")


class StatsSummary(DataSet):
    """Space report"""

    kind = StringItem("Kind")
    n = IntItem("Elements")
    k = IntItem("Groups")
    fields = DictItem("Fields")
    total = IntItem("Total", unit="bits")
    info_lower_bound_bits = IntItem("Information bound", unit="bits")
    per_sqrt_n = FloatItem("Total / sqrt(n)")
    per_sqrt_n_lg_n = FloatItem("Total / (sqrt(n) lg n)")
    ratio = FloatItem("Ratio")
    user_map_bits = IntItem("User map", unit="bits")


class BenchSummary(DataSet):
    """Benchmark summary"""

    kind = StringItem("Kind")
    n = IntItem("Elements")
    ops = IntItem("Operations")
    queries = IntItem("Queries")
    unions = IntItem("Unions")
    merges = IntItem("Effective merges")
    rebuilds = IntItem("Rebuilds")
    probes_max = IntItem("Maximum probes")
    probes_mean = FloatItem("Mean probes")
    probes_p99 = IntItem("99th percentile probes")
    probe_counts = DictItem("Probe histogram")
    checksum = IntItem("Checksum")
    elapsed = FloatItem("Elapsed time", unit="s")
    throughput = FloatItem("Throughput", unit="ops/s")


def _ratio(bits, bound):
    return float(bits) / max(1, bound)


# ==============================================================================
# Commands
# ==============================================================================
def cmd_build(input, kind, out):
    """Build a structure (or bit labels) from an input file"""
    data = load_input(input)
    groups = normalize(data.sizes)
    summary = BuildSummary()
    if kind == "labels":
        labels = assign_bit_labels(data.sizes)
        with open(out, "w", encoding="utf-8") as fdesc:
            for line in label_export_lines(labels, data.user_map.to_user.tolist()):
                fdesc.write(line + "\n")
        bits = sum(len(label) for label in labels)
    else:
        structure = build_structure(kind, groups)
        write_structure(out, structure, data.user_map)
        bits = structure.space_bits()
    bound = info_lower_bound_bits(groups.n)
    update_dataset(
        summary,
        dict(
            kind=kind,
            n=groups.n,
            c=groups.c,
            k=groups.k,
            bits=bits,
            info_lower_bound_bits=bound,
            ratio=_ratio(bits, bound),
        ),
    )
    logger.info("%s: %s structure, %d bits", out, kind, bits)
    print(dataset_to_json_line(summary))
    return EXIT_OK


def _open_pairs(pairs):
    if pairs == "-":
        return sys.stdin
    return open(pairs, "r", encoding="utf-8")


def cmd_query(structure, pairs):
    """Answer "x y" queries (user ids) against a stored structure"""
    eq, user_map = read_structure(structure)
    if user_map is None:
        user_map = UserLabelMap.identity(eq.n)
    status = EXIT_OK
    fdesc = _open_pairs(pairs)
    try:
        for line in fdesc:
            tokens = line.split("#", 1)[0].split()
            if not tokens:
                continue
            text = " ".join(tokens)
            try:
                if len(tokens) != 2:
                    raise InvalidInputError("expected two ids")
                try:
                    x, y = [int(token) for token in tokens]
                except ValueError:
                    raise InvalidInputError("ids must be integers")
                answer = eq.same_class(user_map.label(x), user_map.label(y))
            except InvalidInputError as exc:
                print("%s error: %s" % (text, exc))
                status = EXIT_INPUT
                continue
            print("%s %d" % (text, int(answer)))
    finally:
        if fdesc is not sys.stdin:
            fdesc.close()
    return status


def cmd_stats(structure):
    """Report the exact space of a stored structure"""
    eq, user_map = read_structure(structure)
    fields = eq.space_fields()
    total = sum(fields.values())
    bound = info_lower_bound_bits(eq.n)
    sqrt_n = math.sqrt(eq.n)
    summary = StatsSummary()
    update_dataset(
        summary,
        dict(
            kind=eq.kind,
            n=eq.n,
            k=eq.k,
            fields=dict(fields),
            total=total,
            info_lower_bound_bits=bound,
            per_sqrt_n=total / sqrt_n,
            per_sqrt_n_lg_n=total / (sqrt_n * max(1.0, math.log2(eq.n))),
            ratio=_ratio(total, bound),
            user_map_bits=0 if user_map is None else user_map.space_bits(),
        ),
    )
    print(dataset_to_json_line(summary))
    return EXIT_OK


def cmd_bench(input, kind, ops, seed, union_ratio=None):
    """Run seeded random operations against a freshly built structure"""
    if union_ratio is None:
        union_ratio = CONF.get("bench", "union_ratio")
    data = load_input(input)
    user_map = data.user_map
    eq = build_structure(kind, normalize(data.sizes))
    rng = np.random.default_rng(seed)
    users = rng.integers(0, eq.n, size=(ops, 2)).tolist()
    if kind == "dynamic":
        unions = (rng.random(ops) < union_ratio).tolist()
    else:
        unions = [False] * ops
    histogram = ProbeHistogram()
    answers = bytearray()
    merges = rebuilds = 0
    timer = Timer()
    timer.tic("bench")
    for (u, v), is_union in zip(users, unions):
        x, y = user_map.label(u), user_map.label(v)
        with eq.probes.measure() as probes:
            if is_union:
                report = eq.union(x, y)
                answer = report.merged
            else:
                answer = eq.same_class(x, y)
        histogram.add(probes[0])
        answers.append(int(answer))
        if is_union and report.merged:
            merges += 1
            if report.rebuilt:
                rebuilds += 1
                user_map.apply(report.relabel)
    elapsed = timer.toc("bench")
    summary = BenchSummary()
    update_dataset(
        summary,
        dict(
            kind=kind,
            n=eq.n,
            ops=ops,
            queries=ops - sum(unions),
            unions=sum(unions),
            merges=merges,
            rebuilds=rebuilds,
            probes_max=histogram.max,
            probes_mean=histogram.mean,
            probes_p99=histogram.percentile(99),
            probe_counts=histogram.as_dict(),
            checksum=zlib.crc32(bytes(answers)),
            elapsed=elapsed,
            throughput=ops / elapsed if elapsed > 0 else 0.0,
        ),
    )
    logger.info("%d operations in %.3f s", ops, elapsed)
    print(dataset_to_json_line(summary))
    return EXIT_OK


# ==============================================================================
# Entry point
# ==============================================================================
class ArgumentParser(argparse.ArgumentParser):
    """Argument parser exiting with the usage status"""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, "%s: error: %s\n" % (self.prog, message))


def item_help(dataset, name):
    """Return the command line help of a parameter item"""
    return getattr(dataset, name).get_help(None)


def build_parser():
    parser = ArgumentParser(
        prog="eqsuccinct", description="Succinct equivalence class structures"
    )
    parser.add_argument(
        "--version", action="version", version="%(prog)s " + eqsuccinct.__version__
    )
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", help="debug output")
    verbosity.add_argument("-q", "--quiet", action="store_true", help="warnings only")
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND")
    subparsers.required = True

    P = BuildParameters
    build = subparsers.add_parser("build", help="build a structure from an input file")
    build.add_argument("input", help=item_help(P, "input"))
    build.add_argument("--kind", required=True, help=item_help(P, "kind"))
    build.add_argument("--out", required=True, help=item_help(P, "out"))
    build.set_defaults(dataset=P, func=cmd_build)

    P = QueryParameters
    query = subparsers.add_parser("query", help="answer queries from a structure file")
    query.add_argument("structure", help=item_help(P, "structure"))
    query.add_argument("pairs", nargs="?", help=item_help(P, "pairs"))
    query.set_defaults(dataset=P, func=cmd_query)

    P = StatsParameters
    stats = subparsers.add_parser("stats", help="report the space of a structure file")
    stats.add_argument("structure", help=item_help(P, "structure"))
    stats.set_defaults(dataset=P, func=cmd_stats)

    P = BenchParameters
    bench = subparsers.add_parser("bench", help="benchmark random operations")
    bench.add_argument("input", help=item_help(P, "input"))
    bench.add_argument("--kind", required=True, help=item_help(P, "kind"))
    bench.add_argument("--ops", type=int, help=item_help(P, "ops"))
    bench.add_argument("--seed", type=int, help=item_help(P, "seed"))
    bench.add_argument(
        "--union-ratio", dest="union_ratio", type=float, help=item_help(P, "union_ratio")
    )
    bench.set_defaults(dataset=P, func=cmd_bench)
    return parser


def make_parameters(args):
    """Return the parameter DataSet of a parsed command line

    Options of the configuration section named after the command (if any)
    override the item defaults; command line values override both."""
    params = args.dataset()
    params.read_config(CONF, args.command, None)
    update_dataset(params, args)
    return params


def main(argv=None):
    """Run the eqsuccinct command and return its exit status"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    level = logging.INFO
    if args.verbose:
        level = logging.DEBUG
    elif args.quiet:
        level = logging.WARNING
    logging.basicConfig(
        level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s"
    )
    CONF.set_application("eqsuccinct", eqsuccinct.__version__)
    params = make_parameters(args)
    errors = params.check()
    if errors:
        logger.error("invalid parameter(s): %s", ", ".join(errors))
        return EXIT_USAGE
    logger.debug("%s", params.to_string(debug=True))
    try:
        return args.func(**params.as_dict())
    except (InvalidInputError, CorruptFileError) as exc:
        logger.error("%s", exc)
        return EXIT_INPUT
    except OSError as exc:
        logger.error("%s", exc)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
