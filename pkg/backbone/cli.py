# -*- coding: utf-8 -*-
"""
Command line front end, installed as `backbone`.

    backbone sweep     --input F | --generate SPEC  --methods re,ld,local:js --ratios 0.1:1.0:0.05 --out DIR
    backbone correlate --input F [F ...] --tags tri,js,local:ad --out FILE
    backbone seir      --input F --method ld --ratio 0.2 --p 0.1 --latency 2 --infectious 9 --runs 50 --out FILE
    backbone stats     F [F ...]
    backbone sparsify  --input F --method local:js --ratio 0.3 --out FILE
    backbone generate  SPEC --out FILE [--truth FILE]

SPEC is "communities=10,size=100,p_in=0.3,p_out=0.01[,seed=4]". The worker
count comes from --workers, else the BACKBONE_WORKERS environment variable,
else 1. Exit status is 2 for usage errors and unknown methods, 1 for
unreadable or malformed input.
"""
import argparse
import logging
from typing import List, Optional, Sequence

import numpy as np
import pandas as pd

from .analysis import network_statistics
from .correlation import average_correlation_matrices, score_correlation_matrix
from .epidemics import SeirParams, run_seir, side_by_side
from .errors import BackboneError, InvalidParameterError, MalformedInputError
from .generators import PlantedPartitionSpec, generate_planted_partition
from .graph import load_edge_list, write_edge_list, write_partition
from .methods import parse_method, sparsify
from .parallel import WORKERS_ENV, resolve_workers
from .scoring import ForestFireParams
from .sweep import MEASURES, SweepConfig, run_sweep

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_IO, EXIT_USAGE = 0, 1, 2


def parse_ratios(text: str) -> List[float]:
    '''
    "0.1:1.0:0.05" (start, stop inclusive, step) or "0.2,0.5,0.8".
    '''
    text = text.strip()
    try:
        if ":" not in text:
            return [float(x) for x in text.split(",") if x.strip()]
        start, stop, step = (float(x) for x in text.split(":"))
    except ValueError:
        raise InvalidParameterError(f"cannot read ratios from '{text}'") from None
    if step <= 0:
        raise InvalidParameterError(f"ratio step must be positive. It was: {step}")
    count = int(np.floor((stop - start) / step + 1e-9)) + 1
    return [round(start + i * step, 10) for i in range(max(count, 0))]


def parse_tags(text: str) -> List[str]:
    return [t.strip() for t in text.split(",") if t.strip()]


def _add_source(parser: argparse.ArgumentParser, multiple: bool = False) -> None:
    group = parser.add_mutually_exclusive_group(required=True)
    if multiple:
        group.add_argument("--input", nargs="+", metavar="FILE", help="edge list file(s)")
    else:
        group.add_argument("--input", metavar="FILE", help="edge list file")
    group.add_argument("--generate", metavar="SPEC", type=PlantedPartitionSpec.parse,
                       help="planted partition spec instead of an input file")


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, default=0, help="master seed (default 0)")
    parser.add_argument("--workers", type=int, default=None,
                        help=f"worker threads (default ${WORKERS_ENV} or 1)")


def _add_forest_fire(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--ff-p", type=float, default=ForestFireParams.p,
                        help="edge forest fire burning probability")
    parser.add_argument("--ff-ratio", type=float, default=ForestFireParams.target_burn_ratio,
                        help="edge forest fire target burn ratio")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="backbone", description="Structure-preserving edge sparsification."
    )
    parser.add_argument("-v", "--verbose", action="count", default=0,
                        help="more logging, repeat for debug output")
    parser.add_argument("-q", "--quiet", action="store_true", help="only log errors")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep", help="evaluate methods over a ratio grid")
    _add_source(p, multiple=True)
    p.add_argument("--repeats", type=int, default=1,
                   help="number of generated graphs (default 1)")
    p.add_argument("--ground-truth", metavar="FILE",
                   help="reference partition for a single input")
    p.add_argument("--methods", type=parse_tags, default=["re"])
    p.add_argument("--ratios", type=parse_ratios, default=None,
                   help="start:stop:step or a comma list (default 0.05:1.0:0.05)")
    p.add_argument("--measures", type=parse_tags, default=list(MEASURES),
                   help=f"subset of {','.join(MEASURES)}")
    p.add_argument("--samples", type=int, default=16, help="betweenness pivots (default 16)")
    p.add_argument("--out", default=".", help="output directory (default .)")
    _add_forest_fire(p)
    _add_common(p)
    p.set_defaults(handler=command_sweep)

    p = sub.add_parser("correlate", help="rank correlation matrix of edge scores")
    _add_source(p, multiple=True)
    p.add_argument("--tags", type=parse_tags, required=True,
                   help="method tags, 'mod' or 'tri'")
    p.add_argument("--no-references", action="store_true",
                   help="do not append the mod and tri columns")
    p.add_argument("--out", required=True, help="CSV file")
    _add_common(p)
    p.set_defaults(handler=command_correlate)

    p = sub.add_parser("seir", help="epidemic curves of an original and its backbone")
    _add_source(p)
    p.add_argument("--method", required=True)
    p.add_argument("--ratio", type=float, required=True)
    p.add_argument("--p", dest="transmission_prob", type=float, default=SeirParams.transmission_prob)
    p.add_argument("--latency", type=int, default=SeirParams.latency)
    p.add_argument("--infectious", type=int, default=SeirParams.infectious_period)
    p.add_argument("--runs", type=int, default=SeirParams.runs)
    p.add_argument("--out", required=True, help="CSV file")
    _add_forest_fire(p)
    _add_common(p)
    p.set_defaults(handler=command_seir)

    p = sub.add_parser("stats", help="size, diameter and clustering of networks")
    p.add_argument("inputs", nargs="+", metavar="FILE")
    p.add_argument("--out", help="CSV file (default: print a table)")
    p.set_defaults(handler=command_stats)

    p = sub.add_parser("sparsify", help="write the backbone of one network")
    p.add_argument("--input", required=True, metavar="FILE")
    p.add_argument("--method", required=True)
    p.add_argument("--ratio", type=float, required=True)
    p.add_argument("--out", required=True, help="edge list file")
    _add_forest_fire(p)
    _add_common(p)
    p.set_defaults(handler=command_sparsify)

    p = sub.add_parser("generate", help="write a planted partition graph")
    p.add_argument("spec", type=PlantedPartitionSpec.parse, metavar="SPEC")
    p.add_argument("--out", required=True, help="edge list file")
    p.add_argument("--truth", help="ground-truth file")
    p.set_defaults(handler=command_generate)
    return parser


def _forest_fire(args) -> ForestFireParams:
    return ForestFireParams(p=args.ff_p, target_burn_ratio=args.ff_ratio, seed=args.seed)


def _graph(args):
    if args.generate is not None:
        return generate_planted_partition(args.generate)[0]
    return load_edge_list(args.input).graph


def command_sweep(args) -> int:
    cfg = SweepConfig(
        inputs=args.input or (),
        generate=args.generate,
        repeats=args.repeats,
        ground_truth=args.ground_truth,
        methods=args.methods,
        ratios=args.ratios if args.ratios is not None else parse_ratios("0.05:1.0:0.05"),
        seed=args.seed,
        measures=frozenset(args.measures),
        betweenness_samples=args.samples,
        forest_fire=_forest_fire(args),
        out=args.out,
        workers=args.workers,
    )
    rows = run_sweep(cfg)
    logger.info("sweep finished: %d rows", len(rows))
    return EXIT_OK


def command_correlate(args) -> int:
    for tag in args.tags:
        if tag.lower() not in ("mod", "tri"):
            parse_method(tag)
    if args.generate is not None:
        graphs = [generate_planted_partition(args.generate)[0]]
    else:
        graphs = [load_edge_list(path).graph for path in args.input]
    frames = [
        score_correlation_matrix(g, args.tags, args.seed, args.workers,
                                 include_references=not args.no_references)
        for g in graphs
    ]
    matrix = average_correlation_matrices(frames)
    matrix.to_csv(args.out, na_rep="", float_format="%.6f")
    logger.info("wrote %dx%d correlation matrix to %s", *matrix.shape, args.out)
    return EXIT_OK


def command_seir(args) -> int:
    params = SeirParams(
        latency=args.latency,
        infectious_period=args.infectious,
        transmission_prob=args.transmission_prob,
        runs=args.runs,
        seed=args.seed,
    )
    g = _graph(args)
    result = sparsify(g, args.method, args.ratio, args.seed, args.workers,
                      forest_fire=_forest_fire(args))
    table = side_by_side({
        "original": run_seir(g, params, args.workers),
        "sparsified": run_seir(result.graph, params, args.workers),
    })
    table.to_csv(args.out, index=False)
    logger.info("wrote %d curve steps to %s", len(table), args.out)
    return EXIT_OK


def command_stats(args) -> int:
    rows = []
    for path in args.inputs:
        stats = network_statistics(load_edge_list(path).graph)
        rows.append({"network": path, **stats})
    table = pd.DataFrame(rows)
    if args.out:
        table.to_csv(args.out, index=False, na_rep="")
    else:
        print(table.to_string(index=False))
    return EXIT_OK


def command_sparsify(args) -> int:
    loaded = load_edge_list(args.input)
    result = sparsify(loaded.graph, args.method, args.ratio, args.seed, args.workers,
                      forest_fire=_forest_fire(args))
    write_edge_list(result.graph, args.out, labels=loaded.labels)
    logger.info("%s at ratio %s kept %d of %d edges",
                result.method_tag, args.ratio, result.kept, loaded.graph.m)
    return EXIT_OK


def command_generate(args) -> int:
    g, truth = generate_planted_partition(args.spec)
    write_edge_list(g, args.out)
    if args.truth:
        write_partition(truth, args.truth)
    return EXIT_OK


def configure_logging(verbose: int = 0, quiet: bool = False) -> None:
    if quiet:
        level = logging.ERROR
    else:
        level = {0: logging.WARNING, 1: logging.INFO}.get(verbose, logging.DEBUG)
    logging.basicConfig(level=level, format="%(asctime)s %(name)s %(levelname)s: %(message)s")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose, args.quiet)
    try:
        if hasattr(args, "workers"):
            resolve_workers(args.workers)
        return args.handler(args)
    except (MalformedInputError, OSError) as err:
        logger.error("%s", err)
        return EXIT_IO
    except InvalidParameterError as err:
        logger.error("%s", err)
        return EXIT_USAGE
    except BackboneError as err:
        logger.error("%s", err)
        return EXIT_IO
