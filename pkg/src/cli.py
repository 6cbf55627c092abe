"""
Command-line interface.

Usage:
    python -m src.cli validate net.sexp --mode ps
    python -m src.cli expand net.sexp --k 4 -o term.sexp
    python -m src.cli rebuild term0.sexp term_one.sexp -o rebuilt.sexp
    python -m src.cli iso a.sexp b.sexp --fix-conclusions
    python -m src.cli experiment net.sexp --k 4 --seed 0
    python -m src.cli gen --depth 2 --boxes 2 --cosize 3 --seed 1
    python -m src.cli roundtrip --trials 50 --seed 7

Exit status: 0 on success (or isomorphism found), 1 on a negative
verdict, 2 on errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import List, Optional

from quality.net_quality import Mode, validate
from src.config.configuration import config
from src.core.isomorphism import IsoMode, iso_check
from src.core.net import ProofNetError
from src.generators.random_net import GenParams, gen_random
from src.io.net_reader import read_net
from src.io.net_writer import serialize_net, serialize_point, write_net
from src.pipelines.roundtrip import run_roundtrip_pipeline
from src.semantics.experiments import generate_injective_atomic, result
from src.transforms.rebuild import rebuild_from_pair
from src.transforms.taylor import expand, make_k_heterogeneous, make_uniform

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_ERROR = 2


def _validate(args: argparse.Namespace) -> int:
    report = validate(read_net(args.file), args.mode)
    print(json.dumps(report.to_dict(), indent=2))
    return EXIT_OK if report.passed else EXIT_NEGATIVE


def _expand(args: argparse.Namespace) -> int:
    net = read_net(args.file)
    if args.k is not None:
        e = make_k_heterogeneous(net, args.k, args.seed)
    else:
        e = make_uniform(net, args.uniform)
    expansion = expand(net, e, args.level)
    write_net(args.output, expansion.term)
    print(f"Wrote {expansion.term.port_count()} ports to {args.output}")
    return EXIT_OK


def _rebuild(args: argparse.Namespace) -> int:
    rebuilt = rebuild_from_pair(read_net(args.term_one), read_net(args.term0))
    write_net(args.output, rebuilt)
    print(f"Wrote rebuilt net ({rebuilt.box_count()} boxes) to {args.output}")
    return EXIT_OK


def _iso(args: argparse.Namespace) -> int:
    mode = IsoMode.FIXED if args.fix_conclusions else IsoMode.FREE
    witness = iso_check(read_net(args.a), read_net(args.b), mode)
    if witness is None:
        print("not isomorphic")
        return EXIT_NEGATIVE
    print("isomorphic")
    return EXIT_OK


def _experiment(args: argparse.Namespace) -> int:
    net = read_net(args.file)
    e = generate_injective_atomic(net, make_k_heterogeneous(net, args.k, args.seed))
    print(serialize_point(result(e, net)))
    return EXIT_OK


def _gen(args: argparse.Namespace) -> int:
    params = GenParams(
        max_depth=args.depth,
        max_boxes_per_level=args.boxes,
        max_cosize=args.cosize,
        max_ports=args.ports,
        allow_cuts=args.cuts,
        seed=args.seed,
    )
    net = gen_random(params)
    if args.output:
        write_net(args.output, net)
    else:
        print(serialize_net(net), end="")
    return EXIT_OK


def _roundtrip(args: argparse.Namespace) -> int:
    stats = run_roundtrip_pipeline(
        trials=args.trials,
        seed=args.seed,
        max_depth=args.depth,
        output_dir=args.output_dir,
        write=args.output_dir is not None,
    )
    print(f"{stats['passed']}/{stats['attempted']} ≡ ({stats['skipped']} skipped)")
    return EXIT_OK if stats["failed"] == 0 else EXIT_NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="proofnet", description="Taylor expansion and rebuilding of MELL proof-structures.")
    parser.add_argument("--log-level", default=config.app.log_level, help="Logging level (default from config).")
    commands = parser.add_subparsers(dest="command", required=True)

    p = commands.add_parser("validate", help="Check the structural clauses of a net.")
    p.add_argument("file")
    p.add_argument("--mode", choices=[m.value for m in Mode], default=Mode.PS.value)
    p.set_defaults(func=_validate)

    p = commands.add_parser("expand", help="Expand a net along a pseudo-experiment.")
    p.add_argument("file")
    choice = p.add_mutually_exclusive_group(required=True)
    choice.add_argument("--k", type=int, help="k-heterogeneous pseudo-experiment.")
    choice.add_argument(
        "--uniform", type=int, nargs="?", const=config.expansion.uniform_copies,
        help="Uniform pseudo-experiment with N copies per box (default from config).",
    )
    p.add_argument("--level", type=int, default=config.expansion.level)
    p.add_argument("--seed", type=int, default=0, help="First exponent minus one for --k.")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=_expand)

    p = commands.add_parser("rebuild", help="Rebuild a net from a k-heterogeneous expansion and its 1-expansion.")
    p.add_argument("term0", help="k-heterogeneous expansion.")
    p.add_argument("term_one", help="1-expansion of the same net.")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=_rebuild)

    p = commands.add_parser("iso", help="Decide isomorphism of two nets.")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--fix-conclusions", action="store_true")
    p.set_defaults(func=_iso)

    p = commands.add_parser("experiment", help="Print the point of an injective atomic k-heterogeneous experiment.")
    p.add_argument("file")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_experiment)

    p = commands.add_parser("gen", help="Generate a random PS.")
    p.add_argument("--depth", type=int, default=config.generator.max_depth)
    p.add_argument("--boxes", type=int, default=config.generator.max_boxes_per_level)
    p.add_argument("--cosize", type=int, default=config.generator.max_cosize)
    p.add_argument("--ports", type=int, default=config.generator.max_ports)
    p.add_argument("--cuts", action="store_true", default=config.generator.allow_cuts)
    p.add_argument("--seed", type=int, default=config.generator.seed)
    p.add_argument("-o", "--output")
    p.set_defaults(func=_gen)

    p = commands.add_parser("roundtrip", help="Expand and rebuild random nets.")
    p.add_argument("--trials", type=int, default=config.roundtrip.trials)
    p.add_argument("--seed", type=int, default=config.roundtrip.seed)
    p.add_argument("--depth", type=int, default=config.roundtrip.max_depth)
    p.add_argument("--output-dir", help="Write the trial table and summary here.")
    p.set_defaults(func=_roundtrip)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=str(args.log_level).upper(),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    )
    try:
        return args.func(args)
    except (ProofNetError, OSError, ValueError) as e:
        logger.error(f"{args.command} failed: {e}")
        print(f"❌ {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
