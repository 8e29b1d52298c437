import argparse
import asyncio
import json
import sys
from typing import List, Optional

from config import config
from config.exceptions import ComputationRefused, InternalInconsistency, SpecError

logger = config.get_logger(__name__)

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_SPEC = 2
EXIT_REFUSED = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hadamard-subfactors",
                                     description="Twisted tensor product Hadamard subfactors")
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--json", action="store_true", help="Print reports as JSON")
    commands = parser.add_subparsers(dest="command", required=True)

    analyze = commands.add_parser("analyze", help="Run the full pipeline on one or more specs", parents=[shared])
    analyze.add_argument("--spec", action="append", required=True,
                         help="Spec file, JSON document or preset; repeat for batch mode")
    analyze.add_argument("--emit-dot", metavar="DIR", help="Write principal and dual graphs as DOT files")
    analyze.add_argument("--radius", type=int, help="Truncation radius for infinite depth")
    analyze.add_argument("--level", type=int, choices=(0, 1, 2), help="Also compute the relative commutant")

    classify = commands.add_parser("classify4", help="Classify the index 4 subfactor of a delta",
                                   parents=[shared])
    classify.add_argument("delta", help="Phase literal, e.g. 1/4 or 0 + 1*t1")
    classify.add_argument("--emit-dot", metavar="DIR")
    classify.add_argument("--radius", type=int)

    compare = commands.add_parser("compare", help="Verdict on two twists", parents=[shared])
    compare.add_argument("--spec", action="append", required=True, help="Given exactly twice")
    compare.add_argument("--bound", type=int, help="Automorphism search bound")

    commutant = commands.add_parser("commutant", help="Relative commutant dimension", parents=[shared])
    commutant.add_argument("--spec", required=True, help="Matrix file (.txt), spec file or preset")
    commutant.add_argument("--level", type=int, choices=(0, 1, 2), default=1)

    fourier = commands.add_parser("fourier", help="Fourier matrix of an abelian group", parents=[shared])
    fourier.add_argument("group", help="Group literal such as Z6 or Z2xZ2")
    fourier.add_argument("--conjugate", action="store_true", help="Conjugate transpose instead")

    equiv = commands.add_parser("equiv", help="Hadamard equivalence of two matrices", parents=[shared])
    equiv.add_argument("first", help="Matrix file (.txt), spec file or preset")
    equiv.add_argument("second")
    equiv.add_argument("--bound", type=int, help="Largest size searched")
    return parser


def _summary(report) -> List[str]:
    """Readable key: value lines of the fields that were filled"""
    document = report.model_dump(mode="json", exclude_defaults=True)
    lines = []
    for key in sorted(document):
        value = document[key]
        if isinstance(value, (dict, list)):
            value = json.dumps(value, sort_keys=True, ensure_ascii=False)
        lines.append(f"{key}: {value}")
    return lines


def _emit(reports, as_json: bool):
    if as_json:
        if len(reports) == 1:
            print(reports[0].to_json())
        else:
            print(json.dumps([r.model_dump(mode="json") for r in reports], sort_keys=True, indent=2))
        return
    for index, report in enumerate(reports):
        if index:
            print()
        print("\n".join(_summary(report)))


def _run(args) -> list:
    # Lazy import so config is initialised first
    import pipeline

    if args.command == "analyze":
        if len(args.spec) == 1:
            return [pipeline.analyze(args.spec[0], emit_dot=args.emit_dot, radius=args.radius, level=args.level)]
        return asyncio.run(pipeline.run_batch(args.spec, emit_dot=args.emit_dot, radius=args.radius,
                                              level=args.level))
    if args.command == "classify4":
        return [pipeline.classify4(args.delta, emit_dot=args.emit_dot, radius=args.radius)]
    if args.command == "compare":
        if len(args.spec) != 2:
            raise SpecError(f"compare needs exactly two --spec arguments, got {len(args.spec)}")
        return [pipeline.compare(args.spec[0], args.spec[1], bound=args.bound)]
    if args.command == "commutant":
        return [pipeline.commutant(args.spec, level=args.level)]
    if args.command == "fourier":
        return [pipeline.fourier(args.group, conjugate=args.conjugate)]
    return [pipeline.equivalence(args.first, args.second, bound=args.bound)]


def main(argv: Optional[List[str]] = None) -> int:
    """
        Entry point. Exit codes: 0 success, 2 invalid input, 3 computation
        refused by a bound, 1 internal inconsistency
    """
    args = build_parser().parse_args(argv)
    config.initialize()
    try:
        reports = _run(args)
    except SpecError as e:
        logger.error(f"Invalid input: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_SPEC
    except ComputationRefused as e:
        logger.error(f"Computation refused: {e}")
        print(f"refused: {e}", file=sys.stderr)
        return EXIT_REFUSED
    except InternalInconsistency as e:
        logger.error(f"Internal inconsistency: {e}")
        print(f"internal inconsistency: {e}", file=sys.stderr)
        return EXIT_INTERNAL
    _emit(reports, args.json)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
