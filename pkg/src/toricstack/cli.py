"""``tsk``: command-line front end.

Exit codes: 0 success, 1 malformed input, 2 resource bound exceeded,
3 internal invariant broken (including a failing ``selftest``).
"""
import argparse
import os
import sys
from typing import Callable, Dict, List, Optional, Sequence

from . import reports, selftest
from .config import limits, limits_from_env
from .errors import InputError, InternalInvariantBroken, ResourceLimitError
from .io import dumps, load_file, render_text

EXIT_OK, EXIT_INPUT, EXIT_RESOURCE, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(InputError):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage, which would read as a resource error
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _positive(name: str) -> Callable[[str], int]:
    def parse(text: str) -> int:
        try:
            value = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"{name} expects an integer, got {text!r}") from None
        if value < 1:
            raise argparse.ArgumentTypeError(f"{name} must be at least 1")
        return value
    return parse


def _global_options() -> argparse.ArgumentParser:
    """Options accepted both before and after the subcommand.

    Defaults are suppressed here and filled in by ``main`` so that a value
    given after the subcommand is not overwritten by the top-level default.
    """
    p = _Parser(add_help=False, argument_default=argparse.SUPPRESS)
    p.add_argument("--format", choices=("text", "json"), help="output format (default text)")
    p.add_argument("--max-hilbert", type=_positive("--max-hilbert"),
                   help="largest Hilbert basis to compute (default 10000, env TSK_MAX_HILBERT)")
    p.add_argument("--max-faces", type=_positive("--max-faces"),
                   help="largest face lattice to enumerate (default 10000, env TSK_MAX_FACES)")
    p.add_argument("--seed", type=int, help="seed for selftest (default 1)")
    p.add_argument("--jobs", type=_positive("--jobs"), help="threads for per-cone work (default 1)")
    return p


DEFAULTS = {"format": "text", "seed": 1, "jobs": 1}


def build_parser() -> argparse.ArgumentParser:
    common = _global_options()
    parser = _Parser(prog="tsk", parents=[common],
                     description="Toric monoids, diagonal invariants and stacky fans.")
    groups = parser.add_subparsers(dest="group", metavar="COMMAND", required=True)

    def leaf(sub, name, help_, file_=True):
        p = sub.add_parser(name, parents=[common], help=help_)
        if file_:
            p.add_argument("file", metavar="FILE", help="input document (JSON)")
        return p

    monoid = groups.add_parser("monoid", help="saturated toric monoids and their resolutions")
    msub = monoid.add_subparsers(dest="command", metavar="ACTION", required=True)
    leaf(msub, "mfr", "minimal free resolution and its cokernel")
    leaf(msub, "qmfr", "decide whether a morphism is an mfr followed by a face projection")
    q = leaf(msub, "quotient", "quotient by a face and the induced resolution")
    q.add_argument("--face", required=True, metavar="INDEXSET",
                   help='comma-separated 1-based ray indices; "" is the zero face')

    inv = groups.add_parser("inv", help="invariants of diagonal actions")
    isub = inv.add_subparsers(dest="command", metavar="ACTION", required=True)
    leaf(isub, "analyze", "full polynomiality analysis with oracle cross-check")
    leaf(isub, "oracle", "Hilbert basis of the invariants and freeness")

    fan = groups.add_parser("fan", help="generalized stacky fans")
    fsub = fan.add_subparsers(dest="command", metavar="ACTION", required=True)
    leaf(fsub, "validate", "check the fan axioms and the ray and marking conditions")
    leaf(fsub, "presentation", "quotient presentation: group, weights, excluded locus, charts")
    for name, help_ in (("chart", "chart over one cone"), ("datum", "datum at a torus-fixed point")):
        p = leaf(fsub, name, help_)
        p.add_argument("--cone", required=True, type=_positive("--cone"), metavar="K",
                       help="1-based index into the listed cones")

    groups.add_parser("selftest", parents=[common], help="run the seeded property suites")
    return parser


def parse_face(text: str) -> List[int]:
    """``"1,3"`` -> ``[0, 2]``; the empty string is the zero face."""
    if not text.strip():
        return []
    try:
        idx = [int(part) for part in text.split(",")]
    except ValueError:
        raise UsageError(f"--face: expected comma-separated integers, got {text!r}") from None
    if any(i < 1 for i in idx):
        raise UsageError("--face: indices are 1-based")
    return [i - 1 for i in idx]


def _ray_count_check(p, face: Sequence[int]):
    n = len(p.cone.rays)
    bad = [i + 1 for i in face if i >= n]
    if bad:
        raise UsageError(f"--face: ray {bad[0]} outside 1..{n}")


def _cone_index(f, k: int) -> int:
    if k > len(f.cones):
        raise UsageError(f"--cone: {k} outside 1..{len(f.cones)}")
    return k - 1


def _selftest(args) -> int:
    results = selftest.run_all(args.seed)
    if args.format == "json":
        sys.stdout.write(dumps(selftest.as_report(args.seed, results)))
    else:
        sys.stdout.write(selftest.render_table(args.seed, results))
    return EXIT_OK if all(r.failed == 0 for r in results) else EXIT_INTERNAL


def _dispatch(args) -> Dict:
    key = (args.group, args.command)
    if key == ("monoid", "mfr"):
        return reports.mfr_report(load_file(args.file, ("monoid",))[1])
    if key == ("monoid", "qmfr"):
        return reports.qmfr_report(load_file(args.file, ("morphism",))[1])
    if key == ("monoid", "quotient"):
        face = parse_face(args.face)
        p = load_file(args.file, ("monoid",))[1]
        _ray_count_check(p, face)
        return reports.quotient_report(p, face)
    if key == ("inv", "analyze"):
        return reports.analyze_report(load_file(args.file, ("action",))[1])
    if key == ("inv", "oracle"):
        return reports.oracle_report(load_file(args.file, ("action",))[1])
    f = load_file(args.file, ("fan",))[1]
    if args.command == "validate":
        return reports.validate_report(f)
    if args.command == "presentation":
        return reports.presentation_report(f, args.jobs)
    if args.command == "chart":
        return reports.chart_report(f, _cone_index(f, args.cone))
    return reports.datum_report(f, _cone_index(f, args.cone))


def main(argv: Optional[Sequence[str]] = None, environ=None) -> int:
    environ = os.environ if environ is None else environ
    try:
        args = build_parser().parse_args(argv)
        for key, value in DEFAULTS.items():
            if not hasattr(args, key):
                setattr(args, key, value)
        try:
            env = limits_from_env(environ)
        except ValueError as exc:
            raise InputError(f"environment: {exc}") from None
        bounds = {"max_hilbert": getattr(args, "max_hilbert", env.max_hilbert),
                  "max_faces": getattr(args, "max_faces", env.max_faces)}
        with limits(**bounds):
            if args.group == "selftest":
                return _selftest(args)
            report = _dispatch(args)
        sys.stdout.write(dumps(report) if args.format == "json" else render_text(report))
        return EXIT_OK
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except InternalInvariantBroken as exc:
        print(f"internal invariant broken: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
