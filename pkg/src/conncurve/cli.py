"""Command-line front end: generate data, compute and compare curves.

Exit status: 0 success, 1 domain error (validation, degenerate curline,
oracle failure), 2 usage error, 3 I/O error. Identical arguments and
input files always produce byte-identical outputs; the only randomness
is the seeded generator in ``oracle-check``.
"""

from __future__ import annotations

import argparse
import random
import sys

from .affinity import normalize, metric_affinity, threshold
from .curve import concavity_score, compare, connectivity_curve, kappa_at, sweep_partitions
from .datasets import (
    SequenceKind,
    generate_sequence,
    load_curve,
    load_matrix,
    random_affinity_matrix,
    save_curve,
    save_matrix,
    save_points,
)
from .errors import ConncurveError, DegenerateCurveError
from .oracle import components_graph, components_topological


def _cmd_generate(args) -> int:
    kind = SequenceKind.from_name(args.kind)
    points = generate_sequence(kind, args.m)
    if args.emit == "points":
        save_points(points, args.out)
    else:
        save_matrix(metric_affinity(points), args.out)
    return 0


def _cmd_curve(args) -> int:
    A = load_matrix(
        args.in_path,
        args.format,
        symmetrize=args.symmetrize,
        zero_policy=args.zero_policy,
    )
    if args.normalize:
        A = normalize(A)
    curve = connectivity_curve(A)
    save_curve(curve, args.out, args.format)
    try:
        conc = f"{concavity_score(curve):.6f}"
    except DegenerateCurveError:
        conc = "nan"
    print(
        f"breakpoints={len(curve.breakpoints)} "
        f"kappa_min={curve.values[0]} kappa_max={curve.values[-1]} "
        f"concavity={conc}"
    )
    return 0


def _cmd_kappa(args) -> int:
    A = load_matrix(args.in_path, "csv")
    print(kappa_at(A, args.lam))
    return 0


def _cmd_compare(args) -> int:
    c1 = load_curve(args.a)
    c2 = load_curve(args.b)
    print(f"{compare(c1, c2):.6f}")
    return 0


def _interval_representatives(breakpoints) -> list[float]:
    if not breakpoints:
        return [1.0]
    reps = [breakpoints[0] / 2.0]
    for a, b in zip(breakpoints, breakpoints[1:]):
        reps.append((a + b) / 2.0)
    reps.append(breakpoints[-1] + 1.0)
    return reps


def _equivalence_trial(A) -> bool:
    curve, partitions = sweep_partitions(A)
    for k, lam in enumerate(_interval_representatives(curve.breakpoints)):
        T = threshold(A, lam)
        p_graph = components_graph(T)
        p_topo = components_topological(T)
        if not (p_graph == p_topo == partitions[k]):
            return False
        if p_graph.n_blocks != curve.values[k]:
            return False
    return True


def _cmd_oracle_check(args) -> int:
    rng = random.Random(args.seed)
    passed = 0
    for t in range(1, args.trials + 1):
        n = rng.randint(2, args.n_max)
        A = random_affinity_matrix(rng, n)
        ok = _equivalence_trial(A)
        passed += ok
        print(f"trial {t:03d}: {'PASS' if ok else 'FAIL'}")
    print(f"{passed}/{args.trials} PASS")
    return 0 if passed == args.trials else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="conncurve",
        description="Connectivity curves of thresholded affinity matrices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="emit a built-in point sequence or its affinity matrix")
    p.add_argument("--kind", required=True, choices=[k.value for k in SequenceKind])
    p.add_argument("--m", type=int, default=20)
    p.add_argument("--out", required=True)
    p.add_argument("--as", dest="emit", choices=["points", "matrix"], default="points")
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("curve", help="compute the connectivity curve of a matrix file")
    p.add_argument("--in", dest="in_path", required=True)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--normalize", action="store_true")
    p.add_argument("--symmetrize", choices=["sum", "require"], default="require")
    p.add_argument("--zero-policy", dest="zero_policy", choices=["epsilon", "reject"], default="reject")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_curve)

    p = sub.add_parser("kappa", help="component count of a CSV matrix at one threshold")
    p.add_argument("--in", dest="in_path", required=True)
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.set_defaults(func=_cmd_kappa)

    p = sub.add_parser("compare", help="L1 distance between two saved curves")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.set_defaults(func=_cmd_compare)

    p = sub.add_parser("oracle-check", help="random-matrix equivalence run of all three component routes")
    p.add_argument("--n-max", dest="n_max", type=int, default=10)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_oracle_check)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except (ConncurveError, ValueError) as exc:
        print(f"{args.command}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"{args.command}: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
