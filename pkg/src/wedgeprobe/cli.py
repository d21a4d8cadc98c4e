"""Command-line interface: generate, probe, cloud, reconstruct, duel, verify, suite."""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import acceptance
from .adversary import duel as run_duel
from .cloud import build_cloud, count_narrow
from .errors import WedgeProbeError
from .fileio import load_polygon, polygon_to_dict, rows_to_csv, save_polygon, save_transcript
from .geometry import DirectedLine, Point
from .harness import ExperimentConfig, cyclic_hausdorff, gen_polygon, run_suite
from .oracle import MISS, new_session
from .reconstruct import reconstruct_general, reconstruct_no_narrow, reconstruct_right_angle


def _parse_line(text: str) -> DirectedLine:
    ox, oy, dx, dy = (float(v) for v in text.split(","))
    return DirectedLine(Point(ox, oy), Point(dx, dy).unit())


def _cmd_generate(args) -> int:
    cfg = ExperimentConfig(omega=args.omega, n_range=(args.n_min, args.n_max), trials=1,
                           target_narrow=args.narrow, margin=args.margin,
                           epsilon=args.epsilon, seed=args.seed,
                           narrow_adjacent=args.narrow_adjacent)
    poly = gen_polygon(cfg, args.index)
    if args.out:
        save_polygon(poly, args.out)
        print(f"wrote {args.out}: n={poly.n}, narrow={count_narrow(poly, args.omega)}")
    else:
        json.dump(polygon_to_dict(poly), sys.stdout)
        print()
    return 0


def _cmd_probe(args) -> int:
    poly = load_polygon(args.polygon)
    session = new_session(poly, args.omega, arm_policy=args.policy, seed=args.seed)
    result = session.probe(_parse_line(args.line))
    if result is MISS:
        print("miss")
    else:
        print(f"apex: {result.q.x!r} {result.q.y!r}")
        print(f"dir1: {result.dir1.x!r} {result.dir1.y!r}")
        print(f"dir2: {result.dir2.x!r} {result.dir2.y!r}")
        print(f"p1:   {result.p1.x!r} {result.p1.y!r}")
        print(f"p2:   {result.p2.x!r} {result.p2.y!r}")
        print(f"apex_on_polygon: {result.apex_on_polygon}")
    return 0


def _cmd_cloud(args) -> int:
    poly = load_polygon(args.polygon)
    cloud = build_cloud(poly, args.omega)
    rows = []
    for arc, (ia, ib) in zip(cloud.arcs, cloud.support_indices):
        rows.append({
            "center_x": arc.center.x, "center_y": arc.center.y, "radius": arc.radius,
            "start_angle": arc.start_angle, "end_angle": arc.end_angle, "sweep": arc.sweep,
            "support_a": ia, "support_b": ib,
        })
    rows_to_csv(rows, args.csv)
    print(f"wrote {args.csv}: {cloud.n_prime} arcs, "
          f"{len(cloud.on_polygon_pivots)} pivots on the polygon")
    if args.svg:
        _write_cloud_svg(poly, cloud, args.svg)
        print(f"wrote {args.svg}")
    return 0


def _write_cloud_svg(poly, cloud, path: str, samples_per_arc: int = 32) -> None:
    pts: list[Point] = []
    for arc in cloud.arcs:
        pts.extend(arc.sample(samples_per_arc, interior=False))
    xs = [p.x for p in pts] or [0.0]
    ys = [p.y for p in pts] or [0.0]
    lo_x, hi_x = min(xs), max(xs)
    lo_y, hi_y = min(ys), max(ys)
    span = max(hi_x - lo_x, hi_y - lo_y, 1e-9)
    def sx(p): return 20 + 560 * (p.x - lo_x) / span
    def sy(p): return 580 - 560 * (p.y - lo_y) / span
    cloud_path = " ".join(f"{sx(p):.2f},{sy(p):.2f}" for p in pts)
    poly_path = " ".join(f"{sx(v):.2f},{sy(v):.2f}" for v in poly.vertices)
    with open(path, "w") as fh:
        fh.write('<svg xmlns="http://www.w3.org/2000/svg" width="600" height="600">\n')
        fh.write(f'  <polygon points="{poly_path}" fill="lightgray" stroke="black"/>\n')
        fh.write(f'  <polyline points="{cloud_path}" fill="none" stroke="steelblue"/>\n')
        fh.write("</svg>\n")


def _cmd_reconstruct(args) -> int:
    poly = load_polygon(args.polygon)
    session = new_session(poly, args.omega, arm_policy=args.policy, seed=args.seed)
    algos = {"input1": reconstruct_no_narrow, "input2": reconstruct_right_angle}
    if args.algorithm == "general":
        result = reconstruct_general(session, epsilon=args.epsilon)
    else:
        result = algos[args.algorithm](session)
    if result.polygon is not None:
        err = cyclic_hausdorff(poly, result.polygon)
        exact = err <= 1e-6 * poly.diameter()
    else:
        err, exact = math.inf, False
    bound_txt = result.bound if result.bound is not None else "n/a (best effort)"
    print(f"probes_used: {result.probes_used}")
    print(f"bound: {bound_txt}")
    print(f"best_effort: {result.best_effort}")
    print(f"hausdorff_error: {err!r}")
    print("PASS" if exact and (result.bound is None or result.probes_used <= result.bound) else "FAIL")
    if args.out and result.polygon is not None:
        save_polygon(result.polygon, args.out)
        print(f"wrote {args.out}")
    if result.best_effort:
        for a, b in result.unresolved_pairs:
            print(f"unresolved: ({a.x!r},{a.y!r})-({b.x!r},{b.y!r})")
    return 0 if exact else 1


def _cmd_duel(args) -> int:
    result = run_duel(args.algorithm, args.omega, args.n, args.seed)
    print(f"probes_used: {result.probes_used}")
    print(f"lower_bound: {result.lower_bound}")
    print(f"met_lower_bound: {result.met_lower_bound}")
    print(f"reconstruction_exact: {result.reconstruction_exact}")
    print(f"audit: {'pass' if result.audit.ok else 'fail'}")
    if args.transcript:
        save_transcript(result.transcript, args.transcript)
        print(f"wrote {args.transcript}")
    ok = result.met_lower_bound and result.reconstruction_exact and result.audit.ok
    return 0 if ok else 1


def _cmd_verify(args) -> int:
    results = acceptance.run_all()
    return 0 if all(r.ok for r in results) else 1


def _cmd_suite(args) -> int:
    cfg = ExperimentConfig(omega=args.omega, n_range=(args.n_min, args.n_max),
                           trials=args.trials, target_narrow=args.narrow,
                           margin=args.margin, epsilon=args.epsilon,
                           seed=args.seed, algorithm=args.algorithm,
                           narrow_adjacent=args.narrow_adjacent)
    report = run_suite(cfg)
    if args.csv:
        rows_to_csv(report.rows, args.csv)
        print(f"wrote {args.csv}")
    print(report.summary())
    ok = report.all_exact and report.all_within_budget
    print("PASS" if ok else "FAIL")
    return 0 if ok else 1


def _add_generate(sub) -> None:
    p = sub.add_parser("generate", help="generate a test polygon")
    p.add_argument("--omega", type=float, required=True)
    p.add_argument("--n-min", type=int, default=5)
    p.add_argument("--n-max", type=int, default=12)
    p.add_argument("--narrow", type=int, default=0)
    p.add_argument("--margin", type=float, default=0.05)
    p.add_argument("--epsilon", type=float, default=None)
    p.add_argument("--narrow-adjacent", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--index", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_generate)


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="wedgeprobe",
        description="Convex-polygon reconstruction with omega-wedge probes. "
                    "The OMEGA_PROBE_SEED environment variable overrides suite seeds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    _add_generate(sub)

    p = sub.add_parser("probe", help="one probe of a polygon file")
    p.add_argument("--polygon", required=True)
    p.add_argument("--omega", type=float, required=True)
    p.add_argument("--line", required=True, metavar="ox,oy,dx,dy")
    p.add_argument("--policy", default="adversarial-minimal")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_probe)

    p = sub.add_parser("cloud", help="emit the omega-cloud arc chain")
    p.add_argument("--polygon", required=True)
    p.add_argument("--omega", type=float, required=True)
    p.add_argument("--csv", required=True)
    p.add_argument("--svg", default=None)
    p.set_defaults(func=_cmd_cloud)

    p = sub.add_parser("reconstruct", help="reconstruct a polygon file through the oracle")
    p.add_argument("--polygon", required=True)
    p.add_argument("--omega", type=float, required=True)
    p.add_argument("--algorithm", choices=("input1", "input2", "general"), required=True)
    p.add_argument("--epsilon", type=float, default=None)
    p.add_argument("--policy", default="adversarial-minimal")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_reconstruct)

    p = sub.add_parser("duel", help="play an algorithm against the adversary")
    p.add_argument("--omega", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--algorithm", choices=("input1", "input2", "general", "greedy"), required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--transcript", default=None)
    p.set_defaults(func=_cmd_duel)

    p = sub.add_parser("verify", help="run the acceptance criteria")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("suite", help="budget experiment over generated instances")
    p.add_argument("--omega", type=float, required=True)
    p.add_argument("--n-min", type=int, default=5)
    p.add_argument("--n-max", type=int, default=20)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--narrow", type=int, default=0)
    p.add_argument("--margin", type=float, default=0.05)
    p.add_argument("--epsilon", type=float, default=None)
    p.add_argument("--algorithm", choices=("input1", "input2", "general", "greedy"), default=None)
    p.add_argument("--narrow-adjacent", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--csv", default=None)
    p.set_defaults(func=_cmd_suite)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except WedgeProbeError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
