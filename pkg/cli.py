#!/usr/bin/env python3
"""
Topological optimal transport - Command Line Interface

Build measure topological networks from point clouds, solve TpOT between
them, compare with diagram-only matching, produce geodesic frames and track
features through a time series.

Usage:
    python cli.py build points.csv --top-k 4
    python cli.py solve a.network.json b.network.json --alpha 0.5 --beta 1
    python cli.py baseline-pd a.network.json b.network.json
    python cli.py geodesic result.json a.network.json b.network.json --n-frames 11
    python cli.py track snapshots/ --known-correspondence
    python cli.py gen-example four_circles --seed 1
    python cli.py sweep a.network.json b.network.json --alphas 0,0.5,1 --betas 0,1
"""

import argparse
import json
import sys
import traceback
from pathlib import Path
from typing import List, Optional

from analysis import (
    ReportFormatter, extract_matching, baseline_matching, matching_report, sweep_table,
    track_sequence, write_report,
)
from datasets import generate, SEQUENCES
from errors import TpotError, ConfigError, InputParseError
from geodesics import geodesic_frames, write_frames_jsonl, write_frames_csv
from geometry import read_point_cloud, write_point_cloud, pairwise_sq_dists
from settings import setup_logger
from settings.run_config import RunConfig, load_run_config
from topo_network import MeasureTopologicalNetwork, build_network, network_summary
from tpot_solver import TpotResult, solve, parameter_sweep

POINT_SUFFIXES = ('.csv', '.txt', '.xyz', '.dat', '.json')
# --n maps onto these keyword names for generators that size by something else
SIZE_KEYS = {'loop_chain': 'n_per_loop', 'trefoil_sequence': 'n_points'}

logger = None


def _print_header(title: str):
    print("\n" + "=" * 80)
    print(title)
    print("=" * 80)


def _float_list(text: str) -> List[float]:
    try:
        return [float(v) for v in text.split(',') if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated numbers, got '{text}'")


def _config(args, inputs: List[str]) -> RunConfig:
    """File config, then command-line overrides, then validation."""
    config = load_run_config(args.config)
    overrides = {key: getattr(args, key, None) for key in (
        'kernel', 'bandwidth', 'degree', 'top_k', 'threshold', 'incidence', 'smoothing',
        'alpha', 'beta', 'eps_v', 'eps_e', 'algorithm', 'max_iter', 'tol',
        'seed', 'n_frames', 'd_embed', 'num_workers', 'output_dir',
    )}
    for flag in ('counting_measure', 'normalize_affinity', 'gauss_seidel'):
        if getattr(args, flag, False):
            overrides[flag] = True
    config = config.with_overrides(inputs=inputs, **overrides)
    config.validate()
    return config


def _output_path(args, config: RunConfig, default_name: str) -> Path:
    if getattr(args, 'output', None):
        return Path(args.output)
    return config.resolved_output_dir() / default_name


def cmd_build(args) -> int:
    config = _config(args, [args.points])
    pc = read_point_cloud(args.points)
    network = build_network(pc, config.network)
    out = _output_path(args, config, f"{Path(args.points).stem}.network.json")
    network.save(out)

    print(ReportFormatter.format_network_summary(network_summary(network)))
    print(f"\n✓ Network written to {out}")
    return 0


def cmd_solve(args) -> int:
    config = _config(args, [args.network_a, args.network_b])
    P = MeasureTopologicalNetwork.load(args.network_a)
    P_prime = MeasureTopologicalNetwork.load(args.network_b)

    result = solve(P, P_prime, config.solver)
    out = _output_path(args, config, 'result.json')
    result.save(out)

    print(ReportFormatter.format_solve(result))
    print(ReportFormatter.format_matching(extract_matching(result.pair.pi_e)))
    print(f"\n✓ Result written to {out}")
    return 0


def cmd_baseline(args) -> int:
    config = _config(args, [args.network_a, args.network_b])
    P = MeasureTopologicalNetwork.load(args.network_a)
    P_prime = MeasureTopologicalNetwork.load(args.network_b)

    matching, distance = baseline_matching(P.diagram, P_prime.diagram)
    report = matching_report(matching)
    report['distance'] = distance
    out = write_report(report, _output_path(args, config, 'baseline.json'))

    print(ReportFormatter.format_matching(matching, title="PD WASSERSTEIN MATCHING"))
    print(f"W2 distance: {distance:.6f}")
    print(f"\n✓ Baseline written to {out}")
    return 0


def cmd_geodesic(args) -> int:
    inputs = [args.result, args.network_a, args.network_b]
    inputs += [p for p in (args.points_a, args.points_b) if p]
    config = _config(args, inputs)
    result = TpotResult.load(args.result)
    P = MeasureTopologicalNetwork.load(args.network_a)
    P_prime = MeasureTopologicalNetwork.load(args.network_b)

    display = None
    d_embed = config.d_embed or 2
    if args.points_a and args.points_b:
        pc, pc_prime = read_point_cloud(args.points_a), read_point_cloud(args.points_b)
        display = (pairwise_sq_dists(pc), pairwise_sq_dists(pc_prime))
        d_embed = config.d_embed or pc.dim
    elif args.points_a or args.points_b:
        raise ConfigError("--points-a and --points-b must be given together")

    frames = geodesic_frames(P, P_prime, result.pair, n_frames=config.n_frames, d_embed=d_embed,
                             display=display, num_workers=config.num_workers)
    out = write_frames_jsonl(frames, _output_path(args, config, 'frames.jsonl'))
    if args.csv:
        write_frames_csv(frames, out.parent / f"{out.stem}_csv")

    print(f"✓ {len(frames)} frames on {len(frames[0].support)} support points written to {out}")
    return 0


def _snapshot_files(directory: Path) -> List[Path]:
    if not directory.is_dir():
        raise ConfigError(f"Not a directory: {directory}")
    return sorted(p for p in directory.iterdir() if p.suffix.lower() in POINT_SUFFIXES)


def cmd_track(args) -> int:
    config = _config(args, [args.snapshots] + ([args.truth] if args.truth else []))
    files = _snapshot_files(Path(args.snapshots))
    if len(files) < 2:
        raise ConfigError(f"Tracking needs at least 2 snapshots, found {len(files)} in {args.snapshots}")

    feature_truth = None
    if args.truth:
        with open(args.truth) as f:
            try:
                feature_truth = json.load(f)
            except json.JSONDecodeError as e:
                raise InputParseError(e.msg, path=args.truth, line=e.lineno)

    _print_header(f"TRACKING {len(files)} SNAPSHOTS")
    networks = []
    for path in files:
        network = build_network(read_point_cloud(path), config.network)
        print(f"  ✓ {path.name}: N={network.n_points}, M={network.n_features}")
        networks.append(network)

    report = track_sequence(networks, config.solver, known_correspondence=args.known_correspondence,
                            feature_truth=feature_truth, num_workers=config.num_workers)
    report['snapshots'] = [p.name for p in files]
    out = write_report(report, _output_path(args, config, 'lineage.json'))

    print(ReportFormatter.format_track_summary(report))
    print(f"\n✓ Lineages written to {out}")
    return 0


def cmd_gen_example(args) -> int:
    config = _config(args, [])
    size_key = SIZE_KEYS.get(args.name, 'n')
    kwargs = {size_key: args.n} if args.n is not None else {}
    sample = generate(args.name, seed=config.seed, **kwargs)

    out = _output_path(args, config, args.name if args.name in SEQUENCES else f"{args.name}.csv")
    if isinstance(sample, list):
        for step, snapshot in enumerate(sample):
            write_point_cloud(snapshot.cloud, out / f"snapshot_{step:03d}.csv")
        print(f"✓ {len(sample)} snapshots written to {out}")
    else:
        write_point_cloud(sample.cloud, out)
        labels = out.with_name(f"{out.stem}.labels.csv")
        labels.write_text("\n".join(str(int(v)) for v in sample.labels) + "\n")
        print(f"✓ {sample.cloud.n_points} points written to {out} (labels: {labels.name})")
    return 0


def cmd_sweep(args) -> int:
    config = _config(args, [args.network_a, args.network_b])
    P = MeasureTopologicalNetwork.load(args.network_a)
    P_prime = MeasureTopologicalNetwork.load(args.network_b)

    points = parameter_sweep(P, P_prime, args.alphas, args.betas, base=config.solver,
                             num_workers=config.num_workers)
    table = sweep_table(points)
    out = _output_path(args, config, 'sweep.csv')
    out.parent.mkdir(parents=True, exist_ok=True)
    table.to_csv(out, index=False)

    _print_header(f"PARAMETER SWEEP ({len(points)} grid points)")
    print(ReportFormatter.format_sweep(table))
    print(f"\n✓ Sweep written to {out}")
    return 0


def _add_network_flags(parser: argparse.ArgumentParser):
    group = parser.add_argument_group('network')
    group.add_argument("--kernel", choices=['gaussian', 'sq_dist'], help="Affinity gauge")
    group.add_argument("--bandwidth", choices=['paper', 'inverse_mean', 'median'], help="Gaussian bandwidth rule")
    group.add_argument("--degree", type=int, help="Homology degree (>= 1)")
    group.add_argument("--top-k", dest='top_k', type=int, help="Keep the k most persistent features")
    group.add_argument("--threshold", type=float, help="Rips threshold (default: enclosing radius)")
    group.add_argument("--incidence", choices=['binary', 'smoothed'], help="Incidence matrix mode")
    group.add_argument("--smoothing", type=float, help="Laplacian smoothing strength lambda")
    group.add_argument("--counting-measure", action='store_true', help="Unit mass per diagram point")
    group.add_argument("--normalize-affinity", action='store_true', help="Divide the affinity by its max")


def _add_solver_flags(parser: argparse.ArgumentParser):
    group = parser.add_argument_group('solver')
    group.add_argument("--alpha", type=float, help="GW vs diagram weight in [0, 1]")
    group.add_argument("--beta", type=float, help="Incidence cross-term weight (>= 0)")
    group.add_argument("--eps-v", dest='eps_v', type=float, help="Entropic strength on points")
    group.add_argument("--eps-e", dest='eps_e', type=float, help="Entropic strength on diagrams")
    group.add_argument("--algorithm", choices=['entropic', 'bcd'], help="Solver")
    group.add_argument("--max-iter", dest='max_iter', type=int, help="Outer iteration cap")
    group.add_argument("--tol", type=float, help="Relative objective change to stop at")
    group.add_argument("--gauss-seidel", action='store_true', help="Update pi_e with the new pi_v")
    group.add_argument("--workers", dest='num_workers', type=int, help="Worker threads")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="TOML run config")
    common.add_argument("--seed", type=int, help="Random seed for generated data")
    common.add_argument("--output-dir", dest='output_dir', help="Directory for outputs")
    common.add_argument("-o", "--output", help="Output file (overrides --output-dir)")
    common.add_argument("--no-log-file", action='store_true', help="Log to the console only")

    parser = argparse.ArgumentParser(description="Topological optimal transport toolkit.")
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('build', parents=[common], help="Point cloud -> network JSON")
    p.add_argument("points", help="Point cloud file (.csv, .json, .txt)")
    _add_network_flags(p)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser('solve', parents=[common], help="Solve TpOT between two networks")
    p.add_argument("network_a")
    p.add_argument("network_b")
    _add_solver_flags(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser('baseline-pd', parents=[common], help="W2 persistence diagram matching")
    p.add_argument("network_a")
    p.add_argument("network_b")
    p.set_defaults(func=cmd_baseline)

    p = sub.add_parser('geodesic', parents=[common], help="Geodesic frames from a solve result")
    p.add_argument("result")
    p.add_argument("network_a")
    p.add_argument("network_b")
    p.add_argument("--n-frames", dest='n_frames', type=int, help="Number of frames (>= 2)")
    p.add_argument("--d-embed", dest='d_embed', type=int, help="Embedding dimension")
    p.add_argument("--points-a", dest='points_a', help="Source points for the squared-distance display gauge")
    p.add_argument("--points-b", dest='points_b', help="Target points for the squared-distance display gauge")
    p.add_argument("--csv", action='store_true', help="Also write one CSV per frame")
    p.add_argument("--workers", dest='num_workers', type=int, help="Worker threads")
    p.set_defaults(func=cmd_geodesic)

    p = sub.add_parser('track', parents=[common], help="Track features through snapshots")
    p.add_argument("snapshots", help="Directory of point clouds, ordered by file name")
    p.add_argument("--known-correspondence", action='store_true',
                   help="Snapshots share vertex order; score matchings through the identity plan")
    p.add_argument("--truth", help="JSON list, per step, of correct feature targets")
    _add_network_flags(p)
    _add_solver_flags(p)
    p.set_defaults(func=cmd_track)

    p = sub.add_parser('gen-example', parents=[common], help="Write a bundled synthetic dataset")
    p.add_argument("name", help="four_circles, flower, multi_loops, mug, solid_torus, loop_chain, "
                                "circle, trefoil_sequence")
    p.add_argument("--n", type=int, help="Number of points")
    p.set_defaults(func=cmd_gen_example)

    p = sub.add_parser('sweep', parents=[common], help="Solve over an alpha x beta grid")
    p.add_argument("network_a")
    p.add_argument("network_b")
    p.add_argument("--alphas", type=_float_list, default=[0.0, 0.25, 0.5, 0.75, 1.0])
    p.add_argument("--betas", type=_float_list, default=[0.0, 0.5, 1.0, 2.0])
    _add_solver_flags(p)
    p.set_defaults(func=cmd_sweep)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    global logger
    args = build_parser().parse_args(argv)
    logger = setup_logger('tpot', to_file=not args.no_log_file)
    logger.info(f"Command: {args.command}")

    try:
        return args.func(args)
    except KeyboardInterrupt:
        print("\n\n⚠️  Cancelled by user.")
        return 130
    except TpotError as e:
        print(f"\n✗ Error: {e}")
        return 1
    except Exception as e:
        print(f"\n✗ Unexpected error: {e}")
        traceback.print_exc()
        return 1


if __name__ == '__main__':
    sys.exit(main())
