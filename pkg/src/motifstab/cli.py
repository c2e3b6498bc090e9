"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 input/parse error, 3 internal
numerical failure.
"""
from __future__ import annotations

import argparse
import sys
import traceback
from pathlib import Path

from .census import MotifId, census, class_ids, uniqueness
from .graphio import EmptyGraphError, ParseError, normalize, parse_edge_list
from .report import (
    PipelineConfig,
    PipelineError,
    emit_profile_chart,
    emit_summary,
    emit_tables,
    run_pipeline,
)


class _Parser(argparse.ArgumentParser):
    # usage problems exit 1 (argparse defaults to 2, which we reserve for input errors)
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _size(value: str) -> int:
    if value not in ("3", "4"):
        raise argparse.ArgumentTypeError("size must be 3 or 4")
    return int(value)


def _sizes(value: str) -> tuple[int, ...]:
    try:
        parts = tuple(int(p) for p in value.split(",") if p)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad sizes list: {value!r}")
    if not parts or any(s not in (3, 4) for s in parts):
        raise argparse.ArgumentTypeError("sizes must be a non-empty subset of 3,4")
    return parts


def _formats(value: str) -> tuple[str, ...]:
    parts = tuple(p for p in value.split(",") if p)
    if not parts or any(p not in ("csv", "json", "svg") for p in parts):
        raise argparse.ArgumentTypeError("formats must be a non-empty subset of csv,json,svg")
    return parts


def _bool(value: str) -> bool:
    lowered = value.lower()
    if lowered in ("true", "1", "yes", "on"):
        return True
    if lowered in ("false", "0", "no", "off"):
        return False
    raise argparse.ArgumentTypeError(f"expected true/false, got {value!r}")


def _seed(value: str) -> int:
    try:
        seed = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an integer, got {value!r}")
    if not 0 <= seed < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in 64 bits")
    return seed


def _positive(value: str) -> int:
    try:
        n = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {value!r}")
    if n < 1:
        raise argparse.ArgumentTypeError("value must be >= 1")
    return n


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="motifstab", description="Motif census and stability analysis for directed graphs")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p_census = sub.add_parser("census", help="count motifs in one graph")
    p_census.add_argument("--input", required=True)
    p_census.add_argument("--size", type=_size, required=True)
    p_census.add_argument("--retain-instances", action="store_true")
    p_census.add_argument("--out", required=True)
    p_census.add_argument("--format", choices=("csv", "json"), default="csv")
    p_census.set_defaults(func=_cmd_census)

    p_run = sub.add_parser("run", help="full pipeline: census, null model, significance, stability, stats")
    p_run.add_argument("--input", required=True)
    p_run.add_argument("--sizes", type=_sizes, default=(3, 4))
    p_run.add_argument("--random", type=_positive, default=100, help="number of randomized replicates")
    p_run.add_argument("--swap-factor", type=_positive, default=100)
    p_run.add_argument("--preserve-mutual", type=_bool, default=True)
    p_run.add_argument("--seed", type=_seed, default=0)
    p_run.add_argument("--z-min", type=float, default=2.0)
    p_run.add_argument("--mfactor-min", type=float, default=1.1)
    p_run.add_argument("--uniq-min", type=int, default=4)
    p_run.add_argument("--out-dir", required=True)
    p_run.add_argument("--formats", type=_formats, default=("csv", "json", "svg"))
    p_run.set_defaults(func=_cmd_run)

    p_stab = sub.add_parser("stability", help="graph-independent motif stability table")
    p_stab.add_argument("--size", type=_size, required=True)
    p_stab.add_argument("--out", required=True)
    p_stab.set_defaults(func=_cmd_stability)
    return parser


def _cmd_census(args) -> int:
    text = Path(args.input).read_bytes().decode("utf-8-sig")
    graph, _ = normalize(parse_edge_list(text))
    result = census(graph, args.size, retain_instances=args.retain_instances)
    header = ["motif_id", "size", "edge_count", "n_real"]
    if args.retain_instances:
        header.append("uniqueness")
    rows = []
    for cid in class_ids(args.size):
        motif = MotifId(args.size, cid)
        row = [motif.id, args.size, motif.edge_count, result.counts.get(motif, 0)]
        if args.retain_instances:
            row.append(uniqueness(result.instances.get(motif, [])))
        rows.append(row)
    rows.sort(key=lambda r: (r[2], r[0]))
    out = Path(args.out)
    if out.parent != Path(""):
        out.parent.mkdir(parents=True, exist_ok=True)
    if args.format == "csv":
        from .report import _write_csv

        _write_csv(out, header, rows)
    else:
        from .report import _write_json

        _write_json(out, {"table": f"counts_{args.size}", "rows": [dict(zip(header, r)) for r in rows]})
    return 0


def _cmd_run(args) -> int:
    cfg = PipelineConfig(
        input_path=args.input,
        sizes=tuple(args.sizes),
        replicates=args.random,
        swap_factor=args.swap_factor,
        preserve_mutual=args.preserve_mutual,
        master_seed=args.seed,
        z_min=args.z_min,
        mfactor_min=args.mfactor_min,
        uniq_min=args.uniq_min,
        out_dir=args.out_dir,
        formats=tuple(args.formats),
    )
    bundle = run_pipeline(cfg)
    for fmt in cfg.formats:
        if fmt in ("csv", "json"):
            emit_tables(bundle, fmt, cfg.out_dir)
        else:
            for size in sorted(bundle.per_size):
                emit_profile_chart(bundle, size, cfg.out_dir)
    emit_summary(bundle, cfg.out_dir)
    return 0


def _cmd_stability(args) -> int:
    from .report import _write_csv
    from .stability import cycle_summary, stability_class, structural_stability_score

    rows = []
    for cid in class_ids(args.size):
        motif = MotifId(args.size, cid)
        cs = cycle_summary(motif)
        rows.append(
            [
                motif.id,
                args.size,
                cs.edge_count,
                cs.mutual_pairs,
                cs.has_long_cycle,
                structural_stability_score(motif),
                stability_class(motif),
            ]
        )
    rows.sort(key=lambda r: (r[2], r[0]))
    out = Path(args.out)
    if out.parent != Path(""):
        out.parent.mkdir(parents=True, exist_ok=True)
    _write_csv(
        out,
        ["motif_id", "size", "edge_count", "mutual_pairs", "has_long_cycle", "sss", "stability_class"],
        rows,
    )
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code in (0, None) else e.code
    try:
        return args.func(args)
    except PipelineError as e:
        print(f"motifstab: {e}", file=sys.stderr)
        # failures up to the census stage are input-data problems
        if e.stage in ("read", "parse", "normalize", "census"):
            return 2
        return 3
    except (ParseError, EmptyGraphError, OSError, UnicodeDecodeError, ValueError) as e:
        print(f"motifstab: {e}", file=sys.stderr)
        return 2
    except Exception:
        traceback.print_exc()
        return 3


if __name__ == "__main__":
    sys.exit(main())
