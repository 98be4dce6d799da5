"""Command-line front end: CSV in, skill matrix CSV out, plus kernel benchmarks."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from ._parallel import resolve_workers
from .bench import bench_rows_to_csv, run_bench
from .ccm import CcmConfig, SkillMatrix, ccm_pairwise
from .errors import CrossmapError, ParameterError
from .io import load_csv, write_skill_matrix


@dataclass
class RunManifest:
    """Config echo and phase timings for one pipeline invocation."""

    input: str
    output: str
    e_max: int
    tau: int
    tp_search: int
    emit_predictions: bool
    workers: int
    n_series: int
    series_length: int
    distinct_e: int
    tables_built: int
    seconds_optimal_e: float
    seconds_table_build: float
    seconds_lookup: float


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="crossmap",
        description="Pairwise convergent cross mapping over a columns-as-series CSV, "
                    "or kernel micro-benchmarks.",
    )
    parser.add_argument("--input", help="input CSV (header of names, one time step per row)")
    parser.add_argument("--output", help="output path (skill CSV, or timing CSV for --bench)")
    parser.add_argument("--emax", type=int, default=20, help="largest embedding dimension searched")
    parser.add_argument("--tau", type=int, default=1, help="embedding lag in samples")
    parser.add_argument("--tp", type=int, default=1,
                        help="forecast horizon for the optimal-dimension search")
    parser.add_argument("--workers", type=int, default=None,
                        help="worker threads (default: CROSSMAP_WORKERS or all cores)")
    parser.add_argument("--emit-predictions", action="store_true",
                        help="also write predicted series next to the skill CSV (.npz)")
    parser.add_argument("--bench", choices=("knn", "lookup"), help="run a kernel benchmark instead")
    parser.add_argument("--length", type=int, default=4000, help="benchmark series length")
    parser.add_argument("--count", type=int, default=1000, help="benchmark target count (lookup)")
    parser.add_argument("--erange", default="1:20", help="benchmark dimension range, LO:HI")
    parser.add_argument("--seed", type=int, default=0, help="benchmark data seed")
    parser.add_argument("--allow-large", action="store_true",
                        help="lift the desk-scale size bounds on benchmarks")
    return parser


def _parse_erange(text: str) -> tuple[int, int]:
    parts = text.split(":")
    try:
        if len(parts) == 1:
            single = int(parts[0])
            return single, single
        if len(parts) == 2:
            return int(parts[0]), int(parts[1])
    except ValueError:
        pass
    raise ParameterError(f"bad --erange {text!r}; expected LO:HI")


def run_ccm(input_path: str, output_path: str, cfg: CcmConfig,
            workers: int) -> tuple[SkillMatrix, RunManifest]:
    """Load, cross-map, and serialize; returns the in-memory matrix and manifest."""
    data = load_csv(input_path)
    matrix = ccm_pairwise(data, cfg, workers=workers)
    write_skill_matrix(matrix, output_path)
    if cfg.emit_predictions and matrix.predictions is not None:
        arrays = {f"{matrix.names[lib]}->{matrix.names[tgt]}": series
                  for (lib, tgt), series in matrix.predictions.items()}
        np.savez(Path(output_path).with_suffix(".predictions.npz"), **arrays)
    stats = matrix.stats
    manifest = RunManifest(
        input=str(input_path), output=str(output_path),
        e_max=cfg.e_max, tau=cfg.tau, tp_search=cfg.tp_search,
        emit_predictions=cfg.emit_predictions, workers=workers,
        n_series=stats.n_series, series_length=stats.series_length,
        distinct_e=stats.distinct_e, tables_built=stats.tables_built,
        seconds_optimal_e=round(stats.seconds_optimal_e, 6),
        seconds_table_build=round(stats.seconds_table_build, 6),
        seconds_lookup=round(stats.seconds_lookup, 6),
    )
    return matrix, manifest


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        workers = resolve_workers(args.workers)
        if args.bench:
            rows = run_bench(args.bench, length=args.length, count=args.count,
                             e_range=_parse_erange(args.erange), seed=args.seed,
                             workers=workers, allow_large=args.allow_large)
            text = bench_rows_to_csv(rows)
            if args.output:
                Path(args.output).write_text(text, encoding="utf-8")
            else:
                sys.stdout.write(text)
            return 0
        if not args.input or not args.output:
            print("error: --input and --output are required unless --bench is given",
                  file=sys.stderr)
            return 2
        cfg = CcmConfig(e_max=args.emax, tau=args.tau, tp_search=args.tp,
                        emit_predictions=args.emit_predictions)
        _, manifest = run_ccm(args.input, args.output, cfg, workers)
        print(json.dumps(asdict(manifest)))
        return 0
    except (CrossmapError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
