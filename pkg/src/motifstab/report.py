"""Pipeline orchestration and table/chart emission.

run_pipeline drives parse -> census -> randomized ensemble -> significance
-> stability -> statistics for each requested size and collects everything
into a ReportBundle.  The emit_* functions serialize the bundle: CSV/JSON
tables with a fixed row order (edge count ascending, then canonical id) and
static SVG charts.  All outputs are a pure function of (input bytes,
config), so reruns are byte-identical for CSV and JSON.
"""
from __future__ import annotations

import csv
import hashlib
import json
import math
import platform
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .census import CensusResult, MotifId, census, class_ids
from .graphio import NormalizationReport, DirectedGraph, normalize, parse_edge_list
from .nullmodel import EnsembleStatistics, RandomizationConfig, ensemble_census_multi
from .significance import ProfileVector, SignificanceRecord, motif_filter, normalized_profile, z_scores
from .stability import StabilityProfile, cycle_summary, stability_class, structural_stability_score
from .stats import BoxSummary, GroupedScores, box_whisker, group_scores, kruskal_wallis, spearman

_FORMATS = ("csv", "json", "svg")


class PipelineError(RuntimeError):
    """A pipeline stage failed; carries the stage name."""

    def __init__(self, stage: str, cause: BaseException):
        super().__init__(f"stage '{stage}': {cause}")
        self.stage = stage
        self.__cause__ = cause


@dataclass(frozen=True)
class PipelineConfig:
    input_path: str
    sizes: tuple[int, ...] = (3, 4)
    replicates: int = 100
    swap_factor: int = 100
    preserve_mutual: bool = True
    master_seed: int = 0
    z_min: float = 2.0
    mfactor_min: float = 1.1
    uniq_min: int = 4
    out_dir: str = "."
    formats: tuple[str, ...] = ("csv", "json", "svg")

    def __post_init__(self):
        if not self.sizes or any(s not in (3, 4) for s in self.sizes):
            raise ValueError("sizes must be a non-empty subset of {3, 4}")
        if not self.formats or any(f not in _FORMATS for f in self.formats):
            raise ValueError(f"formats must be a non-empty subset of {_FORMATS}")

    def randomization(self) -> RandomizationConfig:
        return RandomizationConfig(
            replicates=self.replicates,
            swap_factor=self.swap_factor,
            preserve_mutual=self.preserve_mutual,
            master_seed=self.master_seed,
        )


@dataclass(frozen=True)
class SizeReport:
    size: int
    census: CensusResult
    ensemble: EnsembleStatistics
    records: list[SignificanceRecord]
    profile: ProfileVector
    stability: list[StabilityProfile]
    selected: set[MotifId]
    grouped: GroupedScores
    kw_by_edges: dict[int, tuple[float, int, float] | None]
    box_by_cell: dict[tuple[int, str], BoxSummary | None]
    spearman_overall: float | None
    spearman_by_edges: dict[int, float | None]


@dataclass(frozen=True)
class ReportBundle:
    config: PipelineConfig
    input_sha256: str
    graph: DirectedGraph
    normalization: NormalizationReport
    per_size: dict[int, SizeReport]
    versions: dict[str, str] = field(default_factory=dict)


def _stability_table(size: int) -> list[StabilityProfile]:
    rows = []
    for cid in class_ids(size):
        motif = MotifId(size, cid)
        rows.append(
            StabilityProfile(
                motif=motif,
                sss=structural_stability_score(motif),
                stability_class=stability_class(motif),
            )
        )
    rows.sort(key=lambda p: (p.motif.edge_count, p.motif.id))
    return rows


def _structural_cells(size: int) -> dict[int, dict[str, list[MotifId]]]:
    cells: dict[int, dict[str, list[MotifId]]] = {}
    for row in _stability_table(size):
        cells.setdefault(row.motif.edge_count, {}).setdefault(row.stability_class, []).append(row.motif)
    return cells


def _size_report(
    size: int,
    real: CensusResult,
    ensemble: EnsembleStatistics,
    cfg: PipelineConfig,
) -> SizeReport:
    records = z_scores(real, ensemble)
    profile = normalized_profile(records)
    stability = _stability_table(size)
    class_of = {p.motif: p.stability_class for p in stability}
    sss_of = {p.motif: p.sss for p in stability}
    selected = motif_filter(records, cfg.z_min, cfg.mfactor_min, cfg.uniq_min)
    grouped = group_scores(records, class_of)
    n_real_of = {r.motif: r.n_real for r in records}

    cells = _structural_cells(size)
    kw_by_edges: dict[int, tuple[float, int, float] | None] = {}
    box_by_cell: dict[tuple[int, str], BoxSummary | None] = {}
    spearman_by_edges: dict[int, float | None] = {}
    for ec in sorted(cells):
        by_class = grouped.get((size, ec), {})
        class_names = sorted(cells[ec])
        samples = [by_class[c] for c in class_names if by_class.get(c)]
        if len(samples) >= 2 and sum(len(s) for s in samples) >= 3:
            kw_by_edges[ec] = kruskal_wallis(samples)
        else:
            kw_by_edges[ec] = None
        for c in class_names:
            scores = by_class.get(c, [])
            box_by_cell[(ec, c)] = box_whisker(scores) if scores else None
        motifs_in_group = [m for c in class_names for m in cells[ec][c]]
        if len(motifs_in_group) >= 2:
            spearman_by_edges[ec] = spearman(
                [sss_of[m] for m in motifs_in_group],
                [math.log10(n_real_of[m] + 1) for m in motifs_in_group],
            )
        else:
            spearman_by_edges[ec] = None
    all_motifs = [p.motif for p in stability]
    spearman_overall = spearman(
        [sss_of[m] for m in all_motifs],
        [math.log10(n_real_of[m] + 1) for m in all_motifs],
    )
    return SizeReport(
        size=size,
        census=real,
        ensemble=ensemble,
        records=records,
        profile=profile,
        stability=stability,
        selected=selected,
        grouped=grouped,
        kw_by_edges=kw_by_edges,
        box_by_cell=box_by_cell,
        spearman_overall=spearman_overall,
        spearman_by_edges=spearman_by_edges,
    )


def run_pipeline(cfg: PipelineConfig) -> ReportBundle:
    """Execute the full analysis and return the in-memory bundle."""
    try:
        data = Path(cfg.input_path).read_bytes()
    except OSError as e:
        raise PipelineError("read", e)
    sha = hashlib.sha256(data).hexdigest()
    try:
        raw = parse_edge_list(data.decode("utf-8-sig"))
    except (UnicodeDecodeError, ValueError) as e:
        raise PipelineError("parse", e)
    try:
        graph, norm = normalize(raw)
    except ValueError as e:
        raise PipelineError("normalize", e)

    sizes = tuple(sorted(set(cfg.sizes)))
    try:
        real = {s: census(graph, s, retain_instances=True) for s in sizes}
    except ValueError as e:
        raise PipelineError("census", e)
    try:
        ensembles = ensemble_census_multi(graph, cfg.randomization(), sizes)
    except ValueError as e:
        raise PipelineError("ensemble", e)
    per_size = {}
    for s in sizes:
        try:
            per_size[s] = _size_report(s, real[s], ensembles[s], cfg)
        except ValueError as e:
            raise PipelineError(f"significance[{s}]", e)

    from . import __version__

    versions = {
        "motifstab": __version__,
        "python": platform.python_version(),
        "numpy": np.__version__,
    }
    return ReportBundle(
        config=cfg,
        input_sha256=sha,
        graph=graph,
        normalization=norm,
        per_size=per_size,
        versions=versions,
    )


# ---------------------------------------------------------------- emission

def _cell(x) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    return str(x)


def _jsonable(x):
    if isinstance(x, float) and math.isinf(x):
        return "inf"
    return x


def _write_csv(path: Path, header: list[str], rows: list[list]) -> None:
    with path.open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_cell(x) for x in row])


def _write_json(path: Path, obj) -> None:
    with path.open("w", encoding="utf-8", newline="") as fh:
        json.dump(obj, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _counts_rows(sr: SizeReport) -> list[list]:
    return [[r.motif.id, r.motif.size, r.edge_count, r.n_real] for r in sr.records]


def _significance_rows(sr: SizeReport) -> list[list]:
    rows = []
    for r in sr.records:
        rows.append(
            [
                r.motif.id,
                r.motif.size,
                r.edge_count,
                r.n_real,
                r.rand_mean,
                r.rand_sd,
                r.z,
                r.mfactor,
                r.uniqueness,
                sr.profile.scores[r.motif],
                r.motif in sr.selected,
            ]
        )
    return rows


def _stability_rows(sr: SizeReport) -> list[list]:
    rows = []
    for p in sr.stability:
        cs = cycle_summary(p.motif)
        rows.append(
            [
                p.motif.id,
                p.motif.size,
                cs.edge_count,
                cs.mutual_pairs,
                cs.has_long_cycle,
                p.sss,
                p.stability_class,
            ]
        )
    return rows


def _stats_rows(sr: SizeReport) -> list[list]:
    rows = []
    cells = _structural_cells(sr.size)
    for ec in sorted(cells):
        kw = sr.kw_by_edges.get(ec)
        kw_h, kw_df, kw_p = kw if kw is not None else (None, None, None)
        for cls in sorted(cells[ec]):
            box = sr.box_by_cell.get((ec, cls))
            n = len(sr.grouped.get((sr.size, ec), {}).get(cls, []))
            if box is None:
                rows.append([sr.size, ec, cls, n, None, None, None, None, None, kw_h, kw_df, kw_p])
            else:
                rows.append(
                    [
                        sr.size,
                        ec,
                        cls,
                        n,
                        box.q1,
                        box.q3,
                        box.mean,
                        box.whisker_low,
                        box.whisker_high,
                        kw_h,
                        kw_df,
                        kw_p,
                    ]
                )
    return rows


_SIGNIFICANCE_HEADER = [
    "motif_id", "size", "edge_count", "n_real", "rand_mean", "rand_sd",
    "z", "mfactor", "uniqueness", "n_z", "selected",
]
_STABILITY_HEADER = [
    "motif_id", "size", "edge_count", "mutual_pairs", "has_long_cycle", "sss", "stability_class",
]
_STATS_HEADER = [
    "size", "edge_count", "class", "n", "q1", "q3", "mean",
    "whisker_low", "whisker_high", "kw_H", "kw_df", "kw_p",
]
_COUNTS_HEADER = ["motif_id", "size", "edge_count", "n_real"]


def emit_tables(bundle: ReportBundle, fmt: str, out_dir: str | Path) -> list[Path]:
    """Write the per-size tables in one format; rows sorted by (edges, id)."""
    if fmt not in ("csv", "json"):
        raise ValueError("fmt must be 'csv' or 'json'")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for size, sr in sorted(bundle.per_size.items()):
        tables = [
            (f"counts_{size}", _COUNTS_HEADER, _counts_rows(sr)),
            (f"significance_{size}", _SIGNIFICANCE_HEADER, _significance_rows(sr)),
            (f"stability_{size}", _STABILITY_HEADER, _stability_rows(sr)),
            (f"stats_{size}", _STATS_HEADER, _stats_rows(sr)),
        ]
        for name, header, rows in tables:
            if fmt == "csv":
                path = out / f"{name}.csv"
                _write_csv(path, header, rows)
            else:
                path = out / f"{name}.json"
                json_rows = [
                    {key: _jsonable(val) for key, val in zip(header, row)} | {"ordinal": i}
                    for i, row in enumerate(rows)
                ]
                _write_json(path, {"table": name, "rows": json_rows})
            written.append(path)
    return written


def emit_summary(bundle: ReportBundle, out_dir: str | Path) -> Path:
    """Write summary.json: input hash, config echo, seed, class counts, and
    the Spearman occurrence-stability correlations."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    sizes_obj = {}
    for size, sr in sorted(bundle.per_size.items()):
        by_class: dict[str, int] = {}
        for p in sr.stability:
            by_class[p.stability_class] = by_class.get(p.stability_class, 0) + 1
        sizes_obj[str(size)] = {
            "class_count": len(sr.records),
            "classes_by_stability": by_class,
            "total_connected_subgraphs": sr.census.total(),
            "selected_motifs": sorted(m.id for m in sr.selected),
            "spearman_sss_occurrence": {
                "overall": sr.spearman_overall,
                "by_edge_count": {str(ec): rho for ec, rho in sorted(sr.spearman_by_edges.items())},
            },
            "kruskal_wallis": {
                str(ec): (None if kw is None else {"H": kw[0], "df": kw[1], "p": kw[2]})
                for ec, kw in sorted(sr.kw_by_edges.items())
            },
        }
    obj = {
        "input": {
            "path": str(bundle.config.input_path),
            "sha256": bundle.input_sha256,
            "nodes": bundle.graph.node_count,
            "edges": bundle.graph.edge_count,
            "self_loops_removed": bundle.normalization.self_loops_removed,
            "duplicates_removed": bundle.normalization.duplicates_removed,
        },
        "config": {
            "sizes": list(bundle.config.sizes),
            "replicates": bundle.config.replicates,
            "swap_factor": bundle.config.swap_factor,
            "preserve_mutual": bundle.config.preserve_mutual,
            "z_min": bundle.config.z_min,
            "mfactor_min": bundle.config.mfactor_min,
            "uniq_min": bundle.config.uniq_min,
            "formats": list(bundle.config.formats),
        },
        "seed": bundle.config.master_seed,
        "sizes": sizes_obj,
        "versions": bundle.versions,
    }
    path = out / "summary.json"
    _write_json(path, obj)
    return path


def emit_profile_chart(bundle: ReportBundle, size: int, out_dir: str | Path) -> list[Path]:
    """Write the three SVG charts for one size: normalized-Z profile bars,
    occurrence scatter, and per-edge-group box plots split by class."""
    from . import charts

    sr = bundle.per_size[size]
    return charts.emit_size_charts(sr, Path(out_dir))
