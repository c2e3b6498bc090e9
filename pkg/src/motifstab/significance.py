"""Z scores, Mfactor, normalized significance profiles, and motif filtering."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .census import CensusResult, MotifId, class_ids, uniqueness
from .nullmodel import EnsembleStatistics


@dataclass(frozen=True)
class SignificanceRecord:
    """One row of the significance table.

    z is None when the ensemble SD is zero (no spread to score against).
    mfactor is math.inf when the motif occurs in the real graph but never in
    the ensemble, and 1.0 when it occurs in neither.
    """

    motif: MotifId
    n_real: int
    rand_mean: float
    rand_sd: float
    z: float | None
    mfactor: float
    uniqueness: int | None
    edge_count: int


@dataclass(frozen=True)
class ProfileVector:
    """Normalized Z scores: each entry is z_i / sqrt(sum of z_j^2)."""

    size: int
    scores: dict[MotifId, float]


def z_scores(real: CensusResult, ensemble: EnsembleStatistics) -> list[SignificanceRecord]:
    """One record per canonical class of the size, sorted by (edges, id)."""
    if real.size != ensemble.size:
        raise ValueError(f"size mismatch: census {real.size} vs ensemble {ensemble.size}")
    size = real.size
    records = []
    for cid in class_ids(size):
        motif = MotifId(size, cid)
        n_real = real.counts.get(motif, 0)
        mean = ensemble.mean.get(motif, 0.0)
        sd = ensemble.sd.get(motif, 0.0)
        z = (n_real - mean) / sd if sd > 0 else None
        if mean > 0:
            mfactor = n_real / mean
        elif n_real > 0:
            mfactor = math.inf
        else:
            mfactor = 1.0
        uniq = None
        if real.instances is not None:
            uniq = uniqueness(real.instances.get(motif, []))
        records.append(
            SignificanceRecord(
                motif=motif,
                n_real=n_real,
                rand_mean=mean,
                rand_sd=sd,
                z=z,
                mfactor=mfactor,
                uniqueness=uniq,
                edge_count=motif.edge_count,
            )
        )
    records.sort(key=lambda r: (r.edge_count, r.motif.id))
    return records


def normalized_profile(records: Sequence[SignificanceRecord]) -> ProfileVector:
    """Unit-length Z vector; undefined z counts as 0; all-zero stays all-zero."""
    sizes = {r.motif.size for r in records}
    if len(sizes) != 1:
        raise ValueError("records must all have the same size")
    zs = [(r.motif, r.z if r.z is not None else 0.0) for r in records]
    norm = math.sqrt(math.fsum(z * z for _, z in zs))
    if norm == 0.0:
        return ProfileVector(size=sizes.pop(), scores={m: 0.0 for m, _ in zs})
    return ProfileVector(size=sizes.pop(), scores={m: z / norm for m, z in zs})


def motif_filter(
    records: Iterable[SignificanceRecord],
    z_min: float = 2.0,
    mfactor_min: float = 1.1,
    uniq_min: int = 4,
) -> set[MotifId]:
    """Motifs with z > z_min, mfactor > mfactor_min, uniqueness >= uniq_min.

    The z and mfactor comparisons are strict; infinite mfactor passes.
    """
    selected = set()
    for r in records:
        if r.uniqueness is None:
            raise ValueError(f"record for {r.motif} lacks uniqueness (census run without instances)")
        if r.z is not None and r.z > z_min and r.mfactor > mfactor_min and r.uniqueness >= uniq_min:
            selected.add(r.motif)
    return selected
