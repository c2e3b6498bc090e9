"""Degree-preserving randomization and ensemble motif statistics.

Replicates are produced by Markov-chain edge swapping: each attempt picks
two directed edges (a->b), (c->d) and proposes (a->d), (c->b), rejecting
anything that would create a self-loop or duplicate edge.  With mutual-edge
preservation on, single edges only swap with single edges (and must not
create a new mutual pair), while mutual pairs are rewired as whole units
against other mutual pairs.  Every replicate therefore keeps each node's
in and out degree exactly, and the mutual-pair count when the flag is on.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .census import MotifId, census, class_ids
from .graphio import DirectedGraph

_SWAP_CHUNK = 1 << 16


@dataclass(frozen=True)
class RandomizationConfig:
    replicates: int = 100
    swap_factor: int = 100
    preserve_mutual: bool = True
    master_seed: int = 0

    def __post_init__(self):
        if self.replicates < 1:
            raise ValueError("replicates must be >= 1")
        if self.swap_factor < 1:
            raise ValueError("swap_factor must be >= 1")


@dataclass(frozen=True)
class EnsembleStatistics:
    """Per-motif mean and population SD of counts over the replicates."""

    size: int
    replicates: int
    mean: dict[MotifId, float]
    sd: dict[MotifId, float]
    raw: dict[MotifId, tuple[int, ...]]

    @classmethod
    def from_raw(cls, size: int, raw: Mapping[MotifId, Sequence[int]]) -> "EnsembleStatistics":
        reps = {len(v) for v in raw.values()}
        if len(reps) != 1:
            raise ValueError("all motifs need the same number of replicate counts")
        mean = {}
        sd = {}
        for motif, counts in raw.items():
            arr = np.asarray(counts, dtype=float)
            mean[motif] = float(arr.mean())
            sd[motif] = float(arr.std(ddof=0))
        return cls(
            size=size,
            replicates=reps.pop(),
            mean=mean,
            sd=sd,
            raw={m: tuple(v) for m, v in raw.items()},
        )


def _replicate_rng(master_seed: int, replicate_index: int) -> np.random.Generator:
    # one independent, reproducible stream per replicate
    seq = np.random.SeedSequence(entropy=master_seed, spawn_key=(replicate_index,))
    return np.random.Generator(np.random.PCG64(seq))


def randomize_once(g: DirectedGraph, cfg: RandomizationConfig, replicate_index: int) -> DirectedGraph:
    """One degree-preserving randomized replicate of g.

    Deterministic in (g, cfg.master_seed, replicate_index).  A graph with no
    legal swaps comes back with its edge set unchanged.
    """
    edges: list[tuple[int, int]] = list(g.edges)
    m = len(edges)
    if m < 2:
        return DirectedGraph.from_edges(g.node_count, edges)
    pos: dict[tuple[int, int], int] = {e: i for i, e in enumerate(edges)}
    rng = _replicate_rng(cfg.master_seed, replicate_index)
    attempts = cfg.swap_factor * m
    preserve = cfg.preserve_mutual
    done = 0
    while done < attempts:
        take = min(_SWAP_CHUNK, attempts - done)
        done += take
        picks = rng.integers(0, m, size=(take, 2)).tolist()
        for i1, i2 in picks:
            if i1 == i2:
                continue
            a, b = edges[i1]
            c, d = edges[i2]
            if preserve:
                first_mutual = (b, a) in pos
                if first_mutual != ((d, c) in pos):
                    continue
                if first_mutual:
                    # rewire two mutual pairs as units: {a,b},{c,d} -> {a,d},{c,b}
                    if a == c or a == d or b == c or b == d:
                        continue
                    if (a, d) in pos or (d, a) in pos or (c, b) in pos or (b, c) in pos:
                        continue
                    j1 = pos[(b, a)]
                    j2 = pos[(d, c)]
                    del pos[(a, b)], pos[(b, a)], pos[(c, d)], pos[(d, c)]
                    edges[i1] = (a, d)
                    edges[j1] = (d, a)
                    edges[i2] = (c, b)
                    edges[j2] = (b, c)
                    pos[(a, d)] = i1
                    pos[(d, a)] = j1
                    pos[(c, b)] = i2
                    pos[(b, c)] = j2
                else:
                    if a == d or c == b:
                        continue
                    if (a, d) in pos or (c, b) in pos:
                        continue
                    # a new edge with its reverse present would change the mutual count
                    if (d, a) in pos or (b, c) in pos:
                        continue
                    del pos[(a, b)], pos[(c, d)]
                    edges[i1] = (a, d)
                    edges[i2] = (c, b)
                    pos[(a, d)] = i1
                    pos[(c, b)] = i2
            else:
                if a == d or c == b:
                    continue
                if (a, d) in pos or (c, b) in pos:
                    continue
                del pos[(a, b)], pos[(c, d)]
                edges[i1] = (a, d)
                edges[i2] = (c, b)
                pos[(a, d)] = i1
                pos[(c, b)] = i2
    return DirectedGraph.from_edges(g.node_count, edges)


def ensemble_census_multi(
    g: DirectedGraph, cfg: RandomizationConfig, sizes: Iterable[int]
) -> dict[int, EnsembleStatistics]:
    """Ensemble statistics for several sizes sharing one set of replicates.

    Identical to calling ensemble_census per size (replicate graphs depend
    only on (g, cfg, replicate_index)) but randomizes each replicate once.
    """
    size_list = sorted(set(sizes))
    ids = {s: class_ids(s) for s in size_list}
    acc: dict[int, list[list[int]]] = {s: [[] for _ in ids[s]] for s in size_list}
    for r in range(cfg.replicates):
        rg = randomize_once(g, cfg, r)
        for s in size_list:
            counts = census(rg, s).counts
            flat = {motif.id: cnt for motif, cnt in counts.items()}
            for k, cid in enumerate(ids[s]):
                acc[s][k].append(flat.get(cid, 0))
    out = {}
    for s in size_list:
        raw = {MotifId(s, cid): acc[s][k] for k, cid in enumerate(ids[s])}
        out[s] = EnsembleStatistics.from_raw(s, raw)
    return out


def ensemble_census(g: DirectedGraph, cfg: RandomizationConfig, size: int) -> EnsembleStatistics:
    """Counts aggregated over cfg.replicates randomized replicates.

    Motifs absent from a replicate count as 0; SD is the population SD.
    """
    return ensemble_census_multi(g, cfg, (size,))[size]
