"""Structural-stability scoring of motifs from their feedback-loop structure.

A motif is modeled as the sign pattern of a Jacobian with diagonal fixed at
-1: entry (i, j) is nonzero exactly when the motif has edge j -> i.  With a
fully negative diagonal, a sign pattern is qualitatively stable (stable for
every choice of entry magnitudes) iff every 2-node feedback loop has
oppositely signed edges and no directed cycle of length >= 3 exists.  The
stability score is the fraction of uniform random edge-sign assignments
that are qualitatively stable, which collapses to a closed form: 0 when a
long cycle exists, else 2^(-m) for m mutual pairs.  A Monte-Carlo routine
over concrete random matrices cross-checks the qualitative rules through
eigenvalues.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Sequence

import numpy as np

from .census import MotifId, representative_edges

_MC_CHUNK = 4096


@dataclass(frozen=True)
class CycleSummary:
    mutual_pairs: int
    has_long_cycle: bool
    edge_count: int


@dataclass(frozen=True)
class StabilityProfile:
    motif: MotifId
    sss: float
    stability_class: str


def _mutual_pairs(edges: Sequence[tuple[int, int]]) -> list[tuple[int, int]]:
    eset = set(edges)
    return sorted({(min(u, v), max(u, v)) for u, v in edges if (v, u) in eset})


def _long_cycles(edges: Sequence[tuple[int, int]], size: int) -> list[tuple[int, ...]]:
    """All simple directed cycles of length >= 3, as node sequences."""
    eset = set(edges)
    cycles = []
    for length in range(3, size + 1):
        for nodes in combinations(range(size), length):
            first = nodes[0]
            for rest in permutations(nodes[1:]):
                cycle = (first,) + rest
                if all((cycle[i], cycle[(i + 1) % length]) in eset for i in range(length)):
                    cycles.append(cycle)
    return cycles


def cycle_summary(motif: MotifId) -> CycleSummary:
    """Mutual-pair count, presence of any >= 3-cycle, and edge count."""
    edges = representative_edges(motif)
    return CycleSummary(
        mutual_pairs=len(_mutual_pairs(edges)),
        has_long_cycle=bool(_long_cycles(edges, motif.size)),
        edge_count=len(edges),
    )


def structural_stability_score(motif: MotifId) -> float:
    """Fraction of edge-sign assignments whose Jacobian pattern is
    qualitatively stable: 0 with a long cycle, else 2^(-mutual_pairs)."""
    cs = cycle_summary(motif)
    if cs.has_long_cycle:
        return 0.0
    return 2.0 ** (-cs.mutual_pairs)


def stability_class(motif: MotifId) -> str:
    """'I' for acyclic motifs, 'II' for a single 2-loop and nothing else
    cyclic, 'III' for long cycles or multiple 2-loops."""
    cs = cycle_summary(motif)
    if cs.has_long_cycle:
        return "III"
    if cs.mutual_pairs == 0:
        return "I"
    if cs.mutual_pairs == 1:
        return "II"
    return "III"


def sign_assignment_stable(motif: MotifId, signs: Sequence[int]) -> bool:
    """Qualitative-stability test for one sign assignment.

    signs aligns with representative_edges(motif), entries +1 or -1.  True
    iff the motif has no long cycle and every mutual pair carries opposite
    signs (a negative 2-loop).
    """
    edges = representative_edges(motif)
    if len(signs) != len(edges):
        raise ValueError(f"need {len(edges)} signs, got {len(signs)}")
    if any(s not in (-1, 1) for s in signs):
        raise ValueError("signs must be +1 or -1")
    if _long_cycles(edges, motif.size):
        return False
    sign_of = dict(zip(edges, signs))
    for u, v in _mutual_pairs(edges):
        if sign_of[(u, v)] * sign_of[(v, u)] > 0:
            return False
    return True


def sample_jacobians(
    motif: MotifId,
    count: int,
    magnitude_range: tuple[float, float],
    rng: np.random.Generator,
) -> np.ndarray:
    """Stack of `count` Jacobians: diagonal -1, uniform +-1 signs, and
    magnitudes log-uniform on the given range."""
    lo, hi = magnitude_range
    if not (0 < lo <= hi):
        raise ValueError("magnitude_range must satisfy 0 < lo <= hi")
    edges = representative_edges(motif)
    k = motif.size
    ne = len(edges)
    signs = rng.integers(0, 2, size=(count, ne)) * 2 - 1
    mags = np.exp(rng.uniform(math.log(lo), math.log(hi), size=(count, ne)))
    out = np.zeros((count, k, k))
    out[:, np.arange(k), np.arange(k)] = -1.0
    for idx, (u, v) in enumerate(edges):
        out[:, v, u] = signs[:, idx] * mags[:, idx]  # edge u->v influences node v
    return out


def max_real_eigenvalue(matrix: Sequence[Sequence[float]]) -> float:
    """Largest real part over the eigenvalues of a small (k <= 4) matrix."""
    a = np.asarray(matrix, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] > 4:
        raise ValueError("expected a square matrix with k <= 4")
    return float(np.linalg.eigvals(a).real.max())


def sss_monte_carlo(
    motif: MotifId,
    samples: int,
    magnitude_range: tuple[float, float] = (1e-3, 1e3),
    seed: int = 0,
) -> float:
    """Monte-Carlo fraction of sampled Jacobians with all eigenvalues in the
    open left half-plane.  Upper-bounds the closed-form score: finite
    magnitudes can miss instabilities that some other magnitude would expose.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))
    stable = 0
    left = samples
    while left > 0:
        take = min(_MC_CHUNK, left)
        left -= take
        batch = sample_jacobians(motif, take, magnitude_range, rng)
        max_re = np.linalg.eigvals(batch).real.max(axis=1)
        stable += int((max_re < 0).sum())
    return stable / samples
