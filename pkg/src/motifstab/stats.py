"""Nonparametric statistics: Kruskal-Wallis, box-and-whisker summaries with
1xIQR whiskers, and Spearman rank correlation."""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from statistics import median
from typing import Mapping, Sequence

from scipy.special import gammaincc
from scipy.stats import rankdata

from .census import MotifId
from .significance import SignificanceRecord

# (size, edge_count) -> stability class -> defined Z scores
GroupedScores = dict[tuple[int, int], dict[str, list[float]]]


@dataclass(frozen=True)
class BoxSummary:
    q1: float
    q3: float
    mean: float
    whisker_low: float
    whisker_high: float
    outliers: tuple[float, ...]


def chi_squared_sf(x: float, df: int) -> float:
    """Chi-squared survival function via the regularized incomplete gamma."""
    if x < 0:
        raise ValueError("x must be >= 0")
    if df < 1:
        raise ValueError("df must be >= 1")
    return float(gammaincc(df / 2.0, x / 2.0))


def kruskal_wallis(groups: Sequence[Sequence[float]]) -> tuple[float, int, float]:
    """Kruskal-Wallis H with midranks and tie correction; p from chi-squared.

    Returns (H, df, p).  All-identical samples give H = 0, p = 1.
    """
    groups = [list(g) for g in groups]
    if len(groups) < 2 or any(len(g) == 0 for g in groups):
        raise ValueError("need at least 2 non-empty groups")
    n_total = sum(len(g) for g in groups)
    if n_total < 3:
        raise ValueError("need at least 3 values in total")
    pooled = [x for g in groups for x in g]
    ranks = rankdata(pooled)
    df = len(groups) - 1
    h = 0.0
    start = 0
    for g in groups:
        r_sum = float(ranks[start : start + len(g)].sum())
        h += r_sum * r_sum / len(g)
        start += len(g)
    h = 12.0 / (n_total * (n_total + 1)) * h - 3.0 * (n_total + 1)
    tie_sum = sum(t * t * t - t for t in Counter(pooled).values())
    correction = 1.0 - tie_sum / (n_total**3 - n_total)
    if correction == 0.0:
        return 0.0, df, 1.0
    h = max(h / correction, 0.0)
    return h, df, chi_squared_sf(h, df)


def box_whisker(samples: Sequence[float]) -> BoxSummary:
    """Tukey-hinge quartiles with whiskers spanning 1xIQR (not 1.5).

    Whiskers reach the most extreme data points inside the fences but never
    retreat inside the box: with no data between a fence and its hinge the
    whisker collapses onto the hinge.
    """
    n = len(samples)
    if n < 1:
        raise ValueError("need at least one sample")
    s = sorted(samples)
    half = (n + 1) // 2  # odd n: median sits in both halves
    q1 = float(median(s[:half]))
    q3 = float(median(s[n // 2 :]))
    iqr = q3 - q1
    lo_fence = q1 - iqr
    hi_fence = q3 + iqr
    within = [x for x in s if lo_fence <= x <= hi_fence]
    outliers = tuple(x for x in s if x < lo_fence or x > hi_fence)
    return BoxSummary(
        q1=q1,
        q3=q3,
        mean=math.fsum(s) / n,
        whisker_low=float(min(min(within), q1)),
        whisker_high=float(max(max(within), q3)),
        outliers=outliers,
    )


def spearman(x: Sequence[float], y: Sequence[float]) -> float | None:
    """Spearman rank correlation with midranks; None when either rank
    vector has zero variance."""
    if len(x) != len(y):
        raise ValueError("x and y must have the same length")
    if len(x) < 2:
        raise ValueError("need at least two observations")
    rx = rankdata(list(x))
    ry = rankdata(list(y))
    n = len(x)
    mx = math.fsum(rx) / n
    my = math.fsum(ry) / n
    dx = [r - mx for r in rx]
    dy = [r - my for r in ry]
    sxx = math.fsum(d * d for d in dx)
    syy = math.fsum(d * d for d in dy)
    if sxx == 0.0 or syy == 0.0:
        return None
    sxy = math.fsum(a * b for a, b in zip(dx, dy))
    return sxy / math.sqrt(sxx * syy)


def group_scores(
    records: Sequence[SignificanceRecord], classes: Mapping[MotifId, str]
) -> GroupedScores:
    """Defined Z scores keyed by (size, edge_count) then stability class."""
    grouped: GroupedScores = {}
    for r in records:
        if r.z is None:
            continue
        key = (r.motif.size, r.edge_count)
        grouped.setdefault(key, {}).setdefault(classes[r.motif], []).append(r.z)
    return grouped
