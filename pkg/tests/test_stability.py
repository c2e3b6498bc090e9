import math
from itertools import product

import numpy as np
import pytest

from motifstab.census import MotifId, class_ids, enumerate_classes, representative_edges
from motifstab.stability import (
    CycleSummary,
    cycle_summary,
    max_real_eigenvalue,
    sample_jacobians,
    sign_assignment_stable,
    sss_monte_carlo,
    stability_class,
    structural_stability_score,
)

ALL_MOTIFS = [MotifId(3, cid) for cid in class_ids(3)] + [MotifId(4, cid) for cid in class_ids(4)]


def test_cycle_summary_examples():
    assert cycle_summary(MotifId(3, 38)) == CycleSummary(0, False, 3)
    assert cycle_summary(MotifId(3, 74)) == CycleSummary(1, False, 3)
    assert cycle_summary(MotifId(3, 110)) == CycleSummary(2, True, 5)


@pytest.mark.parametrize(
    "cid,expected",
    [(38, 1.0), (74, 0.5), (98, 0.0), (78, 0.25)],
)
def test_sss_closed_form_triads(cid, expected):
    assert structural_stability_score(MotifId(3, cid)) == expected


def test_stability_class_partition():
    groups = {"I": set(), "II": set(), "III": set()}
    for motif in enumerate_classes(3):
        groups[stability_class(motif)].add(motif.id)
    assert groups["I"] == {6, 12, 36, 38}
    assert groups["II"] == {14, 46, 74, 108}
    assert groups["III"] == {78, 98, 102, 110, 238}


def test_four_node_dag_2190_is_class_one():
    motif = MotifId(4, 2190)
    assert stability_class(motif) == "I"
    assert structural_stability_score(motif) == 1.0


def test_sss_closed_form_matches_sign_enumeration():
    # exhaustive sign assignments per class; fraction accepted must equal 2^-m
    # (or 0 with a long cycle)
    for motif in ALL_MOTIFS:
        edges = representative_edges(motif)
        accepted = sum(
            1
            for signs in product((-1, 1), repeat=len(edges))
            if sign_assignment_stable(motif, signs)
        )
        assert accepted / 2 ** len(edges) == structural_stability_score(motif)


def test_sss_values_are_powers_of_two_or_zero():
    for motif in ALL_MOTIFS:
        sss = structural_stability_score(motif)
        cs = cycle_summary(motif)
        if cs.has_long_cycle:
            assert sss == 0.0
        else:
            assert sss == 2.0 ** (-cs.mutual_pairs)
        assert (sss == 1.0) == (stability_class(motif) == "I")


def test_sign_assignment_validation():
    with pytest.raises(ValueError):
        sign_assignment_stable(MotifId(3, 38), [1, 1])
    with pytest.raises(ValueError):
        sign_assignment_stable(MotifId(3, 38), [1, 0, 1])


def test_monte_carlo_acyclic_exact():
    assert sss_monte_carlo(MotifId(3, 38), 5000, seed=7) == 1.0


def test_monte_carlo_single_loop_wide_range():
    est = sss_monte_carlo(MotifId(3, 74), 100_000, (1e-3, 1e3), seed=11)
    assert abs(est - 0.75) <= 0.01


def test_monte_carlo_three_cycle_forced_large():
    assert sss_monte_carlo(MotifId(3, 98), 2000, (10.0, 10.0), seed=3) == 0.0


def test_monte_carlo_deterministic():
    a = sss_monte_carlo(MotifId(3, 74), 10_000, seed=5)
    b = sss_monte_carlo(MotifId(3, 74), 10_000, seed=5)
    assert a == b


def test_monte_carlo_validation():
    with pytest.raises(ValueError):
        sss_monte_carlo(MotifId(3, 38), 0)
    with pytest.raises(ValueError):
        sss_monte_carlo(MotifId(3, 38), 10, (0.0, 1.0))
    with pytest.raises(ValueError):
        sss_monte_carlo(MotifId(3, 38), 10, (2.0, 1.0))


def test_max_real_eigenvalue_examples():
    assert max_real_eigenvalue([[-1, 0, 0], [0, -1, 0], [0, 0, -1]]) == -1.0
    assert abs(max_real_eigenvalue([[-1, 2], [2, -1]]) - 1.0) <= 1e-9
    assert abs(max_real_eigenvalue([[-1, 4], [-1, -1]]) + 1.0) <= 1e-9  # ab = -4
    with pytest.raises(ValueError):
        max_real_eigenvalue([[0.0] * 5 for _ in range(5)])


def test_sample_jacobians_shape_and_pattern():
    motif = MotifId(3, 74)
    rng = np.random.default_rng(0)
    batch = sample_jacobians(motif, 50, (0.5, 2.0), rng)
    assert batch.shape == (50, 3, 3)
    edges = set(representative_edges(motif))
    for i in range(3):
        assert (batch[:, i, i] == -1.0).all()
        for j in range(3):
            if i == j:
                continue
            if (j, i) in edges:  # edge j->i lands at entry (i, j)
                assert (batch[:, i, j] != 0).all()
                assert (np.abs(batch[:, i, j]) >= 0.5).all()
                assert (np.abs(batch[:, i, j]) <= 2.0).all()
            else:
                assert (batch[:, i, j] == 0).all()


def _violating_cycle_edges(motif, signs):
    """Edges of one structure that witnesses qualitative instability."""
    edges = representative_edges(motif)
    sign_of = dict(zip(edges, signs))
    from motifstab.stability import _long_cycles, _mutual_pairs

    cycles = _long_cycles(edges, motif.size)
    if cycles:
        cycle = cycles[0]
        length = len(cycle)
        return {(cycle[i], cycle[(i + 1) % length]) for i in range(length)}
    for u, v in _mutual_pairs(edges):
        if sign_of[(u, v)] * sign_of[(v, u)] > 0:
            return {(u, v), (v, u)}
    return None


def test_constructive_destabilization_all_triads():
    # every rejected sign pattern has a concrete unstable magnitude choice:
    # 1e3 on one violating cycle, 1e-3 elsewhere
    for cid in class_ids(3):
        motif = MotifId(3, cid)
        edges = representative_edges(motif)
        for signs in product((-1, 1), repeat=len(edges)):
            if sign_assignment_stable(motif, signs):
                continue
            cycle = _violating_cycle_edges(motif, signs)
            assert cycle is not None
            a = [[0.0] * 3 for _ in range(3)]
            for i in range(3):
                a[i][i] = -1.0
            for (u, v), s in zip(edges, signs):
                a[v][u] = s * (1e3 if (u, v) in cycle else 1e-3)
            assert max_real_eigenvalue(a) > 0


def test_monte_carlo_never_far_below_closed_form():
    samples = 1500
    for motif in ALL_MOTIFS:
        sss = structural_stability_score(motif)
        est = sss_monte_carlo(motif, samples, (1e-3, 1e3), seed=motif.id)
        sigma = math.sqrt(sss * (1 - sss) / samples)
        assert est >= sss - 3 * sigma


def test_monte_carlo_monotone_in_range():
    # widening the magnitude range can only expose more instabilities
    samples = 1500
    for motif in ALL_MOTIFS:
        wide = sss_monte_carlo(motif, samples, (1e-3, 1e3), seed=100 + motif.id)
        narrow = sss_monte_carlo(motif, samples, (0.5, 2.0), seed=200 + motif.id)
        sigma = math.sqrt(0.25 / samples)
        assert wide <= narrow + 3 * sigma
