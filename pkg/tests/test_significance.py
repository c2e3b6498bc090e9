import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import random_digraph
from motifstab.census import MotifId, census, class_ids
from motifstab.nullmodel import EnsembleStatistics, RandomizationConfig, ensemble_census
from motifstab.significance import motif_filter, normalized_profile, z_scores


def make_ensemble(size, raw_by_id):
    raw = {MotifId(size, cid): raw_by_id.get(cid, [0] * len(next(iter(raw_by_id.values())))) for cid in class_ids(size)}
    return EnsembleStatistics.from_raw(size, raw)


def make_census(size, counts_by_id, instances_by_id=None):
    from motifstab.census import CensusResult

    counts = {MotifId(size, k): v for k, v in counts_by_id.items()}
    instances = None
    if instances_by_id is not None:
        instances = {MotifId(size, k): v for k, v in instances_by_id.items()}
    return CensusResult(size=size, counts=counts, instances=instances)


def record_for(records, cid):
    return next(r for r in records if r.motif.id == cid)


def test_z_matches_loki_row():
    # counts 9.8 +- 3.0 over ten replicates, N_real = 31
    ens = make_ensemble(3, {38: [6, 8, 9, 10, 13, 7, 14, 9, 12, 10]})
    assert abs(ens.mean[MotifId(3, 38)] - 9.8) < 1e-12
    assert abs(ens.sd[MotifId(3, 38)] - math.sqrt(5.96)) < 1e-12
    # use the exact published moments directly
    records = z_scores(make_census(3, {38: 31}), make_ensemble(3, {38: [9.8 - 3.0, 9.8 + 3.0]}))
    z = record_for(records, 38).z
    assert abs(z - 7.07) <= 0.005
    assert abs(z - (31 - 9.8) / 3.0) < 1e-12


def test_z_matches_vtk_row():
    records = z_scores(make_census(3, {38: 229}), make_ensemble(3, {38: [77.4 - 9.5, 77.4 + 9.5]}))
    z = record_for(records, 38).z
    assert abs(z - 15.96) <= 0.005


def test_z_undefined_when_sd_zero():
    records = z_scores(make_census(3, {38: 5}), make_ensemble(3, {38: [5, 5, 5]}))
    r = record_for(records, 38)
    assert r.z is None
    assert r.mfactor == 1.0


def test_mfactor_rules():
    records = z_scores(
        make_census(3, {38: 4}),
        make_ensemble(3, {38: [0, 0], 12: [0, 0]}),
    )
    assert record_for(records, 38).mfactor == math.inf  # real-only occurrences
    assert record_for(records, 12).mfactor == 1.0  # absent everywhere


def test_z_scores_size_mismatch():
    with pytest.raises(ValueError):
        z_scores(make_census(3, {}), make_ensemble(4, {14: [0, 0]}))


def test_records_cover_all_classes_sorted():
    records = z_scores(make_census(3, {}), make_ensemble(3, {6: [0, 0]}))
    assert len(records) == 13
    keys = [(r.edge_count, r.motif.id) for r in records]
    assert keys == sorted(keys)
    for r in records:
        assert r.edge_count == r.motif.id.bit_count()


def test_normalized_profile_three_four_five():
    records = z_scores(
        make_census(3, {6: 7, 12: 9}),
        make_ensemble(3, {6: [3, 5], 12: [5, 9]}),
    )
    # z(6) = (7-4)/1 = 3, z(12) = (9-7)/2 = 1 -> rescale check below uses raw zs
    profile = normalized_profile(records)
    zs = {r.motif.id: (r.z or 0.0) for r in records}
    norm = math.sqrt(sum(z * z for z in zs.values()))
    assert abs(profile.scores[MotifId(3, 6)] - zs[6] / norm) < 1e-15
    assert abs(math.fsum(v * v for v in profile.scores.values()) - 1.0) < 1e-12


def test_normalized_profile_single_nonzero():
    records = z_scores(make_census(3, {6: 7}), make_ensemble(3, {6: [3, 5]}))
    profile = normalized_profile(records)
    assert profile.scores[MotifId(3, 6)] == 1.0
    assert all(v == 0.0 for m, v in profile.scores.items() if m.id != 6)


def test_normalized_profile_all_undefined():
    records = z_scores(make_census(3, {6: 1}), make_ensemble(3, {6: [1, 1]}))
    profile = normalized_profile(records)
    assert all(v == 0.0 for v in profile.scores.values())


def _filter_records(z, mfactor, uniq):
    from motifstab.significance import SignificanceRecord

    return [
        SignificanceRecord(
            motif=MotifId(3, 38),
            n_real=10,
            rand_mean=1.0,
            rand_sd=1.0,
            z=z,
            mfactor=mfactor,
            uniqueness=uniq,
            edge_count=3,
        )
    ]


@pytest.mark.parametrize(
    "z,mfactor,uniq,expected",
    [
        (2.5, 1.2, 4, True),
        (2.0, 9.0, 9, False),  # strict z > 2
        (8.0, 1.05, 10, False),  # mfactor gate
        (8.0, 1.1, 10, False),  # strict mfactor > 1.1
        (8.0, math.inf, 4, True),  # infinite mfactor passes
        (8.0, 9.0, 3, False),  # uniqueness gate
        (None, 9.0, 9, False),  # undefined z excluded
    ],
)
def test_motif_filter_gates(z, mfactor, uniq, expected):
    selected = motif_filter(_filter_records(z, mfactor, uniq))
    assert (MotifId(3, 38) in selected) == expected


def test_motif_filter_requires_uniqueness():
    with pytest.raises(ValueError):
        motif_filter(_filter_records(5.0, 2.0, None))


def test_motif_filter_monotone():
    records = _filter_records(2.5, 1.5, 5)
    base = motif_filter(records, z_min=-math.inf, mfactor_min=-math.inf, uniq_min=0)
    assert base == {MotifId(3, 38)}
    assert motif_filter(records, z_min=3.0) <= base
    assert motif_filter(records, mfactor_min=2.0) <= base
    assert motif_filter(records, uniq_min=6) <= base


@given(st.integers(1, 50), st.integers(0, 1000))
@settings(max_examples=30, deadline=None)
def test_z_translation_and_scale_invariance(shift, seed):
    import random

    rng = random.Random(seed)
    base = [rng.randrange(0, 30) for _ in range(8)]
    n_real = rng.randrange(0, 40)
    ens1 = make_ensemble(3, {38: base})
    ens2 = make_ensemble(3, {38: [x + shift for x in base]})
    ens3 = make_ensemble(3, {38: [x * 3 for x in base]})
    z1 = record_for(z_scores(make_census(3, {38: n_real}), ens1), 38).z
    z2 = record_for(z_scores(make_census(3, {38: n_real + shift}), ens2), 38).z
    z3 = record_for(z_scores(make_census(3, {38: n_real * 3}), ens3), 38).z
    if z1 is None:
        assert z2 is None and z3 is None
    else:
        assert abs(z1 - z2) < 1e-9
        assert abs(z1 - z3) < 1e-9


def test_uniqueness_attached_from_instances():
    g = random_digraph(14, 0.2, seed=21)
    cfg = RandomizationConfig(replicates=4, master_seed=2)
    ens = ensemble_census(g, cfg, 3)
    records = z_scores(census(g, 3, retain_instances=True), ens)
    assert all(r.uniqueness is not None for r in records)
    records_no_inst = z_scores(census(g, 3), ens)
    assert all(r.uniqueness is None for r in records_no_inst)
