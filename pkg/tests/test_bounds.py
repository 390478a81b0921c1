import pytest

from screenline.bounds import compute_bounds, lemma2_filter, size_cap_filter
from screenline.cuts import build_pool, outflow_cut


def test_bound_report(diamond):
    report = compute_bounds(diamond)
    assert report.per_origin_cap == {1: 2, 4: 0}
    assert report.per_destination_cap == {1: 0, 4: 2}
    assert report.per_od_min_cut_cap[(1, 4)] == 2
    assert report.csp1_upper_bound == 2


def test_bound_report_to_dict_round_trips(diamond):
    doc = compute_bounds(diamond).to_dict()
    assert doc["csp1_upper_bound"] == 2
    assert doc["per_od_min_cut_cap"]["1,4"] == 2


def test_lemma1_caps_hold(two_path):
    report = compute_bounds(two_path)
    pool = build_pool(two_path)
    for od, ids in pool.membership.items():
        cap = report.per_od_min_cut_cap[od]
        assert ids, f"OD {od} lost its cuts"
        assert min(len(pool.cuts[c]) for c in ids) <= cap


def test_lemma2_filter_keeps_outflow_cut(two_path):
    report = compute_bounds(two_path)
    pool = lemma2_filter(build_pool(two_path), report)
    for od in pool.membership:
        s = od[0]
        out = outflow_cut(two_path, s).links
        kept = {pool.cuts[c].links for c in pool.membership[od]}
        assert out in kept
        cap = report.per_origin_cap[s]
        assert all(len(c) <= cap for c in kept)


def test_lemma2_filter_destination_side(two_path):
    report = compute_bounds(two_path)
    pool = lemma2_filter(build_pool(two_path), report, side="destination")
    for (s, t), ids in pool.membership.items():
        assert all(len(pool.cuts[c]) <= report.per_destination_cap[t] for c in ids)
    with pytest.raises(ValueError, match="side"):
        lemma2_filter(pool, report, side="sideways")


def test_size_cap_filter_flags_uncoverable(two_path):
    pool = size_cap_filter(build_pool(two_path), 1)
    assert pool.membership[(1, 4)] == []
    assert (1, 4) in pool.uncoverable


def test_size_cap_filter_keeps_small_cuts(two_path):
    full = build_pool(two_path)
    capped = size_cap_filter(full, 2)
    full_small = {
        full.cuts[c].links for c in full.membership[(1, 4)] if len(full.cuts[c]) <= 2
    }
    assert {capped.cuts[c].links for c in capped.membership[(1, 4)]} == full_small
    with pytest.raises(ValueError):
        size_cap_filter(full, 0)
