"""Acceptance gate: one test per published-result criterion.

Each test prints a single PASS/FAIL line (via assert) for its criterion:

1. benchmark cut-count histogram reproduction;
2. minimum-link optimum (45) with full coverage, under 60 s end-to-end;
3. budget-sweep coverage anchors and monotonicity;
4. shared-cut table reproduction at K=24 (see the deviation note below);
5. oracle equivalence over >= 200 random graphs;
6. invariant suite over the same random instances;
7. byte-identical outputs across consecutive runs.

Criterion 4 deviation: the published K=24 layout is strictly suboptimal for
the stated model (its 23 links cover 154 OD pairs; the proven optimum is
157, and forcing the published rank-1 cut caps coverage at 156), so no
exact optimum can contain the published rank-1 cut.  The test therefore
verifies the strongest true statements: our solve is proven optimal, the
published cuts all live in our pool inside the published layout, the exact
published share counts are a feasible assignment of that layout, and our
optimum strictly dominates it.
"""

import itertools
import json
import time

import numpy as np
import pytest
from scipy import sparse
from scipy.optimize import Bounds, LinearConstraint, milp

from conftest import random_network
from screenline.bounds import compute_bounds, lemma2_filter, size_cap_filter
from screenline.branchbound import SolveOptions, lp_relax, solve
from screenline.cli import _placement_json, shared_cut_table
from screenline.cuts import build_pool, brute_enumerate_st_cuts, enumerate_st_cuts, outflow_cut
from screenline.model import build_csp1, build_csp2, build_psi, extract_placement
from screenline.network import load_network
from screenline.oracle import brute_max_coverage, brute_min_links, verify_coverage

LINKS = "src/screenline/data/siouxfalls_links.tntp"
CENTROIDS = "src/screenline/data/siouxfalls_centroids.txt"

# Benchmark histogram: (size, with OD duplication, deduplicated).  The final
# published row aggregates every size >= 15 (see the project notes).
TABLE1 = [
    (2, 126, 8), (3, 378, 24), (4, 1088, 52), (5, 4236, 144),
    (6, 12976, 370), (7, 31114, 814), (8, 66168, 1656), (9, 133604, 3198),
    (10, 254234, 5838), (11, 408024, 9122), (12, 508776, 11184),
    (13, 491842, 10662), (14, 361278, 7736),
]
TABLE1_TAIL = (217320, 4602)  # sizes >= 15, both columns

TABLE2 = [
    ([28, 34, 37, 53, 56], 26), ([2, 4], 24), ([60, 61, 66, 67, 70], 23),
    ([5, 14], 20), ([38, 75, 76], 19), ([38, 40, 43, 58, 60], 18),
    ([37, 42, 46, 56, 59], 17),
]

SWEEP_BUDGETS = list(range(4, 49, 4))


@pytest.fixture(scope="session")
def sf_net():
    return load_network(LINKS, CENTROIDS)


@pytest.fixture(scope="session")
def sf_pool_full(sf_net):
    t0 = time.monotonic()
    pool = build_pool(sf_net, workers=4)
    pool.build_seconds = time.monotonic() - t0
    return pool


@pytest.fixture(scope="session")
def sf_pool8(sf_pool_full):
    return size_cap_filter(sf_pool_full, 8)


@pytest.fixture(scope="session")
def sf_psi8(sf_net, sf_pool8):
    return build_psi(sf_pool8, n_links=len(sf_net.links), network=sf_net)


@pytest.fixture(scope="session")
def sf_sweep(sf_net, sf_pool8, sf_psi8):
    """One CSP2 solve per budget; returns budget -> result record."""
    records = {}
    for budget in SWEEP_BUDGETS:
        model = build_csp2(sf_psi8, budget=budget)
        res = solve(model, SolveOptions())
        assert res.status == "optimal", f"budget {budget}: {res.status}"
        placement = extract_placement(model, res.assignment, sf_psi8)
        coverage = verify_coverage(sf_net, placement.chosen_links)
        records[budget] = {
            "objective": res.objective,
            "dual": res.dual_bound,
            "covered": sum(coverage.values()),
            "placement": placement,
            "doc": json.dumps(
                _placement_json(sf_net, placement, res), indent=2, sort_keys=True
            ),
        }
    return records


def test_criterion_1_cut_count_histogram(sf_pool_full):
    hist = sf_pool_full.histogram()
    for size, dup, dedup in TABLE1:
        assert hist[size] == (dup, dedup), f"size {size}: {hist[size]}"
    tail_dup = sum(d for s, (d, _) in hist.items() if s >= 15)
    tail_dedup = sum(d for s, (_, d) in hist.items() if s >= 15)
    assert (tail_dup, tail_dedup) == TABLE1_TAIL
    assert sf_pool_full.build_seconds < 300


def solve_min_links(net, pool=None):
    report = compute_bounds(net)
    if pool is None:
        pool = build_pool(net, max_size=max(report.per_origin_cap.values()), workers=4)
    pool = lemma2_filter(pool, report)
    psi = build_psi(pool, n_links=len(net.links), network=net)
    model = build_csp1(psi, cutoff=report.csp1_upper_bound)
    res = solve(model, SolveOptions())
    return report, psi, model, res


def test_criterion_2_min_link_optimum(sf_net):
    t0 = time.monotonic()
    report, psi, model, res = solve_min_links(sf_net)
    assert res.status == "optimal"
    assert res.objective == pytest.approx(45.0)
    assert report.csp1_upper_bound == 45  # degree bound equals the optimum
    placement = extract_placement(model, res.assignment, psi)
    coverage = verify_coverage(sf_net, placement.chosen_links)
    assert len(coverage) == 182
    assert all(coverage.values())
    assert time.monotonic() - t0 < 60


def test_criterion_3_budget_sweep_anchors(sf_sweep):
    ratios = {k: sf_sweep[k]["covered"] / 182 for k in SWEEP_BUDGETS}
    assert ratios[4] == pytest.approx(0.27, abs=0.02)
    assert ratios[32] > 0.90
    for k in (48,):
        assert ratios[k] == pytest.approx(1.0)
    assert sf_sweep[48]["objective"] == 182
    values = [ratios[k] for k in SWEEP_BUDGETS]
    assert values == sorted(values), "coverage not monotone in the budget"
    # 45 links suffice for full coverage, so every K >= 45 reaches ratio 1.
    assert sf_sweep[44]["objective"] <= 182


def test_criterion_4_shared_cuts(sf_net, sf_pool8, sf_sweep):
    record = sf_sweep[24]
    # (a) proven optimality of our K=24 solve.
    assert record["objective"] == pytest.approx(157.0)
    assert record["dual"] == pytest.approx(157.0)
    # (b) every published cut is in the pool and inside the published layout.
    layout = set(
        sf_net.ids_for_labels(sorted({l for labs, _ in TABLE2 for l in labs}))
    )
    assert len(layout) <= 24
    lookup = {c.links: i for i, c in enumerate(sf_pool8.cuts)}
    t2_ids = {}
    for labs, count in TABLE2:
        links = tuple(sorted(sf_net.ids_for_labels(labs)))
        assert links in lookup, f"published cut {labs} missing from the pool"
        assert set(links) <= layout
        t2_ids[lookup[links]] = count
    # (c) the published layout covers 154 OD pairs; ours strictly dominates.
    coverage = verify_coverage(sf_net, layout)
    assert sum(coverage.values()) == 154
    assert record["objective"] > 154
    # (d) the exact published share counts (rank 1 = 26 on the 5-link cut,
    # then 24/23/20/19/18/17, every unlisted cut below 10) are a feasible
    # one-cut-per-OD assignment of that layout within our pool.
    cands = {}
    for od, ids in sf_pool8.membership.items():
        cs = [c for c in ids if set(sf_pool8.cuts[c].links) <= layout]
        if cs:
            cands[od] = cs
    assert len(cands) == 154
    avars = [(od, c) for od in sorted(cands) for c in cands[od]]
    apos = {k: i for i, k in enumerate(avars)}
    data, ri, ci, lo, hi = [], [], [], [], []
    r = 0
    for od in sorted(cands):
        for c in cands[od]:
            ri.append(r), ci.append(apos[(od, c)]), data.append(1.0)
        lo.append(1.0), hi.append(1.0)
        r += 1
    for c in sorted({c for cs in cands.values() for c in cs}):
        for (od, c2), j in apos.items():
            if c2 == c:
                ri.append(r), ci.append(j), data.append(1.0)
        bound = float(t2_ids.get(c, 0)), float(t2_ids.get(c, 9))
        lo.append(bound[0]), hi.append(bound[1])
        r += 1
    A = sparse.csr_matrix((data, (ri, ci)), shape=(r, len(avars)))
    res = milp(
        np.zeros(len(avars)),
        constraints=LinearConstraint(A, np.array(lo), np.array(hi)),
        integrality=np.ones(len(avars)),
        bounds=Bounds(0, 1),
    )
    assert res.status == 0, "published share counts are not assignable"
    # The rank-1 count itself: 26 OD pairs on the published 5-link cut.
    rank1 = lookup[tuple(sorted(sf_net.ids_for_labels(TABLE2[0][0])))]
    assigned = sum(
        1 for (od, c), j in apos.items() if c == rank1 and res.x[j] > 0.5
    )
    assert assigned == 26


# ---------------------------------------------------------------------------
# Random-instance suite shared by criteria 5 and 6.


@pytest.fixture(scope="session")
def random_suite():
    rng = np.random.default_rng(2024)
    t0 = time.monotonic()
    records = []
    while len(records) < 200:
        net = random_network(rng)
        pool = build_pool(net)
        rec = {"net": net, "pool": pool}
        if any(pool.membership.values()):
            psi = build_psi(pool, n_links=len(net.links), network=net)
            rec["psi"] = psi
            rec["csp1"] = build_csp1(psi)
            rec["csp1_res"] = solve(rec["csp1"])
            rec["csp2"] = {}
            for budget in range(5):
                model = build_csp2(psi, budget=budget)
                rec["csp2"][budget] = (model, solve(model))
        records.append(rec)
    elapsed = time.monotonic() - t0
    return records, elapsed


def test_criterion_5_oracle_equivalence(random_suite):
    records, elapsed = random_suite
    assert len(records) >= 200
    rng = np.random.default_rng(5)
    for rec in records:
        net, pool = rec["net"], rec["pool"]
        # (a) enumeration equals brute force (spot-checked per OD pair).
        for w in net.od_pairs:
            if not net.reachable((), w.s, w.t):
                continue
            fast = {c.links for c in enumerate_st_cuts(net, w.s, w.t)}
            slow = {c.links for c in brute_enumerate_st_cuts(net, w.s, w.t)}
            assert fast == slow
        # (b) CSP1 optimum equals the brute-force minimum link count.
        opt, _ = brute_min_links(net)
        if "csp1" in rec:
            res = rec["csp1_res"]
            assert res.status == "optimal"
            assert res.objective == pytest.approx(opt)
        else:
            assert opt == 0  # nothing coverable: no sensors needed
        # (c) CSP2 optimum equals brute force for K in 0..4 (trivially
        # covered pairs count for the oracle but sit outside the model).
        for budget in range(5):
            best, _ = brute_max_coverage(net, budget)
            if "csp2" in rec:
                _, res2 = rec["csp2"][budget]
                assert res2.status == "optimal"
                assert res2.objective == pytest.approx(best - len(pool.trivial))
            else:
                assert best == len(pool.trivial)
    assert elapsed < 300


def test_criterion_6_invariants(random_suite):
    records, _ = random_suite
    for rec in records:
        net, pool = rec["net"], rec["pool"]
        report = compute_bounds(net)
        # Pool validity, minimality, Lemma 1 caps.
        for od, ids in pool.membership.items():
            s, t = od
            for cid in ids:
                links = pool.cuts[cid].links
                assert not net.reachable(links, s, t)
                for drop in links:
                    assert net.reachable(set(links) - {drop}, s, t)
            if ids:
                smallest = min(len(pool.cuts[c]) for c in ids)
                assert smallest <= report.per_od_min_cut_cap[od]
        # Lemma 2 filter retains the origin outflow cut, or — when that cut
        # is non-minimal for the pair (an origin out-link cannot reach the
        # destination) — a minimal subset of it, so coverage is preserved.
        if any(pool.membership.values()):
            filtered = lemma2_filter(pool, report)
            for od in filtered.membership:
                out = set(outflow_cut(net, od[0]).links)
                kept = {filtered.cuts[c].links for c in filtered.membership[od]}
                assert any(set(c) <= out for c in kept)
        # CSP solution structure.
        if "csp1" in rec:
            psi, model, res = rec["psi"], rec["csp1"], rec["csp1_res"]
            v = res.assignment
            for group in model.sos1:
                assert sum(v[g] > 0.5 for g in group) == 1  # exactly one
            # LP relaxation with the y variables fixed integral yields
            # integral x.
            fixings = {l: int(v[l] > 0.5) for l in range(psi.n_rows)}
            status, _, sol = lp_relax(model, fixings)
            assert status == "optimal"
            x = sol[psi.n_rows :]
            assert np.all(np.abs(x - np.round(x)) < 1e-6)
            for budget, (model2, res2) in rec["csp2"].items():
                v2 = res2.assignment
                for group in model2.sos1:
                    assert sum(v2[g] > 0.5 for g in group) <= 1  # at most one
                n_links = len(net.links)
                assert v2[psi.n_rows : psi.n_rows + n_links].sum() <= budget + 1e-9


def test_criterion_7_determinism(sf_net, sf_pool_full, sf_sweep):
    # Histogram: a second enumeration run gives the identical histogram and
    # the identical interned pool.
    pool2 = build_pool(sf_net, workers=4)
    assert pool2.histogram() == sf_pool_full.histogram()
    assert [c.links for c in pool2.cuts] == [c.links for c in sf_pool_full.cuts]
    assert pool2.membership == sf_pool_full.membership
    # Min-links placement: two consecutive end-to-end runs, byte-identical.
    docs = []
    for _ in range(2):
        report, psi, model, res = solve_min_links(sf_net, pool=sf_pool_full)
        placement = extract_placement(model, res.assignment, psi)
        docs.append(
            json.dumps(
                _placement_json(sf_net, placement, res), indent=2, sort_keys=True
            )
        )
    assert docs[0] == docs[1]


def test_criterion_7_budget_placements_deterministic(sf_net, sf_psi8, sf_sweep):
    # Re-solve two representative budgets and compare byte-for-byte with the
    # sweep fixture's first run.
    for budget in (4, 24):
        model = build_csp2(sf_psi8, budget=budget)
        res = solve(model, SolveOptions())
        placement = extract_placement(model, res.assignment, sf_psi8)
        doc = json.dumps(
            _placement_json(sf_net, placement, res), indent=2, sort_keys=True
        )
        assert doc == sf_sweep[budget]["doc"], f"budget {budget} not reproducible"
