"""Degree-based upper bounds (Lemmas 1-2, Proposition 1) and pool filters.

The bounds are pure functions of the network.  The filters shrink a CutPool:
the origin-degree filter keeps, for each OD pair (s, t), only cuts with at
most out_degree(s) links (the origin outflow cut always survives, so CSP1
stays feasible); the size-cap filter keeps cuts of at most `cap` links and
may leave OD pairs uncoverable, which is legal for CSP2 and fatal for CSP1.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cuts import CutPool, CutSet
from .network import Network


@dataclass
class BoundReport:
    """Degree caps per OD / origin / destination plus the CSP1 upper bound."""

    per_od_min_cut_cap: dict
    per_origin_cap: dict
    per_destination_cap: dict
    csp1_upper_bound: int

    def to_dict(self) -> dict:
        return {
            "per_od_min_cut_cap": {f"{s},{t}": v for (s, t), v in sorted(self.per_od_min_cut_cap.items())},
            "per_origin_cap": dict(sorted(self.per_origin_cap.items())),
            "per_destination_cap": dict(sorted(self.per_destination_cap.items())),
            "csp1_upper_bound": self.csp1_upper_bound,
        }


def compute_bounds(net: Network) -> BoundReport:
    """Lemma 1 per-OD caps, per-origin/destination degrees, and the
    Proposition 1 bound min(sum of origin out-degrees, sum of destination
    in-degrees) over centroids."""
    if not net.centroids:
        raise ValueError("network has no centroids")
    origin = {s: net.out_degree(s) for s in net.centroids}
    dest = {t: net.in_degree(t) for t in net.centroids}
    per_od = {
        (s, t): min(origin[s], dest[t])
        for s in net.centroids
        for t in net.centroids
        if s != t
    }
    return BoundReport(
        per_od_min_cut_cap=per_od,
        per_origin_cap=origin,
        per_destination_cap=dest,
        csp1_upper_bound=min(sum(origin.values()), sum(dest.values())),
    )


def _rebuild(pool: CutPool, keep: dict) -> CutPool:
    """Re-intern a pool from per-OD link-set collections (dedup + dense ids)."""
    interned = sorted({c for cuts in keep.values() for c in cuts})
    cut_id = {c: i for i, c in enumerate(interned)}
    membership = {od: sorted(cut_id[c] for c in cuts) for od, cuts in keep.items()}
    uncoverable = {od for od, ids in membership.items() if not ids}
    return CutPool(
        cuts=[CutSet(c) for c in interned],
        membership=membership,
        max_size=pool.max_size,
        network_hash=pool.network_hash,
        uncoverable=uncoverable,
        trivial=set(pool.trivial),
    )


def lemma2_filter(pool: CutPool, report: BoundReport, side: str = "origin") -> CutPool:
    """Keep, per OD pair (s, t), cuts with |c| <= out_degree(s) (origin side,
    the default) or |c| <= in_degree(t) (destination side)."""
    if side not in ("origin", "destination"):
        raise ValueError("side must be 'origin' or 'destination'")
    keep = {}
    for od, ids in pool.membership.items():
        s, t = od
        cap = report.per_origin_cap[s] if side == "origin" else report.per_destination_cap[t]
        kept = [pool.cuts[cid].links for cid in ids if len(pool.cuts[cid]) <= cap]
        if not kept and od not in pool.uncoverable:
            raise ValueError(
                f"OD pair {od} has no cut within the degree cap {cap}; "
                "build the pool with max_size >= the maximum origin out-degree"
            )
        keep[od] = kept
    return _rebuild(pool, keep)


def size_cap_filter(pool: CutPool, cap: int) -> CutPool:
    """Keep cuts with at most `cap` links; OD pairs left without any cut are
    flagged uncoverable rather than rejected."""
    if cap < 1:
        raise ValueError("cap must be >= 1")
    keep = {
        od: [pool.cuts[cid].links for cid in ids if len(pool.cuts[cid]) <= cap]
        for od, ids in pool.membership.items()
    }
    return _rebuild(pool, keep)
