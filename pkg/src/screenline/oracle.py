"""Ground-truth coverage checks and brute-force optima for tiny instances.

Coverage follows the OD Covering Rule in its reachability form: an OD pair
(s, t) is covered by a sensor set exactly when t is unreachable from s after
removing the sensor links, i.e. every s->t path crosses a sensor.  The brute
searchers exhaust link subsets and are the oracles the enumerator and solver
are validated against.
"""

from __future__ import annotations

import itertools

from .network import Network

_BRUTE_LINK_LIMIT = 20


def verify_coverage(net: Network, sensors) -> dict:
    """Map each OD pair w to True iff w is covered by `sensors` (link ids)."""
    sensors = set(sensors)
    return {
        (w.s, w.t): not net.reachable(sensors, w.s, w.t) for w in net.od_pairs
    }


def coverage_ratio(net: Network, sensors) -> float:
    cov = verify_coverage(net, sensors)
    return sum(cov.values()) / len(cov) if cov else 0.0


def _check_size(net: Network) -> None:
    if len(net.links) > _BRUTE_LINK_LIMIT:
        raise ValueError(
            f"brute force limited to {_BRUTE_LINK_LIMIT} links, got {len(net.links)}"
        )


def brute_min_links(net: Network):
    """Minimum number of links covering every OD pair, plus the
    lexicographically smallest witness set.  Exhaustive, |E| <= 20."""
    _check_size(net)
    m = len(net.links)
    ods = [(w.s, w.t) for w in net.od_pairs]
    for size in range(m + 1):
        for combo in itertools.combinations(range(m), size):
            chosen = set(combo)
            if all(not net.reachable(chosen, s, t) for s, t in ods):
                return size, list(combo)
    raise AssertionError("unreachable: the full link set covers everything")


def brute_max_coverage(net: Network, budget: int):
    """Maximum number of covered OD pairs over all sensor sets of at most
    `budget` links, plus the lexicographically smallest witness among the
    smallest optimal sets.  Exhaustive, |E| <= 20."""
    _check_size(net)
    if budget < 0:
        raise ValueError("budget must be >= 0")
    m = len(net.links)
    ods = [(w.s, w.t) for w in net.od_pairs]
    best, witness = 0, []
    for size in range(min(budget, m) + 1):
        for combo in itertools.combinations(range(m), size):
            chosen = set(combo)
            covered = sum(1 for s, t in ods if not net.reachable(chosen, s, t))
            if covered > best:
                best, witness = covered, list(combo)
    return best, witness
