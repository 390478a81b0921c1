"""Enumeration, interning and persistence of minimal directed (s,t)-cuts.

A minimal (s,t)-cut is uniquely determined by its source-side node set
S = {nodes reachable from s after removing the cut}: the cut is the link set
delta+(S), and minimality holds exactly when

  (a) every node of S is reachable from s inside G[S], and
  (b) every head of a cut link can reach t inside G[V - S].

The enumerator walks these canonical sides.  A search state is a pair
(S, OUT): S is the current source side (always satisfying (a)), OUT is the
set of nodes forced onto the sink side.  `_complete` grows S to the unique
minimal side consistent with the state: any head of delta+(S) that cannot
reach t inside V - S can never sit on the sink side of a larger side either,
so it is forced into S; if a forced node is in OUT the state is infeasible.
Every feasible state therefore emits exactly one minimal cut, and branching
on the free frontier heads (first head in, earlier heads out) partitions the
remaining family, so no cut is ever produced twice.
"""

from __future__ import annotations

import itertools
import json
import warnings
from dataclasses import dataclass, field

from .network import Network

# Exact max-flow branch pruning pays off only for small size caps; above this
# the cheap lower bound (edges already forced into the cut) is used instead.
_FLOW_PRUNE_MAX = 6


@dataclass(frozen=True, order=True)
class CutSet:
    """A sorted set of link ids whose removal disconnects s from t."""

    links: tuple[int, ...]

    def __init__(self, links):
        object.__setattr__(self, "links", tuple(sorted(links)))

    def __iter__(self):
        return iter(self.links)

    def __len__(self):
        return len(self.links)

    def __contains__(self, link_id):
        return link_id in self.links


class _BitGraph:
    """Bitmask view of a Network: node index masks for fast set algebra."""

    def __init__(self, net: Network):
        self.net = net
        self.index = {node: i for i, node in enumerate(net.nodes)}
        self.n = len(net.nodes)
        self.full = (1 << self.n) - 1
        self.out_mask = [0] * self.n  # successors of i
        self.out_edges = [[] for _ in range(self.n)]  # (link_id, head_index)
        for eid, (tail, head) in enumerate(net.links):
            u, v = self.index[tail], self.index[head]
            self.out_mask[u] |= 1 << v
            self.out_edges[u].append((eid, v))

    def backward_reach(self, target_bit: int, allowed: int) -> int:
        """Nodes within `allowed` that reach the target node (bit) in G[allowed]."""
        reach = target_bit & allowed
        out_mask = self.out_mask
        changed = True
        while changed:
            changed = False
            rest = allowed & ~reach
            m = rest
            while m:
                b = m & -m
                m ^= b
                if out_mask[b.bit_length() - 1] & reach:
                    reach |= b
                    changed = True
        return reach

    def heads(self, side: int) -> int:
        """Heads of delta+(side): successors of `side` outside it."""
        h = 0
        m = side
        out_mask = self.out_mask
        while m:
            b = m & -m
            m ^= b
            h |= out_mask[b.bit_length() - 1]
        return h & ~side

    def cut_links(self, side: int) -> tuple[int, ...]:
        """Link ids of delta+(side), sorted."""
        out = []
        m = side
        out_edges = self.out_edges
        while m:
            b = m & -m
            m ^= b
            for eid, v in out_edges[b.bit_length() - 1]:
                if not (side >> v) & 1:
                    out.append(eid)
        out.sort()
        return tuple(out)

    def count_edges_into(self, side: int, block: int) -> int:
        """Number of links from `side` into `block` (a permanent cut floor)."""
        count = 0
        m = side
        out_edges = self.out_edges
        while m:
            b = m & -m
            m ^= b
            for _eid, v in out_edges[b.bit_length() - 1]:
                if (block >> v) & 1:
                    count += 1
        return count

    def min_cut_at_least(self, side: int, sink_side: int, limit: int) -> bool:
        """True iff every cut with `side` on the source side and `sink_side`
        on the sink side has more than `limit` links (unit-capacity max flow
        with early termination)."""
        # Contract side -> index n (virtual source), sink_side -> n+1.
        src, snk = self.n, self.n + 1
        res: dict[tuple[int, int], int] = {}
        for eid, (tail, head) in enumerate(self.net.links):
            u, v = self.index[tail], self.index[head]
            cu = src if (side >> u) & 1 else (snk if (sink_side >> u) & 1 else u)
            cv = src if (side >> v) & 1 else (snk if (sink_side >> v) & 1 else v)
            if cu == cv or cu == snk or cv == src:
                continue
            res[cu, cv] = res.get((cu, cv), 0) + 1
        adj: dict[int, set] = {}
        for (u, v) in res:
            adj.setdefault(u, set()).add(v)
            adj.setdefault(v, set()).add(u)
        flow = 0
        while flow <= limit:
            parent = {src: None}
            queue = [src]
            while queue and snk not in parent:
                nxt = []
                for u in queue:
                    for v in adj.get(u, ()):
                        if v not in parent and res.get((u, v), 0) > 0:
                            parent[v] = u
                            nxt.append(v)
                queue = nxt
            if snk not in parent:
                return False  # min cut == flow <= limit
            v = snk
            while parent[v] is not None:
                u = parent[v]
                res[u, v] = res.get((u, v), 0) - 1
                res[v, u] = res.get((v, u), 0) + 1
                v = u
            flow += 1
        return True  # flow exceeded limit


def _complete(bg: _BitGraph, side: int, out: int, t_bit: int):
    """Grow `side` to the minimal canonical source side consistent with
    (side, out); return the side mask, or None when infeasible."""
    full = bg.full
    while True:
        complement = full & ~side
        reach = bg.backward_reach(t_bit, complement)
        bad = bg.heads(side) & ~reach
        if bad & out:
            return None
        if not bad:
            return side
        side |= bad


def _enumerate_sides(bg: _BitGraph, s_idx: int, t_idx: int, max_size):
    """Yield the canonical source-side mask of every minimal (s,t)-cut
    (with at most max_size links when a cap is given)."""
    t_bit = 1 << t_idx
    flow_prune = max_size is not None and max_size <= _FLOW_PRUNE_MAX
    sides = []
    # Explicit stack of (side, out) states; DFS order does not matter for the
    # result (cuts are sorted afterwards), only completeness and uniqueness.
    stack = [(1 << s_idx, t_bit)]
    while stack:
        side, out = stack.pop()
        done = _complete(bg, side, out, t_bit)
        if done is None:
            continue
        if max_size is not None:
            if bg.count_edges_into(done, out) > max_size:
                continue
            if flow_prune and bg.min_cut_at_least(done, out, max_size):
                continue
        sides.append(done)
        free = bg.heads(done) & ~out
        grown = 0
        m = free
        while m:
            b = m & -m
            m ^= b
            stack.append((done | b, out | grown))
            grown |= b
    return sides


def enumerate_st_cuts(net: Network, s: int, t: int, max_size=None) -> list[CutSet]:
    """All minimal directed (s,t)-cutsets with at most `max_size` links
    (unlimited when None), sorted lexicographically by link set."""
    if s == t:
        raise ValueError("origin and destination coincide")
    bg = _BitGraph(net)
    if s not in bg.index or t not in bg.index:
        raise ValueError("unknown node id")
    if not net.reachable((), s, t):
        warnings.warn(f"destination {t} unreachable from {s}; no cuts to enumerate")
        return []
    cuts = _enumerate_cut_tuples(bg, s, t, max_size)
    return [CutSet(c) for c in cuts]


def _enumerate_cut_tuples(bg: _BitGraph, s: int, t: int, max_size):
    sides = _enumerate_sides(bg, bg.index[s], bg.index[t], max_size)
    cuts = [bg.cut_links(side) for side in sides]
    if max_size is not None:
        cuts = [c for c in cuts if len(c) <= max_size]
    cuts.sort()
    return cuts


def brute_enumerate_st_cuts(net: Network, s: int, t: int) -> list[CutSet]:
    """Brute-force oracle: all inclusion-minimal disconnecting link subsets,
    by exhaustive subset search.  Testing fallback, |E| <= 20 enforced."""
    m = len(net.links)
    if m > 20:
        raise ValueError("brute-force enumeration limited to 20 links")
    if not net.reachable((), s, t):
        return []
    minimal = []
    for size in range(m + 1):
        for combo in itertools.combinations(range(m), size):
            chosen = set(combo)
            if any(set(prev).issubset(chosen) for prev in minimal):
                continue
            if not net.reachable(chosen, s, t):
                minimal.append(combo)
    return sorted(CutSet(c) for c in minimal)


def outflow_cut(net: Network, s: int) -> CutSet:
    """The cut of all links leaving s; valid for every (s,t), t != s."""
    links = net.out_links.get(s)
    if links is None:
        raise ValueError(f"unknown node {s}")
    if not links:
        raise ValueError(f"node {s} has no outgoing links")
    return CutSet(links)


@dataclass
class CutPool:
    """Interned collection of distinct cutsets with per-OD membership.

    cuts[cut_id] is a CutSet; membership[(s, t)] lists the cut ids valid for
    that OD pair.  Cut ids are assigned in lexicographic order of link sets.
    """

    cuts: list[CutSet]
    membership: dict[tuple[int, int], list[int]]
    max_size: int | None = None
    network_hash: str = ""
    uncoverable: set = field(default_factory=set)
    # OD pairs whose destination is unreachable even with no sensors; they
    # are vacuously covered and excluded from membership and the models.
    trivial: set = field(default_factory=set)

    def histogram(self) -> dict[int, tuple[int, int]]:
        """Size -> (count with OD duplication, count without duplication)."""
        dup: dict[int, int] = {}
        for ids in self.membership.values():
            for cid in ids:
                size = len(self.cuts[cid])
                dup[size] = dup.get(size, 0) + 1
        dedup: dict[int, int] = {}
        referenced = {cid for ids in self.membership.values() for cid in ids}
        for cid in referenced:
            size = len(self.cuts[cid])
            dedup[size] = dedup.get(size, 0) + 1
        return {size: (dup.get(size, 0), dedup.get(size, 0)) for size in sorted(dup)}

    def od_pairs(self) -> list[tuple[int, int]]:
        return sorted(self.membership)


# Per-process state for parallel pool building.
_WORKER_BG = None


def _worker_init(links, centroids):
    global _WORKER_BG
    _WORKER_BG = _BitGraph(Network(links=list(links), centroids=list(centroids)))


def _worker_enum(args):
    (s, t), max_size = args
    if not _WORKER_BG.net.reachable((), s, t):
        return (s, t), None
    return (s, t), _enumerate_cut_tuples(_WORKER_BG, s, t, max_size)


def build_pool(net: Network, max_size=None, od_filter=None, workers=None) -> CutPool:
    """Enumerate minimal cuts for every requested OD pair, intern identical
    link sets, and record per-OD membership.

    Results are merged in OD order and cut ids are assigned lexicographically,
    so the pool is identical for any worker count.
    """
    ods = [tuple(w) for w in (od_filter if od_filter is not None else net.od_pairs)]
    per_od: dict[tuple[int, int], list | None] = {}
    if workers and workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        tasks = [(od, max_size) for od in ods]
        with ProcessPoolExecutor(
            max_workers=workers,
            initializer=_worker_init,
            initargs=(net.links, net.centroids),
        ) as pool:
            for od, cuts in pool.map(_worker_enum, tasks, chunksize=1):
                per_od[od] = cuts
    else:
        bg = _BitGraph(net)
        for od in ods:
            s, t = od
            if not net.reachable((), s, t):
                per_od[od] = None
            else:
                per_od[od] = _enumerate_cut_tuples(bg, s, t, max_size)

    trivial = set()
    interned: set[tuple[int, ...]] = set()
    for od in ods:
        cuts = per_od[od]
        if cuts is None:
            warnings.warn(
                f"destination unreachable for OD pair {od}; vacuously covered"
            )
            trivial.add(od)
        else:
            interned.update(cuts)
    ordered = sorted(interned)
    cut_id = {c: i for i, c in enumerate(ordered)}
    membership = {
        od: sorted(cut_id[c] for c in per_od[od]) for od in ods if od not in trivial
    }
    return CutPool(
        cuts=[CutSet(c) for c in ordered],
        membership=membership,
        max_size=max_size,
        network_hash=net.network_hash(),
        trivial=trivial,
    )


def save_pool(pool: CutPool, path) -> None:
    """Write a pool as newline-delimited JSON (header, cuts, OD records)."""
    with open(path, "w") as fh:
        header = {
            "network_hash": pool.network_hash,
            "max_size": pool.max_size,
            "trivial": sorted(list(od) for od in pool.trivial),
        }
        fh.write(json.dumps(header) + "\n")
        for cid, cut in enumerate(pool.cuts):
            fh.write(json.dumps({"cut_id": cid, "links": list(cut.links)}) + "\n")
        for od in sorted(pool.membership):
            fh.write(json.dumps({"od": list(od), "cuts": pool.membership[od]}) + "\n")


def load_pool(path, net: Network | None = None) -> CutPool:
    """Read a pool written by save_pool; lossless round-trip."""
    header = None
    cuts: dict[int, tuple[int, ...]] = {}
    membership: dict[tuple[int, int], list[int]] = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                rec = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ValueError(f"{path}:{lineno}: malformed JSON: {exc}") from exc
            if lineno == 1:
                if "network_hash" not in rec or "max_size" not in rec:
                    raise ValueError(f"{path}:1: missing pool header")
                header = rec
            elif "cut_id" in rec:
                links = tuple(sorted(rec["links"]))
                if net is not None and links and links[-1] >= len(net.links):
                    raise ValueError(f"{path}:{lineno}: unknown link id {links[-1]}")
                cuts[rec["cut_id"]] = links
            elif "od" in rec:
                membership[tuple(rec["od"])] = list(rec["cuts"])
            else:
                raise ValueError(f"{path}:{lineno}: unrecognized record")
    if header is None:
        raise ValueError(f"{path}: empty pool file")
    if net is not None and header["network_hash"] != net.network_hash():
        warnings.warn("pool network hash does not match the supplied network")
    ordered = [cuts[i] for i in sorted(cuts)]
    if sorted(cuts) != list(range(len(cuts))):
        raise ValueError(f"{path}: cut ids are not dense")
    for od, ids in membership.items():
        for cid in ids:
            if cid >= len(ordered):
                raise ValueError(f"{path}: OD {od} references unknown cut id {cid}")
    uncoverable = {od for od, ids in membership.items() if not ids}
    return CutPool(
        cuts=[CutSet(c) for c in ordered],
        membership=membership,
        max_size=header["max_size"],
        network_hash=header["network_hash"],
        uncoverable=uncoverable,
        trivial={tuple(od) for od in header.get("trivial", [])},
    )
