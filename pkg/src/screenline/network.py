"""Directed-network data model for the screen-line counter location problem.

The Network class stores a directed graph G(V, E) together with the centroid
set Q.  Links carry two identities: a dense internal index 0..|E|-1 (used by
every algorithm in this package) and the external 1-based label of the input
row (used for reporting, since published link tables refer to rows).

Networks are immutable after construction, so they can be shared freely
between parallel enumeration workers.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path


@dataclass(frozen=True)
class OdPair:
    """An ordered origin-destination pair w = (s, t) of centroids."""

    s: int
    t: int

    def __iter__(self):
        return iter((self.s, self.t))


@dataclass
class Network:
    """A directed graph with link identifiers and a centroid set.

    Attributes
    ----------
    nodes : sorted list of node ids (opaque positive integers).
    links : list of (tail, head) tuples; position = dense link id.
    link_labels : external label per dense link id (input row order, 1-based
        by default).
    centroids : ordered list of centroid node ids (Q).
    """

    links: list[tuple[int, int]]
    centroids: list[int]
    link_labels: list[int] = field(default=None)

    def __post_init__(self):
        if self.link_labels is None:
            self.link_labels = list(range(1, len(self.links) + 1))
        seen = set()
        for eid, (tail, head) in enumerate(self.links):
            if tail == head:
                raise ValueError(f"self-loop link at row {eid + 1}: ({tail}, {head})")
            if (tail, head) in seen:
                raise ValueError(f"duplicate link at row {eid + 1}: ({tail}, {head})")
            seen.add((tail, head))
        self.nodes = sorted({n for link in self.links for n in link})
        node_set = set(self.nodes)
        for q in self.centroids:
            if q not in node_set:
                raise ValueError(f"unknown centroid id {q}")
        if len(set(self.centroids)) != len(self.centroids):
            raise ValueError("duplicate centroid ids")
        # Adjacency by dense link id, keyed by node id.
        self.out_links = {n: [] for n in self.nodes}
        self.in_links = {n: [] for n in self.nodes}
        for eid, (tail, head) in enumerate(self.links):
            self.out_links[tail].append(eid)
            self.in_links[head].append(eid)

    @property
    def od_pairs(self) -> list[OdPair]:
        """W: all ordered centroid pairs, |W| = |Q| * (|Q| - 1)."""
        return [OdPair(s, t) for s in self.centroids for t in self.centroids if s != t]

    def out_degree(self, s: int) -> int:
        """Number of links with tail s (the paper's d_under(s))."""
        if s not in self.out_links:
            raise ValueError(f"unknown node {s}")
        return len(self.out_links[s])

    def in_degree(self, t: int) -> int:
        """Number of links with head t (the paper's d_bar(t))."""
        if t not in self.in_links:
            raise ValueError(f"unknown node {t}")
        return len(self.in_links[t])

    def reachable(self, removed, s: int, t: int) -> bool:
        """True iff a directed path s -> t exists avoiding `removed` link ids.

        Iterative traversal, O(|V| + |E|).
        """
        if s not in self.out_links or t not in self.out_links:
            raise ValueError("unknown node id")
        if s == t:
            return True
        removed = set(removed)
        seen = {s}
        stack = [s]
        links = self.links
        while stack:
            u = stack.pop()
            for eid in self.out_links[u]:
                if eid in removed:
                    continue
                v = links[eid][1]
                if v == t:
                    return True
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        return False

    def network_hash(self) -> str:
        """Stable content hash of the link table and centroids."""
        import hashlib

        payload = json.dumps([self.links, self.centroids]).encode()
        return hashlib.sha256(payload).hexdigest()[:16]

    def label_of(self, link_id: int) -> int:
        return self.link_labels[link_id]

    def labels_of(self, link_ids) -> list[int]:
        return sorted(self.link_labels[e] for e in link_ids)

    def ids_for_labels(self, labels) -> list[int]:
        lookup = {lab: eid for eid, lab in enumerate(self.link_labels)}
        try:
            return sorted(lookup[lab] for lab in labels)
        except KeyError as exc:
            raise ValueError(f"unknown link label {exc.args[0]}") from exc


def load_network(link_table, centroids) -> Network:
    """Build a Network from a link table and a centroid list.

    `link_table` may be a path to a delimited text file (see `read_link_table`)
    or an iterable of (tail, head) pairs.  `centroids` may be a path (one id
    per line, or a JSON array) or an iterable of node ids.
    """
    if isinstance(link_table, (str, Path)):
        links = read_link_table(link_table)
    else:
        links = [(int(t), int(h)) for t, h in link_table]
    if isinstance(centroids, (str, Path)):
        centroid_ids = read_centroids(centroids)
    else:
        centroid_ids = [int(q) for q in centroids]
    return Network(links=links, centroids=centroid_ids)


def read_link_table(path) -> list[tuple[int, int]]:
    """Parse a link table with `init_node` / `term_node` columns.

    Accepts comma- or tab/whitespace-separated files with a header row, and is
    tolerant of the common transport-network text format: metadata lines in
    angle brackets, `~` comment lines, and `;` row terminators are skipped.
    """
    links = []
    header = None
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("<") or line.startswith("~"):
                continue
            line = line.rstrip(";").strip()
            if not line:
                continue
            parts = line.split(",") if "," in line else line.split()
            parts = [p.strip() for p in parts if p.strip()]
            if header is None:
                lowered = [p.lower() for p in parts]
                if "init_node" in lowered and "term_node" in lowered:
                    header = (lowered.index("init_node"), lowered.index("term_node"))
                    continue
                # Headerless numeric table: assume first two columns.
                if all(_is_int(p) for p in parts[:2]):
                    header = (0, 1)
                else:
                    raise ValueError(
                        f"{path}:{lineno}: expected header with init_node/term_node"
                    )
            ti, hi = header
            if max(ti, hi) >= len(parts):
                raise ValueError(f"{path}:{lineno}: too few columns")
            try:
                links.append((int(parts[ti]), int(parts[hi])))
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: bad link row: {line!r}") from exc
    if not links:
        raise ValueError(f"{path}: no link rows found")
    return links


def read_centroids(path) -> list[int]:
    """Parse a centroid file: one id per line, or a single JSON array."""
    text = Path(path).read_text().strip()
    if not text:
        raise ValueError(f"{path}: empty centroid file")
    if text.startswith("["):
        return [int(q) for q in json.loads(text)]
    return [int(line) for line in text.splitlines() if line.strip()]


def _is_int(token: str) -> bool:
    try:
        int(token)
    except ValueError:
        return False
    return True
