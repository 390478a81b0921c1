import numpy as np
import pytest

from screenline.network import Network


@pytest.fixture
def diamond() -> Network:
    """1 -> {2, 3} -> 4 with centroids {1, 4}; the smallest two-cut network."""
    return Network(links=[(1, 2), (1, 3), (2, 4), (3, 4)], centroids=[1, 4])


@pytest.fixture
def two_path() -> Network:
    """A 5-link DAG with a chord: 1->2->4, 1->3->4, 2->3."""
    return Network(
        links=[(1, 2), (1, 3), (2, 3), (2, 4), (3, 4)], centroids=[1, 4]
    )


def random_network(rng: np.random.Generator, max_nodes=8, max_links=14) -> Network:
    """A random directed graph with 2-3 centroids, for oracle comparisons."""
    while True:
        n = int(rng.integers(3, max_nodes + 1))
        possible = [(u, v) for u in range(1, n + 1) for v in range(1, n + 1) if u != v]
        m = int(rng.integers(2, min(max_links, len(possible)) + 1))
        picked = rng.choice(len(possible), size=m, replace=False)
        links = sorted(possible[i] for i in picked)
        present = sorted({x for link in links for x in link})
        k = int(rng.integers(2, 4))
        if len(present) < k:
            continue
        cents = sorted(int(c) for c in rng.choice(present, size=k, replace=False))
        return Network(links=links, centroids=cents)
