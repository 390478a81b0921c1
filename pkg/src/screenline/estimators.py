"""Scikit-learn style estimator facade over the solver pipeline.

Both locators follow the estimator contract: constructor parameters are
stored verbatim, `fit(network)` runs enumeration -> filtering -> solve and
stores results in trailing-underscore attributes, `predict(od_pairs)`
answers coverage queries against the fitted sensor layout, and
`get_params` / `set_params` come from `sklearn.base.BaseEstimator`.
"""

from __future__ import annotations

from sklearn.base import BaseEstimator

from .bounds import compute_bounds, lemma2_filter, size_cap_filter
from .branchbound import SolveOptions, solve
from .cuts import build_pool
from .model import build_csp1, build_csp2, build_psi, extract_placement
from .network import Network
from .oracle import verify_coverage


class _BaseLocator(BaseEstimator):
    def _fit_pool(self, net: Network, max_cut_size, filter_):
        report = compute_bounds(net)
        pool = build_pool(net, max_size=max_cut_size, workers=self.workers)
        if filter_ == "lemma2":
            pool = lemma2_filter(pool, report)
        elif isinstance(filter_, int):
            pool = size_cap_filter(pool, filter_)
        elif filter_ is not None and filter_ != "none":
            raise ValueError(f"unknown filter {filter_!r}")
        return report, pool

    def _finish(self, net, model, psi):
        opts = SolveOptions(
            node_limit=self.node_limit, time_limit=self.time_limit, seed=self.seed
        )
        result = solve(model, opts)
        if result.status == "infeasible":
            raise ValueError(f"{model.name} is infeasible for this network")
        if result.assignment is None:
            raise RuntimeError(f"solver hit its budget before finding a {model.name} layout")
        placement = extract_placement(model, result.assignment, psi)
        self.placement_ = placement
        self.result_ = result
        self.links_ = list(placement.chosen_links)
        self.link_labels_ = net.labels_of(placement.chosen_links)
        self.objective_ = placement.objective_value
        self.coverage_ = verify_coverage(net, placement.chosen_links)
        self.network_ = net
        return self

    def predict(self, od_pairs):
        """Return, per (s, t) pair, True iff the fitted layout covers it."""
        if not hasattr(self, "coverage_"):
            raise ValueError("this locator is not fitted yet; call fit(network) first")
        return [
            not self.network_.reachable(self.links_, int(s), int(t))
            for s, t in od_pairs
        ]

    def score(self, od_pairs=None):
        """Fraction of covered pairs (all OD pairs of the fitted network by
        default)."""
        if od_pairs is None:
            flags = list(self.coverage_.values())
        else:
            flags = self.predict(od_pairs)
        return sum(flags) / len(flags) if flags else 0.0


class MinLinkLocator(_BaseLocator):
    """Fewest sensor links that cover every OD pair (the CSP1 program)."""

    def __init__(self, max_cut_size=None, filter="lemma2", use_cutoff=True,
                 workers=None, node_limit=None, time_limit=None, seed=0):
        self.max_cut_size = max_cut_size
        self.filter = filter
        self.use_cutoff = use_cutoff
        self.workers = workers
        self.node_limit = node_limit
        self.time_limit = time_limit
        self.seed = seed

    def fit(self, network: Network, y=None):
        report, pool = self._fit_pool(network, self.max_cut_size, self.filter)
        psi = build_psi(pool, n_links=len(network.links), network=network)
        cutoff = report.csp1_upper_bound if self.use_cutoff else None
        model = build_csp1(psi, cutoff=cutoff)
        self._finish(network, model, psi)
        uncovered = [od for od, ok in self.coverage_.items() if not ok]
        if uncovered:
            raise AssertionError(f"CSP1 layout left OD pairs uncovered: {uncovered}")
        return self


class MaxCoverageLocator(_BaseLocator):
    """Most OD pairs covered with at most `budget` sensor links (CSP2)."""

    def __init__(self, budget=8, max_cut_size=8, filter="none", benefits=None,
                 workers=None, node_limit=None, time_limit=None, seed=0):
        self.budget = budget
        self.max_cut_size = max_cut_size
        self.filter = filter
        self.benefits = benefits
        self.workers = workers
        self.node_limit = node_limit
        self.time_limit = time_limit
        self.seed = seed

    def fit(self, network: Network, y=None):
        _, pool = self._fit_pool(network, self.max_cut_size, self.filter)
        psi = build_psi(pool, benefits=self.benefits, n_links=len(network.links), network=network)
        model = build_csp2(psi, budget=self.budget)
        return self._finish(network, model, psi)
