"""A bounded-variable revised simplex method (dense, two-phase).

Solves   optimize c'v   s.t.  A v {<=,=,>=} b,  lo <= v <= hi
entirely in-module: the branch-and-bound solver uses it for every LP
relaxation it solves itself.  Implementation notes:

* computational form: one slack column per constraint row plus one artificial
  column per row; phase 1 minimizes the artificial sum from an always-feasible
  basis, phase 2 optimizes the real objective with artificials pinned to 0;
* the basis inverse is kept explicitly and updated by elimination after each
  pivot, with periodic refactorization for numerical hygiene;
* entering variable: most-negative reduced cost, ties broken by lowest column
  index; the Bland rule takes over after a long degenerate stretch, which
  makes the method finite and deterministic;
* the ratio test honors both variable bounds (bound flips included).

All model coefficients in this package are small integers, so a fixed 1e-7
tolerance is comfortable.
"""

from __future__ import annotations

import numpy as np

TOL = 1e-7
_REFACTOR_EVERY = 400


class SimplexError(RuntimeError):
    pass


def solve_lp(A, senses, rhs, obj, sense="min", lower=None, upper=None,
             max_iter=200000):
    """Solve the bounded LP; returns (status, x, value) with status one of
    "optimal", "infeasible", "unbounded"."""
    A = np.asarray(A.todense() if hasattr(A, "todense") else A, dtype=float)
    m, n = A.shape
    b = np.asarray(rhs, dtype=float)
    c = np.asarray(obj, dtype=float).copy()
    if sense == "max":
        c = -c
    lo = np.zeros(n) if lower is None else np.asarray(lower, dtype=float).copy()
    hi = np.ones(n) if upper is None else np.asarray(upper, dtype=float).copy()
    if np.any(lo > hi + TOL):
        return "infeasible", None, None
    if not np.all(np.isfinite(lo)):
        raise SimplexError("finite lower bounds are required")

    # Work matrix: structural | slack | artificial columns.
    N = n + 2 * m
    W = np.zeros((m, N))
    W[:, :n] = A
    wlo = np.concatenate([lo, np.zeros(2 * m)])
    whi = np.concatenate([hi, np.zeros(2 * m)])
    for i, op in enumerate(senses):
        W[i, n + i] = -1.0 if op == ">=" else 1.0
        whi[n + i] = 0.0 if op == "=" else np.inf

    # Start: structural and slack columns nonbasic at their lower bound,
    # artificial columns basic, carrying the residual with +/-1 coefficients.
    at_upper = np.zeros(N, dtype=bool)
    resid = b - W[:, : n + m] @ wlo[: n + m]
    for i in range(m):
        W[i, n + m + i] = 1.0 if resid[i] >= 0 else -1.0
        whi[n + m + i] = np.inf
    basis = np.arange(n + m, N)

    state = _State(W, b, wlo, whi, basis, at_upper)

    # Phase 1: drive the artificial sum to zero.
    c1 = np.zeros(N)
    c1[n + m:] = 1.0
    if _optimize(state, c1, max_iter) == "unbounded":
        raise SimplexError("phase 1 unbounded; inconsistent model")
    if float(c1 @ state.values()) > 1e-6:
        return "infeasible", None, None
    state.whi[n + m:] = 0.0  # pin artificials

    # Phase 2.
    c2 = np.concatenate([c, np.zeros(2 * m)])
    if _optimize(state, c2, max_iter) == "unbounded":
        return "unbounded", None, None
    x = state.values()[:n]
    value = float(c @ x)
    if sense == "max":
        value = -value
    return "optimal", x, value


class _State:
    """Basis state: explicit inverse, nonbasic bound statuses, basic values."""

    def __init__(self, W, b, wlo, whi, basis, at_upper):
        self.W = W
        self.b = b
        self.wlo = wlo
        self.whi = whi
        self.basis = basis
        self.at_upper = at_upper
        self.m, self.N = W.shape
        self.refactor()

    def refactor(self):
        try:
            self.Binv = np.linalg.inv(self.W[:, self.basis])
        except np.linalg.LinAlgError as exc:
            raise SimplexError("singular basis") from exc
        self.recompute_values()

    def nonbasic_values(self):
        return np.where(self.at_upper, self.whi, self.wlo)

    def recompute_values(self):
        nb = np.ones(self.N, dtype=bool)
        nb[self.basis] = False
        nbv = self.nonbasic_values()
        self.xB = self.Binv @ (self.b - self.W[:, nb] @ nbv[nb])

    def values(self):
        full = self.nonbasic_values().astype(float)
        full[self.basis] = self.xB
        return full


def _optimize(state: _State, c, max_iter) -> str:
    m, N = state.m, state.N
    W, wlo, whi = state.W, state.wlo, state.whi
    since_refactor = 0
    degenerate_run = 0
    for _ in range(max_iter):
        basis, Binv = state.basis, state.Binv
        y = c[basis] @ Binv
        red = c - y @ W
        nb = np.ones(N, dtype=bool)
        nb[basis] = False
        free = whi > wlo + TOL
        eligible = nb & free & (
            (~state.at_upper & (red < -TOL)) | (state.at_upper & (red > TOL))
        )
        candidates = np.nonzero(eligible)[0]
        if candidates.size == 0:
            return "optimal"
        if degenerate_run > 2 * (m + 10):
            j = int(candidates[0])  # Bland: lowest index
        else:
            j = int(candidates[int(np.argmax(np.abs(red[candidates])))])
        d = -1.0 if state.at_upper[j] else 1.0
        u = Binv @ W[:, j]
        delta = -d * u  # change rate of basic values per unit step

        # Ratio test over basic bounds plus the entering variable's own span.
        t_best = whi[j] - wlo[j]
        leave = -1
        leave_to_upper = False
        for i in range(m):
            di = delta[i]
            if di < -TOL:
                lim = (state.xB[i] - wlo[basis[i]]) / (-di)
                to_upper = False
            elif di > TOL:
                hb = whi[basis[i]]
                if not np.isfinite(hb):
                    continue
                lim = (hb - state.xB[i]) / di
                to_upper = True
            else:
                continue
            if lim < 0.0:
                lim = 0.0
            better = lim < t_best - 1e-9
            tie = abs(lim - t_best) <= 1e-9
            if better or (tie and (leave == -1 or basis[i] < basis[leave])):
                t_best = lim
                leave = i
                leave_to_upper = to_upper
        if not np.isfinite(t_best):
            return "unbounded"
        t = max(t_best, 0.0)
        degenerate_run = degenerate_run + 1 if t <= 1e-10 else 0

        state.xB += delta * t
        if leave == -1:
            # The entering variable ran to its other bound: pure flip.
            state.at_upper[j] = not state.at_upper[j]
            continue

        # Pivot: j enters at value bound_j + d*t, basis[leave] exits to a bound.
        out = basis[leave]
        state.at_upper[out] = leave_to_upper
        enter_from = whi[j] if state.at_upper[j] else wlo[j]
        state.xB[leave] = enter_from + d * t
        basis[leave] = j
        piv = u[leave]
        if abs(piv) < 1e-10:
            state.refactor()
            continue
        row = state.Binv[leave, :] / piv
        state.Binv -= np.outer(u, row)
        state.Binv[leave, :] = row
        since_refactor += 1
        if since_refactor >= _REFACTOR_EVERY:
            state.refactor()
            since_refactor = 0
    raise SimplexError("simplex iteration limit exceeded")
