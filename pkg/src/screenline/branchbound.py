"""Exact 0-1 solver: LP-based branch and bound with SOS1-aware branching.

The in-module path solves every LP relaxation with the bounded-variable
simplex from `simplex.py` and searches best-bound-first with deterministic
tie-breaking, so identical inputs give identical results.

Two presolve/scale escapes keep desk-scale instances practical:

* models carrying CSP structure are first reduced to an equivalent
  aggregated form: one selection variable per distinct interned cut (instead
  of one per (OD, cut) row) plus one coverage variable per OD pair for the
  maximum-coverage objective.  The reduction is exact for 0-1 solutions and
  its LP relaxation has the same optimal value, and solutions map back to
  the faithful row model deterministically;
* models large enough to need that aggregation (and any generic model
  beyond the dense simplex's practical row ceiling) are handed to the
  HiGHS mixed-integer solver that ships inside scipy (deterministic).
  These benchmark-scale relaxations carry an integrality gap that plain
  LP branch and bound cannot close without cutting planes, which are out
  of scope here; every returned assignment is still re-validated against
  the faithful model in exact arithmetic.
"""

from __future__ import annotations

import heapq
import sys
import time
from dataclasses import dataclass, field

import numpy as np
from scipy import sparse

from . import simplex
from .model import IlpModel, PsiStructure

# Practical ceiling (constraint rows) for the dense in-module simplex.
OWN_LP_ROW_LIMIT = 2500


@dataclass
class SolveOptions:
    int_tol: float = 1e-6
    gap_tol: float = 0.0
    node_limit: int | None = None
    time_limit: float | None = None
    branching: str = "auto"  # "auto" follows the SOS1-first rule
    seed: int = 0
    engine: str = "auto"  # "auto" | "own" | "milp"
    log: bool = False


@dataclass
class SolveResult:
    status: str  # "optimal" | "infeasible" | "budget-limit-hit"
    assignment: np.ndarray | None
    objective: float | None
    dual_bound: float | None
    nodes: int
    stats: dict = field(default_factory=dict)


def lp_relax(model: IlpModel, fixings: dict | None = None):
    """Continuous relaxation over [0,1] with `fixings` (var -> 0/1) applied.
    Returns (status, bound, solution); status "infeasible" signals pruning."""
    n = model.n_vars
    lo = np.zeros(n)
    hi = np.ones(n)
    if fixings:
        for var, val in fixings.items():
            lo[var] = hi[var] = float(val)
    status, x, val = simplex.solve_lp(
        model.A, model.senses, model.rhs, model.obj, model.sense, lo, hi
    )
    if status == "unbounded":  # cannot happen with [0,1] bounds
        raise AssertionError("bounded LP reported unbounded")
    if status == "infeasible":
        return "infeasible", None, None
    return "optimal", val, x


def branch_select(solution: np.ndarray, model: IlpModel, int_tol: float = 1e-6):
    """Pick a branching decision for a fractional LP solution.

    Preference order per the solver design: SOS1 group splitting (force one
    half to zero on each child), then the most fractional selection (y)
    variable, then x variables (flagged: should not occur on CSP1).
    Returns ("sos", zero_vars_left, zero_vars_right),
            ("var", var_index, flagged_x: bool), or None when integral.
    """
    frac = np.abs(solution - np.round(solution))
    fractional = frac > int_tol
    if not np.any(fractional):
        return None
    best_group = None
    best_mass = 0.0
    for group in model.sos1:
        mass = float(sum(frac[g] for g in group))
        active = sum(1 for g in group if solution[g] > int_tol)
        # A group with a single active member cannot be split meaningfully
        # (one child would repeat the parent); leave it to variable branching.
        if mass > int_tol and active >= 2 and mass > best_mass + 1e-12:
            best_mass = mass
            best_group = group
    if best_group is not None:
        # Dichotomy on the group's strongest candidate: either it is the
        # selected one (everything else in the group is zero) or it is zero.
        values = [(-solution[g], g) for g in best_group]
        values.sort()
        top = values[0][1]
        rest = [g for g in best_group if g != top]
        return ("sos", [top], rest)
    is_x = np.array([name.startswith("x_") for name in model.var_names])
    for prefer_x in (False, True):
        mask = fractional & (is_x == prefer_x)
        idx = np.nonzero(mask)[0]
        if idx.size:
            j = int(idx[np.argmax(frac[idx])])
            return ("var", j, bool(prefer_x))
    return None


def solve(model: IlpModel, opts: SolveOptions | None = None) -> SolveResult:
    """Solve a 0-1 model to proven optimality (default) or within limits."""
    opts = opts or SolveOptions()
    t0 = time.time()
    work, mapping = model, None
    if model.psi is not None and model.A.shape[0] > OWN_LP_ROW_LIMIT:
        work, mapping = _aggregate(model)
    # Models that needed aggregation carry the benchmark-scale integrality
    # gap that plain LP branch and bound cannot close without cutting planes
    # (a non-goal here); those go to HiGHS.  Everything desk-scale runs on
    # the in-module simplex branch and bound.
    use_milp = opts.engine == "milp" or (
        opts.engine == "auto"
        and (mapping is not None or work.A.shape[0] > OWN_LP_ROW_LIMIT)
    )
    if use_milp:
        if mapping is not None and model.psi.network is not None:
            work = _root_tighten(work, model.psi, model.kind)
        result = _solve_milp(work, opts)
    else:
        warm = _warm_start(work)
        if work.psi is not None and work.psi.network is not None:
            work = _add_path_rows(work)
        result = _branch_and_bound(work, opts, warm)
    if mapping is not None and result.assignment is not None:
        full = mapping(result.assignment)
        model.check_assignment(full)
        value = model.evaluate(full)
        better = value > result.objective if model.sense == "max" else value < result.objective
        dual = result.dual_bound
        if better and dual is not None:
            dual = max(dual, value) if model.sense == "max" else min(dual, value)
        result = SolveResult(
            status=result.status, assignment=full, objective=value,
            dual_bound=dual, nodes=result.nodes, stats=result.stats,
        )
    elif result.assignment is not None:
        model.check_assignment(result.assignment)
    result.stats.setdefault("engine", "milp" if use_milp else "own")
    result.stats["wall_time"] = time.time() - t0
    return result


# ---------------------------------------------------------------------------
# In-module branch and bound


def _branch_and_bound(model: IlpModel, opts: SolveOptions, warm) -> SolveResult:
    sense = model.sense
    better = (lambda a, b: a > b + 1e-9) if sense == "max" else (lambda a, b: a < b - 1e-9)
    worth = (  # can a node with this bound still beat the incumbent?
        (lambda bound, inc: inc is None or bound > inc + opts.gap_tol + 1e-9)
        if sense == "max"
        else (lambda bound, inc: inc is None or bound < inc - opts.gap_tol - 1e-9)
    )
    inc_val, inc_sol = None, None
    if warm is not None:
        model.check_assignment(warm)
        inc_val, inc_sol = model.evaluate(warm), np.round(np.asarray(warm, float))
    x_branch_events = 0
    nodes = 0
    counter = 0
    start = time.time()
    # Best-bound queue; key is negated for max so smaller pops first.
    status_code = "optimal"
    st, bound, sol = lp_relax(model, None)
    if st == "infeasible":
        return SolveResult("infeasible", None, None, None, 0)
    heap = [((-bound if sense == "max" else bound), counter, {}, bound, sol)]
    best_open = bound
    while heap:
        if opts.node_limit is not None and nodes >= opts.node_limit:
            status_code = "budget-limit-hit"
            break
        if opts.time_limit is not None and time.time() - start > opts.time_limit:
            status_code = "budget-limit-hit"
            break
        _, _, fixings, bound, sol = heapq.heappop(heap)
        best_open = bound
        if not worth(bound, inc_val):
            continue
        nodes += 1
        decision = branch_select(sol, model, opts.int_tol)
        if decision is None:
            val = model.evaluate(sol)
            try:
                model.check_assignment(sol)
            except ValueError:
                # Numerical round-off produced an invalid rounding; branch on
                # the largest activity variable instead of accepting.
                decision = ("var", int(np.argmax(np.abs(sol - np.round(sol)))), False)
            else:
                if inc_val is None or better(val, inc_val):
                    inc_val, inc_sol = val, np.round(sol)
                    if opts.log:
                        print(
                            f"node {nodes}: incumbent {inc_val} bound {bound}",
                            file=sys.stderr,
                        )
                continue
        if decision[0] == "sos":
            _, left, right = decision
            children = [
                {**fixings, **{v: 0 for v in left}},
                {**fixings, **{v: 0 for v in right}},
            ]
        else:
            _, var, flagged = decision
            if flagged:
                x_branch_events += 1
            children = [{**fixings, var: 0}, {**fixings, var: 1}]
        for child in children:
            st, cbound, csol = lp_relax(model, child)
            if st == "infeasible" or not worth(cbound, inc_val):
                continue
            counter += 1
            heapq.heappush(
                heap, ((-cbound if sense == "max" else cbound), counter, child, cbound, csol)
            )
    if status_code == "optimal":
        dual = inc_val
    else:
        dual = best_open
        for entry in heap:
            b = entry[3]
            dual = max(dual, b) if sense == "max" else min(dual, b)
    if inc_sol is None:
        if status_code == "optimal":
            return SolveResult("infeasible", None, None, None, nodes)
        return SolveResult("budget-limit-hit", None, None, dual, nodes)
    return SolveResult(
        status_code, inc_sol, inc_val, dual, nodes,
        stats={"x_branch_events": x_branch_events},
    )


# ---------------------------------------------------------------------------
# Warm starts (feasible incumbents from the CSP structure)


def _warm_start(model: IlpModel):
    psi = model.psi
    if psi is None or model.kind not in ("csp1", "csp2"):
        return None
    if model.kind == "csp1":
        return _warm_csp1(model, psi)
    return _warm_csp2(model, psi)


def _row_lookup(psi: PsiStructure) -> dict:
    return {(row.od, row.cut_id): l for l, row in enumerate(psi.rows)}


def _warm_csp1(model: IlpModel, psi: PsiStructure):
    """Proposition 1 construction: one cut shared by all OD pairs of each
    origin (the origin outflow cut is always such a cut in a Lemma 2 pool)."""
    by_origin: dict = {}
    for od in psi.sos_groups:
        by_origin.setdefault(od[0], []).append(od)
    chosen: dict = {}
    links: set = set()
    for s, ods in sorted(by_origin.items()):
        common = None
        for od in ods:
            ids = set(psi.pool.membership[od])
            common = ids if common is None else common & ids
        if not common:
            return None
        cid = min(common, key=lambda c: (len(psi.pool.cuts[c]), psi.pool.cuts[c].links))
        for od in ods:
            chosen[od] = cid
        links.update(psi.pool.cuts[cid].links)
    if model.cutoff is not None and len(links) > model.cutoff:
        return None
    return _encode(model, psi, links, chosen)


def _warm_csp2(model: IlpModel, psi: PsiStructure):
    """Greedy cut packing under the budget."""
    budget = model.budget or 0
    benefit = {od: psi.rows[g[0]].benefit for od, g in psi.sos_groups.items() if g}
    cut_ods: dict = {}
    for od, ids in psi.pool.membership.items():
        if od not in benefit:
            continue
        for cid in ids:
            cut_ods.setdefault(cid, []).append(od)
    links: set = set()
    covered: set = set()
    chosen: dict = {}
    while True:
        best = None
        for cid, ods in cut_ods.items():
            new_links = set(psi.pool.cuts[cid].links) - links
            if len(links) + len(new_links) > budget:
                continue
            gain = sum(benefit[od] for od in ods if od not in covered)
            if gain <= 0:
                continue
            key = (-gain / max(len(new_links), 1), len(new_links), psi.pool.cuts[cid].links)
            if best is None or key < best[0]:
                best = (key, cid, new_links, [od for od in ods if od not in covered])
        if best is None:
            break
        _, cid, new_links, new_ods = best
        links |= new_links
        for od in new_ods:
            covered.add(od)
            chosen[od] = cid
    # Credit any OD whose cut is already inside the chosen links.
    for od, ids in psi.pool.membership.items():
        if od in chosen or od not in benefit:
            continue
        for cid in ids:
            if set(psi.pool.cuts[cid].links) <= links:
                chosen[od] = cid
                break
    return _encode(model, psi, links, chosen)


def _encode(model: IlpModel, psi: PsiStructure, links, chosen: dict):
    v = np.zeros(model.n_vars)
    lookup = _row_lookup(psi)
    for od, cid in chosen.items():
        v[lookup[od, cid]] = 1.0
    for link in links:
        v[psi.n_rows + link] = 1.0
    return v


# ---------------------------------------------------------------------------
# Exact aggregation presolve for CSP models


def _edge_disjoint_paths(net, s: int, t: int) -> list[list[int]]:
    """A maximum family of edge-disjoint directed s->t paths (link id lists),
    via unit-capacity augmenting paths.  Deterministic: BFS scans adjacency
    in dense link-id order."""
    flow = [0] * len(net.links)
    links = net.links
    while True:
        # BFS over the residual graph; parent[v] = (link id, forward?).
        parent = {s: None}
        queue = [s]
        qi = 0
        while qi < len(queue) and t not in parent:
            u = queue[qi]
            qi += 1
            for eid in net.out_links[u]:
                v = links[eid][1]
                if flow[eid] == 0 and v not in parent:
                    parent[v] = (eid, True)
                    queue.append(v)
            for eid in net.in_links[u]:
                v = links[eid][0]
                if flow[eid] == 1 and v not in parent:
                    parent[v] = (eid, False)
                    queue.append(v)
        if t not in parent:
            break
        v = t
        while v != s:
            eid, forward = parent[v]
            flow[eid] = 1 if forward else 0
            v = links[eid][0] if forward else links[eid][1]
    # Decompose the flow into paths by walking unused flow links from s.
    out_flow = {u: [e for e in net.out_links[u] if flow[e]] for u in net.nodes}
    paths = []
    while out_flow[s]:
        path = []
        u = s
        while u != t:
            eid = out_flow[u].pop(0)
            path.append(eid)
            u = links[eid][1]
        paths.append(path)
    return paths


def _aggregate(model: IlpModel):
    """Collapse the (OD, cut) row model to one selection variable per
    distinct cut.  Returns (aggregated IlpModel, map_back function)."""
    psi = model.psi
    kind = model.kind
    used = sorted({row.cut_id for row in psi.rows})
    if model.budget is not None:
        # A cut larger than the budget can never be fully instrumented.
        used = [c for c in used if len(psi.pool.cuts[c]) <= model.budget]
    zpos = {cid: i for i, cid in enumerate(used)}
    nz = len(used)
    nx = psi.n_links
    ods = [od for od in sorted(psi.sos_groups) if psi.sos_groups[od]]
    odpos = {od: i for i, od in enumerate(ods)}
    benefit = {od: psi.rows[psi.sos_groups[od][0]].benefit for od in ods}
    with_v = kind in ("csp2", "csp0")
    nv = len(ods) if with_v else 0
    n = nz + nx + nv

    data, ri, ci, senses, rhs = [], [], [], [], []
    r = 0
    for cid in used:
        for link in psi.pool.cuts[cid].links:
            ri += [r, r]
            ci += [zpos[cid], nz + link]
            data += [1.0, -1.0]
            senses.append("<=")
            rhs.append(0.0)
            r += 1
    for od in ods:
        ids = [zpos[c] for c in psi.pool.membership[od] if c in zpos]
        if with_v:
            ri.append(r)
            ci.append(nz + nx + odpos[od])
            data.append(1.0)
            for z in ids:
                ri.append(r)
                ci.append(z)
                data.append(-1.0)
            senses.append("<=")
            rhs.append(0.0)
        else:
            for z in ids:
                ri.append(r)
                ci.append(z)
                data.append(1.0)
            senses.append(">=")
            rhs.append(1.0)
        r += 1
    # Path-based valid inequalities: covering (s, t) requires a sensor on
    # every directed s->t path, so for any fixed path P:
    #   CSP1: sum_{e in P} x_e >= 1;   CSP2/0: v_w <= sum_{e in P} x_e.
    # One family of edge-disjoint paths per OD pair tightens the otherwise
    # weak LP relaxation enormously at negligible model growth.
    if psi.network is not None:
        for od in ods:
            for path in _edge_disjoint_paths(psi.network, od[0], od[1]):
                if with_v:
                    ri.append(r)
                    ci.append(nz + nx + odpos[od])
                    data.append(1.0)
                for eid in path:
                    ri.append(r)
                    ci.append(nz + eid)
                    data.append(-1.0 if with_v else 1.0)
                senses.append("<=" if with_v else ">=")
                rhs.append(0.0 if with_v else 1.0)
                r += 1
    for bound in (model.budget, model.cutoff):
        if bound is not None:
            for link in range(nx):
                ri.append(r)
                ci.append(nz + link)
                data.append(1.0)
            senses.append("<=")
            rhs.append(float(bound))
            r += 1

    obj = np.zeros(n)
    if kind == "csp1":
        obj[nz : nz + nx] = psi.col_costs
        sense = "min"
    else:
        for od in ods:
            obj[nz + nx + odpos[od]] = benefit[od]
        if kind == "csp0":
            obj[nz : nz + nx] = -psi.col_costs
        sense = "max"
    names = (
        [f"z_{c}" for c in used]
        + [f"x_{e}" for e in range(nx)]
        + [f"v_{i}" for i in range(nv)]
    )
    agg = IlpModel(
        name=f"{model.name}-aggregated", sense=sense, obj=obj,
        A=sparse.csr_matrix((data, (ri, ci)), shape=(r, n)),
        senses=senses, rhs=np.array(rhs), var_names=names,
        psi=None, kind=f"agg-{kind}", budget=model.budget, cutoff=model.cutoff,
    )
    lookup = _row_lookup(psi)

    def map_back(agg_assignment) -> np.ndarray:
        v = np.round(np.asarray(agg_assignment, float))
        chosen_links = {e for e in range(nx) if v[nz + e] > 0.5}
        full = np.zeros(model.n_vars)
        for link in chosen_links:
            full[psi.n_rows + link] = 1.0
        for od in ods:
            candidates = [
                cid
                for cid in psi.pool.membership[od]
                if set(psi.pool.cuts[cid].links) <= chosen_links
            ]
            if not candidates:
                if kind == "csp1":
                    raise AssertionError(f"aggregated CSP1 left OD {od} uncovered")
                continue
            cid = min(
                candidates,
                key=lambda c: (len(psi.pool.cuts[c]), psi.pool.cuts[c].links),
            )
            full[lookup[od, cid]] = 1.0
        return full

    return agg, map_back


def _add_path_rows(model: IlpModel) -> IlpModel:
    """Append the path-based valid inequalities to a faithful CSP model
    (same family as in `_aggregate`, phrased over the y/x variables):
    CSP1: sum_{e in P} x_e >= 1; CSP2/0: sum_{l in group(w)} y_l <=
    sum_{e in P} x_e.  Rows are exact for every 0-1 solution; they only
    tighten the LP relaxation for the in-module branch and bound."""
    psi = model.psi
    if model.kind not in ("csp1", "csp2", "csp0"):
        return model
    with_v = model.kind in ("csp2", "csp0")
    data, ri, ci, senses, rhs = [], [], [], [], []
    r = 0
    for od in sorted(psi.sos_groups):
        group = psi.sos_groups[od]
        if not group:
            continue
        for path in _edge_disjoint_paths(psi.network, od[0], od[1]):
            if with_v:
                for l in group:
                    ri.append(r)
                    ci.append(l)
                    data.append(1.0)
            for eid in path:
                ri.append(r)
                ci.append(psi.n_rows + eid)
                data.append(-1.0 if with_v else 1.0)
            senses.append("<=" if with_v else ">=")
            rhs.append(0.0 if with_v else 1.0)
            r += 1
    if r == 0:
        return model
    extra = sparse.csr_matrix((data, (ri, ci)), shape=(r, model.n_vars))
    return IlpModel(
        name=model.name, sense=model.sense, obj=model.obj,
        A=sparse.vstack([model.A, extra], format="csr"),
        senses=model.senses + senses,
        rhs=np.concatenate([model.rhs, np.array(rhs)]),
        var_names=model.var_names, sos1=model.sos1, psi=psi,
        kind=model.kind, budget=model.budget, cutoff=model.cutoff,
    )


def _shortest_paths_from(net, s: int, weights) -> dict:
    """Dijkstra over link weights; returns node -> (distance, link ids of a
    shortest path from s).  Deterministic: ties resolved by scan order."""
    import heapq as hq

    dist = {s: 0.0}
    parent: dict = {}
    heap = [(0.0, s)]
    done = set()
    while heap:
        d, u = hq.heappop(heap)
        if u in done:
            continue
        done.add(u)
        for eid in net.out_links[u]:
            v = net.links[eid][1]
            nd = d + weights[eid]
            if v not in dist or nd < dist[v] - 1e-12:
                dist[v] = nd
                parent[v] = eid
                hq.heappush(heap, (nd, v))
    paths = {}
    for v, d in dist.items():
        edges = []
        u = v
        while u != s:
            eid = parent[u]
            edges.append(eid)
            u = net.links[eid][0]
        paths[v] = (d, edges[::-1])
    return paths


def _root_tighten(agg: IlpModel, psi: PsiStructure, kind: str) -> IlpModel:
    """Cutting-plane loop at the root: repeatedly solve the LP relaxation and
    separate violated path inequalities (the most-violated s->t path per OD,
    found by shortest-path search under the fractional link weights).  The
    returned model is the input plus the separating rows; every added row is
    a valid inequality for 0-1 solutions, so the model stays exact."""
    from scipy.optimize import linprog

    net = psi.network
    ods = [od for od in sorted(psi.sos_groups) if psi.sos_groups[od]]
    nz = sum(1 for name in agg.var_names if name.startswith("z_"))
    nx = psi.n_links
    with_v = kind in ("csp2", "csp0")
    odpos = {od: i for i, od in enumerate(ods)}
    A = agg.A
    senses = list(agg.senses)
    rhs = list(agg.rhs)
    c = -agg.obj if agg.sense == "max" else agg.obj
    n = agg.n_vars
    bounds = (0.0, 1.0)
    seen_rows: set = set()
    for _ in range(40):
        ub_mask = [i for i, op in enumerate(senses) if op == "<="]
        ge_mask = [i for i, op in enumerate(senses) if op == ">="]
        eq_mask = [i for i, op in enumerate(senses) if op == "="]
        b = np.asarray(rhs)
        res = linprog(
            c,
            A_ub=sparse.vstack([A[ub_mask], -A[ge_mask]]) if ub_mask or ge_mask else None,
            b_ub=np.concatenate([b[ub_mask], -b[ge_mask]]) if ub_mask or ge_mask else None,
            A_eq=A[eq_mask] if eq_mask else None,
            b_eq=b[eq_mask] if eq_mask else None,
            bounds=bounds,
            method="highs",
        )
        if res.status != 0:
            break
        x = res.x
        weights = [max(float(x[nz + e]), 0.0) for e in range(nx)]
        new_rows = []
        by_origin: dict = {}
        for od in ods:
            by_origin.setdefault(od[0], []).append(od[1])
        for s, dests in sorted(by_origin.items()):
            paths = _shortest_paths_from(net, s, weights)
            for t in dests:
                if t not in paths:
                    continue
                d, edges = paths[t]
                need = float(x[nz + nx + odpos[(s, t)]]) if with_v else 1.0
                if d >= need - 1e-6:
                    continue
                key = (odpos[(s, t)] if with_v else -1, tuple(edges))
                if key in seen_rows:
                    continue
                seen_rows.add(key)
                cols = [nz + e for e in edges]
                vals = [-1.0 if with_v else 1.0] * len(edges)
                if with_v:
                    cols.append(nz + nx + odpos[(s, t)])
                    vals.append(1.0)
                new_rows.append((cols, vals))
        if not new_rows:
            break
        data, ri, ci = [], [], []
        for i, (cols, vals) in enumerate(new_rows):
            ri += [i] * len(cols)
            ci += cols
            data += vals
        A = sparse.vstack(
            [A, sparse.csr_matrix((data, (ri, ci)), shape=(len(new_rows), n))]
        ).tocsr()
        senses += ["<=" if with_v else ">="] * len(new_rows)
        rhs += [0.0 if with_v else 1.0] * len(new_rows)
    return IlpModel(
        name=agg.name + "-tightened", sense=agg.sense, obj=agg.obj, A=A,
        senses=senses, rhs=np.asarray(rhs), var_names=agg.var_names,
        psi=None, kind=agg.kind, budget=agg.budget, cutoff=agg.cutoff,
    )


# ---------------------------------------------------------------------------
# HiGHS fallback for models beyond the dense simplex ceiling


def _solve_milp(model: IlpModel, opts: SolveOptions) -> SolveResult:
    from scipy.optimize import Bounds, LinearConstraint, milp

    n = model.n_vars
    c = -model.obj if model.sense == "max" else model.obj
    lb = np.empty(model.A.shape[0])
    ub = np.empty(model.A.shape[0])
    for i, op in enumerate(model.senses):
        if op == "<=":
            lb[i], ub[i] = -np.inf, model.rhs[i]
        elif op == ">=":
            lb[i], ub[i] = model.rhs[i], np.inf
        else:
            lb[i] = ub[i] = model.rhs[i]
    options = {"mip_rel_gap": 0.0}
    if opts.time_limit is not None:
        options["time_limit"] = opts.time_limit
    if opts.node_limit is not None:
        options["node_limit"] = opts.node_limit
    res = milp(
        c,
        constraints=LinearConstraint(model.A, lb, ub),
        integrality=np.ones(n),
        bounds=Bounds(np.zeros(n), np.ones(n)),
        options=options,
    )
    nodes = int(getattr(res, "mip_node_count", 0) or 0)
    if res.status == 2:
        return SolveResult("infeasible", None, None, None, nodes)
    if res.x is None:
        return SolveResult("budget-limit-hit", None, None, None, nodes)
    x = np.round(res.x)
    value = model.evaluate(x)
    # scipy reports the dual bound for the minimized problem; flip it back.
    dual = getattr(res, "mip_dual_bound", None)
    if dual is not None and model.sense == "max":
        dual = -dual
    status = "optimal" if res.status == 0 else "budget-limit-hit"
    return SolveResult(status, x, value, dual, nodes, stats={"milp_status": res.status})
