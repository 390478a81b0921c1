"""Bipartite Psi structure and 0-1 ILP builders for CSP0 / CSP1 / CSP2.

The Psi structure has one row per (OD pair, cut) selection variable y_l and
one column per link variable x_r; an arc (l, r) means link r belongs to row
l's cut.  CSP1 minimizes link cost subject to exactly one selected cut per
OD pair; CSP2 maximizes covered benefit subject to a link budget K; CSP0 is
the mixed benefit-minus-cost variant.  Models are emitted in the faithful
row form (y_l <= x_r per arc); the solver may presolve them into an
equivalent aggregated form internally.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy import sparse

from .cuts import CutPool


@dataclass(frozen=True)
class PsiRow:
    od: tuple[int, int]
    cut_id: int
    benefit: float


@dataclass
class PsiStructure:
    """Rows (y variables), link columns (x variables), arcs and SOS groups."""

    rows: list[PsiRow]
    col_costs: np.ndarray  # cost t_r per link column
    arcs: list[tuple[int, ...]]  # arcs[l] = link ids of row l's cut
    sos_groups: dict  # od -> list of row indices
    pool: CutPool
    n_links: int
    # Optional back-reference to the Network; when present the solver can
    # derive path-based valid inequalities to tighten LP relaxations.
    network: object | None = None

    @property
    def n_rows(self) -> int:
        return len(self.rows)


def build_psi(pool: CutPool, benefits=None, costs=None, n_links=None,
              network=None) -> PsiStructure:
    """Assemble the Psi structure from a pool.

    `benefits` maps OD pair -> u (uniform 1 when None); `costs` is a per-link
    array (uniform 1 when None).  Rows are ordered by OD pair then cut id,
    columns by link id, so numbering is deterministic.
    """
    if not pool.membership or not any(pool.membership.values()):
        raise ValueError("empty cut pool")
    if n_links is None:
        n_links = len(costs) if costs is not None else (
            max((max(c.links) for c in pool.cuts if c.links), default=-1) + 1
        )
    col_costs = np.ones(n_links) if costs is None else np.asarray(costs, dtype=float)
    if len(col_costs) != n_links:
        raise ValueError("cost vector length does not match link count")
    if np.any(col_costs < 0):
        raise ValueError("negative link cost")
    rows: list[PsiRow] = []
    arcs: list[tuple[int, ...]] = []
    sos_groups: dict = {}
    for od in sorted(pool.membership):
        u = 1.0 if benefits is None else float(benefits[od])
        if u < 0:
            raise ValueError(f"negative benefit for OD {od}")
        group = []
        for cid in pool.membership[od]:
            group.append(len(rows))
            rows.append(PsiRow(od=od, cut_id=cid, benefit=u))
            arcs.append(pool.cuts[cid].links)
        sos_groups[od] = group
    return PsiStructure(
        rows=rows,
        col_costs=col_costs,
        arcs=arcs,
        sos_groups=sos_groups,
        pool=pool,
        n_links=n_links,
        network=network,
    )


@dataclass
class IlpModel:
    """A 0-1 integer linear program in sparse row form.

    Variables are all binary.  For CSP models, variables 0..n_rows-1 are the
    y row variables (in Psi row order) and the next n_links are the x link
    variables; `psi`/`kind`/`budget` carry the structure for solver presolve.
    """

    name: str
    sense: str  # "min" | "max"
    obj: np.ndarray
    A: sparse.csr_matrix
    senses: list[str]  # "<=", "=", ">=" per constraint row
    rhs: np.ndarray
    var_names: list[str]
    sos1: list[list[int]] = field(default_factory=list)
    psi: PsiStructure | None = None
    kind: str | None = None
    budget: int | None = None
    cutoff: int | None = None

    @property
    def n_vars(self) -> int:
        return len(self.obj)

    def check_assignment(self, values: np.ndarray, tol: float = 1e-9) -> None:
        """Exact feasibility check of a 0/1 assignment; raises on violation."""
        v = np.asarray(values, dtype=float)
        if v.shape != (self.n_vars,):
            raise ValueError("assignment length mismatch")
        if np.any(np.abs(v - np.round(v)) > tol) or np.any(v < -tol) or np.any(v > 1 + tol):
            raise ValueError("assignment is not binary")
        v = np.round(v)
        lhs = self.A @ v
        for i, (op, b) in enumerate(zip(self.senses, self.rhs)):
            bad = (
                (op == "<=" and lhs[i] > b + tol)
                or (op == ">=" and lhs[i] < b - tol)
                or (op == "=" and abs(lhs[i] - b) > tol)
            )
            if bad:
                raise ValueError(
                    f"constraint {i} violated: row value {lhs[i]} {op} {b}"
                )
        for group in self.sos1:
            if sum(v[g] > 0.5 for g in group) > 1:
                raise ValueError("SOS1 group has more than one nonzero variable")

    def evaluate(self, values: np.ndarray) -> float:
        return float(self.obj @ np.round(np.asarray(values, dtype=float)))


def _csp_matrix(psi: PsiStructure, group_op: str, group_rhs, budget=None, cutoff=None):
    """Shared constraint assembly: arc rows, one group row per OD, optional
    budget / cutoff rows over x."""
    n_rows, n_links = psi.n_rows, psi.n_links
    n_vars = n_rows + n_links
    data, ri, ci = [], [], []
    senses, rhs = [], []
    r = 0
    for l, links in enumerate(psi.arcs):
        for link in links:
            ri += [r, r]
            ci += [l, n_rows + link]
            data += [1.0, -1.0]
            senses.append("<=")
            rhs.append(0.0)
            r += 1
    for od in sorted(psi.sos_groups):
        group = psi.sos_groups[od]
        if not group:
            continue  # uncoverable OD: no y variables, nothing to constrain
        for l in group:
            ri.append(r)
            ci.append(l)
            data.append(1.0)
        senses.append(group_op)
        rhs.append(group_rhs)
        r += 1
    for bound, tag in ((budget, "budget"), (cutoff, "cutoff")):
        if bound is not None:
            for link in range(n_links):
                ri.append(r)
                ci.append(n_rows + link)
                data.append(1.0)
            senses.append("<=")
            rhs.append(float(bound))
            r += 1
    A = sparse.csr_matrix((data, (ri, ci)), shape=(r, n_vars))
    names = [f"y_{l}" for l in range(n_rows)] + [f"x_{e}" for e in range(n_links)]
    sos1 = [list(psi.sos_groups[od]) for od in sorted(psi.sos_groups) if psi.sos_groups[od]]
    return A, senses, np.array(rhs), names, sos1


def build_csp1(psi: PsiStructure, cutoff: int | None = None) -> IlpModel:
    """Minimize sum t_r x_r subject to y_l <= x_r per arc and exactly one
    selected cut per OD pair; optional Proposition 1 cutoff sum x <= bound."""
    for od, group in psi.sos_groups.items():
        if not group:
            raise ValueError(f"OD pair {od} has no cuts in the pool; CSP1 infeasible")
    A, senses, rhs, names, sos1 = _csp_matrix(psi, "=", 1.0, cutoff=cutoff)
    obj = np.concatenate([np.zeros(psi.n_rows), psi.col_costs])
    return IlpModel(
        name="csp1", sense="min", obj=obj, A=A, senses=senses, rhs=rhs,
        var_names=names, sos1=sos1, psi=psi, kind="csp1", cutoff=cutoff,
    )


def build_csp2(psi: PsiStructure, budget: int) -> IlpModel:
    """Maximize sum u_l y_l subject to y_l <= x_r per arc, at most one cut
    per OD pair, and the link budget sum x_r <= K."""
    if budget < 0:
        raise ValueError("budget must be >= 0")
    A, senses, rhs, names, sos1 = _csp_matrix(psi, "<=", 1.0, budget=budget)
    obj = np.concatenate([np.array([row.benefit for row in psi.rows]), np.zeros(psi.n_links)])
    return IlpModel(
        name="csp2", sense="max", obj=obj, A=A, senses=senses, rhs=rhs,
        var_names=names, sos1=sos1, psi=psi, kind="csp2", budget=budget,
    )


def build_csp0(psi: PsiStructure) -> IlpModel:
    """Maximize sum u_l y_l - sum t_r x_r with at-most-one cut per OD pair
    (the mixed benefit/cost closure variant; exposed for completeness)."""
    A, senses, rhs, names, sos1 = _csp_matrix(psi, "<=", 1.0)
    obj = np.concatenate([np.array([row.benefit for row in psi.rows]), -psi.col_costs])
    return IlpModel(
        name="csp0", sense="max", obj=obj, A=A, senses=senses, rhs=rhs,
        var_names=names, sos1=sos1, psi=psi, kind="csp0",
    )


@dataclass
class Placement:
    """A solved sensor layout."""

    chosen_links: list[int]
    chosen_cuts: dict  # od -> cut id or None
    objective_value: float
    covered_ods: list[tuple[int, int]]
    solver_stats: dict = field(default_factory=dict)


def extract_placement(model: IlpModel, assignment, psi: PsiStructure) -> Placement:
    """Build a Placement from a feasible 0/1 assignment; the assignment is
    re-checked against every model constraint and the objective recomputed."""
    v = np.round(np.asarray(assignment, dtype=float))
    model.check_assignment(v)
    chosen_links = sorted(
        link for link in range(psi.n_links) if v[psi.n_rows + link] > 0.5
    )
    chosen_cuts: dict = {}
    for od in sorted(psi.sos_groups):
        picked = [l for l in psi.sos_groups[od] if v[l] > 0.5]
        chosen_cuts[od] = psi.rows[picked[0]].cut_id if picked else None
    covered = [od for od, cid in chosen_cuts.items() if cid is not None]
    return Placement(
        chosen_links=chosen_links,
        chosen_cuts=chosen_cuts,
        objective_value=model.evaluate(v),
        covered_ods=covered,
    )


def write_lp(model: IlpModel, path) -> None:
    """Export in the standard LP text interchange format (with binaries and
    SOS1 sections) so external solvers can cross-check."""
    with open(path, "w") as fh:
        fh.write("Maximize\n" if model.sense == "max" else "Minimize\n")
        terms = [
            f"{'+' if c >= 0 else '-'} {abs(c):g} {model.var_names[j]}"
            for j, c in enumerate(model.obj)
            if c != 0
        ]
        fh.write(" obj: " + " ".join(terms) + "\n")
        fh.write("Subject To\n")
        csr = model.A
        opmap = {"<=": "<=", ">=": ">=", "=": "="}
        for i in range(csr.shape[0]):
            lo, hi = csr.indptr[i], csr.indptr[i + 1]
            terms = [
                f"{'+' if c >= 0 else '-'} {abs(c):g} {model.var_names[j]}"
                for j, c in zip(csr.indices[lo:hi], csr.data[lo:hi])
            ]
            fh.write(f" c{i}: " + " ".join(terms) + f" {opmap[model.senses[i]]} {model.rhs[i]:g}\n")
        fh.write("Binary\n")
        for name in model.var_names:
            fh.write(f" {name}\n")
        if model.sos1:
            fh.write("SOS\n")
            for k, group in enumerate(model.sos1):
                entries = " ".join(
                    f"{model.var_names[j]}:{i + 1}" for i, j in enumerate(group)
                )
                fh.write(f" s{k}: S1 :: {entries}\n")
        fh.write("End\n")
