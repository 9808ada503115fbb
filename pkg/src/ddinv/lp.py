"""Dense two-phase primal simplex for the small linear programs built here.

Standard form is reached by shifting variables with a finite bound, splitting
free variables into differences of nonnegative pairs, and adding slacks.
Pricing is deterministic: Dantzig's rule with lowest-index tie breaking,
falling back to Bland's rule after a run of degenerate pivots so cycling
cannot occur. Doubly bounded variables contribute an extra range row.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

import numpy as np

TOL_FEAS = 1e-8
TOL_PIVOT = 1e-10
BLAND_AFTER = 12
ITER_FACTOR = 50


class LpStatus(enum.Enum):
    OPTIMAL = "optimal"
    FEASIBLE = "feasible"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"
    ITERATION_LIMIT = "iteration_limit"


def _as_matrix(value, rows, cols, name):
    if value is None:
        return np.zeros((0, cols))
    mat = np.asarray(value, dtype=float)
    if mat.ndim != 2 or mat.shape[1] != cols:
        raise ValueError(f"{name} must be 2-d with {cols} columns, got shape {mat.shape}")
    return mat


@dataclass
class LinearProgram:
    """min objective @ z subject to eq_lhs z = eq_rhs, ineq_lhs z <= ineq_rhs,
    lower_bounds <= z <= upper_bounds (infinities allowed)."""

    num_vars: int
    objective: np.ndarray
    eq_lhs: Optional[np.ndarray] = None
    eq_rhs: Optional[np.ndarray] = None
    ineq_lhs: Optional[np.ndarray] = None
    ineq_rhs: Optional[np.ndarray] = None
    lower_bounds: Optional[np.ndarray] = None
    upper_bounds: Optional[np.ndarray] = None

    def __post_init__(self):
        n = self.num_vars
        if n <= 0:
            raise ValueError("num_vars must be positive")
        self.objective = np.asarray(self.objective, dtype=float).reshape(-1)
        if self.objective.shape != (n,):
            raise ValueError("objective length does not match num_vars")
        self.eq_lhs = _as_matrix(self.eq_lhs, None, n, "eq_lhs")
        self.ineq_lhs = _as_matrix(self.ineq_lhs, None, n, "ineq_lhs")
        self.eq_rhs = np.zeros(0) if self.eq_rhs is None else np.asarray(self.eq_rhs, dtype=float).reshape(-1)
        self.ineq_rhs = np.zeros(0) if self.ineq_rhs is None else np.asarray(self.ineq_rhs, dtype=float).reshape(-1)
        if self.eq_lhs.shape[0] != self.eq_rhs.shape[0]:
            raise ValueError("eq_lhs and eq_rhs row counts differ")
        if self.ineq_lhs.shape[0] != self.ineq_rhs.shape[0]:
            raise ValueError("ineq_lhs and ineq_rhs row counts differ")
        self.lower_bounds = (np.full(n, -np.inf) if self.lower_bounds is None
                             else np.asarray(self.lower_bounds, dtype=float).reshape(-1))
        self.upper_bounds = (np.full(n, np.inf) if self.upper_bounds is None
                             else np.asarray(self.upper_bounds, dtype=float).reshape(-1))
        if self.lower_bounds.shape != (n,) or self.upper_bounds.shape != (n,):
            raise ValueError("bound vectors must have num_vars entries")
        if np.any(self.lower_bounds > self.upper_bounds):
            raise ValueError("lower bound exceeds upper bound")


@dataclass
class LpSolution:
    status: LpStatus
    primal: Optional[np.ndarray] = None
    objective_value: Optional[float] = None


def check_feasible(lp: LinearProgram, point, tol: float = TOL_FEAS) -> bool:
    """True when point satisfies every constraint of lp within tol."""
    z = np.asarray(point, dtype=float).reshape(-1)
    if z.shape != (lp.num_vars,):
        raise ValueError("point length does not match num_vars")
    if lp.eq_lhs.shape[0] and np.max(np.abs(lp.eq_lhs @ z - lp.eq_rhs)) > tol:
        return False
    if lp.ineq_lhs.shape[0] and np.max(lp.ineq_lhs @ z - lp.ineq_rhs) > tol:
        return False
    if np.any(z < lp.lower_bounds - tol) or np.any(z > lp.upper_bounds + tol):
        return False
    return True


def lp_to_text(lp: LinearProgram) -> str:
    """Plain-text dump, one constraint per line. Debug aid only."""

    def comb(row):
        terms = [f"{row[i]:+.6g}*z{i}" for i in range(lp.num_vars) if row[i] != 0.0]
        return " ".join(terms) if terms else "0"

    lines = [f"min {comb(lp.objective)}"]
    for row, rhs in zip(lp.eq_lhs, lp.eq_rhs):
        lines.append(f"{comb(row)} == {rhs:.6g}")
    for row, rhs in zip(lp.ineq_lhs, lp.ineq_rhs):
        lines.append(f"{comb(row)} <= {rhs:.6g}")
    for i in range(lp.num_vars):
        lo, hi = lp.lower_bounds[i], lp.upper_bounds[i]
        if np.isfinite(lo) or np.isfinite(hi):
            lines.append(f"{lo:.6g} <= z{i} <= {hi:.6g}")
    return "\n".join(lines)


def _pivot(tab, row, col):
    tab[row] /= tab[row, col]
    other = tab[:, col].copy()
    other[row] = 0.0
    tab -= np.outer(other, tab[row])
    tab[:, col] = 0.0
    tab[row, col] = 1.0


def _run_simplex(tab, basis, nrows, iter_cap):
    """Iterate on a tableau whose last row holds reduced costs and last column
    the right-hand side. Returns 'optimal', 'unbounded' or 'iteration_limit'."""
    degenerate_run = 0
    for _ in range(iter_cap):
        costs = tab[-1, :-1]
        bland = degenerate_run >= BLAND_AFTER
        if bland:
            below = np.where(costs < -TOL_PIVOT)[0]
            if below.size == 0:
                return "optimal"
            col = int(below[0])
        else:
            col = int(np.argmin(costs))
            if costs[col] >= -TOL_PIVOT:
                return "optimal"
        colvals = tab[:nrows, col]
        eligible = np.where(colvals > TOL_PIVOT)[0]
        if eligible.size == 0:
            return "unbounded"
        rhs = tab[eligible, -1]
        ratios = rhs / colvals[eligible]
        if bland:
            # exact minimum-ratio ties broken by lowest basis index; the
            # index rule is what makes the cycling guarantee hold
            ties = eligible[ratios <= ratios.min() + 1e-12]
            row = int(ties[np.argmin(basis[ties])])
        else:
            # two-pass ratio test: any row whose ratio keeps every basic
            # value above -TOL_FEAS may leave, and the largest pivot entry
            # in that window wins. Near-threshold pivots wreck the tableau
            # scale within a handful of iterations otherwise.
            limit = ((rhs + TOL_FEAS) / colvals[eligible]).min()
            window = eligible[ratios <= limit]
            row = int(window[np.argmax(colvals[window])])
        step = tab[row, -1] / tab[row, col]
        degenerate_run = degenerate_run + 1 if step < 1e-12 else 0
        _pivot(tab, row, col)
        basis[row] = col
        # the relaxed test can leave basic values a hair below zero
        np.clip(tab[:nrows, -1], 0.0, None, out=tab[:nrows, -1])
    return "iteration_limit"


def solve(lp: LinearProgram) -> LpSolution:
    """Two-phase simplex. Pure feasibility problems (all-zero objective) stop
    after phase one and report FEASIBLE; anything else reports OPTIMAL,
    INFEASIBLE, UNBOUNDED or ITERATION_LIMIT."""
    n = lp.num_vars

    # variable transform: z[i] = offset[i] + sign * s for each structural column
    columns = []
    offsets = np.zeros(n)
    range_rows = []
    for i in range(n):
        lo, hi = lp.lower_bounds[i], lp.upper_bounds[i]
        if np.isinf(lo) and np.isinf(hi):
            columns.append((i, 1.0))
            columns.append((i, -1.0))
        elif np.isinf(hi):
            offsets[i] = lo
            columns.append((i, 1.0))
        elif np.isinf(lo):
            offsets[i] = hi
            columns.append((i, -1.0))
        else:
            offsets[i] = lo
            range_rows.append((len(columns), hi - lo))
            columns.append((i, 1.0))

    n_eq = lp.eq_lhs.shape[0]
    n_in = lp.ineq_lhs.shape[0]
    n_rng = len(range_rows)
    nrows = n_eq + n_in + n_rng
    nstruct = len(columns)

    body = np.zeros((nrows, nstruct))
    rhs = np.zeros(nrows)
    stacked = np.vstack([lp.eq_lhs, lp.ineq_lhs]) if nrows else np.zeros((0, n))
    for ci, (i, sign) in enumerate(columns):
        body[: n_eq + n_in, ci] = sign * stacked[:, i]
    rhs[:n_eq] = lp.eq_rhs - lp.eq_lhs @ offsets
    rhs[n_eq : n_eq + n_in] = lp.ineq_rhs - lp.ineq_lhs @ offsets
    for k, (ci, width) in enumerate(range_rows):
        body[n_eq + n_in + k, ci] = 1.0
        rhs[n_eq + n_in + k] = width

    # slack block for inequality and range rows
    n_slack = n_in + n_rng
    slack = np.zeros((nrows, n_slack))
    for k in range(n_slack):
        slack[n_eq + k, k] = 1.0
    full = np.hstack([body, slack])

    flip = rhs < 0
    full[flip] *= -1.0
    rhs = np.where(flip, -rhs, rhs)

    # rows whose slack survived with +1 start with that slack basic,
    # the rest (equalities, flipped inequalities) get an artificial
    basis = np.full(nrows, -1, dtype=int)
    need_artificial = []
    for r in range(nrows):
        if r >= n_eq and not flip[r]:
            basis[r] = nstruct + (r - n_eq)
        else:
            need_artificial.append(r)
    n_art = len(need_artificial)
    art = np.zeros((nrows, n_art))
    for k, r in enumerate(need_artificial):
        art[r, k] = 1.0
        basis[r] = nstruct + n_slack + k

    ncols = nstruct + n_slack + n_art
    tab = np.zeros((nrows + 1, ncols + 1))
    tab[:nrows, :nstruct] = full[:, :nstruct]
    tab[:nrows, nstruct : nstruct + n_slack] = full[:, nstruct:]
    tab[:nrows, nstruct + n_slack : ncols] = art
    tab[:nrows, -1] = rhs

    iter_cap = ITER_FACTOR * (nrows + ncols)

    # phase one: minimize the sum of artificials
    if n_art:
        cost = np.zeros(ncols + 1)
        cost[nstruct + n_slack : ncols] = 1.0
        for r in range(nrows):
            if basis[r] >= nstruct + n_slack:
                cost -= tab[r]
        tab[-1] = cost
        outcome = _run_simplex(tab, basis, nrows, iter_cap)
        if outcome != "optimal":
            return LpSolution(LpStatus.ITERATION_LIMIT)
        if -tab[-1, -1] > TOL_FEAS:
            return LpSolution(LpStatus.INFEASIBLE)
        # remove artificials from the basis; rows that cannot pivot are redundant
        drop_rows = []
        for r in range(nrows):
            if basis[r] < nstruct + n_slack:
                continue
            candidates = np.where(np.abs(tab[r, : nstruct + n_slack]) > TOL_PIVOT)[0]
            if candidates.size:
                _pivot(tab, r, int(candidates[0]))
                basis[r] = int(candidates[0])
            else:
                drop_rows.append(r)
        if drop_rows:
            keep = [r for r in range(nrows) if r not in set(drop_rows)]
            tab = tab[keep + [nrows]]
            basis = basis[keep]
            nrows = len(keep)
        tab = np.hstack([tab[:, : nstruct + n_slack], tab[:, -1:]])
        ncols = nstruct + n_slack

    def extract():
        values = np.zeros(ncols)
        rhs_now = np.maximum(tab[:nrows, -1], 0.0)
        values[basis[:nrows]] = rhs_now
        z = offsets.copy()
        for ci, (i, sign) in enumerate(columns):
            z[i] += sign * values[ci]
        return z

    if not np.any(lp.objective):
        return LpSolution(LpStatus.FEASIBLE, primal=extract())

    # phase two
    struct_cost = np.array([sign * lp.objective[i] for i, sign in columns])
    cost = np.zeros(ncols + 1)
    cost[:nstruct] = struct_cost
    for r in range(nrows):
        if cost[basis[r]] != 0.0:
            cost = cost - cost[basis[r]] * tab[r]
    tab[-1] = cost
    outcome = _run_simplex(tab, basis, nrows, iter_cap)
    if outcome == "unbounded":
        return LpSolution(LpStatus.UNBOUNDED)
    if outcome == "iteration_limit":
        return LpSolution(LpStatus.ITERATION_LIMIT)
    z = extract()
    return LpSolution(LpStatus.OPTIMAL, primal=z, objective_value=float(lp.objective @ z))
