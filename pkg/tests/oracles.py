"""Independent reference implementations the tests check the library against.

These deliberately do not call into the library solve paths: the LP oracle
enumerates candidate basic points directly, the vertex oracle intersects
row pairs, and the polygon rebuild works from cross products.
"""

from itertools import combinations

import numpy as np


def brute_force_lp(prob, feas_tol=1e-9):
    """Classify a small LP with a bounded feasible region by enumerating all
    candidate basic points: solutions of num_vars active constraints drawn
    from the equalities (always active), inequality rows and finite bounds.

    Returns (status, value, point) with status 'optimal' or 'infeasible'.
    A bounded nonempty region always has a basic feasible point, so absence
    of one certifies infeasibility.
    """
    n = prob.num_vars
    mand = [(np.asarray(a, dtype=float), float(b))
            for a, b in zip(prob.eq_lhs, prob.eq_rhs)]
    cand = [(np.asarray(a, dtype=float), float(b))
            for a, b in zip(prob.ineq_lhs, prob.ineq_rhs)]
    for i in range(n):
        unit = np.zeros(n)
        unit[i] = 1.0
        if np.isfinite(prob.lower_bounds[i]):
            cand.append((-unit, -float(prob.lower_bounds[i])))
        if np.isfinite(prob.upper_bounds[i]):
            cand.append((unit, float(prob.upper_bounds[i])))

    def feasible(x):
        for a, b in mand:
            if abs(a @ x - b) > feas_tol:
                return False
        for a, b in cand:
            if a @ x - b > feas_tol:
                return False
        return True

    need = n - len(mand)
    best_val = None
    best_pt = None
    for combo in combinations(range(len(cand)), need):
        mat = np.array([a for a, _ in mand] + [cand[i][0] for i in combo])
        rhs = np.array([b for _, b in mand] + [cand[i][1] for i in combo])
        try:
            x = np.linalg.solve(mat, rhs)
        except np.linalg.LinAlgError:
            continue
        if not np.all(np.isfinite(x)) or not feasible(x):
            continue
        val = float(prob.objective @ x)
        if best_val is None or val < best_val:
            best_val = val
            best_pt = x
    if best_val is None:
        return "infeasible", None, None
    return "optimal", best_val, best_pt


def vertex_oracle_2d(h_matrix, feas_tol=1e-8, dedup_tol=1e-7):
    """Vertices of {x in R^2 : H x <= 1} by intersecting every row pair."""
    h_matrix = np.asarray(h_matrix, dtype=float)
    points = []
    for i, j in combinations(range(h_matrix.shape[0]), 2):
        pair = h_matrix[[i, j]]
        det = pair[0, 0] * pair[1, 1] - pair[0, 1] * pair[1, 0]
        if abs(det) < 1e-12:
            continue
        x = np.array([pair[1, 1] - pair[0, 1], pair[0, 0] - pair[1, 0]]) / det
        if np.max(h_matrix @ x) > 1.0 + feas_tol:
            continue
        if any(np.linalg.norm(x - p) <= dedup_tol for p in points):
            continue
        points.append(x)
    return np.array(points) if points else np.zeros((0, 2))


def same_point_set(set_a, set_b, tol=1e-6):
    """True when the two point collections match pairwise within tol."""
    set_a = np.atleast_2d(np.asarray(set_a, dtype=float))
    set_b = np.atleast_2d(np.asarray(set_b, dtype=float))
    if set_a.shape[0] != set_b.shape[0]:
        return False
    unused = list(range(set_b.shape[0]))
    for a in set_a:
        hit = None
        for idx in unused:
            if np.linalg.norm(a - set_b[idx]) <= tol:
                hit = idx
                break
        if hit is None:
            return False
        unused.remove(hit)
    return True


def polygon_rows_from_vertices(verts_ccw):
    """Halfspace rows of a convex polygon with the origin inside, given its
    vertices in counterclockwise order."""
    verts_ccw = np.asarray(verts_ccw, dtype=float)
    rows = []
    count = verts_ccw.shape[0]
    for k in range(count):
        v = verts_ccw[k]
        w = verts_ccw[(k + 1) % count]
        edge = w - v
        normal = np.array([edge[1], -edge[0]])  # outward for ccw order
        rows.append(normal / (normal @ v))
    return np.array(rows)
