"""Point-in-hull tests for the 8-vertex 4D hull.

``lp_membership`` decides whether ``p`` is a convex combination of the
vertices with a phase-1 simplex on the system

    sum_j w_j = 1,   sum_j w_j v_j = p,   w >= 0

(5 equations, 8 weights). Pivoting uses Bland's rule, so it terminates
even on the degenerate systems that box-corner vertices produce.

``batch_membership`` answers the same question for many points at once by
enumerating every basis of that system: a point is in the hull iff some
affinely independent 5-subset of vertices gives it nonnegative barycentric
weights (Caratheodory). That is the vectorized path the Monte-Carlo oracle
uses.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Sequence

import numpy as np

FLOAT_TOL = 1e-9


def _phase1(rows: list[list], rhs: list, tol) -> bool:
    m, n = len(rows), len(rows[0])
    # make the right-hand side nonnegative, then append one artificial per row
    tab = []
    for i in range(m):
        s = -1 if rhs[i] < 0 else 1
        row = [s * a for a in rows[i]] + [1 if k == i else 0 for k in range(m)] + [s * rhs[i]]
        tab.append(row)
    basis = [n + i for i in range(m)]
    width = n + m
    # objective: minimise the sum of artificials, written as reduced costs
    obj = [-sum(tab[i][k] for i in range(m)) for k in range(width + 1)]
    for k in range(n, width):
        obj[k] = 0

    while True:
        enter = next((k for k in range(width) if obj[k] < -tol), None)
        if enter is None:
            break
        leave, best = None, None
        for i in range(m):
            a = tab[i][enter]
            if a > tol:
                ratio = tab[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    leave, best = i, ratio
        if leave is None:  # unbounded cannot happen in phase 1
            break
        piv = tab[leave][enter]
        tab[leave] = [x / piv for x in tab[leave]]
        for i in range(m):
            if i != leave and tab[i][enter] != 0:
                f = tab[i][enter]
                tab[i] = [x - f * y for x, y in zip(tab[i], tab[leave])]
        f = obj[enter]
        obj = [x - f * y for x, y in zip(obj, tab[leave])]
        basis[leave] = enter
    return -obj[-1] <= tol


def lp_membership(p: Sequence, vertices: Sequence[Sequence], exact: bool = True) -> bool:
    """True iff ``p`` lies in the convex hull of ``vertices`` (4D points)."""
    if exact:
        conv = Fraction
        tol = 0
    else:
        conv = float
        tol = FLOAT_TOL
    dim = len(p)
    rows = [[conv(1)] * len(vertices)]
    rhs = [conv(1)]
    for k in range(dim):
        rows.append([conv(v[k]) for v in vertices])
        rhs.append(conv(p[k]))
    return _phase1(rows, rhs, tol)


class BatchMembership:
    """Precomputed inverse bases for vectorised hull membership."""

    def __init__(self, vertices: Sequence[Sequence], tol: float = FLOAT_TOL):
        verts = np.asarray([[float(x) for x in v] for v in vertices])
        self.center = verts.mean(axis=0)
        self.scale = np.abs(verts - self.center).max(axis=0)
        self.scale[self.scale == 0] = 1.0
        local = (verts - self.center) / self.scale
        k = local.shape[1] + 1
        self.inverses = []
        for subset in combinations(range(len(local)), k):
            mat = np.vstack([np.ones(k), local[list(subset)].T])
            if abs(np.linalg.det(mat)) < 1e-9:
                continue
            self.inverses.append(np.linalg.inv(mat))
        self.tol = tol

    def __call__(self, points: np.ndarray) -> np.ndarray:
        pts = (np.asarray(points, dtype=float) - self.center) / self.scale
        rhs = np.vstack([np.ones(len(pts)), pts.T])
        inside = np.zeros(len(pts), dtype=bool)
        for inv in self.inverses:
            todo = ~inside
            if not todo.any():
                break
            w = inv @ rhs[:, todo]
            inside[np.flatnonzero(todo)[(w >= -self.tol).all(axis=0)]] = True
        return inside


def batch_membership(points: np.ndarray, vertices: Sequence[Sequence]) -> np.ndarray:
    return BatchMembership(vertices)(points)
