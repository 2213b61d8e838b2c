"""Volume of the convex hull of a 3D point set.

Incremental insertion over triangulated faces. With integer or Fraction
input every orientation test is exact: Fractions are scaled to a common
integer grid first, so the predicates are plain integer determinants.
Float input uses a relative coplanarity tolerance instead.

Coplanar and collinear input is expected (Minkowski slice points have many
coplanar quadruples) and handled: a point is inserted only when it lies
strictly outside some face, and degenerate input has volume 0.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

FLOAT_EPS = 1e-12


def _orient(a, b, c, d):
    """Six times the signed volume of (a, b, c, d); positive when d is above abc."""
    bx, by, bz = b[0] - a[0], b[1] - a[1], b[2] - a[2]
    cx, cy, cz = c[0] - a[0], c[1] - a[1], c[2] - a[2]
    dx, dy, dz = d[0] - a[0], d[1] - a[1], d[2] - a[2]
    return bx * (cy * dz - cz * dy) - by * (cx * dz - cz * dx) + bz * (cx * dy - cy * dx)


def _to_grid(points: list[tuple]) -> tuple[list[tuple[int, int, int]], int]:
    den = 1
    for p in points:
        for x in p:
            den = math.lcm(den, Fraction(x).denominator)
    grid = [tuple(int(Fraction(x) * den) for x in p) for p in points]
    return grid, den


def _is_exact(points: list[tuple]) -> bool:
    return all(isinstance(x, Rational) for p in points for x in p)


def hull_faces(points: Sequence[Sequence], tol=0, line_tol=0) -> list[tuple[int, int, int]]:
    """Outward-oriented triangular faces of the hull, as index triples into ``points``.

    ``tol`` bounds the orientation determinant treated as zero and
    ``line_tol`` the squared cross product treated as collinear. Returns an
    empty list when the points span less than three dimensions.
    """
    pts = [tuple(p) for p in points]
    n = len(pts)
    if n < 4:
        return []

    i0 = 0
    i1 = next((i for i in range(n) if pts[i] != pts[i0]), None)
    if i1 is None:
        return []
    i2 = None
    for i in range(n):
        cr = _cross_sq(pts[i0], pts[i1], pts[i])
        if cr > line_tol:
            i2 = i
            break
    if i2 is None:
        return []
    i3 = None
    for i in range(n):
        if abs(_orient(pts[i0], pts[i1], pts[i2], pts[i])) > tol:
            i3 = i
            break
    if i3 is None:
        return []

    simplex = (i0, i1, i2, i3)
    faces: list[tuple[int, int, int]] = []
    for skip in range(4):
        tri = [simplex[k] for k in range(4) if k != skip]
        a, b, c = tri
        if _orient(pts[a], pts[b], pts[c], pts[simplex[skip]]) > 0:
            a, b = b, a
        faces.append((a, b, c))

    for i in range(n):
        if i in simplex:
            continue
        p = pts[i]
        visible = [f for f in faces if _orient(pts[f[0]], pts[f[1]], pts[f[2]], p) > tol]
        if not visible:
            continue
        vis_edges = set()
        for a, b, c in visible:
            vis_edges.update(((a, b), (b, c), (c, a)))
        horizon = [(a, b) for (a, b) in vis_edges if (b, a) not in vis_edges]
        vis_set = set(visible)
        faces = [f for f in faces if f not in vis_set]
        faces.extend((a, b, i) for a, b in horizon)
    return faces


def _cross_sq(a, b, c):
    ux, uy, uz = b[0] - a[0], b[1] - a[1], b[2] - a[2]
    vx, vy, vz = c[0] - a[0], c[1] - a[1], c[2] - a[2]
    x, y, z = uy * vz - uz * vy, uz * vx - ux * vz, ux * vy - uy * vx
    return x * x + y * y + z * z


def hull3d_volume(points: Iterable[Sequence], exact: bool | None = None):
    """Volume of conv(points). Exact (a Fraction) for rational input, float otherwise.

    ``exact=False`` forces floating arithmetic even for rational input.
    """
    pts = [tuple(p) for p in points]
    if not pts:
        return Fraction(0)
    if exact is None:
        exact = _is_exact(pts)
    if exact:
        grid, den = _to_grid(pts)
        faces = hull_faces(grid)
        six_vol = _six_volume(grid, faces)
        return Fraction(six_vol, 6 * den**3)

    fpts = [tuple(float(x) for x in p) for p in pts]
    extent = max(max(abs(x) for x in p) for p in fpts) or 1.0
    faces = hull_faces(fpts, tol=FLOAT_EPS * extent**3, line_tol=(FLOAT_EPS * extent**2) ** 2)
    return _six_volume(fpts, faces) / 6.0


def _six_volume(pts, faces):
    if not faces:
        return 0
    ref = pts[faces[0][0]]
    return -sum(_orient(pts[a], pts[b], pts[c], ref) for a, b, c in faces)
