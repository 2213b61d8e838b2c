"""Cross-section quadrature oracle for the 4D hull volume.

The hull's slice at height ``x3 = (c3 - l3) + t * 2*l3`` is the Minkowski
combination ``(1-t) Q + t R``, whose 3D volume is a cubic polynomial in
``t``. Sampling it at ``t = 0, 1/3, 2/3, 1`` and applying Simpson's 3/8 rule
integrates that cubic exactly. No closed-form volume is used.
"""

from __future__ import annotations

from fractions import Fraction

from ..boxdom import BoxDomain3
from ..hullgeom import extreme_points, split_qr
from .hull3d import hull3d_volume

NODES = (Fraction(0), Fraction(1, 3), Fraction(2, 3), Fraction(1))
WEIGHTS = (1, 3, 3, 1)


def slice_points(domain: BoxDomain3, t, exact: bool = True) -> list[tuple]:
    """All 16 points ``(1-t) q_i + t r_j`` in (f, x1, x2) coordinates."""
    q, r = split_qr(extreme_points(domain))
    qp, rp = q.projected(), r.projected()
    if not exact:
        t = float(t)
        qp = [tuple(float(x) for x in p) for p in qp]
        rp = [tuple(float(x) for x in p) for p in rp]
    s = 1 - t
    return [tuple(s * a + t * b for a, b in zip(qi, rj)) for qi in qp for rj in rp]


def slice_volume(domain: BoxDomain3, t, exact: bool = True):
    return hull3d_volume(slice_points(domain, t, exact), exact=exact)


def oracle_volume_quadrature(domain: BoxDomain3, exact: bool = True):
    """4D hull volume by exact cubic quadrature over x3. Works on any box, canonical or not."""
    l3 = domain.l[2]
    total = sum(w * slice_volume(domain, t, exact) for w, t in zip(WEIGHTS, NODES))
    if not exact:
        return 2 * float(l3) / 8 * total
    return 2 * l3 / 8 * total
