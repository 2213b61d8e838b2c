"""Vertices, tetrahedra and facet normals of the trilinear hull.

Points live in R^4 with coordinate order ``(f, x1, x2, x3)``. The hull has
eight vertices (one per box corner, with ``f = x1*x2*x3``). Splitting them by
the value of ``x3`` gives two tetrahedra: ``Q`` on ``x3 = c3 - l3`` and
``R`` on ``x3 = c3 + l3``.

Everything here assumes a canonical domain (see :func:`trivol.boxdom.normalize`)
except :func:`extreme_points`, :func:`split_qr`, :func:`tetra_volume_det` and
:func:`support`, which are valid for any box.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from .boxdom import BoxDomain3

# corner sign pattern (x1, x2, x3) for v1..v8
_CORNERS = (
    (-1, -1, -1),
    (+1, -1, -1),
    (-1, +1, -1),
    (+1, +1, -1),
    (-1, -1, +1),
    (+1, -1, +1),
    (-1, +1, +1),
    (+1, +1, +1),
)


class Point4(NamedTuple):
    f: Fraction
    x1: Fraction
    x2: Fraction
    x3: Fraction


def dot4(a: Sequence, b: Sequence):
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3]


def _sub(a: Sequence, b: Sequence) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def det3(a: Sequence, b: Sequence, c: Sequence):
    return (
        a[0] * (b[1] * c[2] - b[2] * c[1])
        - a[1] * (b[0] * c[2] - b[2] * c[0])
        + a[2] * (b[0] * c[1] - b[1] * c[0])
    )


def cross3(a: Sequence, b: Sequence) -> tuple:
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def extreme_points(domain: BoxDomain3) -> tuple[Point4, ...]:
    """The eight vertices v1..v8 (v1 all-lower corner, v8 all-upper)."""
    c, l = domain.c, domain.l
    verts = []
    for s1, s2, s3 in _CORNERS:
        x1, x2, x3 = c[0] + s1 * l[0], c[1] + s2 * l[1], c[2] + s3 * l[2]
        verts.append(Point4(x1 * x2 * x3, x1, x2, x3))
    return tuple(verts)


@dataclass(frozen=True)
class Tetra:
    """Four 4D points sharing one x3 value.

    ``first_index`` is the 1-based label of ``vertices[0]`` among v1..v8, so
    Q carries 1 and R carries 5.
    """

    vertices: tuple[Point4, Point4, Point4, Point4]
    plane_x3: Fraction
    first_index: int = 1

    def __post_init__(self) -> None:
        if len(self.vertices) != 4:
            raise ValueError("a tetrahedron has four vertices")
        if any(v.x3 != self.plane_x3 for v in self.vertices):
            raise ValueError("tetrahedron vertices must share the x3 value")

    def label(self, k: int) -> int:
        return self.first_index + k

    def projected(self) -> list[tuple]:
        """Vertices in (f, x1, x2) coordinates."""
        return [(v.f, v.x1, v.x2) for v in self.vertices]


def split_qr(verts: Sequence[Point4]) -> tuple[Tetra, Tetra]:
    if len(verts) != 8:
        raise ValueError("expected the eight hull vertices")
    q = Tetra(tuple(verts[:4]), verts[0].x3, 1)
    r = Tetra(tuple(verts[4:]), verts[4].x3, 5)
    return q, r


def tetra_volume_det(t: Tetra):
    """3D volume of ``t`` inside its x3-hyperplane, |det(edges)| / 6.

    Returns 0 for a flat tetrahedron; Q is flat exactly when ``c3 == l3``.
    """
    p = t.projected()
    e1, e2, e3 = (_sub(p[k], p[0]) for k in (1, 2, 3))
    return abs(det3(e1, e2, e3)) / 6


def indicator(domain: BoxDomain3) -> int:
    """1 when ``c3/l3 < 1`` (Q's normal set is flipped), else 0."""
    iv = domain.intervals[2]
    return 1 if iv.center < iv.half_length else 0


def vol3_q(domain: BoxDomain3) -> tuple[Fraction, int]:
    """Closed-form volume of Q and the branch used (1: c3 >= l3, 2: c3 < l3)."""
    (l1, l2, l3), c3 = domain.l, domain.c[2]
    k = Fraction(8, 3) * l1**2 * l2**2
    if c3 / l3 >= 1:
        return k * (c3 - l3), 1
    return k * (l3 - c3), 2


def vol3_r(domain: BoxDomain3) -> Fraction:
    (l1, l2, l3), c3 = domain.l, domain.c[2]
    return Fraction(8, 3) * l1**2 * l2**2 * (c3 + l3)


def u_vectors(domain: BoxDomain3) -> tuple[tuple, ...]:
    """The unscaled direction vectors u1..u8 (index 0 holds u1)."""
    (c1, c2, c3), (l1, l2, l3) = domain.c, domain.l
    out = []
    for x3 in (c3 - l3, c3 + l3):
        out += [
            (Fraction(1), -(c2 - l2) * x3, -(c1 + l1) * x3, Fraction(0)),
            (Fraction(1), -(c2 + l2) * x3, -(c1 - l1) * x3, Fraction(0)),
            (Fraction(-1), (c2 + l2) * x3, (c1 + l1) * x3, Fraction(0)),
            (Fraction(-1), (c2 - l2) * x3, (c1 - l1) * x3, Fraction(0)),
        ]
    return tuple(out)


@dataclass(frozen=True)
class NormalSet:
    """Area-weighted outer facet normals of a tetrahedron, as 4D vectors.

    ``normals[k]`` is ``sign * 2*l1*l2 * u_i`` where ``i = first_u + k``;
    ``sign`` is -1 only for Q when the indicator is set.
    """

    normals: tuple[tuple, tuple, tuple, tuple]
    first_u: int
    sign: int
    scale: Fraction

    def direction(self, k: int) -> tuple:
        """The signed unit-scale direction ``sign * u_i`` behind ``normals[k]``."""
        return tuple(x / self.scale for x in self.normals[k])


def _normal_set(domain: BoxDomain3, first_u: int, sign: int) -> NormalSet:
    l1, l2 = domain.l[0], domain.l[1]
    scale = 2 * l1 * l2
    us = u_vectors(domain)[first_u - 1 : first_u + 3]
    normals = tuple(tuple(sign * scale * x for x in u) for u in us)
    return NormalSet(normals, first_u, sign, scale)


def outer_normals_q(domain: BoxDomain3) -> tuple[NormalSet, int]:
    ind = indicator(domain)
    return _normal_set(domain, 1, -1 if ind else 1), ind


def outer_normals_r(domain: BoxDomain3) -> NormalSet:
    return _normal_set(domain, 5, 1)


def support(t: Tetra, u: Sequence) -> tuple:
    """Support function of ``t`` at ``u``: (max dot product, 1-based vertex label).

    Ties go to the lowest label.
    """
    best, best_k = None, 0
    for k, v in enumerate(t.vertices):
        d = dot4(v, u)
        if best is None or d > best:
            best, best_k = d, k
    return best, t.label(best_k)
