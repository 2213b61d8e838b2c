"""Mixed volumes V(Q,Q,R), V(Q,R,R) and the x3-integral assembly.

Each mixed volume is computed twice, on purpose:

* as a support-function sum, ``(2*l1*l2/3) * sum(z_i)``, where every ``z_i``
  is found by brute force over the four vertices of the other tetrahedron;
* by the closed-form sub-case formulas.

The two must agree exactly. The per-normal vertex that the closed forms
rely on is recorded next to the brute-force argmax so callers (and tests)
can see which branch was active.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .boxdom import BoxDomain3, ratios
from .hullgeom import Tetra, extreme_points, indicator, split_qr, support, u_vectors


@dataclass(frozen=True)
class ZEntry:
    normal: int  # i in 1..8
    value: Fraction
    chosen_vertex: int  # brute-force argmax, lowest label on ties
    predicted_vertex: int  # the vertex the matching case analysis names
    predicted_value: Fraction  # inner product at predicted_vertex
    branch: str


@dataclass(frozen=True)
class ZValueReport:
    entries: tuple[ZEntry, ZEntry, ZEntry, ZEntry]
    sign: int  # +1 for z+, -1 for z-

    @property
    def total(self) -> Fraction:
        return sum((e.value for e in self.entries), Fraction(0))


@dataclass(frozen=True)
class MixedVolumeResult:
    value: Fraction
    subcase: int
    z: ZValueReport


def _branch_qqr(r: tuple[Fraction, ...], i: int, sign: int) -> tuple[int, str]:
    r1, r2, r3 = r
    if sign > 0:
        if i == 1:
            return 8, "z1+"
        if i == 2:
            return 8, "z2+"
        if i == 3:
            return 7, "z3+"
        return (5, "z4+:r1>=1") if r1 >= 1 else (7, "z4+:r1<1")
    if i == 1:
        return (7, "z1-:r2+r3>=1+r1") if r2 + r3 >= 1 + r1 else (6, "z1-:r2+r3<1+r1")
    if i == 2:
        return 7, "z2-"
    if i == 3:
        return 8, "z3-"
    return (8, "z4-:sum>=1") if r1 + r2 + r3 >= 1 else (5, "z4-:sum<1")


def _branch_qrr(r: tuple[Fraction, ...], i: int) -> tuple[int, str]:
    r1, r2, _ = r
    if i == 5:
        return (1, "z5:r2>=1") if r2 >= 1 else (2, "z5:r2<1")
    if i == 6:
        return (1, "z6:r1>=1") if r1 >= 1 else (3, "z6:r1<1")
    if i == 7:
        return 4, "z7"
    return (2, "z8:r2>=1") if r2 >= 1 else (1, "z8:r2<1")


@dataclass(frozen=True)
class TetraGeometry:
    q: Tetra
    r: Tetra
    us: tuple[tuple, ...]
    rat: tuple[Fraction, Fraction, Fraction]
    flipped: bool


def tetra_geometry(domain: BoxDomain3) -> TetraGeometry:
    """Q, R, u1..u8 and the ratios, built once and shared by both z-reports."""
    q, r = split_qr(extreme_points(domain))
    return TetraGeometry(q, r, u_vectors(domain), ratios(domain), bool(indicator(domain)))


def _z_report(geo: TetraGeometry, normals: range, sign: int, other_is_r: bool) -> ZValueReport:
    body = geo.r if other_is_r else geo.q
    entries = []
    for i in normals:
        direction = tuple(sign * x for x in geo.us[i - 1])
        value, vertex = support(body, direction)
        if other_is_r:
            pred, tag = _branch_qqr(geo.rat, i, sign)
        else:
            pred, tag = _branch_qrr(geo.rat, i)
        pv = body.vertices[pred - body.first_index]
        pred_value = sum(a * b for a, b in zip(pv, direction))
        entries.append(ZEntry(i, value, vertex, pred, pred_value, tag))
    return ZValueReport(tuple(entries), sign)


def z_values_qqr(domain: BoxDomain3, geo: TetraGeometry | None = None) -> ZValueReport:
    """Support values of R at Q's normal directions (z+ or z- by the indicator)."""
    geo = geo or tetra_geometry(domain)
    return _z_report(geo, range(1, 5), -1 if geo.flipped else 1, other_is_r=True)


def z_values_qrr(domain: BoxDomain3, geo: TetraGeometry | None = None) -> ZValueReport:
    """Support values of Q at R's normal directions u5..u8."""
    return _z_report(geo or tetra_geometry(domain), range(5, 9), 1, other_is_r=False)


def _shared_top_formula(c, l) -> Fraction:
    (c1, c2, c3), (l1, l2, l3) = c, l
    return Fraction(8, 3) * l1 * l2 * (c3 * l1 * l2 + l3 * (2 * c2 * l1 + c1 * l2))


def _shared_second_formula(c, l) -> Fraction:
    (_, c2, c3), (l1, l2, l3) = c, l
    return Fraction(8, 3) * l1**2 * l2 * (2 * c2 * l3 + l2 * (c3 + l3))


def qqr_closed_form(domain: BoxDomain3) -> tuple[Fraction, int]:
    (c1, c2, c3), (l1, l2, l3) = domain.c, domain.l
    r1, r2, r3 = ratios(domain)
    if r1 >= 1:
        return _shared_top_formula(domain.c, domain.l), 1
    if r1 + r2 + r3 >= 1 and r2 + r3 >= 1 + r1:
        return _shared_second_formula(domain.c, domain.l), 2
    if r1 + r2 + r3 >= 1:
        return Fraction(8, 3) * l1 * l2 * l3 * (c2 * l1 + l2 * (c1 + 2 * l1)), 3
    return Fraction(8, 3) * l1**2 * l2**2 * (3 * l3 - c3), 4


def qrr_closed_form(domain: BoxDomain3) -> tuple[Fraction, int]:
    (_, _, c3), (l1, l2, l3) = domain.c, domain.l
    r1, r2, _ = ratios(domain)
    if r1 >= 1:
        return _shared_top_formula(domain.c, domain.l), 1
    if r2 >= 1:
        return _shared_second_formula(domain.c, domain.l), 2
    return Fraction(8, 3) * l1**2 * l2**2 * (c3 + 3 * l3), 3


def support_sum(domain: BoxDomain3, z: ZValueReport) -> Fraction:
    """``(2*l1*l2/3) * sum(z)``, the mixed volume implied by a z-report."""
    l1, l2 = domain.l[0], domain.l[1]
    return Fraction(2, 3) * l1 * l2 * z.total


def mixed_volume_qqr(domain: BoxDomain3, geo: TetraGeometry | None = None) -> MixedVolumeResult:
    value, sub = qqr_closed_form(domain)
    z = z_values_qqr(domain, geo)
    assert value == support_sum(domain, z), "V(Q,Q,R): closed form disagrees with support sum"
    return MixedVolumeResult(value, sub, z)


def mixed_volume_qrr(domain: BoxDomain3, geo: TetraGeometry | None = None) -> MixedVolumeResult:
    value, sub = qrr_closed_form(domain)
    z = z_values_qrr(domain, geo)
    assert value == support_sum(domain, z), "V(Q,R,R): closed form disagrees with support sum"
    return MixedVolumeResult(value, sub, z)


def assemble_volume(vol_q, v_qqr, v_qrr, vol_r, l3):
    """Integral over x3 of the cubic Bernstein combination; each weight integrates to 2*l3/4."""
    return l3 / 2 * (vol_q + v_qqr + v_qrr + vol_r)
